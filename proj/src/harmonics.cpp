#include "quermass/harmonics.hpp"

#include <cmath>
#include <map>

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coefficients of the Legendre polynomial P_l via the three-term recurrence.
std::vector<double> legendre_coeffs(int l) {
    std::vector<double> pm1{1.0};        // P_0
    if (l == 0) return pm1;
    std::vector<double> p{0.0, 1.0};     // P_1
    for (int k = 1; k < l; ++k) {
        std::vector<double> next(k + 2, 0.0);
        for (int i = 0; i <= k; ++i) next[i + 1] += (2.0 * k + 1.0) * p[i] / (k + 1.0);
        for (size_t i = 0; i < pm1.size(); ++i) next[i] -= k * pm1[i] / (k + 1.0);
        pm1 = std::move(p);
        p = std::move(next);
    }
    return p;
}

std::vector<double> differentiate(std::vector<double> c, int times) {
    for (int t = 0; t < times; ++t) {
        if (c.size() <= 1) return {0.0};
        std::vector<double> d(c.size() - 1, 0.0);
        for (size_t i = 1; i < c.size(); ++i) d[i - 1] = c[i] * static_cast<double>(i);
        c = std::move(d);
    }
    return c;
}

// Homogenization of t^k coefficients: sum_k a_k z^k r^(deg-k) with deg-k even,
// r^2 expanded as the given radial quadratic form (x^2+y^2+z^2 or x^2+y^2).
Poly3 homogenize_in_z(const std::vector<double>& coeffs, int deg, bool planar_radius) {
    Poly3 r2;
    r2.add_term(2, 0, 0, 1.0);
    r2.add_term(0, 2, 0, 1.0);
    if (!planar_radius) r2.add_term(0, 0, 2, 1.0);

    Poly3 out;
    for (size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0.0) continue;
        int rest = deg - static_cast<int>(k);
        // parity of the source polynomial guarantees rest is even
        Poly3 term = Poly3::monomial(0, 0, static_cast<int>(k), coeffs[k]);
        Poly3 rpow = Poly3::monomial(0, 0, 0, 1.0);
        for (int e = 0; e < rest / 2; ++e) rpow = rpow * r2;
        out = out + term * rpow;
    }
    return out;
}

// Re[(x+iy)^m] and Im[(x+iy)^m].
void trig_polys(int m, Poly3& re, Poly3& im) {
    re = Poly3::monomial(0, 0, 0, 1.0);
    im = Poly3();
    Poly3 x = Poly3::monomial(1, 0, 0, 1.0);
    Poly3 y = Poly3::monomial(0, 1, 0, 1.0);
    for (int k = 0; k < m; ++k) {
        Poly3 nre = re * x + im * (-1.0) * y;
        Poly3 nim = re * y + im * x;
        re = std::move(nre);
        im = std::move(nim);
    }
}

// sqrt of (l-m)!/(l+m)! computed as a product to avoid overflow.
double factorial_ratio_sqrt(int l, int m) {
    double r = 1.0;
    for (int k = l - m + 1; k <= l + m; ++k) r /= static_cast<double>(k);
    return std::sqrt(r);
}

Poly3 solid_harmonic_3d(int l, int m_signed) {
    const int m = std::abs(m_signed);
    std::vector<double> pi_lm = differentiate(legendre_coeffs(l), m);
    Poly3 zpart = homogenize_in_z(pi_lm, l - m, /*planar_radius=*/false);
    Poly3 re, im;
    trig_polys(m, re, im);
    double norm = std::sqrt((2.0 * l + 1.0) / (4.0 * kPi));
    if (m > 0) norm *= std::sqrt(2.0) * factorial_ratio_sqrt(l, m);
    Poly3 trig = (m_signed >= 0) ? re : im;
    return zpart * trig * norm;
}

Poly3 solid_harmonic_2d(int k, bool sine) {
    Poly3 re, im;
    trig_polys(k, re, im);
    double norm = (k == 0) ? 1.0 / std::sqrt(2.0 * kPi) : 1.0 / std::sqrt(kPi);
    return (sine ? im : re) * norm;
}

}  // namespace

SolidHarmonic::SolidHarmonic(int ambient_dim, int l, int m, Poly3 poly)
    : dim_(ambient_dim), l_(l), m_(m), poly_(std::move(poly)) {
    for (int a = 0; a < 3; ++a) {
        dp_[a] = poly_.derivative(a);
        for (int b = a; b < 3; ++b) ddp_[a][b] = dp_[a].derivative(b);
    }
    radial_ = Mat3::Identity();
    if (dim_ == 2) radial_(2, 2) = 0.0;
}

Jet2 SolidHarmonic::jet(const Vec3& x, int homogeneity) const {
    Jet2 s;
    s.v = poly_.eval(x);
    for (int a = 0; a < 3; ++a) {
        s.g[a] = dp_[a].eval(x);
        for (int b = a; b < 3; ++b) {
            double v = ddp_[a][b].eval(x);
            s.H(a, b) = v;
            s.H(b, a) = v;
        }
    }
    const int q = homogeneity - l_;
    if (q == 0) return s;
    Jet2 rq = jet_pow(Jet2::quadratic_form(radial_, x), 0.5 * q);
    return rq * s;
}

HarmonicBasis::HarmonicBasis(int ambient_dim, int max_degree, bool even_only)
    : dim_(ambient_dim), max_degree_(max_degree), even_only_(even_only) {
    if (ambient_dim != 2 && ambient_dim != 3)
        throw std::invalid_argument("HarmonicBasis: ambient dimension must be 2 or 3");
    const int step = even_only ? 2 : 1;
    for (int l = 0; l <= max_degree; l += step) {
        if (dim_ == 3) {
            for (int m = -l; m <= l; ++m)
                entries_.emplace_back(dim_, l, m, solid_harmonic_3d(l, m));
        } else {
            entries_.emplace_back(dim_, l, 0, solid_harmonic_2d(l, false));
            if (l > 0) entries_.emplace_back(dim_, l, -l, solid_harmonic_2d(l, true));
        }
    }
}

int HarmonicBasis::index_of(int l, int m) const {
    for (int i = 0; i < size(); ++i)
        if (entries_[i].degree() == l && entries_[i].order() == m) return i;
    throw std::out_of_range("HarmonicBasis: no member with the requested degree/order");
}

std::shared_ptr<const HarmonicBasis> even_basis(int ambient_dim, int max_degree) {
    // small process-wide cache; bases are immutable
    static std::map<std::pair<int, int>, std::shared_ptr<const HarmonicBasis>> cache;
    auto key = std::make_pair(ambient_dim, max_degree);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto basis = std::make_shared<const HarmonicBasis>(ambient_dim, max_degree, true);
    cache[key] = basis;
    return basis;
}

HarmonicExpansion::HarmonicExpansion(int ambient_dim, int max_degree)
    : basis_(even_basis(ambient_dim, max_degree)),
      coeffs_(Eigen::VectorXd::Zero(basis_->size())) {}

void HarmonicExpansion::set_coeff(int l, int m, double value) {
    if (l % 2 != 0)
        throw std::invalid_argument("HarmonicExpansion: only even degrees are representable");
    coeffs_[basis_->index_of(l, m)] = value;
}

double HarmonicExpansion::coeff(int l, int m) const {
    return coeffs_[basis_->index_of(l, m)];
}

double HarmonicExpansion::value(const Vec3& u) const {
    double s = 0.0;
    for (int i = 0; i < basis_->size(); ++i)
        if (coeffs_[i] != 0.0) s += coeffs_[i] * basis_->at(i).value(u);
    return s;
}

Jet2 HarmonicExpansion::jet(const Vec3& x, int homogeneity) const {
    Jet2 s;
    for (int i = 0; i < basis_->size(); ++i)
        if (coeffs_[i] != 0.0) s = s + basis_->at(i).jet(x, homogeneity) * coeffs_[i];
    return s;
}

}  // namespace quermass
