#include "quermass/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace quermass {

namespace {

void check_sizes(const std::vector<MatX>& mats) {
    if (mats.empty()) throw std::invalid_argument("mixed_discriminant: no matrices");
    const auto n = mats.front().rows();
    for (const auto& m : mats)
        if (m.rows() != n || m.cols() != n)
            throw std::invalid_argument("mixed_discriminant: size mismatch");
    if (static_cast<size_t>(n) != mats.size())
        throw std::invalid_argument("mixed_discriminant: need N matrices of size N x N");
}

MatX minor_matrix(const MatX& a, int i, int k) {
    const int n = static_cast<int>(a.rows());
    MatX m(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
        if (r == i) continue;
        for (int c = 0, cc = 0; c < n; ++c) {
            if (c == k) continue;
            m(rr, cc++) = a(r, c);
        }
        ++rr;
    }
    return m;
}

double binom(int n, int k) {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

}  // namespace

double mixed_discriminant_cofactor(const std::vector<MatX>& mats) {
    check_sizes(mats);
    const int n = static_cast<int>(mats.size());
    if (n == 1) return mats[0](0, 0);
    std::vector<MatX> tail(mats.begin() + 1, mats.end());
    MatX q = cofactor_operator(tail);
    double s = 0.0;
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) s += mats[0](i, k) * q(i, k);
    return s;
}

MatX cofactor_operator(const std::vector<MatX>& tail) {
    if (tail.empty()) throw std::invalid_argument("cofactor_operator: no matrices");
    const int n = static_cast<int>(tail.size()) + 1;
    if (tail.front().rows() != n)
        throw std::invalid_argument("cofactor_operator: size mismatch");
    MatX q(n, n);
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            std::vector<MatX> minors;
            minors.reserve(tail.size());
            for (const auto& a : tail) minors.push_back(minor_matrix(a, i, k));
            double d = mixed_discriminant_cofactor(minors);
            q(i, k) = (((i + k) % 2 == 0) ? 1.0 : -1.0) * d / n;
        }
    return q;
}

double mixed_discriminant_polarization(const std::vector<MatX>& mats) {
    check_sizes(mats);
    const int n = static_cast<int>(mats.size());
    if (n > 6) throw std::invalid_argument("mixed_discriminant: polarization limited to N <= 6");
    double fact = 1.0;
    for (int i = 2; i <= n; ++i) fact *= i;
    double total = 0.0;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
        MatX sum = MatX::Zero(n, n);
        int bits = 0;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i)) {
                sum += mats[i];
                ++bits;
            }
        total += (((n - bits) % 2 == 0) ? 1.0 : -1.0) * sum.determinant();
    }
    return total / fact;
}

double mixed_discriminant(const std::vector<MatX>& mats) {
    check_sizes(mats);
    if (mats.size() <= 3) return mixed_discriminant_cofactor(mats);
    return mixed_discriminant_polarization(mats);
}

MatX sigma_matrix(const MatX& a, int n, int j) {
    if (j < 1 || j > n - 2) throw std::invalid_argument("sigma_matrix: need 1 <= j <= n-2");
    std::vector<MatX> tail;
    for (int i = 0; i < j - 1; ++i) tail.push_back(a);
    for (int i = 0; i < n - j - 1; ++i) tail.push_back(MatX::Identity(n - 1, n - 1));
    return j * binom(n - 1, j) * cofactor_operator(tail);
}

std::array<double, 2> eigenvalues2(const Mat2& a) {
    const double m = 0.5 * (a(0, 0) + a(1, 1));
    const double d = 0.5 * (a(0, 0) - a(1, 1));
    const double r = std::sqrt(std::max(0.0, d * d + a(0, 1) * a(1, 0)));
    return {m - r, m + r};
}

namespace {

double sj_from_a(const Mat2& a, int n, int j) {
    const int nn = n - 1;
    std::vector<MatX> args;
    args.reserve(nn);
    MatX am = a.topLeftCorner(nn, nn);
    for (int i = 0; i < j; ++i) args.push_back(am);
    for (int i = 0; i < nn - j; ++i) args.push_back(MatX::Identity(nn, nn));
    return mixed_discriminant_cofactor(args);
}

}  // namespace

double curvature_sj(const Body& k, int j, const Vec3& u, int n) {
    if (!k.smooth())
        throw std::invalid_argument("curvature_sj: non-smooth representation");
    return sj_from_a(a_matrix(k.jet_field(), u, n), n, j);
}

CurvatureField curvature_function(const Body& k, int j, const SphereGrid& grid) {
    if (!k.smooth())
        throw std::invalid_argument("curvature_function: non-smooth representation");
    if (j < 1 || j > grid.n - 1)
        throw std::invalid_argument("curvature_function: need 1 <= j <= n-1");

    CurvatureField out;
    out.j = j;
    out.values.resize(grid.size());
    out.radii.resize(grid.size());
    auto mats = hessian_operator(k.jet_field(), grid);
    for (int i = 0; i < grid.size(); ++i) {
        out.values[i] = sj_from_a(mats[i], grid.n, j);
        if (grid.n == 2)
            out.radii[i] = {mats[i](0, 0), 0.0};
        else
            out.radii[i] = eigenvalues2(mats[i]);
    }
    return out;
}

std::vector<double> mixed_curvature(const std::vector<Body>& bodies, const SphereGrid& grid) {
    std::vector<AmbientField> fields;
    fields.reserve(bodies.size());
    for (const auto& b : bodies) {
        if (!b.smooth())
            throw std::invalid_argument("mixed_curvature: non-smooth representation");
        fields.push_back(b.jet_field());
    }
    return mixed_curvature_fields(fields, grid);
}

std::vector<double> mixed_curvature_fields(const std::vector<AmbientField>& fields,
                                           const SphereGrid& grid) {
    if (static_cast<int>(fields.size()) != grid.n - 1)
        throw std::invalid_argument("mixed_curvature: need n-1 arguments");
    const int nn = grid.n - 1;
    std::vector<std::vector<Mat2>> mats;
    mats.reserve(fields.size());
    for (const auto& f : fields) mats.push_back(hessian_operator(f, grid));

    std::vector<double> out(grid.size());
    std::vector<MatX> args(fields.size());
    for (int i = 0; i < grid.size(); ++i) {
        for (size_t a = 0; a < fields.size(); ++a) args[a] = mats[a][i].topLeftCorner(nn, nn);
        out[i] = mixed_discriminant_cofactor(args);
    }
    return out;
}

double degenerate_curvature(const Body& base, int j, const Vec3& u) {
    const int n = 3;
    if (base.dim() != 2)
        throw std::invalid_argument("degenerate_curvature: base must be 2-dimensional");
    if (j < 1 || j > n - 2)
        throw std::invalid_argument("degenerate_curvature: need 1 <= j <= n-2");
    Vec3 proj(u.x(), u.y(), 0.0);
    const double c = proj.norm() / u.norm();
    if (c < 1e-12)
        throw std::invalid_argument("degenerate_curvature: projection undefined at the poles");
    Vec3 ut = proj / proj.norm();
    const double sj_eq = curvature_sj(base, j, ut, 2);
    const double g = 1.0 - static_cast<double>(j) / (n - 1);
    return g / std::pow(c, j) * sj_eq;
}

}  // namespace quermass
