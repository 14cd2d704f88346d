#include "quermass/volumes.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "quermass/curvature.hpp"
#include "quermass/polygon.hpp"

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Cached grids for internal quadratures.
const SphereGrid& circle_grid() {
    static const SphereGrid g = build_grid(2, 256);
    return g;
}

double surface_integral_vj(const Body& k, int j, const SphereGrid& grid) {
    const int n = grid.n;
    std::vector<AmbientField> args;
    for (int i = 0; i < j - 1; ++i) args.push_back(k.jet_field());
    const Body ball = make_ball(n, 1.0);
    for (int i = 0; i < n - j; ++i) args.push_back(ball.jet_field());
    std::vector<double> s = mixed_curvature_fields(args, grid);
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i)
        acc += grid.weights[i] * k.support(grid.nodes[i]) * s[i];
    return d_nj(n, j) * acc / n;
}

// Detects an axis-aligned-in-its-own-frame box: a segment product whose base
// is a centered rectangle. Returns the three half-extents.
bool box_half_extents(const Body& k, Vec3& ext) {
    auto sp = as_segment_product(k);
    if (!sp) return false;
    const auto* verts = polygon_vertices(sp->base);
    if (!verts || verts->size() != 4) return false;
    Vec2 e0 = (*verts)[1] - (*verts)[0];
    Vec2 e1 = (*verts)[2] - (*verts)[1];
    if (std::abs(e0.dot(e1)) > 1e-10 * e0.norm() * e1.norm()) return false;
    ext = Vec3(0.5 * e0.norm(), 0.5 * e1.norm(), sp->half_length);
    return true;
}

double box_parallel_volume(const Vec3& ext, double rho) {
    const double a = ext.x(), b = ext.y(), c = ext.z();
    return 8.0 * a * b * c + 8.0 * rho * (a * b + b * c + c * a) +
           2.0 * kPi * rho * rho * (a + b + c) + (4.0 * kPi / 3.0) * rho * rho * rho;
}

}  // namespace

double unit_ball_volume(int d) {
    if (d < 0) throw std::invalid_argument("unit_ball_volume: negative dimension");
    return std::pow(kPi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double binomial(int n, int k) {
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

double d_nj(int n, int j) {
    if (j < 0 || j > n) throw std::invalid_argument("d_nj: need 0 <= j <= n");
    return binomial(n, j) / unit_ball_volume(n - j);
}

double e_nj(int n, int j) {
    if (j < 1 || j > n) throw std::invalid_argument("e_nj: need 1 <= j <= n");
    return 2.0 * j * d_nj(n, j) / (n * d_nj(n - 1, j - 1));
}

DimensionalConstants dimensional_constants(int n, int j) {
    if (j < 1 || j > n - 1)
        throw std::invalid_argument("dimensional_constants: need 1 <= j <= n-1");
    DimensionalConstants out{};
    out.kappa = unit_ball_volume(n - j);
    out.d = d_nj(n, j);
    out.e = e_nj(n, j);
    out.c_af = std::pow(unit_ball_volume(n), -1.0 / j) / unit_ball_volume(n - j - 1) *
               std::pow(unit_ball_volume(n - j), (j + 1.0) / j) * binomial(n, j + 1) *
               std::pow(binomial(n, j), -(j + 1.0) / j);
    return out;
}

double intrinsic_volume_smooth(const Body& k, int j, const SphereGrid& grid) {
    if (!k.smooth())
        throw std::invalid_argument(
            "intrinsic_volume_smooth: non-smooth representation (use the exact 2d or "
            "product-formula paths)");
    if (k.dim() != grid.n) throw std::invalid_argument("intrinsic_volume_smooth: grid mismatch");
    if (j < 1 || j > grid.n) throw std::invalid_argument("intrinsic_volume_smooth: j out of range");
    return surface_integral_vj(k, j, grid);
}

double intrinsic_volume_2d(const Body& k, int j) {
    if (k.dim() != 2) throw std::invalid_argument("intrinsic_volume_2d: need a planar body");
    if (j == 0) return 1.0;
    if (j < 1 || j > 2) throw std::invalid_argument("intrinsic_volume_2d: j must be 1 or 2");
    if (const auto* verts = polygon_vertices(k)) {
        ConvexPolygon poly{*verts};
        if (poly.area() <= 0.0) throw std::invalid_argument("intrinsic_volume_2d: degenerate polygon");
        return j == 2 ? poly.area() : 0.5 * poly.perimeter();
    }
    if (!k.smooth())
        throw std::invalid_argument("intrinsic_volume_2d: unsupported representation");
    const SphereGrid& g = circle_grid();
    if (j == 1) {
        double acc = 0.0;
        for (int i = 0; i < g.size(); ++i) acc += g.weights[i] * k.support(g.nodes[i]);
        return 0.5 * acc;
    }
    return surface_integral_vj(k, 2, g);
}

double intrinsic_volume_product(const Body& base2d, double s, int j) {
    if (j < 1) throw std::invalid_argument("intrinsic_volume_product: j must be >= 1");
    if (j > 3) return 0.0;
    const double vj = (j <= 2) ? intrinsic_volume_2d(base2d, j) : 0.0;
    const double vjm1 = intrinsic_volume_2d(base2d, j - 1);
    return vj + s * e_nj(3, j) * vjm1;
}

double intrinsic_volume(const Body& k, int j, const SphereGrid& grid) {
    if (auto sp = as_segment_product(k)) return intrinsic_volume_product(sp->base, sp->half_length, j);
    if (k.dim() == 2) return intrinsic_volume_2d(k, j);
    return intrinsic_volume_smooth(k, j, grid);
}

std::string volume_method(const Body& k) {
    if (as_segment_product(k)) return "product-formula";
    if (k.dim() == 2) return "exact-2D";
    if (k.smooth()) return "surface-integral";
    return "monte-carlo-oracle";
}

double steiner_check(const Body& k, const SphereGrid& grid, const std::vector<double>& rhos) {
    Vec3 ext;
    const bool is_box = box_half_extents(k, ext);
    if (!is_box && !k.smooth())
        throw std::invalid_argument("steiner_check: need a smooth body or a box");

    double v[4];
    v[0] = 1.0;
    for (int j = 1; j <= 3; ++j) v[j] = intrinsic_volume(k, j, grid);

    double worst = 0.0;
    for (double rho : rhos) {
        double direct = is_box ? box_parallel_volume(ext, rho)
                               : intrinsic_volume_smooth(outer_parallel(k, rho), 3, grid);
        double steiner = 0.0;
        for (int j = 0; j <= 3; ++j)
            steiner += std::pow(rho, 3 - j) * unit_ball_volume(3 - j) * v[j];
        worst = std::max(worst, std::abs(direct - steiner) / std::abs(direct));
    }
    return worst;
}

MonteCarloEstimate kubota_oracle(const Body& k, int j, int sample_count, std::uint64_t seed) {
    if (k.dim() != 3) throw std::invalid_argument("kubota_oracle: 3-dimensional bodies only");
    if (j < 1 || j > 2) throw std::invalid_argument("kubota_oracle: j must be 1 or 2");
    if (sample_count < 100) throw std::invalid_argument("kubota_oracle: sampleCount < 100");

    const double scale = binomial(3, j) * unit_ball_volume(3) /
                         (unit_ball_volume(j) * unit_ball_volume(3 - j));
    const bool smooth = k.smooth();
    // non-smooth shadows go through a circumscribed polygon, so sample the
    // ring densely enough that its area excess is negligible next to the
    // Monte Carlo error
    const int ring = smooth ? 128 : 512;

    double sum = 0.0, sumsq = 0.0;
    const int shard_size = 1024;
    int done = 0, shard = 0;
    while (done < sample_count) {
        const int batch = std::min(shard_size, sample_count - done);
        std::mt19937_64 rng(seed + static_cast<std::uint64_t>(shard));
        std::normal_distribution<double> gauss(0.0, 1.0);
        for (int t = 0; t < batch; ++t) {
            Vec3 g1(gauss(rng), gauss(rng), gauss(rng));
            Vec3 g2(gauss(rng), gauss(rng), gauss(rng));
            Vec3 b1 = g1.normalized();
            double proj_vol;
            if (j == 1) {
                proj_vol = 2.0 * k.support(b1);  // width of a symmetric body
            } else {
                Vec3 b2 = (g2 - g2.dot(b1) * b1).normalized();
                if (smooth) {
                    // area of the shadow from the restricted support jets
                    double acc = 0.0;
                    for (int i = 0; i < ring; ++i) {
                        double th = 2.0 * kPi * i / ring;
                        Vec3 u = std::cos(th) * b1 + std::sin(th) * b2;
                        Vec3 du = -std::sin(th) * b1 + std::cos(th) * b2;
                        Jet2 jh = k.support_jet(u);
                        acc += jh.v * du.dot(jh.H * du);
                    }
                    proj_vol = 0.5 * acc * (2.0 * kPi / ring);
                } else {
                    std::vector<Vec2> dirs(ring);
                    std::vector<double> f(ring);
                    for (int i = 0; i < ring; ++i) {
                        double th = 2.0 * kPi * i / ring;
                        dirs[i] = Vec2(std::cos(th), std::sin(th));
                        f[i] = k.support(dirs[i].x() * b1 + dirs[i].y() * b2);
                    }
                    proj_vol = halfplane_intersection(dirs, f).area();
                }
            }
            const double est = scale * proj_vol;
            sum += est;
            sumsq += est * est;
        }
        done += batch;
        ++shard;
    }

    MonteCarloEstimate out;
    out.samples = sample_count;
    out.value = sum / sample_count;
    const double var = std::max(0.0, sumsq / sample_count - out.value * out.value);
    out.std_error = std::sqrt(var / sample_count);
    return out;
}

VolumeReport volume_report(const Body& k, const std::string& body_id, const SphereGrid& grid) {
    VolumeReport rep;
    rep.body_id = body_id;
    const std::string method = volume_method(k);
    const int top = (k.dim() == 2 && !as_segment_product(k)) ? 2 : 3;
    for (int j = 1; j <= top; ++j) {
        VolumeReport::Entry e;
        e.j = j;
        e.method = method;
        if (method == "monte-carlo-oracle") {
            if (j == 3) continue;  // projection oracle covers j <= n-1
            auto mc = kubota_oracle(k, j, 4000);
            e.value = mc.value;
            e.err_estimate = mc.std_error;
        } else {
            e.value = intrinsic_volume(k, j, grid);
            e.err_estimate = (method == "surface-integral") ? 1e-9 * std::abs(e.value) : 0.0;
        }
        rep.entries.push_back(e);
    }
    return rep;
}

}  // namespace quermass
