#include "quermass/lpbm.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

double power_mean(double a, double b, double p, double lambda) {
    if (p == 0.0) return std::pow(a, 1.0 - lambda) * std::pow(b, lambda);
    return std::pow((1.0 - lambda) * std::pow(a, p) + lambda * std::pow(b, p), 1.0 / p);
}

InequalityVerdict make_verdict(int n, int j, double p, double lambda, double lhs, double vk,
                               double vl) {
    InequalityVerdict v;
    v.n = n;
    v.j = j;
    v.p = p;
    v.lambda = lambda;
    v.lhs = lhs;
    v.rhs_geo = std::pow(vk, 1.0 - lambda) * std::pow(vl, lambda);
    v.rhs_p = (p == 0.0) ? v.rhs_geo : power_mean(vk, vl, p / j, lambda);
    v.margin_geo = (v.rhs_geo - lhs) / v.rhs_geo;
    v.margin_p = (v.rhs_p - lhs) / v.rhs_p;
    v.strict = std::abs(v.margin_geo) > 1e-12;
    return v;
}

bool homothetic_on_grid(const Body& k, const Body& l, const SphereGrid& grid) {
    double ratio = k.support(grid.nodes[0]) / l.support(grid.nodes[0]);
    for (int i = 1; i < grid.size(); ++i) {
        double r = k.support(grid.nodes[i]) / l.support(grid.nodes[i]);
        if (std::abs(r - ratio) > 1e-9 * std::abs(ratio)) return false;
    }
    return true;
}

}  // namespace

InequalityVerdict check_lpbm(const Body& k, const Body& l, double p, double lambda, int j,
                             const SphereGrid& grid) {
    Body comb = lp_combination(k, l, p, lambda, grid.resolution);
    const double lhs = intrinsic_volume(comb, j, grid);
    const double vk = intrinsic_volume(k, j, grid);
    const double vl = intrinsic_volume(l, j, grid);
    return make_verdict(grid.n, j, p, lambda, lhs, vk, vl);
}

InequalityVerdict reverse_j1_check(const Body& k2d, const Body& l2d, double p, double lambda,
                                   int resolution) {
    if (k2d.dim() != 2 || l2d.dim() != 2)
        throw std::invalid_argument("reverse_j1_check: planar bodies required");
    Body comb = lp_combination(k2d, l2d, p, lambda, resolution);
    const double lhs = intrinsic_volume_2d(comb, 1);
    const double vk = intrinsic_volume_2d(k2d, 1);
    const double vl = intrinsic_volume_2d(l2d, 1);
    InequalityVerdict v = make_verdict(2, 1, p, lambda, lhs, vk, vl);
    v.strict = !homothetic_on_grid(k2d, l2d, build_grid(2, 64));
    return v;
}

CounterexampleResult construct_counterexample(int n, int j, double p, double lambda,
                                              int resolution) {
    if (n != 3 || j != 2)
        throw std::invalid_argument("construct_counterexample: supported case is n = 3, j = 2");
    if (!(p >= 0.0 && p < 1.0))
        throw std::invalid_argument("construct_counterexample: p must lie in [0, 1)");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("construct_counterexample: lambda must lie in (0, 1)");

    // non-homothetic planar pair of equal V_1
    const Body square = make_square(1.0);
    const Body disk = make_ball(2, 4.0 / kPi);
    const Body mixed = lp_combination(square, disk, p, lambda, resolution);

    const double v1m = intrinsic_volume_2d(mixed, 1);
    const double v2m = intrinsic_volume_2d(mixed, 2);
    const double e = e_nj(3, 2);
    const double vk[2] = {4.0, 4.0};         // V_1, V_2 of the square
    const double vl[2] = {4.0, 16.0 / kPi};  // V_1, V_2 of the disk

    auto lhs_at = [&](double s) { return v2m + s * e * v1m; };
    auto rhs_geo_at = [&](double s) {
        return std::pow(vk[1] + s * e * vk[0], 1.0 - lambda) *
               std::pow(vl[1] + s * e * vl[0], lambda);
    };
    auto margin_at = [&](double s) { return (rhs_geo_at(s) - lhs_at(s)) / rhs_geo_at(s); };

    const double target = 1e-4;
    const double cap = 1e6;
    double s = 1.0;
    while (margin_at(s) < target) {
        s *= 2.0;
        if (s > cap)
            throw std::runtime_error(
                "construct_counterexample: no strict violation below the s cap");
    }

    // locate the onset of the violation
    double lo = 0.0, hi = s;
    if (margin_at(lo) >= 0.0) {
        hi = lo;
    } else {
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (margin_at(mid) < 0.0 ? lo : hi) = mid;
        }
    }
    const double s_cross = hi;

    CounterexampleResult out;
    out.s = s;
    out.s_crossover = s_cross;
    out.k_prime = segment_product(square, s, Vec3(0.0, 0.0, 1.0));
    out.l_prime = segment_product(disk, s, Vec3(0.0, 0.0, 1.0));
    out.verdict = make_verdict(3, 2, p, lambda, lhs_at(s), vk[1] + s * e * vk[0],
                               vl[1] + s * e * vl[0]);

    const double s0 = std::max(1e-2, 0.1 * std::max(s_cross, 1e-2));
    const double s1 = 10.0 * s;
    const int rows = 33;
    for (int i = 0; i < rows; ++i) {
        double si = s0 * std::pow(s1 / s0, static_cast<double>(i) / (rows - 1));
        out.scan.emplace_back(si, margin_at(si));
    }
    return out;
}

double cartesian_product_identity_check(const Body& a2d, const Body& c2d, double sb, double sd,
                                        double p, double lambda, const SphereGrid& grid,
                                        int ring_resolution) {
    if (a2d.dim() != 2 || c2d.dim() != 2)
        throw std::invalid_argument("cartesian_product_identity_check: planar bodies required");
    if (!(p >= 0.0 && p <= 1.0))
        throw std::invalid_argument("cartesian_product_identity_check: p must lie in [0, 1]");
    if (grid.n != 3)
        throw std::invalid_argument("cartesian_product_identity_check: 3-dimensional grid");

    const Vec3 axis(0.0, 0.0, 1.0);
    const Body aprod = segment_product(a2d, sb, axis);
    const Body cprod = segment_product(c2d, sd, axis);

    auto mean = [&](double x, double y) { return power_mean(x, y, p, lambda); };

    // right side: planar L_p sum on the dense ring plus the segment L_p sum
    const Body mixed2d = lp_combination(a2d, c2d, p, lambda, ring_resolution);
    const double s_mix = mean(sb, sd);
    const Body rhs = segment_product(mixed2d, s_mix, axis);

    // left side: the generic 3-dimensional machinery. The pointwise mean is
    // a support function when p = 1 or the summands coincide; otherwise the
    // Wulff body is evaluated by LP over the grid directions enriched with
    // the same equatorial ring and the poles.
    const SphereGrid ring = build_grid(2, ring_resolution);
    bool identical = true;
    for (int i = 0; i < ring.size() && identical; i += 4)
        identical = std::abs(aprod.support(ring.nodes[i]) - cprod.support(ring.nodes[i])) <=
                    1e-14 * std::abs(aprod.support(ring.nodes[i]));
    identical = identical && std::abs(sb - sd) <= 1e-14 * std::abs(sb);

    double worst = 0.0;
    if (p == 1.0 || identical) {
        for (int i = 0; i < grid.size(); ++i) {
            const Vec3& u = grid.nodes[i];
            double lhs = mean(aprod.support(u), cprod.support(u));
            worst = std::max(worst, std::abs(lhs - rhs.support(u)));
        }
        return worst;
    }

    std::vector<Vec3> dirs = grid.nodes;
    dirs.insert(dirs.end(), ring.nodes.begin(), ring.nodes.end());
    dirs.push_back(axis);
    dirs.push_back(-axis);
    std::vector<double> offsets(dirs.size());
    for (size_t i = 0; i < dirs.size(); ++i)
        offsets[i] = mean(aprod.support(dirs[i]), cprod.support(dirs[i]));
    const Body lhs_body = make_wulff3(dirs, offsets);

    for (int i = 0; i < grid.size(); ++i) {
        const Vec3& u = grid.nodes[i];
        worst = std::max(worst, std::abs(lhs_body.support(u) - rhs.support(u)));
    }
    return worst;
}

Body random_near_ball(unsigned seed, double c2_target, const SphereGrid& grid, int max_degree) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    HarmonicExpansion h(3, max_degree);
    for (int l = 2; l <= max_degree; l += 2)
        for (int m = -l; m <= l; ++m) h.set_coeff(l, m, gauss(rng));

    // measure the raw perturbation at a tiny amplitude, then rescale exactly
    HarmonicExpansion probe = h;
    probe.coeffs() *= 1e-3;
    probe.set_coeff(0, 0, std::sqrt(4.0 * kPi));
    double raw = c2_distance_to_ball(make_harmonic(probe), grid) / 1e-3;
    h.coeffs() *= c2_target / raw;
    h.set_coeff(0, 0, std::sqrt(4.0 * kPi));
    return make_harmonic(h);
}

}  // namespace quermass
