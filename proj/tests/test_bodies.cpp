#include <doctest.h>

#include <random>

#include "quermass/bodies.hpp"
#include "quermass/lp.hpp"

using namespace quermass;

namespace {

constexpr double kPi = 3.14159265358979323846;

HarmonicExpansion near_ball_expansion(unsigned seed, double amplitude) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    HarmonicExpansion h(3, 4);
    h.set_coeff(0, 0, std::sqrt(4.0 * kPi));
    for (int l = 2; l <= 4; l += 2)
        for (int m = -l; m <= l; ++m) h.set_coeff(l, m, amplitude * gauss(rng));
    return h;
}

// independent oracle: enumerate all constraint triples, keep feasible vertices
double brute_force_lp(const std::vector<Vec3>& a, const std::vector<double>& b, const Vec3& c,
                      double bound) {
    std::vector<Vec3> normals = a;
    std::vector<double> offsets = b;
    for (int axis = 0; axis < 3; ++axis)
        for (double sgn : {-1.0, 1.0}) {
            normals.push_back(sgn * Vec3::Unit(axis));
            offsets.push_back(bound);
        }
    const int m = static_cast<int>(normals.size());
    double best = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            for (int k = j + 1; k < m; ++k) {
                Mat3 mat;
                mat.row(0) = normals[i];
                mat.row(1) = normals[j];
                mat.row(2) = normals[k];
                if (std::abs(mat.determinant()) < 1e-10) continue;
                Vec3 x = mat.partialPivLu().solve(Vec3(offsets[i], offsets[j], offsets[k]));
                bool feasible = true;
                for (int t = 0; t < m && feasible; ++t)
                    feasible = normals[t].dot(x) <= offsets[t] + 1e-8;
                if (feasible) best = std::max(best, c.dot(x));
            }
    return best;
}

}  // namespace

TEST_SUITE_BEGIN("bodies");

TEST_CASE("support values of basic bodies") {
    Body ball = make_ball(3, 2.0);
    CHECK(ball.support(Vec3(0.0, 0.0, 1.0)) == doctest::Approx(2.0));
    CHECK(ball.support(Vec3(1.0, 1.0, 1.0).normalized()) == doctest::Approx(2.0));

    Body square = make_square(1.0);
    double c45 = std::sqrt(0.5);
    CHECK(square.support(Vec3(c45, c45, 0.0)) == doctest::Approx(std::sqrt(2.0)));
    CHECK(square.support(Vec3(1.0, 0.0, 0.0)) == doctest::Approx(1.0));

    Vec3 axis(0.0, 0.0, 1.0);
    Body prod = segment_product(make_ball(2, 1.0), 3.0, axis);
    CHECK(prod.support(axis) == doctest::Approx(3.0));
}

TEST_CASE("segment product support formula") {
    Vec3 axis = Vec3(0.0, 0.0, 1.0);
    Body disk = make_ball(2, 1.0);
    Body prod = segment_product(disk, 1.0, axis);
    Vec3 u = (Vec3(1.0, 0.0, 0.0) + axis).normalized();  // 45 degrees
    CHECK(prod.support(u) == doctest::Approx(std::sqrt(2.0)));

    Body flat = segment_product(make_square(1.0), 0.0, axis);
    CHECK(flat.support(Vec3(1.0, 1.0, 0.5).normalized()) ==
          doctest::Approx(make_square(1.0).support(Vec3(1.0, 1.0, 0.5).normalized())));
}

TEST_CASE("support is even") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<Body> zoo = {make_ball(3, 1.5),
                             make_ellipsoid(Vec3(1.0, 2.0, 0.7).asDiagonal()),
                             make_harmonic(near_ball_expansion(11, 0.02)),
                             segment_product(make_square(1.0), 2.0, Vec3(0.0, 0.0, 1.0))};
    for (const auto& body : zoo)
        for (int t = 0; t < 20; ++t) {
            Vec3 u(gauss(rng), gauss(rng), gauss(rng));
            u.normalize();
            CHECK(body.support(u) == body.support(-u));
        }
}

TEST_CASE("support subadditivity on the 1-homogeneous extension") {
    std::mt19937_64 rng(5);
    std::normal_distribution<double> gauss;
    std::vector<Body> zoo = {make_ball(3, 1.0),
                             make_ellipsoid(Vec3(0.8, 1.4, 1.1).asDiagonal()),
                             make_harmonic(near_ball_expansion(4, 0.03)),
                             segment_product(make_ball(2, 1.0), 1.5, Vec3(0.0, 0.0, 1.0))};
    for (const auto& body : zoo)
        for (int t = 0; t < 50; ++t) {
            Vec3 x(gauss(rng), gauss(rng), gauss(rng));
            Vec3 y(gauss(rng), gauss(rng), gauss(rng));
            CHECK(body.support(x + y) <= body.support(x) + body.support(y) + 1e-10);
        }
}

TEST_CASE("wulff shape 2d") {
    SphereGrid g = build_grid(2, 64);

    std::vector<double> ones(g.size(), 1.0);
    WulffResult w1 = wulff_shape_2d(g.nodes, ones);
    for (int i = 0; i < g.size(); ++i) CHECK(w1.clipped[i] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(w1.is_already_convex);

    Body square = make_square(1.0);
    std::vector<double> fsq(g.size());
    for (int i = 0; i < g.size(); ++i) fsq[i] = square.support(g.nodes[i]);
    WulffResult w2 = wulff_shape_2d(g.nodes, fsq);
    CHECK(w2.is_already_convex);
    for (int i = 0; i < g.size(); ++i)
        CHECK(w2.clipped[i] == doctest::Approx(fsq[i]).epsilon(1e-9));

    // not a support function: clipping must occur somewhere, never upward
    std::vector<double> f3(g.size());
    for (int i = 0; i < g.size(); ++i) {
        double th = std::atan2(g.nodes[i].y(), g.nodes[i].x());
        f3[i] = 1.0 + 0.5 * std::pow(std::cos(2.0 * th), 4);
    }
    WulffResult w3 = wulff_shape_2d(g.nodes, f3);
    CHECK(!w3.is_already_convex);
    double max_gap = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        CHECK(w3.clipped[i] <= f3[i] + 1e-10);
        max_gap = std::max(max_gap, f3[i] - w3.clipped[i]);
    }
    CHECK(max_gap > 1e-3);
}

TEST_CASE("lp solver agrees with vertex enumeration") {
    std::mt19937_64 rng(17);
    std::normal_distribution<double> gauss;
    std::uniform_real_distribution<double> unif(0.5, 2.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<Vec3> a(24);
        std::vector<double> b(24);
        for (int i = 0; i < 24; ++i) {
            a[i] = Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized();
            b[i] = unif(rng);
        }
        Vec3 c = Vec3(gauss(rng), gauss(rng), gauss(rng)).normalized();
        LpResult got = lp_maximize(a, b, c, 50.0);
        double expect = brute_force_lp(a, b, c, 50.0);
        CHECK(got.value == doctest::Approx(expect).epsilon(1e-7));
        for (size_t i = 0; i < a.size(); ++i) CHECK(a[i].dot(got.x) <= b[i] + 1e-7);
    }
}

TEST_CASE("wulff shape 3d") {
    SphereGrid g = build_grid(3, 10);

    std::vector<double> ones(g.size(), 1.0);
    WulffResult w1 = wulff_shape_3d(g, ones);
    for (int i = 0; i < g.size(); ++i) CHECK(std::abs(w1.clipped[i] - 1.0) < 1e-9);
    CHECK(w1.is_already_convex);

    Body ell = make_ellipsoid(Vec3(1.0, 2.0, 3.0).asDiagonal());
    std::vector<double> fe(g.size());
    for (int i = 0; i < g.size(); ++i) fe[i] = ell.support(g.nodes[i]);
    WulffResult w2 = wulff_shape_3d(g, fe);
    CHECK(w2.is_already_convex);
    for (int i = 0; i < g.size(); ++i) CHECK(std::abs(w2.clipped[i] - fe[i]) < 1e-8);

    // geometric mean of cube and ball supports: dominated either way
    Body cube = segment_product(make_square(1.0), 1.0, Vec3(0.0, 0.0, 1.0));
    std::vector<double> f3(g.size());
    for (int i = 0; i < g.size(); ++i) f3[i] = std::sqrt(cube.support(g.nodes[i]));
    WulffResult w3 = wulff_shape_3d(g, f3);
    for (int i = 0; i < g.size(); ++i) CHECK(w3.clipped[i] <= f3[i] + 1e-9);

    // geometric mean of two orthogonal cylinders: subadditivity fails at the
    // diagonal between the axes, so the Wulff pass must clip
    Body cyl_z = segment_product(make_ball(2, 1.0), 4.0, Vec3(0.0, 0.0, 1.0));
    Body cyl_x = segment_product(make_ball(2, 1.0), 4.0, Vec3(1.0, 0.0, 0.0));
    std::vector<double> f4(g.size());
    for (int i = 0; i < g.size(); ++i)
        f4[i] = std::sqrt(cyl_z.support(g.nodes[i]) * cyl_x.support(g.nodes[i]));
    WulffResult w4 = wulff_shape_3d(g, f4);
    double max_gap = 0.0;
    for (int i = 0; i < g.size(); ++i) {
        CHECK(w4.clipped[i] <= f4[i] + 1e-9);
        max_gap = std::max(max_gap, f4[i] - w4.clipped[i]);
    }
    CHECK(max_gap > 1e-2);
    CHECK(!w4.is_already_convex);
}

TEST_CASE("lp combination idempotence") {
    SphereGrid g = build_grid(3, 8);
    Body k = make_harmonic(near_ball_expansion(21, 0.03));
    for (double p : {-1.0, 0.0, 0.5, 1.0}) {
        Body m = lp_combination(k, k, p, 0.3);
        for (int i = 0; i < g.size(); ++i)
            CHECK(std::abs(m.support(g.nodes[i]) - k.support(g.nodes[i])) < 1e-10);
    }
}

TEST_CASE("p=1 combination is the Minkowski combination") {
    SphereGrid g = build_grid(3, 8);
    Body k = make_ellipsoid(Vec3(1.0, 1.3, 0.8).asDiagonal());
    Body l = make_ball(3, 2.0);
    Body m = lp_combination(k, l, 1.0, 0.25);
    for (int i = 0; i < g.size(); ++i) {
        double expect = 0.75 * k.support(g.nodes[i]) + 0.25 * l.support(g.nodes[i]);
        CHECK(m.support(g.nodes[i]) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("near-ball combinations skip the Wulff pass") {
    Body k = make_harmonic(near_ball_expansion(31, 0.02));
    Body l = make_harmonic(near_ball_expansion(32, 0.02));
    Body m = lp_combination(k, l, -0.5, 0.5);
    CHECK(m.smooth());  // verbatim p-mean of smooth bodies
}

TEST_CASE("inclusion monotonicity in p") {
    SphereGrid g = build_grid(3, 8);
    std::vector<std::pair<Body, Body>> pairs = {
        {make_harmonic(near_ball_expansion(41, 0.03)),
         make_harmonic(near_ball_expansion(42, 0.03))},
        {make_ball(3, 0.9), make_ellipsoid(Vec3(1.1, 0.95, 1.0).asDiagonal())}};
    const double lambda = 0.4;
    for (const auto& [k, l] : pairs) {
        std::vector<double> ps = {-1.0, 0.0, 0.5, 1.0};
        for (size_t t = 0; t + 1 < ps.size(); ++t) {
            Body lo = lp_combination(k, l, ps[t], lambda);
            Body hi = lp_combination(k, l, ps[t + 1], lambda);
            for (int i = 0; i < g.size(); ++i)
                CHECK(lo.support(g.nodes[i]) <= hi.support(g.nodes[i]) + 1e-9);
        }
    }

    // 2d pair routed through the Wulff pass
    SphereGrid c = build_grid(2, 32);
    Body sq = make_square(1.0);
    Body disk = make_ball(2, 4.0 / kPi);
    Body lo = lp_combination(sq, disk, 0.25, 0.5, 128);
    Body hi = lp_combination(sq, disk, 0.75, 0.5, 128);
    for (int i = 0; i < c.size(); ++i)
        CHECK(lo.support(c.nodes[i]) <= hi.support(c.nodes[i]) + 1e-9);
}

TEST_CASE("combination rejects invalid parameters") {
    Body k = make_ball(3, 1.0);
    CHECK_THROWS(lp_combination(k, k, 1.5, 0.5));
    CHECK_THROWS(lp_combination(k, k, 0.5, 0.0));
    CHECK_THROWS(lp_combination(k, make_ball(2, 1.0), 0.5, 0.5));
}

TEST_CASE("polygon validation") {
    CHECK_THROWS(make_polygon({{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}}));           // odd count
    CHECK_THROWS(make_polygon({{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.5, -1.0}}));  // unpaired
}

TEST_CASE("harmonic body must be positive") {
    HarmonicExpansion h(3, 2);
    h.set_coeff(2, 0, 5.0);  // no constant term: changes sign
    CHECK_THROWS(make_harmonic(h));
}

TEST_CASE("body json round-trip") {
    std::vector<Body> zoo = {
        make_ball(3, 2.5),
        make_ellipsoid(Vec3(1.0, 2.0, 3.0).asDiagonal()),
        make_square(1.5),
        make_harmonic(near_ball_expansion(51, 0.02)),
        segment_product(make_ball(2, 4.0 / kPi), 5.0, Vec3(0.0, 0.0, 1.0)),
        lp_combination(make_square(1.0), make_ball(2, 4.0 / kPi), 0.5, 0.5, 128)};
    std::mt19937_64 rng(13);
    std::normal_distribution<double> gauss;
    for (const auto& body : zoo) {
        Body copy = Body::from_json(body.to_json());
        CHECK(copy.kind() == body.kind());
        for (int t = 0; t < 25; ++t) {
            Vec3 u(gauss(rng), gauss(rng), gauss(rng));
            u.normalize();
            CHECK(copy.support(u) == doctest::Approx(body.support(u)).epsilon(1e-12));
        }
    }
}

TEST_CASE("c2 distance to the ball") {
    SphereGrid g = build_grid(3, 12);
    CHECK(c2_distance_to_ball(make_ball(3, 1.0), g) < 1e-14);
    Body k = make_harmonic(near_ball_expansion(61, 0.01));
    double d = c2_distance_to_ball(k, g);
    CHECK(d > 0.0);
    CHECK(d < 0.5);
    // the measurement is a norm in the perturbation, so it scales exactly
    double d2 = c2_distance_to_ball(make_harmonic(near_ball_expansion(61, 0.005)), g);
    CHECK(d2 == doctest::Approx(0.5 * d).epsilon(1e-9));
}

TEST_SUITE_END();
