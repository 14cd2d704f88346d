#include <doctest.h>

#include <random>

#include "quermass/volumes.hpp"

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

Body unit_cube_side2() {
    return segment_product(make_square(1.0), 1.0, Vec3(0.0, 0.0, 1.0));
}

}  // namespace

TEST_SUITE_BEGIN("volumes");

TEST_CASE("dimensional constants") {
    CHECK(unit_ball_volume(0) == doctest::Approx(1.0));
    CHECK(unit_ball_volume(1) == doctest::Approx(2.0));
    CHECK(unit_ball_volume(2) == doctest::Approx(kPi));
    CHECK(unit_ball_volume(3) == doctest::Approx(4.0 * kPi / 3.0));

    auto c32 = dimensional_constants(3, 2);
    CHECK(c32.kappa == doctest::Approx(2.0));
    CHECK(c32.d == doctest::Approx(1.5));
    CHECK(c32.e == doctest::Approx(2.0));

    auto c31 = dimensional_constants(3, 1);
    CHECK(c31.d == doctest::Approx(3.0 / kPi));

    // C_{n,j} gives equality for balls: V_{j+1}(B) = C_{n,j} V_j(B)^{(j+1)/j}
    for (int j : {1, 2}) {
        double vj = d_nj(3, j) * unit_ball_volume(3);
        double vj1 = (j + 1 <= 2 ? d_nj(3, j + 1) : 1.0) * unit_ball_volume(3);
        double c = dimensional_constants(3, j).c_af;
        CHECK(vj1 == doctest::Approx(c * std::pow(vj, (j + 1.0) / j)).epsilon(1e-12));
    }

    CHECK_THROWS(dimensional_constants(3, 3));
    CHECK_THROWS(dimensional_constants(3, 0));
}

TEST_CASE("intrinsic volumes of the unit ball") {
    SphereGrid g = build_grid(3, 16);
    Body ball = make_ball(3, 1.0);
    CHECK(intrinsic_volume_smooth(ball, 1, g) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(intrinsic_volume_smooth(ball, 2, g) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(intrinsic_volume_smooth(ball, 3, g) ==
          doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-10));
    CHECK_THROWS(intrinsic_volume_smooth(unit_cube_side2(), 2, g));
}

TEST_CASE("planar intrinsic volumes") {
    Body square = make_square(1.0);
    CHECK(intrinsic_volume_2d(square, 1) == doctest::Approx(4.0));
    CHECK(intrinsic_volume_2d(square, 2) == doctest::Approx(4.0));

    Body disk = make_ball(2, 4.0 / kPi);
    CHECK(intrinsic_volume_2d(disk, 1) == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(intrinsic_volume_2d(disk, 2) == doctest::Approx(16.0 / kPi).epsilon(1e-10));

    Body ellipse = make_ellipsoid2(1.0, 2.0);
    CHECK(intrinsic_volume_2d(ellipse, 2) == doctest::Approx(2.0 * kPi).epsilon(1e-10));
}

TEST_CASE("product formula") {
    Body square = make_square(1.0);
    CHECK(intrinsic_volume_product(square, 5.0, 2) == doctest::Approx(44.0));
    Body disk = make_ball(2, 4.0 / kPi);
    CHECK(intrinsic_volume_product(disk, 5.0, 2) ==
          doctest::Approx(16.0 / kPi + 40.0).epsilon(1e-10));
    CHECK(intrinsic_volume_product(square, 0.0, 2) == doctest::Approx(4.0));
    CHECK_THROWS(intrinsic_volume_product(square, 1.0, 0));

    // cube of side 2 through the dispatcher
    SphereGrid g = build_grid(3, 8);
    Body cube = unit_cube_side2();
    CHECK(intrinsic_volume(cube, 1, g) == doctest::Approx(6.0));
    CHECK(intrinsic_volume(cube, 2, g) == doctest::Approx(12.0));
    CHECK(intrinsic_volume(cube, 3, g) == doctest::Approx(8.0));
}

TEST_CASE("homogeneity under dilation") {
    SphereGrid g = build_grid(3, 12);
    Body k = make_harmonic(near_ball_expansion(3, 0.03));
    for (double t : {0.5, 2.0})
        for (int j : {1, 2, 3}) {
            double lhs = intrinsic_volume_smooth(k.scaled(t), j, g);
            double rhs = std::pow(t, j) * intrinsic_volume_smooth(k, j, g);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
        }
    Body square = make_square(1.0);
    CHECK(intrinsic_volume_2d(square.scaled(2.0), 2) == doctest::Approx(16.0));
    CHECK(intrinsic_volume_2d(square.scaled(2.0), 1) == doctest::Approx(8.0));
}

TEST_CASE("monotonicity under inclusion") {
    SphereGrid g = build_grid(3, 12);
    Body inner = make_ball(3, 0.95);
    Body outer = make_ellipsoid(Vec3(1.0, 1.1, 1.2).asDiagonal());
    for (int i = 0; i < g.size(); ++i)
        REQUIRE(inner.support(g.nodes[i]) <= outer.support(g.nodes[i]));
    for (int j : {1, 2, 3})
        CHECK(intrinsic_volume_smooth(inner, j, g) <= intrinsic_volume_smooth(outer, j, g));
}

TEST_CASE("steiner polynomial consistency") {
    SphereGrid g = build_grid(3, 16);
    CHECK(steiner_check(make_ball(3, 1.0), g, {1.0}) < 1e-8);
    CHECK(steiner_check(make_ellipsoid(Vec3(1.0, 1.0, 1.5).asDiagonal()), g,
                        {0.1, 0.5, 1.0}) < 1e-6);
    CHECK(steiner_check(unit_cube_side2(), g, {0.25, 1.0, 2.0}) < 1e-10);

    // the direct side of the ball check is a parallel ball of volume 32 pi/3
    Body big = outer_parallel(make_ball(3, 1.0), 1.0);
    CHECK(intrinsic_volume_smooth(big, 3, g) ==
          doctest::Approx(32.0 * kPi / 3.0).epsilon(1e-10));
}

TEST_CASE("kubota oracle") {
    SphereGrid g = build_grid(3, 16);

    auto ball2 = kubota_oracle(make_ball(3, 1.0), 2, 500, 7);
    CHECK(std::abs(ball2.value - 2.0 * kPi) < 3.0 * ball2.std_error + 1e-9);
    CHECK(ball2.std_error < 1e-10);  // projections of a ball have zero variance

    auto cube1 = kubota_oracle(unit_cube_side2(), 1, 4000, 7);
    CHECK(std::abs(cube1.value - 6.0) < 3.0 * cube1.std_error);

    Body ell = make_ellipsoid(Vec3(0.8, 1.1, 1.4).asDiagonal());
    auto ell2 = kubota_oracle(ell, 2, 3000, 11);
    CHECK(std::abs(ell2.value - intrinsic_volume_smooth(ell, 2, g)) < 3.0 * ell2.std_error);

    // cross-method agreement on a segment product
    Body prod = segment_product(make_ball(2, 4.0 / kPi), 2.0, Vec3(0.0, 0.0, 1.0));
    auto mc = kubota_oracle(prod, 2, 8000, 13);
    CHECK(std::abs(mc.value - intrinsic_volume(prod, 2, g)) < 3.0 * mc.std_error);

    // determinism under a fixed seed
    auto again = kubota_oracle(ell, 2, 3000, 11);
    CHECK(again.value == ell2.value);

    CHECK_THROWS(kubota_oracle(make_ball(3, 1.0), 2, 50, 1));
}

TEST_CASE("aleksandrov-fenchel special case") {
    SphereGrid g = build_grid(3, 12);
    std::vector<Body> zoo = {make_ball(3, 1.0), make_ball(3, 2.0),
                             make_ellipsoid(Vec3(0.7, 1.0, 1.6).asDiagonal()),
                             unit_cube_side2(),
                             segment_product(make_ball(2, 1.0), 3.0, Vec3(0.0, 0.0, 1.0))};
    for (unsigned s = 0; s < 50; ++s)
        zoo.push_back(make_harmonic(near_ball_expansion(100 + s, 0.02)));
    for (const auto& k : zoo)
        for (int j : {1, 2}) {
            double vj = intrinsic_volume(k, j, g);
            double vj1 = intrinsic_volume(k, j + 1, g);
            double bound = dimensional_constants(3, j).c_af * std::pow(vj, (j + 1.0) / j);
            CHECK(vj1 <= bound * (1.0 + 1e-9));
        }
    // equality for balls
    for (double r : {1.0, 1.7})
        for (int j : {1, 2}) {
            double vj = intrinsic_volume_smooth(make_ball(3, r), j, g);
            double vj1 = intrinsic_volume_smooth(make_ball(3, r), j + 1, g);
            double bound = dimensional_constants(3, j).c_af * std::pow(vj, (j + 1.0) / j);
            CHECK(vj1 == doctest::Approx(bound).epsilon(1e-8));
        }
}

TEST_CASE("volume report") {
    SphereGrid g = build_grid(3, 12);
    VolumeReport rep = volume_report(unit_cube_side2(), "cube", g);
    REQUIRE(rep.entries.size() == 3);
    CHECK(rep.entries[0].value == doctest::Approx(6.0));
    CHECK(rep.entries[1].value == doctest::Approx(12.0));
    CHECK(rep.entries[2].value == doctest::Approx(8.0));
    CHECK(rep.entries[0].method == "product-formula");
}

TEST_SUITE_END();
