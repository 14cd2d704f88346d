#include <doctest.h>

#include <random>

#include "quermass/curvature.hpp"
#include "quermass/volumes.hpp"

using namespace quermass;

namespace {

MatX random_symmetric(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss;
    MatX a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) a(i, j) = a(j, i) = gauss(rng);
    return a;
}

}  // namespace

TEST_SUITE_BEGIN("curvature");

TEST_CASE("mixed discriminant basics") {
    MatX a = MatX::Zero(2, 2);
    a.diagonal() << 2.0, 3.0;
    CHECK(mixed_discriminant({a, a}) == doctest::Approx(6.0));

    MatX i2 = MatX::Identity(2, 2);
    MatX d = MatX::Zero(2, 2);
    d.diagonal() << 5.0, 9.0;
    CHECK(mixed_discriminant({i2, d}) == doctest::Approx(0.5 * (5.0 + 9.0)));

    MatX i3 = MatX::Identity(3, 3);
    MatX t = MatX::Zero(3, 3);
    t.diagonal() << 1.0, 2.0, 3.0;
    CHECK(mixed_discriminant({i3, i3, t}) == doctest::Approx(2.0));
}

TEST_CASE("cofactor operator") {
    MatX a = MatX::Zero(2, 2);
    a.diagonal() << 3.0, 7.0;
    MatX q = cofactor_operator({a});
    CHECK(q(0, 0) == doctest::Approx(3.5));
    CHECK(q(1, 1) == doctest::Approx(1.5));
    CHECK(std::abs(q(0, 1)) < 1e-14);

    MatX qi = cofactor_operator({MatX::Identity(2, 2)});
    CHECK((qi - 0.5 * MatX::Identity(2, 2)).norm() < 1e-14);
    // contraction with the identity reproduces D_2(I, I) = det I = 1
    CHECK((MatX::Identity(2, 2).cwiseProduct(qi)).sum() == doctest::Approx(1.0));

    // sigma matrix of Theorem D at h == 1, n = 3, j = 1
    MatX sigma = sigma_matrix(MatX::Identity(2, 2), 3, 1);
    CHECK((sigma - MatX::Identity(2, 2)).norm() < 1e-14);

    // contracting Q against A1 reproduces the mixed discriminant
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 10; ++trial) {
        MatX a1 = random_symmetric(3, rng);
        MatX a2 = random_symmetric(3, rng);
        MatX a3 = random_symmetric(3, rng);
        MatX q3 = cofactor_operator({a2, a3});
        double contracted = a1.cwiseProduct(q3).sum();
        CHECK(contracted == doctest::Approx(mixed_discriminant({a1, a2, a3})).epsilon(1e-12));
    }
}

TEST_CASE("cofactor and polarization paths agree") {
    std::mt19937_64 rng(7);
    for (int n : {2, 3}) {
        for (int trial = 0; trial < 20; ++trial) {
            std::vector<MatX> mats;
            for (int i = 0; i < n; ++i) mats.push_back(random_symmetric(n, rng));
            double a = mixed_discriminant_cofactor(mats);
            double b = mixed_discriminant_polarization(mats);
            CHECK(a == doctest::Approx(b).epsilon(1e-11));
        }
    }
    // polarization path: D_N(A, ..., A) = det A up to N = 6
    for (int n : {4, 5, 6}) {
        MatX a = random_symmetric(n, rng);
        std::vector<MatX> mats(n, a);
        CHECK(mixed_discriminant_polarization(mats) ==
              doctest::Approx(a.determinant()).epsilon(1e-10));
    }
}

TEST_CASE("multilinearity, symmetry, positivity") {
    std::mt19937_64 rng(11);
    std::normal_distribution<double> gauss;
    for (int trial = 0; trial < 10; ++trial) {
        MatX a = random_symmetric(3, rng), b = random_symmetric(3, rng);
        MatX c = random_symmetric(3, rng), d = random_symmetric(3, rng);
        double al = gauss(rng), be = gauss(rng);
        double lhs = mixed_discriminant({MatX(al * a + be * b), c, d});
        double rhs = al * mixed_discriminant({a, c, d}) + be * mixed_discriminant({b, c, d});
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));

        CHECK(mixed_discriminant({a, c, d}) == doctest::Approx(mixed_discriminant({c, d, a})));
        CHECK(mixed_discriminant({a, c, d}) == doctest::Approx(mixed_discriminant({d, c, a})));

        MatX pa = a * a.transpose(), pc = c * c.transpose(), pd = d * d.transpose();
        CHECK(mixed_discriminant({pa, pc, pd}) >= -1e-12);
    }
    CHECK_THROWS(mixed_discriminant({MatX::Identity(2, 2), MatX::Identity(3, 3)}));
}

TEST_CASE("curvature function of balls") {
    SphereGrid g = build_grid(3, 8);
    for (double r : {1.0, 2.5}) {
        Body ball = make_ball(3, r);
        for (int j : {1, 2}) {
            CurvatureField f = curvature_function(ball, j, g);
            for (int i = 0; i < g.size(); ++i) {
                CHECK(f.values[i] == doctest::Approx(std::pow(r, j)).epsilon(1e-10));
                CHECK(f.radii[i][0] == doctest::Approx(r).epsilon(1e-10));
            }
        }
    }
    CHECK_THROWS(curvature_function(make_square(1.0), 1, build_grid(2, 8)));
}

TEST_CASE("s_1 of an ellipsoid against the spectral Laplacian oracle") {
    SphereGrid g = build_grid(3, 24);
    Body ell = make_ellipsoid(Vec3(1.0, 1.0, 1.2).asDiagonal());

    // independent path: expand h in harmonics, apply (Delta h + 2h)/2 spectrally
    auto basis = even_basis(3, 20);
    std::vector<double> coeffs(basis->size());
    for (int b = 0; b < basis->size(); ++b) {
        double acc = 0.0;
        for (int i = 0; i < g.size(); ++i)
            acc += g.weights[i] * ell.support(g.nodes[i]) * basis->at(b).value(g.nodes[i]);
        coeffs[b] = acc;
    }
    auto s1_oracle = [&](const Vec3& u) {
        double s = 0.0;
        for (int b = 0; b < basis->size(); ++b) {
            int l = basis->at(b).degree();
            s += coeffs[b] * 0.5 * (2.0 - l * (l + 1.0)) * basis->at(b).value(u);
        }
        return s;
    };

    CurvatureField f = curvature_function(ell, 1, g);
    for (int i = 0; i < g.size(); i += 7)
        CHECK(std::abs(f.values[i] - s1_oracle(g.nodes[i])) < 1e-8);
}

TEST_CASE("s_j equals the normalized elementary symmetric polynomial") {
    SphereGrid g = build_grid(3, 10);
    Body ell = make_ellipsoid(Vec3(0.9, 1.1, 1.3).asDiagonal());
    CurvatureField s1 = curvature_function(ell, 1, g);
    CurvatureField s2 = curvature_function(ell, 2, g);
    for (int i = 0; i < g.size(); ++i) {
        double l1 = s1.radii[i][0], l2 = s1.radii[i][1];
        CHECK(std::abs(s1.values[i] - 0.5 * (l1 + l2)) < 1e-8);
        CHECK(std::abs(s2.values[i] - l1 * l2) < 1e-8);
        CHECK(s1.values[i] >= 0.0);
        CHECK(s2.values[i] >= 0.0);
    }
}

TEST_CASE("mixed curvature") {
    SphereGrid g = build_grid(3, 8);
    Body ball = make_ball(3, 1.0);
    Body ell = make_ellipsoid(Vec3(1.0, 1.2, 0.8).asDiagonal());

    auto all_ball = mixed_curvature({ball, ball}, g);
    for (double v : all_ball) CHECK(v == doctest::Approx(1.0).epsilon(1e-10));

    // multilinearity: s(c*h, h) = c * det A h
    const double c = 1.7;
    auto scaled = mixed_curvature({ell.scaled(c), ell}, g);
    CurvatureField det = curvature_function(ell, 2, g);
    for (int i = 0; i < g.size(); ++i)
        CHECK(scaled[i] == doctest::Approx(c * det.values[i]).epsilon(1e-10));

    // trace identity: s(h_E, h_B) = s_1(E)
    auto mixed = mixed_curvature({ell, ball}, g);
    CurvatureField s1 = curvature_function(ell, 1, g);
    for (int i = 0; i < g.size(); ++i)
        CHECK(mixed[i] == doctest::Approx(s1.values[i]).epsilon(1e-10));

    // permutation symmetry
    auto swapped = mixed_curvature({ball, ell}, g);
    for (int i = 0; i < g.size(); ++i)
        CHECK(mixed[i] == doctest::Approx(swapped[i]).epsilon(1e-12));
}

TEST_CASE("degenerate curvature of the equatorial disk") {
    Body disk = make_ball(2, 1.0);
    std::mt19937_64 rng(23);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 20; ++t) {
        Vec3 u(gauss(rng), gauss(rng), gauss(rng));
        u.normalize();
        if (std::hypot(u.x(), u.y()) < 1e-3) continue;
        double cosang = std::hypot(u.x(), u.y());
        CHECK(degenerate_curvature(disk, 1, u) == doctest::Approx(0.5 / cosang).epsilon(1e-12));
        // h^j s_j = 1 - j/(n-1) = 1/2  (h(u) = <u, u~> for the unit disk)
        double h = disk.support(u);
        CHECK(h * degenerate_curvature(disk, 1, u) == doctest::Approx(0.5).epsilon(1e-12));
    }
    CHECK_THROWS(degenerate_curvature(disk, 1, Vec3(0.0, 0.0, 1.0)));
}

TEST_CASE("degenerate curvature of an ellipse base") {
    Body ellipse = make_ellipsoid2(1.0, 2.0);
    Vec3 u(0.6, -0.8, 0.0);  // equatorial direction: u~ = u
    double expect = 0.5 * curvature_sj(ellipse, 1, u, 2);
    CHECK(degenerate_curvature(ellipse, 1, u) == doctest::Approx(expect).epsilon(1e-12));
    // closed-form check: radius of curvature of an ellipse is a^2 b^2 / h^3
    double h = ellipse.support(u);
    CHECK(curvature_sj(ellipse, 1, u, 2) == doctest::Approx(4.0 / std::pow(h, 3)).epsilon(1e-10));
}

TEST_SUITE_END();
