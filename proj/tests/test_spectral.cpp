#include <doctest.h>

#include <random>

#include "quermass/lpbm.hpp"
#include "quermass/spectral.hpp"

using namespace quermass;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_SUITE_BEGIN("spectral");

TEST_CASE("cone measure of balls") {
    SphereGrid g = build_grid(3, 12);
    ConeMeasure unit = cone_measure(make_ball(3, 1.0), 2, g);
    for (double d : unit.density) CHECK(d == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(unit.mass == doctest::Approx(4.0 * kPi / 3.0).epsilon(1e-10));

    ConeMeasure scaled = cone_measure(make_ball(3, 1.5), 2, g);
    for (double d : scaled.density)
        CHECK(d == doctest::Approx(std::pow(1.5, 3) / 3.0).epsilon(1e-12));
}

TEST_CASE("cone measure matches the intrinsic volume") {
    SphereGrid g = build_grid(3, 16);
    Body k = random_near_ball(5, 0.05, g);
    ConeMeasure mu = cone_measure(k, 2, g);
    double expected = intrinsic_volume_smooth(k, 2, g) / d_nj(3, 2);
    CHECK(mu.mass == doctest::Approx(expected).epsilon(1e-8));
}

TEST_CASE("cone measure rejects nonconvex input") {
    SphereGrid g = build_grid(3, 12);
    HarmonicExpansion h(3, 2);
    h.set_coeff(0, 0, std::sqrt(4.0 * kPi));
    h.set_coeff(2, 0, 0.9);  // positive h but indefinite A h
    Body spiky = make_harmonic(h);
    CHECK_THROWS(cone_measure(spiky, 2, g));
}

TEST_CASE("T at the ball is diagonal with the Laplacian spectrum") {
    SphereGrid g = build_grid(3, 16);
    SpectralProblem prob = assemble_T(make_ball(3, 1.0), 2, g, 8);

    CHECK(prob.symmetry_defect < 1e-8);

    // annihilates constants
    Eigen::VectorXd one = Eigen::VectorXd::Zero(prob.basis->size());
    one[prob.basis->index_of(0, 0)] = std::sqrt(4.0 * kPi);
    CHECK((prob.op * one).cwiseAbs().maxCoeff() < 1e-10);

    // diagonal with generalized eigenvalue l(l+1)/2 per degree block
    for (int a = 0; a < prob.basis->size(); ++a) {
        for (int b = 0; b < prob.basis->size(); ++b) {
            if (a == b) continue;
            CHECK(std::abs(prob.op(a, b)) < 1e-9);
        }
        int l = prob.basis->at(a).degree();
        CHECK(prob.op(a, a) ==
              doctest::Approx(0.5 * l * (l + 1.0) * prob.mass(a, a)).epsilon(1e-8));
    }

    // even basis is structurally even: no odd member exists to inject
    CHECK_THROWS(prob.basis->index_of(3, 0));
}

TEST_CASE("ball spectral gap and higher blocks") {
    SphereGrid g = build_grid(3, 16);
    SpectralProblem prob = assemble_T(make_ball(3, 1.0), 2, g, 8);
    CHECK(lambda_1e(prob) == doctest::Approx(3.0).epsilon(1e-8));

    auto spec = even_spectrum(prob, 14);
    for (int i = 0; i < 5; ++i) CHECK(std::abs(spec[i] - 3.0) < 1e-8);
    for (int i = 5; i < 14; ++i) CHECK(std::abs(spec[i] - 10.0) < 1e-8);
    for (double ev : spec) CHECK(ev >= -1e-8);

    // scale invariance: T is 0-homogeneous in the scale of h
    SpectralProblem scaled = assemble_T(make_ball(3, 2.0), 2, g, 8);
    CHECK(lambda_1e(scaled) == doctest::Approx(3.0).epsilon(1e-8));
}

TEST_CASE("near-ball gap stays above the negative-p threshold") {
    SphereGrid g = build_grid(3, 16);
    Body k = random_near_ball(97, 0.05, g);
    SpectralProblem prob = assemble_T(k, 2, g, 8);
    // threshold (j - p)/(j - 1) with j = 2, p = -0.9
    CHECK(lambda_1e(prob) > 2.9);
}

TEST_CASE("gap tends to the ball value as the perturbation shrinks") {
    SphereGrid g = build_grid(3, 16);
    double prev = 1.0;
    for (double eps : {0.06, 0.03, 0.015}) {
        Body k = random_near_ball(55, eps, g);
        double gap = std::abs(lambda_1e(assemble_T(k, 2, g, 8)) - 3.0);
        CHECK(gap < prev);
        prev = gap;
    }
    CHECK(prev < 0.05);
}

TEST_CASE("second derivative identity") {
    SphereGrid g = build_grid(3, 16);
    Body ball = make_ball(3, 1.0);

    // constant direction: both sides vanish
    HarmonicExpansion zc(3, 2);
    zc.set_coeff(0, 0, 0.7);
    auto rc = second_derivative_identity_check(ball, 2, 0.5, zc, g);
    CHECK(std::abs(rc.finite_difference) < 1e-8);
    CHECK(std::abs(rc.spectral) < 1e-12);

    HarmonicExpansion z(3, 2);
    z.set_coeff(2, 0, 0.8);
    z.set_coeff(2, -1, -0.3);
    for (double p : {0.5, -0.5}) {
        auto r = second_derivative_identity_check(ball, 2, p, z, g);
        CHECK(r.relative() < 1e-5);
    }

    Body k = random_near_ball(12, 0.04, g);
    auto r = second_derivative_identity_check(k, 2, 0.9, z, g);
    CHECK(r.relative() < 1e-5);

    CHECK_THROWS(second_derivative_identity_check(ball, 2, 0.0, z, g));
    CHECK_THROWS(second_derivative_identity_check(ball, 2, 0.5, z, g, 1e-12));
}

TEST_CASE("ivaki-milman inequality") {
    SphereGrid g = build_grid(3, 16);

    auto ball = ivaki_milman_check(make_ball(3, 1.0), 1, 0.5, 1.0, g);
    CHECK(std::abs(ball.lhs) < 1e-10);
    CHECK(std::abs(ball.rhs) < 1e-10);
    CHECK(ball.holds);

    // c = binom(n-1, j) mirrors the choice behind the uniqueness argument
    Body nb = random_near_ball(71, 0.05, g);
    CHECK(ivaki_milman_check(nb, 1, 0.5, 2.0, g).holds);

    for (unsigned seed = 0; seed < 20; ++seed) {
        Body k = random_near_ball(300 + seed, 0.08, g);
        for (double c : {0.5, 1.0, 2.0})
            for (double p : {0.0, 0.5}) {
                auto r = ivaki_milman_check(k, 1, p, c, g);
                CHECK(r.holds);
            }
    }

    CHECK_THROWS(ivaki_milman_check(make_ball(3, 1.0), 2, 0.5, 1.0, g));  // j = n-1
    CHECK_THROWS(ivaki_milman_check(make_ball(3, 1.0), 1, 0.5, -1.0, g));
}

TEST_SUITE_END();
