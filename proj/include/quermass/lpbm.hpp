#pragma once

#include <utility>

#include "quermass/volumes.hpp"

namespace quermass {

struct InequalityVerdict {
    int n = 3;
    int j = 2;
    double p = 0.0;
    double lambda = 0.5;
    double lhs = 0.0;      // V_j of the combination
    double rhs_geo = 0.0;  // geometric-mean bound V_j(K)^(1-lambda) V_j(L)^lambda
    double rhs_p = 0.0;    // p-mean bound (equals rhs_geo when p = 0)
    double margin_geo = 0.0;  // (rhs_geo - lhs) / rhs_geo
    double margin_p = 0.0;    // (rhs_p - lhs) / rhs_p
    bool strict = false;      // lhs differs from the tested bound beyond 1e-12
};

/// Evaluates both sides of the L_p-Brunn-Minkowski inequality for intrinsic
/// volumes on a pair of n-dimensional bodies. Volume computation failures
/// (for example a combination that needed a Wulff pass and lost smoothness)
/// propagate as exceptions.
InequalityVerdict check_lpbm(const Body& k, const Body& l, double p, double lambda, int j,
                             const SphereGrid& grid);

/// The reverse inequality for j = 1 in the plane:
/// V_1((1-lambda) K +_p lambda L) <= p-mean of the V_1. The strict flag
/// reports whether the bodies are non-homothetic (strict inequality regime).
InequalityVerdict reverse_j1_check(const Body& k2d, const Body& l2d, double p, double lambda,
                                   int resolution = 512);

struct CounterexampleResult {
    Body k_prime;  // K + I_s
    Body l_prime;  // L + I_s
    InequalityVerdict verdict;
    double s = 0.0;            // chosen half-length
    double s_crossover = 0.0;  // where the geometric-mean margin changes sign
    std::vector<std::pair<double, double>> scan;  // (s, relative margin) rows
};

/// Constructive counterexample to the L_p inequality for intrinsic volumes:
/// lifts the fixed planar pair (square of side 2, disk of equal V_1) by a
/// segment I_s, scanning s by doubling and locating the crossover by
/// bisection. Requires n = 3, j = 2, p in [0,1), lambda in (0,1); the search
/// failing to reach relative margin >= 1e-4 below the s cap is an error.
CounterexampleResult construct_counterexample(int n, int j, double p, double lambda,
                                              int resolution = 512);

/// Max support discrepancy between the two sides of the cartesian-product
/// identity for L_p sums: the 3-dimensional sum of A + B and C + D against
/// (2-dimensional sum) + (segment sum). B and D are the segments
/// [-s e_z, s e_z] with half-lengths sb, sd; A, C live in the z = 0 plane.
/// The left side is evaluated by linear programming over the grid enriched
/// with a dense equatorial ring and the poles; the right side through the
/// planar Wulff machinery on the same ring.
double cartesian_product_identity_check(const Body& a2d, const Body& c2d, double sb, double sd,
                                        double p, double lambda, const SphereGrid& grid,
                                        int ring_resolution = 2048);

/// Seeded random even harmonic body scaled to an exact grid-realized C^2
/// distance from the unit ball (the measurement is a norm in the
/// perturbation, so the scaling is exact).
Body random_near_ball(unsigned seed, double c2_target, const SphereGrid& grid,
                      int max_degree = 4);

}  // namespace quermass
