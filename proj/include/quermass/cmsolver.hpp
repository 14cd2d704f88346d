#pragma once

#include <functional>
#include <optional>

#include "quermass/spectral.hpp"

namespace quermass {

/// Right-hand-side data for the L_p-Christoffel-Minkowski equation,
/// evaluable anywhere on the sphere (needed for certification on grids
/// finer than the solve grid).
struct SphericalFunction {
    std::function<double(const Vec3&)> eval;
    std::string description;

    static SphericalFunction constant(double c);
    static SphericalFunction harmonic(const HarmonicExpansion& h);
};

/// The discretized problem h^(1-p) s_j(h, .) = g on S^2 (n = 3, j = 1).
struct CMProblem {
    int n = 3;
    int j = 1;
    double p = 0.5;
    SphericalFunction g;
    SphereGrid grid;
    int basis_degree = 20;
    std::vector<double> g_samples;
    double holder_gate = 0.0;        // sup|g-1| + C^(1/2) quotient on the grid
    bool theorem_excluded = false;   // (p, j) = (0, 1): outside the uniqueness theorem
};

CMProblem make_cm_problem(int n, int j, double p, SphericalFunction g, int resolution = 28,
                          int basis_degree = 20);

/// Frechet derivative of h -> h^(1-p) s_j(h) at h == 1, diagonal over
/// harmonics: the degree-k block multiplies by
/// -k(k+n-2) j/(n-1) + (j - p + 1).
struct LinearizedOperator {
    int n = 3;
    int j = 1;
    double p = 0.5;
    double factor(int degree) const;
    HarmonicExpansion apply(const HarmonicExpansion& w) const;
    HarmonicExpansion solve(const HarmonicExpansion& rhs) const;
};

/// Validates invertibility on even fields before returning.
LinearizedOperator linearized_operator(double p, int j, int n);

struct NewtonConfig {
    int max_iterations = 40;
    double tolerance = 1e-11;           // sup-norm target on the solve grid
    int max_halvings = 8;
    int cert_resolution = 40;           // anti-aliasing certification grid
    double condition_threshold = 1e10;  // fall back to the h == 1 operator beyond this
    std::optional<Eigen::VectorXd> initial_coeffs;
};

struct SolveReport {
    bool converged = false;
    std::string abort_reason;              // set when not converged
    std::vector<double> residual_history;  // sup-norm at each iterate
    HarmonicExpansion h;                   // final iterate
    double residual = 0.0;                 // sup-norm on the certification grid
    double min_h = 0.0;
    double max_h = 0.0;
    double lipschitz = 0.0;                // max |spherical gradient of h|
    double min_a_eigenvalue = 0.0;         // convexity certificate on the solve grid
    int fallback_steps = 0;

    SolveReport() : h(3, 0) {}
};

/// Damped Newton iteration with the exact Frechet derivative at the current
/// iterate, assembled by Galerkin projection onto the even harmonic basis.
/// Aborts (with a report) on convexity loss, on two consecutive residual
/// increases, or at the iteration cap.
SolveReport newton_solve(const CMProblem& problem, const NewtonConfig& config = {});

enum class ProbeStatus { Agree, Disagree, Inconclusive };

struct UniquenessVerdict {
    ProbeStatus status = ProbeStatus::Inconclusive;
    double max_disagreement = 0.0;   // sup-norm between converged solutions
    int converged_runs = 0;
    int total_runs = 0;
};

/// Re-runs the solver from `init_count` randomized even initial bodies with
/// C^2 distance about `spread` from the ball; conclusive only when all runs
/// converge.
UniquenessVerdict uniqueness_probe(const CMProblem& problem, int init_count, double spread,
                                   const NewtonConfig& config = {});

struct BoundMonitorResult {
    double min_h = 0.0;
    double max_h = 0.0;
    double lipschitz = 0.0;
};

/// Extrema and Lipschitz seminorm of the solved support function over a
/// dense evaluation grid.
BoundMonitorResult bound_monitor(const SolveReport& report, int resolution = 48);

/// sup over the given directions of |h^(1-p) s_j - g| for arbitrary
/// evaluators; also serves degenerate closed-form inputs.
double residual_supremum(const std::function<double(const Vec3&)>& h,
                         const std::function<double(const Vec3&)>& sj, double p,
                         const std::function<double(const Vec3&)>& g,
                         const std::vector<Vec3>& directions);

}  // namespace quermass
