#pragma once

#include "quermass/curvature.hpp"
#include "quermass/volumes.hpp"

namespace quermass {

/// The measure with density (1/n) h s(h[j-1], 1[n-j]) against surface
/// measure; its total mass is d_{n,j}^{-1} V_j(K).
struct ConeMeasure {
    int j = 2;
    std::vector<double> density;
    double mass = 0.0;
};

ConeMeasure cone_measure(const Body& k, int j, const SphereGrid& grid);

/// Galerkin discretization of T_K^j over the even harmonic basis with
/// respect to the cone-measure inner product. op holds <Y_a, T Y_b>, mass
/// holds <Y_a, Y_b>; constraint is the coordinate vector of the functional
/// z -> <z, 1> whose kernel is the admissible subspace.
struct SpectralProblem {
    int j = 2;
    int basis_degree = 8;
    std::shared_ptr<const HarmonicBasis> basis;
    Eigen::MatrixXd op;
    Eigen::MatrixXd mass;
    Eigen::VectorXd constraint;
    double symmetry_defect = 0.0;  // max |op - op^T| before symmetrization
};

SpectralProblem assemble_T(const Body& k, int j, const SphereGrid& grid, int basis_degree);

/// Smallest generalized eigenvalue of T on the even, mean-zero subspace.
double lambda_1e(const SpectralProblem& problem);

/// The lowest `count` eigenvalues on the same subspace, ascending.
std::vector<double> even_spectrum(const SpectralProblem& problem, int count);

struct SecondDerivative {
    double finite_difference = 0.0;
    double spectral = 0.0;
    double relative() const {
        return std::abs(finite_difference - spectral) / std::abs(spectral);
    }
};

/// Richardson-extrapolated central finite difference of
/// t -> (V_j(h (1+t z)^(1/p)))^(p/j) at t = 0 next to its closed spectral
/// form in terms of T_K^j. Requires p != 0.
SecondDerivative second_derivative_identity_check(const Body& k, int j, double p,
                                                  const HarmonicExpansion& z,
                                                  const SphereGrid& grid, double step = 1e-3);

struct IvakiMilmanResult {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;  // lhs <= rhs + 1e-8
};

/// Both integrals of the Ivaki-Milman inequality for a smooth symmetric
/// body, an order j in {1, ..., n-2} and arbitrary c > 0.
IvakiMilmanResult ivaki_milman_check(const Body& k, int j, double p, double c,
                                     const SphereGrid& grid);

}  // namespace quermass
