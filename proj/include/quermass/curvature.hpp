#pragma once

#include <vector>

#include "quermass/bodies.hpp"

namespace quermass {

using MatX = Eigen::MatrixXd;

/// Mixed discriminant D_N(A^1, ..., A^N) of symmetric N x N matrices.
/// The inductive cofactor formula is used for N <= 3 (the defining identity,
/// kept as the trusted path) and finite polarization sums for N <= 6; the two
/// are cross-validated in the test suite.
double mixed_discriminant(const std::vector<MatX>& mats);
double mixed_discriminant_cofactor(const std::vector<MatX>& mats);
double mixed_discriminant_polarization(const std::vector<MatX>& mats);

/// The matrix Q^{i,k}(A^2, ..., A^N) of signed minors' mixed discriminants;
/// contracting with A^1 reproduces the mixed discriminant. `tail` holds
/// A^2..A^N, so the matrices are (tail.size()+1) x (tail.size()+1).
MatX cofactor_operator(const std::vector<MatX>& tail);

/// sigma_j^{ik} = j binom(n-1, j) Q^{ik}(A[j-1], Id[n-j-1]) for an A-matrix
/// of size (n-1) x (n-1).
MatX sigma_matrix(const MatX& a, int n, int j);

/// Sampled curvature data of a smooth body: per-node principal radii
/// (eigenvalues of A h) and the normalized j-th elementary symmetric value.
struct CurvatureField {
    int j = 1;
    std::vector<double> values;                 // s_j per node
    std::vector<std::array<double, 2>> radii;   // second entry unused when n = 2
};

/// s_j at a single direction for a smooth body.
double curvature_sj(const Body& k, int j, const Vec3& u, int n);

CurvatureField curvature_function(const Body& k, int j, const SphereGrid& grid);

/// Mixed curvature function s(h_1, ..., h_{n-1}, .) of n-1 smooth bodies.
std::vector<double> mixed_curvature(const std::vector<Body>& bodies, const SphereGrid& grid);

/// Field-level variant: the arguments are ambient jets of 1-homogeneous
/// functions (differences of support functions such as z*h are allowed).
std::vector<double> mixed_curvature_fields(const std::vector<AmbientField>& fields,
                                           const SphereGrid& grid);

/// s_j of a lower-dimensional body K contained in the equator plane e_z^perp
/// of R^3, evaluated at u != +-e_z through the geodesic projection formula
/// s_j(K, u) = (1 - j/(n-1)) / <u, u~>^j * s_j^{equator}(K, u~).
double degenerate_curvature(const Body& base, int j, const Vec3& u);

/// Eigenvalues of a symmetric 2x2 matrix, closed form, ascending.
std::array<double, 2> eigenvalues2(const Mat2& a);

}  // namespace quermass
