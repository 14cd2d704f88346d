#pragma once

#include <functional>
#include <string>
#include <vector>

#include "quermass/jets.hpp"

namespace quermass {

/// Scalar field on the sphere, evaluable at unit vectors.
using ScalarField = std::function<double(const Vec3&)>;

/// Ambient jet of a (positively homogeneous) extension of a field on the
/// sphere; the analytic differentiation hook used by all operators here.
using AmbientField = std::function<Jet2(const Vec3&)>;

/// Quadrature grid on S^(n-1) with per-node orthonormal tangent frames.
///
/// n = 3 uses Gauss-Legendre nodes in cos(theta) crossed with a uniform
/// azimuthal grid, which integrates all spherical harmonics of degree
/// <= 2*resolution exactly. n = 2 uses 2*resolution equispaced angles.
/// Antipodal symmetry is enforced bitwise: the second azimuthal half is
/// constructed by negating the first.
struct SphereGrid {
    int n = 3;
    int resolution = 0;
    std::vector<Vec3> nodes;
    std::vector<double> weights;
    std::vector<std::array<Vec3, 2>> frames;  // e1 (and e2 when n = 3)
    std::vector<int> antipode;                // index of -u for each node u

    int size() const { return static_cast<int>(nodes.size()); }

    double integrate(const std::vector<double>& values) const;
    double integrate(const ScalarField& f) const;
};

SphereGrid build_grid(int n, int resolution);

/// Deterministic orthonormal tangent frame at a unit direction.
/// n = 2: the in-plane tangent. n = 3: Gram-Schmidt against e_z, with a
/// fallback to e_x when u is within 0.45 of a pole.
std::array<Vec3, 2> tangent_frame(const Vec3& u, int n);

/// Spherical gradient of the field at every node: Df - <Df, u> u.
std::vector<Vec3> spherical_gradient(const AmbientField& f, const SphereGrid& grid);

/// The matrix of the operator A f = grad^2 f + f delta at every node, for a
/// positively 1-homogeneous f, as the ambient second derivative restricted
/// to the tangent frame. Returned as 2x2 ((n-1)x(n-1); the n = 2 case uses
/// only the (0,0) entry).
std::vector<Mat2> hessian_operator(const AmbientField& f, const SphereGrid& grid);

/// Single-node version of hessian_operator.
Mat2 a_matrix(const AmbientField& f, const Vec3& u, int n);

/// Grid descriptor persistence (structured text, JSON).
std::string grid_descriptor(const SphereGrid& grid);
SphereGrid grid_from_descriptor(const std::string& text);

}  // namespace quermass
