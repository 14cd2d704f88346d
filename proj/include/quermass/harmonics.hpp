#pragma once

#include <memory>
#include <stdexcept>
#include <vector>

#include "quermass/polynomial.hpp"

namespace quermass {

/// One real solid harmonic: a harmonic homogeneous polynomial S of degree l
/// together with its precomputed derivative polynomials. Restricted to the
/// unit sphere it is an orthonormal real spherical harmonic. Off the sphere,
/// the degree-d homogeneous extension r^(d-l) * S is evaluated through jets,
/// where r is the ambient radius (n = 3) or the in-plane radius (n = 2).
class SolidHarmonic {
public:
    SolidHarmonic(int ambient_dim, int l, int m, Poly3 poly);

    int degree() const { return l_; }
    int order() const { return m_; }

    /// Value at a unit vector (r = 1, so the homogenizing power drops out).
    double value(const Vec3& u) const { return poly_.eval(u); }

    /// Jet of the degree-d homogeneous extension at any x != 0.
    Jet2 jet(const Vec3& x, int homogeneity) const;

private:
    int dim_;
    int l_;
    int m_;  // signed order: m >= 0 cosine branch, m < 0 sine branch
    Poly3 poly_;
    Poly3 dp_[3];
    Poly3 ddp_[3][3];
    Mat3 radial_;  // quadratic form of the homogenizing radius
};

/// Orthonormal real harmonic basis on S^(n-1), n in {2, 3}, optionally
/// restricted to even degrees (the standing origin-symmetry assumption).
class HarmonicBasis {
public:
    HarmonicBasis(int ambient_dim, int max_degree, bool even_only);

    int ambient_dim() const { return dim_; }
    int max_degree() const { return max_degree_; }
    bool even_only() const { return even_only_; }
    int size() const { return static_cast<int>(entries_.size()); }
    const SolidHarmonic& at(int i) const { return entries_[i]; }

    /// Index of the (l, m) member; throws if absent (e.g. odd l in an
    /// even-only basis).
    int index_of(int l, int m) const;

private:
    int dim_;
    int max_degree_;
    bool even_only_;
    std::vector<SolidHarmonic> entries_;
};

std::shared_ptr<const HarmonicBasis> even_basis(int ambient_dim, int max_degree);

/// Finite expansion in even real harmonics. Evenness is structural: only
/// even-degree coefficients exist, so evaluation at u and -u agrees exactly.
class HarmonicExpansion {
public:
    HarmonicExpansion(int ambient_dim, int max_degree);

    int ambient_dim() const { return basis_->ambient_dim(); }
    int max_degree() const { return basis_->max_degree(); }
    const HarmonicBasis& basis() const { return *basis_; }

    const Eigen::VectorXd& coeffs() const { return coeffs_; }
    Eigen::VectorXd& coeffs() { return coeffs_; }

    void set_coeff(int l, int m, double value);
    double coeff(int l, int m) const;

    double value(const Vec3& u) const;
    Jet2 jet(const Vec3& x, int homogeneity) const;

private:
    std::shared_ptr<const HarmonicBasis> basis_;
    Eigen::VectorXd coeffs_;
};

}  // namespace quermass
