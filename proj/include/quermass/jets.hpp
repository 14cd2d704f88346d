#pragma once

#include <Eigen/Dense>
#include <cmath>

namespace quermass {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;
using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// Second-order jet of a scalar function on R^3: value, ambient gradient and
/// ambient Hessian at a point. All smooth support-function representations
/// are differentiated through this algebra, never by finite differences.
struct Jet2 {
    double v = 0.0;
    Vec3 g = Vec3::Zero();
    Mat3 H = Mat3::Zero();

    static Jet2 constant(double c) { return {c, Vec3::Zero(), Mat3::Zero()}; }

    /// Jet of the coordinate function x -> <a, x>.
    static Jet2 linear(const Vec3& a, const Vec3& x) {
        return {a.dot(x), a, Mat3::Zero()};
    }

    /// Jet of the quadratic form x -> x^T M x (M symmetric).
    static Jet2 quadratic_form(const Mat3& M, const Vec3& x) {
        return {x.dot(M * x), 2.0 * M * x, 2.0 * M};
    }

    Jet2 operator+(const Jet2& o) const { return {v + o.v, g + o.g, H + o.H}; }
    Jet2 operator-(const Jet2& o) const { return {v - o.v, g - o.g, H - o.H}; }
    Jet2 operator*(double s) const { return {v * s, g * s, H * s}; }
    Jet2 operator+(double c) const { return {v + c, g, H}; }
    Jet2 operator-(double c) const { return {v - c, g, H}; }

    Jet2 operator*(const Jet2& o) const {
        return {v * o.v,
                v * o.g + o.v * g,
                v * o.H + o.v * H + g * o.g.transpose() + o.g * g.transpose()};
    }

    /// Composition with a scalar map phi given phi(v), phi'(v), phi''(v).
    Jet2 compose(double fv, double f1, double f2) const {
        return {fv, f1 * g, f1 * H + f2 * g * g.transpose()};
    }
};

inline Jet2 operator*(double s, const Jet2& j) { return j * s; }

inline Jet2 jet_pow(const Jet2& j, double a) {
    const double p = std::pow(j.v, a);
    return j.compose(p, a * p / j.v, a * (a - 1.0) * p / (j.v * j.v));
}

inline Jet2 jet_sqrt(const Jet2& j) {
    const double s = std::sqrt(j.v);
    return j.compose(s, 0.5 / s, -0.25 / (s * j.v));
}

inline Jet2 jet_log(const Jet2& j) {
    return j.compose(std::log(j.v), 1.0 / j.v, -1.0 / (j.v * j.v));
}

inline Jet2 jet_exp(const Jet2& j) {
    const double e = std::exp(j.v);
    return j.compose(e, e, e);
}

inline Jet2 jet_inv(const Jet2& j) {
    return j.compose(1.0 / j.v, -1.0 / (j.v * j.v), 2.0 / (j.v * j.v * j.v));
}

/// Jet of |x| at x != 0.
inline Jet2 jet_norm(const Vec3& x) {
    return jet_sqrt(Jet2::quadratic_form(Mat3::Identity(), x));
}

}  // namespace quermass
