#pragma once

#include <map>
#include <array>
#include <cstdint>

#include "quermass/jets.hpp"

namespace quermass {

/// Sparse trivariate polynomial with exact double coefficients, used to
/// represent solid spherical harmonics and their ambient derivatives.
class Poly3 {
public:
    using Key = std::array<int, 3>;  // monomial exponents (i, j, k)

    Poly3() = default;

    static Poly3 monomial(int i, int j, int k, double c) {
        Poly3 p;
        p.add_term(i, j, k, c);
        return p;
    }

    void add_term(int i, int j, int k, double c) {
        if (c == 0.0) return;
        auto [it, inserted] = terms_.try_emplace({i, j, k}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0.0) terms_.erase(it);
        }
    }

    Poly3 operator+(const Poly3& o) const {
        Poly3 r = *this;
        for (const auto& [k, c] : o.terms_) r.add_term(k[0], k[1], k[2], c);
        return r;
    }

    Poly3 operator*(double s) const {
        Poly3 r;
        for (const auto& [k, c] : terms_) r.add_term(k[0], k[1], k[2], c * s);
        return r;
    }

    Poly3 operator*(const Poly3& o) const {
        Poly3 r;
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_)
                r.add_term(ka[0] + kb[0], ka[1] + kb[1], ka[2] + kb[2], ca * cb);
        return r;
    }

    /// Partial derivative along axis 0, 1 or 2.
    Poly3 derivative(int axis) const {
        Poly3 r;
        for (const auto& [k, c] : terms_) {
            int e = k[axis];
            if (e == 0) continue;
            Key kk = k;
            kk[axis] = e - 1;
            r.add_term(kk[0], kk[1], kk[2], c * e);
        }
        return r;
    }

    double eval(const Vec3& x) const {
        double s = 0.0;
        for (const auto& [k, c] : terms_)
            s += c * ipow(x[0], k[0]) * ipow(x[1], k[1]) * ipow(x[2], k[2]);
        return s;
    }

    /// Value, gradient and Hessian in one pass.
    Jet2 jet(const Vec3& x) const {
        Jet2 out;
        out.v = eval(x);
        for (int a = 0; a < 3; ++a) {
            Poly3 da = derivative(a);
            out.g[a] = da.eval(x);
            for (int b = a; b < 3; ++b) {
                double v = da.derivative(b).eval(x);
                out.H(a, b) = v;
                out.H(b, a) = v;
            }
        }
        return out;
    }

    int total_degree() const {
        int d = 0;
        for (const auto& [k, c] : terms_) d = std::max(d, k[0] + k[1] + k[2]);
        return d;
    }

    bool empty() const { return terms_.empty(); }

private:
    static double ipow(double x, int e) {
        double r = 1.0;
        for (int i = 0; i < e; ++i) r *= x;
        return r;
    }

    std::map<Key, double> terms_;
};

}  // namespace quermass
