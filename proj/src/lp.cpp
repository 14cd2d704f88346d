#include "quermass/lp.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace quermass {

namespace {

struct Row {
    double a[3];
    double b;
};

constexpr double kFeasEps = 1e-10;

// Maximize c . x over rows (dimension dim), |x_j| <= bound. Rows are visited
// in the given order; on violation the problem is projected onto the
// violated hyperplane and solved recursively.
bool solve(int dim, const std::vector<Row>& rows, const double* c, double bound, double* x) {
    if (dim == 1) {
        double lo = -bound, hi = bound;
        for (const Row& r : rows) {
            const double a = r.a[0];
            if (std::abs(a) < 1e-13) {
                if (r.b < -kFeasEps) return false;
                continue;
            }
            if (a > 0.0)
                hi = std::min(hi, r.b / a);
            else
                lo = std::max(lo, r.b / a);
        }
        if (lo > hi + kFeasEps) return false;
        x[0] = (c[0] >= 0.0) ? hi : lo;
        return true;
    }

    for (int j = 0; j < dim; ++j) x[j] = (c[j] >= 0.0) ? bound : -bound;

    for (size_t i = 0; i < rows.size(); ++i) {
        const Row& r = rows[i];
        double ax = 0.0, anorm = 0.0;
        for (int j = 0; j < dim; ++j) {
            ax += r.a[j] * x[j];
            anorm = std::max(anorm, std::abs(r.a[j]));
        }
        if (ax <= r.b + kFeasEps * (1.0 + std::abs(r.b))) continue;
        if (anorm < 1e-13) return false;  // violated constraint with zero normal

        // eliminate the coordinate with the largest coefficient
        int k = 0;
        for (int j = 1; j < dim; ++j)
            if (std::abs(r.a[j]) > std::abs(r.a[k])) k = j;
        const double ak = r.a[k];

        auto reduce = [&](const double* a, double b, Row& out) {
            int col = 0;
            for (int j = 0; j < dim; ++j) {
                if (j == k) continue;
                out.a[col++] = a[j] - a[k] * r.a[j] / ak;
            }
            out.b = b - a[k] * r.b / ak;
        };

        std::vector<Row> sub;
        sub.reserve(i + 2);
        for (size_t t = 0; t < i; ++t) {
            Row out{};
            reduce(rows[t].a, rows[t].b, out);
            sub.push_back(out);
        }
        // |x_k| <= bound expressed through the elimination
        {
            double ek[3] = {0.0, 0.0, 0.0};
            ek[k] = 1.0;
            Row hi{}, lo{};
            reduce(ek, bound, hi);
            sub.push_back(hi);
            ek[k] = -1.0;
            reduce(ek, bound, lo);
            sub.push_back(lo);
        }
        double csub[3] = {0.0, 0.0, 0.0};
        {
            int col = 0;
            for (int j = 0; j < dim; ++j) {
                if (j == k) continue;
                csub[col++] = c[j] - c[k] * r.a[j] / ak;
            }
        }
        double xsub[3] = {0.0, 0.0, 0.0};
        if (!solve(dim - 1, sub, csub, bound, xsub)) return false;
        {
            int col = 0;
            double rest = 0.0;
            for (int j = 0; j < dim; ++j) {
                if (j == k) continue;
                x[j] = xsub[col++];
                rest += r.a[j] * x[j];
            }
            x[k] = (r.b - rest) / ak;
        }
    }
    return true;
}

}  // namespace

LpResult lp_maximize(const std::vector<Vec3>& a, const std::vector<double>& b,
                     const Vec3& c, double bound, std::uint64_t seed) {
    if (a.size() != b.size()) throw std::invalid_argument("lp_maximize: size mismatch");
    std::vector<int> order(a.size());
    std::iota(order.begin(), order.end(), 0);
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);

    std::vector<Row> rows(a.size());
    for (size_t i = 0; i < a.size(); ++i) {
        const int s = order[i];
        rows[i] = Row{{a[s].x(), a[s].y(), a[s].z()}, b[s]};
    }
    double cx[3] = {c.x(), c.y(), c.z()};
    double x[3] = {0.0, 0.0, 0.0};
    if (!solve(3, rows, cx, bound, x))
        throw std::runtime_error("lp_maximize: infeasible constraint set");

    LpResult res;
    res.x = Vec3(x[0], x[1], x[2]);
    res.value = res.x.dot(c);
    for (int j = 0; j < 3; ++j)
        if (std::abs(x[j]) >= bound * (1.0 - 1e-7)) res.hit_bound = true;
    return res;
}

}  // namespace quermass
