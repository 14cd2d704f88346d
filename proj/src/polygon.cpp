#include "quermass/polygon.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace quermass {

namespace {

double cross2(const Vec2& a, const Vec2& b) { return a.x() * b.y() - a.y() * b.x(); }

}  // namespace

double ConvexPolygon::support(const Vec2& u) const {
    double best = -std::numeric_limits<double>::infinity();
    for (const auto& v : verts) best = std::max(best, v.dot(u));
    return best;
}

double ConvexPolygon::area() const {
    double s = 0.0;
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i) s += cross2(verts[i], verts[(i + 1) % n]);
    return 0.5 * s;
}

double ConvexPolygon::perimeter() const {
    double s = 0.0;
    const int n = static_cast<int>(verts.size());
    for (int i = 0; i < n; ++i) s += (verts[(i + 1) % n] - verts[i]).norm();
    return s;
}

ConvexPolygon convex_hull(std::vector<Vec2> points) {
    std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
        return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
    });
    points.erase(std::unique(points.begin(), points.end(),
                             [](const Vec2& a, const Vec2& b) {
                                 return (a - b).norm() < 1e-14;
                             }),
                 points.end());
    const int n = static_cast<int>(points.size());
    if (n < 3) throw std::invalid_argument("convex_hull: fewer than 3 distinct points");

    double scale = 0.0;
    for (const auto& p : points) scale = std::max(scale, p.norm());
    const double eps = 1e-12 * scale * scale;

    std::vector<Vec2> hull(2 * n);
    int k = 0;
    for (int i = 0; i < n; ++i) {  // lower chain
        while (k >= 2 && cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = points[i];
    }
    for (int i = n - 2, lower = k + 1; i >= 0; --i) {  // upper chain
        while (k >= lower && cross2(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= eps) --k;
        hull[k++] = points[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 3) throw std::invalid_argument("convex_hull: degenerate point set");
    return ConvexPolygon{std::move(hull)};
}

ConvexPolygon halfplane_intersection(const std::vector<Vec2>& dirs,
                                     const std::vector<double>& offsets) {
    if (dirs.size() != offsets.size() || dirs.size() < 3)
        throw std::invalid_argument("halfplane_intersection: need >= 3 matching constraints");
    std::vector<Vec2> dual(dirs.size());
    for (size_t i = 0; i < dirs.size(); ++i) {
        if (!(offsets[i] > 0.0))
            throw std::invalid_argument(
                "halfplane_intersection: offsets must be positive (empty or degenerate "
                "intersection)");
        dual[i] = dirs[i] / offsets[i];
    }
    ConvexPolygon hull = convex_hull(std::move(dual));

    const int m = static_cast<int>(hull.verts.size());
    ConvexPolygon out;
    out.verts.reserve(m);
    for (int i = 0; i < m; ++i) {
        const Vec2& a = hull.verts[i];
        const Vec2& b = hull.verts[(i + 1) % m];
        double det = cross2(a, b);
        if (std::abs(det) < 1e-14)
            throw std::invalid_argument("halfplane_intersection: directions do not span");
        // vertex dual to the hull edge: <x, a> = 1, <x, b> = 1
        out.verts.emplace_back((b.y() - a.y()) / det, (a.x() - b.x()) / det);
    }
    return out;
}

}  // namespace quermass
