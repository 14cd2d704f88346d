#pragma once

#include <vector>

#include "quermass/jets.hpp"

namespace quermass {

/// Convex polygon in the plane, vertices in counter-clockwise order.
struct ConvexPolygon {
    std::vector<Vec2> verts;

    double support(const Vec2& u) const;
    double area() const;       // shoelace
    double perimeter() const;
};

/// Convex hull (monotone chain); collinear points on the boundary dropped.
ConvexPolygon convex_hull(std::vector<Vec2> points);

/// Intersection of the half-planes { x : <x, dir_i> <= offset_i } with all
/// offsets positive, computed through the polar dual: the hull of the points
/// dir_i / offset_i, each hull edge contributing one vertex. Requires the
/// directions to positively span the plane.
ConvexPolygon halfplane_intersection(const std::vector<Vec2>& dirs,
                                     const std::vector<double>& offsets);

}  // namespace quermass
