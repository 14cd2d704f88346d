#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "quermass/harmonics.hpp"
#include "quermass/polygon.hpp"
#include "quermass/sphere.hpp"

namespace quermass {

/// Abstract support-function representation. All reps are immutable and
/// origin-symmetric; 2-dimensional reps live in the z = 0 plane and evaluate
/// arbitrary ambient vectors through their in-plane projection (that is, as
/// degenerate convex sets of R^3).
class BodyRep {
public:
    virtual ~BodyRep() = default;
    virtual int dim() const = 0;
    virtual bool smooth() const = 0;
    virtual double support(const Vec3& x) const = 0;
    virtual Jet2 support_jet(const Vec3& x) const;  // throws unless smooth
    virtual std::shared_ptr<const BodyRep> scaled(double t) const = 0;
    virtual std::string kind() const = 0;
};

class Body {
public:
    Body() = default;
    explicit Body(std::shared_ptr<const BodyRep> rep) : rep_(std::move(rep)) {}

    bool valid() const { return rep_ != nullptr; }
    int dim() const { return rep_->dim(); }
    bool smooth() const { return rep_->smooth(); }
    std::string kind() const { return rep_->kind(); }
    double support(const Vec3& x) const { return rep_->support(x); }
    Jet2 support_jet(const Vec3& x) const { return rep_->support_jet(x); }
    Body scaled(double t) const { return Body(rep_->scaled(t)); }
    const BodyRep& rep() const { return *rep_; }
    std::shared_ptr<const BodyRep> rep_ptr() const { return rep_; }

    /// Closure over the 1-homogeneous extension, for the sphere operators.
    AmbientField jet_field() const;

    std::string to_json() const;
    static Body from_json(const std::string& text);

private:
    std::shared_ptr<const BodyRep> rep_;
};

/// Exact support value; the unit-length precondition is not enforced since
/// every representation is positively 1-homogeneous.
inline double support(const Body& k, const Vec3& u) { return k.support(u); }

Body make_ball(int n, double radius);
Body make_ellipsoid(const Mat3& semi_axes);                    // h(x) = |Ax|, n = 3
Body make_ellipsoid2(double a, double b);                      // planar ellipse
Body make_polygon(std::vector<Vec2> vertices);                 // origin-symmetric, convex
Body make_square(double half_side);
Body make_harmonic(const HarmonicExpansion& h);                // validated positive
Body make_wulff3(std::vector<Vec3> directions, std::vector<double> offsets);

/// Body with support h(u) = h_base(u | axis^perp) + s |<u, axis>|, the
/// Minkowski sum of a planar base and the segment [-s axis, s axis]. The base
/// (a 2-dimensional body) is placed into axis^perp through the deterministic
/// tangent frame of the axis.
Body segment_product(const Body& base, double s, const Vec3& axis);

struct WulffResult {
    std::vector<Vec3> directions;
    std::vector<double> raw;      // sampled values of f
    std::vector<double> clipped;  // support of W(f) at the sample directions
    bool is_already_convex = false;
    Body body;
};

/// Wulff shape of positive even samples on S^1: half-plane intersection via
/// the planar polar dual, returning the exact polygon for the sampled
/// direction set.
WulffResult wulff_shape_2d(const std::vector<Vec3>& dirs, const std::vector<double>& f);

/// Wulff shape of positive even samples on a 3-dimensional grid; support
/// values are computed per query direction by linear programming over the
/// sampled half-spaces. An unbounded program is reported, never clamped.
WulffResult wulff_shape_3d(const SphereGrid& grid, const std::vector<double>& f);

/// L_p Minkowski combination (1-lambda) K +_p lambda L for p <= 1; the Wulff
/// step is skipped when the pointwise p-mean is verified convex on the grid
/// (it always is for p = 1, and for identical bodies).
Body lp_combination(const Body& k, const Body& l, double p, double lambda,
                    int resolution = 64);

/// Grid-realized C^2 distance to the unit ball:
/// max over nodes of |h-1|, |spherical gradient|, ||A h - Id||_2.
double c2_distance_to_ball(const Body& k, const SphereGrid& grid);

/// Outer parallel body K + rho B with support h + rho.
Body outer_parallel(const Body& k, double rho);

/// Vertices when the body is backed by a polygon (directly or through a
/// 2-dimensional Wulff pass); nullptr otherwise.
const std::vector<Vec2>* polygon_vertices(const Body& k);

struct SegmentProductView {
    Body base;
    double half_length;
    Vec3 axis;
};
/// Unwraps a segment-product representation; nullopt otherwise.
std::optional<SegmentProductView> as_segment_product(const Body& k);

}  // namespace quermass
