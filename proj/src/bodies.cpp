#include "quermass/bodies.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "quermass/lp.hpp"

namespace quermass {

using nlohmann::json;

namespace {

json rep_to_json(const BodyRep& rep);
std::shared_ptr<const BodyRep> rep_from_json(const json& j);

Mat3 planar_metric(int dim) {
    Mat3 q = Mat3::Identity();
    if (dim == 2) q(2, 2) = 0.0;
    return q;
}

class BallRep : public BodyRep {
public:
    BallRep(int n, double r) : n_(n), r_(r) {
        if (r <= 0.0) throw std::invalid_argument("ball: radius must be positive");
    }
    int dim() const override { return n_; }
    bool smooth() const override { return true; }
    double support(const Vec3& x) const override {
        return n_ == 2 ? r_ * std::hypot(x.x(), x.y()) : r_ * x.norm();
    }
    Jet2 support_jet(const Vec3& x) const override {
        return jet_sqrt(Jet2::quadratic_form(planar_metric(n_), x)) * r_;
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        return std::make_shared<BallRep>(n_, r_ * t);
    }
    std::string kind() const override { return "ball"; }
    double radius() const { return r_; }

private:
    int n_;
    double r_;
};

class EllipsoidRep : public BodyRep {
public:
    EllipsoidRep(int n, Mat3 a) : n_(n), a_(std::move(a)), m_(a_ * a_.transpose()) {
        if ((a_ - a_.transpose()).norm() > 1e-12 * (1.0 + a_.norm()))
            throw std::invalid_argument("ellipsoid: matrix must be symmetric");
    }
    int dim() const override { return n_; }
    bool smooth() const override { return true; }
    double support(const Vec3& x) const override { return std::sqrt(x.dot(m_ * x)); }
    Jet2 support_jet(const Vec3& x) const override {
        return jet_sqrt(Jet2::quadratic_form(m_, x));
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        return std::make_shared<EllipsoidRep>(n_, Mat3(a_ * t));
    }
    std::string kind() const override { return "ellipsoid"; }
    const Mat3& axes() const { return a_; }

private:
    int n_;
    Mat3 a_;
    Mat3 m_;
};

class PolygonRep : public BodyRep {
public:
    explicit PolygonRep(std::vector<Vec2> verts) : verts_(std::move(verts)) { validate(); }
    int dim() const override { return 2; }
    bool smooth() const override { return false; }
    double support(const Vec3& x) const override {
        Vec2 u(x.x(), x.y());
        double best = -std::numeric_limits<double>::infinity();
        for (const auto& v : verts_) best = std::max(best, v.dot(u));
        return best;
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        std::vector<Vec2> v = verts_;
        for (auto& p : v) p *= t;
        return std::make_shared<PolygonRep>(std::move(v));
    }
    std::string kind() const override { return "polygon"; }
    const std::vector<Vec2>& vertices() const { return verts_; }

private:
    void validate() const {
        const int n = static_cast<int>(verts_.size());
        if (n < 4 || n % 2 != 0)
            throw std::invalid_argument("polygon: need an even vertex count >= 4");
        double scale = 0.0;
        for (const auto& v : verts_) scale = std::max(scale, v.norm());
        for (int i = 0; i < n; ++i) {
            Vec2 e0 = verts_[(i + 1) % n] - verts_[i];
            Vec2 e1 = verts_[(i + 2) % n] - verts_[(i + 1) % n];
            if (e0.x() * e1.y() - e0.y() * e1.x() <= 1e-12 * scale * scale)
                throw std::invalid_argument("polygon: vertices not in strictly convex position");
            if ((verts_[i] + verts_[(i + n / 2) % n]).norm() > 1e-12 * scale)
                throw std::invalid_argument("polygon: vertices not antipodally paired");
        }
    }
    std::vector<Vec2> verts_;
};

class HarmonicRep : public BodyRep {
public:
    explicit HarmonicRep(HarmonicExpansion h) : h_(std::move(h)) {
        const SphereGrid probe = build_grid(h_.ambient_dim(), h_.ambient_dim() == 2 ? 64 : 12);
        for (const auto& u : probe.nodes)
            if (!(h_.value(u) > 0.0))
                throw std::invalid_argument(
                    "harmonic body: nonpositive support value encountered");
    }
    int dim() const override { return h_.ambient_dim(); }
    bool smooth() const override { return true; }
    double support(const Vec3& x) const override {
        double r = dim() == 2 ? std::hypot(x.x(), x.y()) : x.norm();
        Vec3 u = dim() == 2 ? Vec3(x.x() / r, x.y() / r, 0.0) : Vec3(x / r);
        return r * h_.value(u);
    }
    Jet2 support_jet(const Vec3& x) const override { return h_.jet(x, 1); }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        HarmonicExpansion h = h_;
        h.coeffs() *= t;
        return std::make_shared<HarmonicRep>(std::move(h));
    }
    std::string kind() const override { return "harmonic"; }
    const HarmonicExpansion& expansion() const { return h_; }

private:
    HarmonicExpansion h_;
};

class SegmentProductRep : public BodyRep {
public:
    SegmentProductRep(Body base, double s, Vec3 axis)
        : base_(std::move(base)), s_(s), axis_(axis.normalized()) {
        if (base_.dim() != 2)
            throw std::invalid_argument("segment_product: base must be 2-dimensional");
        if (s < 0.0) throw std::invalid_argument("segment_product: length must be >= 0");
        auto fr = tangent_frame(axis_, 3);
        b1_ = fr[0];
        b2_ = fr[1];
    }
    int dim() const override { return 3; }
    bool smooth() const override { return false; }
    double support(const Vec3& x) const override {
        Vec3 in_plane(x.dot(b1_), x.dot(b2_), 0.0);
        return base_.support(in_plane) + s_ * std::abs(x.dot(axis_));
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        return std::make_shared<SegmentProductRep>(base_.scaled(t), s_ * t, axis_);
    }
    std::string kind() const override { return "segment_product"; }
    const Body& base() const { return base_; }
    double half_length() const { return s_; }
    const Vec3& axis() const { return axis_; }

private:
    Body base_;
    double s_;
    Vec3 axis_;
    Vec3 b1_, b2_;
};

class Wulff3Rep : public BodyRep {
public:
    Wulff3Rep(std::vector<Vec3> dirs, std::vector<double> offsets)
        : dirs_(std::move(dirs)), offsets_(std::move(offsets)) {
        if (dirs_.size() != offsets_.size() || dirs_.size() < 4)
            throw std::invalid_argument("wulff3: need >= 4 matching constraints");
        double fmax = 0.0;
        for (double f : offsets_) {
            if (!(f > 0.0))
                throw std::invalid_argument("wulff3: offsets must be positive");
            fmax = std::max(fmax, f);
        }
        bound_ = 4.0 * fmax;
    }
    int dim() const override { return 3; }
    bool smooth() const override { return false; }
    double support(const Vec3& x) const override {
        LpResult r = lp_maximize(dirs_, offsets_, x, bound_);
        if (r.hit_bound)
            throw std::runtime_error(
                "wulff3: unbounded program (directions sampled too sparsely)");
        return r.value;
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        std::vector<double> off = offsets_;
        for (double& f : off) f *= t;
        return std::make_shared<Wulff3Rep>(dirs_, std::move(off));
    }
    std::string kind() const override { return "wulff3"; }
    const std::vector<Vec3>& directions() const { return dirs_; }
    const std::vector<double>& offsets() const { return offsets_; }

private:
    std::vector<Vec3> dirs_;
    std::vector<double> offsets_;
    double bound_;
};

class OffsetRep : public BodyRep {
public:
    OffsetRep(Body base, double rho) : base_(std::move(base)), rho_(rho) {
        if (rho < 0.0) throw std::invalid_argument("outer_parallel: rho must be >= 0");
    }
    int dim() const override { return base_.dim(); }
    bool smooth() const override { return base_.smooth(); }
    double support(const Vec3& x) const override {
        double r = dim() == 2 ? std::hypot(x.x(), x.y()) : x.norm();
        return base_.support(x) + rho_ * r;
    }
    Jet2 support_jet(const Vec3& x) const override {
        return base_.support_jet(x) +
               jet_sqrt(Jet2::quadratic_form(planar_metric(dim()), x)) * rho_;
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        return std::make_shared<OffsetRep>(base_.scaled(t), rho_ * t);
    }
    std::string kind() const override { return "offset"; }

private:
    Body base_;
    double rho_;
};

enum class MeanMode { Verbatim, Wulff };

class PMeanRep : public BodyRep {
public:
    PMeanRep(Body left, Body right, double p, double lambda, int resolution, MeanMode mode,
             Body wulff_body)
        : left_(std::move(left)),
          right_(std::move(right)),
          p_(p),
          lambda_(lambda),
          resolution_(resolution),
          mode_(mode),
          wulff_(std::move(wulff_body)) {}

    int dim() const override { return left_.dim(); }
    bool smooth() const override {
        return mode_ == MeanMode::Verbatim && left_.smooth() && right_.smooth();
    }
    double support(const Vec3& x) const override {
        if (mode_ == MeanMode::Wulff) return wulff_.support(x);
        return mean_value(left_.support(x), right_.support(x));
    }
    Jet2 support_jet(const Vec3& x) const override {
        if (!smooth()) return BodyRep::support_jet(x);
        Jet2 a = left_.support_jet(x);
        Jet2 b = right_.support_jet(x);
        if (p_ == 0.0) return jet_exp(jet_log(a) * (1.0 - lambda_) + jet_log(b) * lambda_);
        if (p_ == 1.0) return a * (1.0 - lambda_) + b * lambda_;
        return jet_pow(jet_pow(a, p_) * (1.0 - lambda_) + jet_pow(b, p_) * lambda_, 1.0 / p_);
    }
    std::shared_ptr<const BodyRep> scaled(double t) const override {
        return std::make_shared<PMeanRep>(left_.scaled(t), right_.scaled(t), p_, lambda_,
                                          resolution_, mode_,
                                          wulff_.valid() ? wulff_.scaled(t) : wulff_);
    }
    std::string kind() const override { return "pmean"; }

    double mean_value(double a, double b) const {
        if (!(a > 0.0) || !(b > 0.0))
            throw std::runtime_error("pmean: nonpositive support value encountered");
        if (p_ == 0.0) return std::pow(a, 1.0 - lambda_) * std::pow(b, lambda_);
        if (p_ == 1.0) return (1.0 - lambda_) * a + lambda_ * b;
        return std::pow((1.0 - lambda_) * std::pow(a, p_) + lambda_ * std::pow(b, p_),
                        1.0 / p_);
    }

    const Body& left() const { return left_; }
    const Body& right() const { return right_; }
    double p() const { return p_; }
    double lambda() const { return lambda_; }
    int resolution() const { return resolution_; }
    bool verbatim() const { return mode_ == MeanMode::Verbatim; }
    const Body& wulff_body() const { return wulff_; }

private:
    Body left_, right_;
    double p_;
    double lambda_;
    int resolution_;
    MeanMode mode_;
    Body wulff_;
};

json rep_to_json(const BodyRep& rep) {
    json j;
    j["kind"] = rep.kind();
    if (auto* b = dynamic_cast<const BallRep*>(&rep)) {
        j["n"] = b->dim();
        j["radius"] = b->radius();
    } else if (auto* e = dynamic_cast<const EllipsoidRep*>(&rep)) {
        j["n"] = e->dim();
        std::vector<std::vector<double>> rows(3, std::vector<double>(3));
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) rows[r][c] = e->axes()(r, c);
        j["axes"] = rows;
    } else if (auto* p = dynamic_cast<const PolygonRep*>(&rep)) {
        std::vector<std::vector<double>> verts;
        for (const auto& v : p->vertices()) verts.push_back({v.x(), v.y()});
        j["vertices"] = verts;
    } else if (auto* h = dynamic_cast<const HarmonicRep*>(&rep)) {
        j["n"] = h->dim();
        j["max_degree"] = h->expansion().max_degree();
        std::vector<std::vector<double>> coeffs;
        const auto& basis = h->expansion().basis();
        for (int i = 0; i < basis.size(); ++i) {
            double c = h->expansion().coeffs()[i];
            if (c != 0.0)
                coeffs.push_back({static_cast<double>(basis.at(i).degree()),
                                  static_cast<double>(basis.at(i).order()), c});
        }
        j["coeffs"] = coeffs;
    } else if (auto* s = dynamic_cast<const SegmentProductRep*>(&rep)) {
        j["half_length"] = s->half_length();
        j["axis"] = {s->axis().x(), s->axis().y(), s->axis().z()};
        j["base"] = rep_to_json(s->base().rep());
    } else if (auto* m = dynamic_cast<const PMeanRep*>(&rep)) {
        j["p"] = m->p();
        j["lambda"] = m->lambda();
        j["resolution"] = m->resolution();
        j["left"] = rep_to_json(m->left().rep());
        j["right"] = rep_to_json(m->right().rep());
    } else if (auto* w = dynamic_cast<const Wulff3Rep*>(&rep)) {
        std::vector<std::vector<double>> dirs;
        for (const auto& d : w->directions()) dirs.push_back({d.x(), d.y(), d.z()});
        j["directions"] = dirs;
        j["offsets"] = w->offsets();
    } else {
        throw std::logic_error("to_json: unknown representation");
    }
    return j;
}

std::shared_ptr<const BodyRep> rep_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "ball")
        return std::make_shared<BallRep>(j.at("n").get<int>(), j.at("radius").get<double>());
    if (kind == "ellipsoid") {
        Mat3 a;
        auto rows = j.at("axes");
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) a(r, c) = rows.at(r).at(c).get<double>();
        return std::make_shared<EllipsoidRep>(j.at("n").get<int>(), a);
    }
    if (kind == "polygon") {
        std::vector<Vec2> verts;
        for (const auto& v : j.at("vertices"))
            verts.emplace_back(v.at(0).get<double>(), v.at(1).get<double>());
        return std::make_shared<PolygonRep>(std::move(verts));
    }
    if (kind == "harmonic") {
        HarmonicExpansion h(j.at("n").get<int>(), j.at("max_degree").get<int>());
        for (const auto& t : j.at("coeffs"))
            h.set_coeff(static_cast<int>(t.at(0).get<double>()),
                        static_cast<int>(t.at(1).get<double>()), t.at(2).get<double>());
        return std::make_shared<HarmonicRep>(std::move(h));
    }
    if (kind == "segment_product") {
        auto ax = j.at("axis");
        return std::make_shared<SegmentProductRep>(
            Body(rep_from_json(j.at("base"))), j.at("half_length").get<double>(),
            Vec3(ax.at(0).get<double>(), ax.at(1).get<double>(), ax.at(2).get<double>()));
    }
    if (kind == "pmean") {
        Body left(rep_from_json(j.at("left")));
        Body right(rep_from_json(j.at("right")));
        return lp_combination(left, right, j.at("p").get<double>(),
                              j.at("lambda").get<double>(), j.at("resolution").get<int>())
            .rep_ptr();
    }
    if (kind == "wulff3") {
        std::vector<Vec3> dirs;
        for (const auto& d : j.at("directions"))
            dirs.emplace_back(d.at(0).get<double>(), d.at(1).get<double>(),
                              d.at(2).get<double>());
        return std::make_shared<Wulff3Rep>(std::move(dirs),
                                           j.at("offsets").get<std::vector<double>>());
    }
    throw std::invalid_argument("from_json: unknown body kind '" + kind + "'");
}

}  // namespace

Jet2 BodyRep::support_jet(const Vec3&) const {
    throw std::runtime_error("support_jet: representation only supports evaluation (" + kind() +
                             ")");
}

AmbientField Body::jet_field() const {
    auto rep = rep_;
    return [rep](const Vec3& x) { return rep->support_jet(x); };
}

std::string Body::to_json() const { return rep_to_json(*rep_).dump(2) + "\n"; }

Body Body::from_json(const std::string& text) {
    return Body(rep_from_json(json::parse(text)));
}

Body make_ball(int n, double radius) { return Body(std::make_shared<BallRep>(n, radius)); }

Body make_ellipsoid(const Mat3& semi_axes) {
    return Body(std::make_shared<EllipsoidRep>(3, semi_axes));
}

Body make_ellipsoid2(double a, double b) {
    Mat3 m = Mat3::Zero();
    m(0, 0) = a;
    m(1, 1) = b;
    return Body(std::make_shared<EllipsoidRep>(2, m));
}

Body make_polygon(std::vector<Vec2> vertices) {
    std::sort(vertices.begin(), vertices.end(), [](const Vec2& a, const Vec2& b) {
        return std::atan2(a.y(), a.x()) < std::atan2(b.y(), b.x());
    });
    return Body(std::make_shared<PolygonRep>(std::move(vertices)));
}

Body make_square(double half_side) {
    const double a = half_side;
    return make_polygon({{a, a}, {-a, a}, {-a, -a}, {a, -a}});
}

Body make_harmonic(const HarmonicExpansion& h) {
    return Body(std::make_shared<HarmonicRep>(h));
}

Body make_wulff3(std::vector<Vec3> directions, std::vector<double> offsets) {
    return Body(std::make_shared<Wulff3Rep>(std::move(directions), std::move(offsets)));
}

Body segment_product(const Body& base, double s, const Vec3& axis) {
    return Body(std::make_shared<SegmentProductRep>(base, s, axis));
}

WulffResult wulff_shape_2d(const std::vector<Vec3>& dirs, const std::vector<double>& f) {
    if (dirs.size() < 8) throw std::invalid_argument("wulff_shape_2d: need >= 8 samples");
    std::vector<Vec2> d2(dirs.size());
    for (size_t i = 0; i < dirs.size(); ++i) d2[i] = Vec2(dirs[i].x(), dirs[i].y());
    ConvexPolygon poly = halfplane_intersection(d2, f);

    WulffResult res;
    res.directions = dirs;
    res.raw = f;
    res.body = Body(std::make_shared<PolygonRep>(poly.verts));
    res.clipped.resize(dirs.size());
    double gap = 0.0, scale = 0.0;
    for (size_t i = 0; i < dirs.size(); ++i) {
        res.clipped[i] = poly.support(d2[i]);
        gap = std::max(gap, f[i] - res.clipped[i]);
        scale = std::max(scale, std::abs(f[i]));
    }
    res.is_already_convex = gap <= 1e-9 * scale;
    return res;
}

WulffResult wulff_shape_3d(const SphereGrid& grid, const std::vector<double>& f) {
    if (grid.n != 3 || grid.resolution < 8)
        throw std::invalid_argument("wulff_shape_3d: need a 3-dimensional grid, resolution >= 8");
    if (static_cast<int>(f.size()) != grid.size())
        throw std::invalid_argument("wulff_shape_3d: sample count does not match grid");

    WulffResult res;
    res.directions = grid.nodes;
    res.raw = f;
    res.body = make_wulff3(grid.nodes, f);
    res.clipped.resize(f.size());
    double gap = 0.0, scale = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        res.clipped[i] = res.body.support(grid.nodes[i]);
        gap = std::max(gap, f[i] - res.clipped[i]);
        scale = std::max(scale, std::abs(f[i]));
    }
    res.is_already_convex = gap <= 1e-9 * scale;
    return res;
}

Body lp_combination(const Body& k, const Body& l, double p, double lambda, int resolution) {
    if (p > 1.0) throw std::invalid_argument("lp_combination: requires p <= 1");
    if (!(lambda > 0.0 && lambda < 1.0))
        throw std::invalid_argument("lp_combination: lambda must lie in (0, 1)");
    if (k.dim() != l.dim()) throw std::invalid_argument("lp_combination: dimension mismatch");
    const int n = k.dim();

    auto verbatim = [&](MeanMode mode, Body wulff) {
        return Body(std::make_shared<PMeanRep>(k, l, p, lambda, resolution, mode,
                                               std::move(wulff)));
    };

    // p = 1 means are support functions; identical bodies are their own mean.
    bool trivially_convex = (p == 1.0);
    const SphereGrid probe = build_grid(n, n == 2 ? std::max(resolution, 8) : 12);
    if (!trivially_convex) {
        double diff = 0.0, scale = 0.0;
        for (const auto& u : probe.nodes) {
            double a = k.support(u), b = l.support(u);
            diff = std::max(diff, std::abs(a - b));
            scale = std::max(scale, std::abs(a));
        }
        trivially_convex = diff <= 1e-14 * scale;
    }
    if (trivially_convex) return verbatim(MeanMode::Verbatim, Body());

    if (k.smooth() && l.smooth()) {
        // Accept the p-mean verbatim when its A-matrix is positive definite
        // over the probe grid (the near-ball regime, where the Wulff step is
        // the identity).
        Body candidate = verbatim(MeanMode::Verbatim, Body());
        double min_eig = std::numeric_limits<double>::infinity();
        double scale = 0.0;
        for (const auto& u : probe.nodes) {
            Mat2 a = a_matrix(candidate.jet_field(), u, n);
            if (n == 2) {
                min_eig = std::min(min_eig, a(0, 0));
                scale = std::max(scale, std::abs(a(0, 0)));
            } else {
                Eigen::SelfAdjointEigenSolver<Mat2> es(a);
                min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
                scale = std::max(scale, es.eigenvalues().cwiseAbs().maxCoeff());
            }
        }
        if (min_eig > 1e-8 * scale) return candidate;
    }

    // Wulff pass over the sampled direction set.
    const SphereGrid sample = build_grid(n, resolution);
    std::vector<double> f(sample.size());
    PMeanRep formula(k, l, p, lambda, resolution, MeanMode::Verbatim, Body());
    for (int i = 0; i < sample.size(); ++i)
        f[i] = formula.mean_value(k.support(sample.nodes[i]), l.support(sample.nodes[i]));
    WulffResult w = (n == 2) ? wulff_shape_2d(sample.nodes, f) : wulff_shape_3d(sample, f);
    return verbatim(MeanMode::Wulff, w.body);
}

Body outer_parallel(const Body& k, double rho) {
    return Body(std::make_shared<OffsetRep>(k, rho));
}

const std::vector<Vec2>* polygon_vertices(const Body& k) {
    if (auto* p = dynamic_cast<const PolygonRep*>(&k.rep())) return &p->vertices();
    if (auto* m = dynamic_cast<const PMeanRep*>(&k.rep()))
        if (!m->verbatim() && m->dim() == 2 && m->wulff_body().valid())
            return polygon_vertices(m->wulff_body());
    return nullptr;
}

std::optional<SegmentProductView> as_segment_product(const Body& k) {
    if (auto* s = dynamic_cast<const SegmentProductRep*>(&k.rep()))
        return SegmentProductView{s->base(), s->half_length(), s->axis()};
    return std::nullopt;
}

double c2_distance_to_ball(const Body& k, const SphereGrid& grid) {
    if (!k.smooth()) throw std::invalid_argument("c2_distance_to_ball: smooth body required");
    double d = 0.0;
    auto field = k.jet_field();
    for (int i = 0; i < grid.size(); ++i) {
        const Vec3& u = grid.nodes[i];
        Jet2 j = field(u);
        d = std::max(d, std::abs(j.v - 1.0));
        d = std::max(d, (j.g - j.g.dot(u) * u).norm());
        Mat2 a = Mat2::Zero();
        for (int r = 0; r < grid.n - 1; ++r)
            for (int c = 0; c < grid.n - 1; ++c)
                a(r, c) = grid.frames[i][r].dot(j.H * grid.frames[i][c]);
        Mat2 dev = a - Mat2::Identity();
        if (grid.n == 2)
            d = std::max(d, std::abs(a(0, 0) - 1.0));
        else {
            Eigen::SelfAdjointEigenSolver<Mat2> es(dev);
            d = std::max(d, es.eigenvalues().cwiseAbs().maxCoeff());
        }
    }
    return d;
}

}  // namespace quermass
