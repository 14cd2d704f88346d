#include "quermass/sphere.hpp"

#include <cmath>
#include <stdexcept>

#include <json.hpp>

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Gauss-Legendre nodes/weights on [-1, 1] by Newton iteration, mirrored so
// that node symmetry is exact in floating point.
void gauss_legendre(int count, std::vector<double>& x, std::vector<double>& w) {
    x.assign(count, 0.0);
    w.assign(count, 0.0);
    const int half = (count + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double t = std::cos(kPi * (i + 0.75) / (count + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = t;
            for (int k = 1; k < count; ++k) {
                double p2 = ((2.0 * k + 1.0) * t * p1 - k * p0) / (k + 1.0);
                p0 = p1;
                p1 = p2;
            }
            dp = count * (t * p1 - p0) / (t * t - 1.0);
            double dt = p1 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        double weight = 2.0 / ((1.0 - t * t) * dp * dp);
        x[i] = -t;  // ascending order, negative half first
        w[i] = weight;
        x[count - 1 - i] = t;
        w[count - 1 - i] = weight;
    }
    if (count % 2 == 1) x[half - 1] = 0.0;
}

}  // namespace

double SphereGrid::integrate(const std::vector<double>& values) const {
    if (static_cast<int>(values.size()) != size())
        throw std::invalid_argument("integrate: sample count does not match grid");
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * values[i];
    return s;
}

double SphereGrid::integrate(const ScalarField& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
}

std::array<Vec3, 2> tangent_frame(const Vec3& u, int n) {
    if (n == 2) return {Vec3(-u.y(), u.x(), 0.0), Vec3::Zero()};
    Vec3 ref = (std::abs(u.z()) > 0.9) ? Vec3::UnitX() : Vec3::UnitZ();
    Vec3 e1 = (ref - ref.dot(u) * u).normalized();
    Vec3 e2 = u.cross(e1);
    return {e1, e2};
}

SphereGrid build_grid(int n, int resolution) {
    if (n != 2 && n != 3)
        throw std::invalid_argument("build_grid: unsupported dimension (need n = 2 or 3)");
    if (resolution < 4)
        throw std::invalid_argument("build_grid: resolution must be at least 4");

    SphereGrid grid;
    grid.n = n;
    grid.resolution = resolution;

    if (n == 2) {
        const int count = 2 * resolution;
        const int half = count / 2;
        grid.nodes.resize(count);
        grid.weights.assign(count, 2.0 * kPi / count);
        grid.antipode.resize(count);
        for (int k = 0; k < half; ++k) {
            double th = 2.0 * kPi * k / count;
            grid.nodes[k] = Vec3(std::cos(th), std::sin(th), 0.0);
            grid.nodes[k + half] = -grid.nodes[k];
            grid.antipode[k] = k + half;
            grid.antipode[k + half] = k;
        }
    } else {
        const int npolar = resolution + 1;
        const int naz = 2 * (resolution + 1);
        const int haz = naz / 2;
        std::vector<double> gx, gw;
        gauss_legendre(npolar, gx, gw);

        grid.nodes.resize(npolar * naz);
        grid.weights.resize(npolar * naz);
        grid.antipode.resize(npolar * naz);
        auto id = [naz](int i, int k) { return i * naz + k; };
        for (int i = 0; i < npolar; ++i) {
            double z = gx[i];
            double s = std::sqrt(std::max(0.0, 1.0 - z * z));
            for (int k = 0; k < haz; ++k) {
                double phi = 2.0 * kPi * k / naz;
                grid.nodes[id(i, k)] = Vec3(s * std::cos(phi), s * std::sin(phi), z);
                grid.weights[id(i, k)] = gw[i] * 2.0 * kPi / naz;
            }
        }
        // antipodal half, bitwise exact
        for (int i = 0; i < npolar; ++i)
            for (int k = 0; k < haz; ++k) {
                int src = id(npolar - 1 - i, k);
                grid.nodes[id(i, k + haz)] = -grid.nodes[src];
                grid.weights[id(i, k + haz)] = grid.weights[src];
                grid.antipode[src] = id(i, k + haz);
                grid.antipode[id(i, k + haz)] = src;
            }
    }

    grid.frames.resize(grid.nodes.size());
    for (int i = 0; i < grid.size(); ++i) grid.frames[i] = tangent_frame(grid.nodes[i], n);
    return grid;
}

std::vector<Vec3> spherical_gradient(const AmbientField& f, const SphereGrid& grid) {
    std::vector<Vec3> out(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        const Vec3& u = grid.nodes[i];
        Jet2 j = f(u);
        out[i] = j.g - j.g.dot(u) * u;
    }
    return out;
}

Mat2 a_matrix(const AmbientField& f, const Vec3& u, int n) {
    auto frame = tangent_frame(u, n);
    Jet2 j = f(u);
    Mat2 a = Mat2::Zero();
    for (int r = 0; r < n - 1; ++r)
        for (int c = 0; c < n - 1; ++c) a(r, c) = frame[r].dot(j.H * frame[c]);
    return a;
}

std::vector<Mat2> hessian_operator(const AmbientField& f, const SphereGrid& grid) {
    std::vector<Mat2> out(grid.size(), Mat2::Zero());
    for (int i = 0; i < grid.size(); ++i) {
        Jet2 j = f(grid.nodes[i]);
        const auto& fr = grid.frames[i];
        for (int r = 0; r < grid.n - 1; ++r)
            for (int c = 0; c < grid.n - 1; ++c) out[i](r, c) = fr[r].dot(j.H * fr[c]);
    }
    return out;
}

std::string grid_descriptor(const SphereGrid& grid) {
    nlohmann::json j;
    j["n"] = grid.n;
    j["resolution"] = grid.resolution;
    return j.dump(2) + "\n";
}

SphereGrid grid_from_descriptor(const std::string& text) {
    auto j = nlohmann::json::parse(text);
    return build_grid(j.at("n").get<int>(), j.at("resolution").get<int>());
}

}  // namespace quermass
