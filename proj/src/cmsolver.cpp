#include "quermass/cmsolver.hpp"

#include <cmath>
#include <map>
#include <random>
#include <stdexcept>

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Per-grid tables of the even basis: values, spherical gradients and
// A-matrices of every basis function at every node. Built once per
// (resolution, degree) pair and shared; all callers are read-only.
struct BasisTables {
    SphereGrid grid;
    std::shared_ptr<const HarmonicBasis> basis;
    Eigen::MatrixXd values;           // ng x nb
    std::vector<Vec3> grads;          // i * nb + b
    std::vector<Mat2> amats;          // i * nb + b
    Eigen::VectorXd trace_factor;     // s_1 factor per basis member
};

const BasisTables& even_tables(int resolution, int degree) {
    static std::map<std::pair<int, int>, std::unique_ptr<BasisTables>> cache;
    auto key = std::make_pair(resolution, degree);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto tables = std::make_unique<BasisTables>();
    tables->grid = build_grid(3, resolution);
    tables->basis = even_basis(3, degree);
    const int ng = tables->grid.size();
    const int nb = tables->basis->size();
    tables->values.resize(ng, nb);
    tables->grads.resize(static_cast<size_t>(ng) * nb);
    tables->amats.resize(static_cast<size_t>(ng) * nb);
    tables->trace_factor.resize(nb);
    for (int b = 0; b < nb; ++b) {
        const int l = tables->basis->at(b).degree();
        tables->trace_factor[b] = 0.5 * (2.0 - l * (l + 1.0));
    }
    for (int i = 0; i < ng; ++i) {
        const Vec3& u = tables->grid.nodes[i];
        const auto& fr = tables->grid.frames[i];
        for (int b = 0; b < nb; ++b) {
            Jet2 j = tables->basis->at(b).jet(u, 1);
            tables->values(i, b) = j.v;
            tables->grads[static_cast<size_t>(i) * nb + b] = j.g - j.g.dot(u) * u;
            Mat2 a;
            a(0, 0) = fr[0].dot(j.H * fr[0]);
            a(0, 1) = fr[0].dot(j.H * fr[1]);
            a(1, 0) = a(0, 1);
            a(1, 1) = fr[1].dot(j.H * fr[1]);
            tables->amats[static_cast<size_t>(i) * nb + b] = a;
        }
    }
    const BasisTables& ref = *tables;
    cache[key] = std::move(tables);
    return ref;
}

double min_a_eigenvalue(const BasisTables& t, const Eigen::VectorXd& c) {
    const int ng = t.grid.size();
    const int nb = static_cast<int>(c.size());
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < ng; ++i) {
        Mat2 a = Mat2::Zero();
        for (int b = 0; b < nb; ++b)
            if (c[b] != 0.0) a += c[b] * t.amats[static_cast<size_t>(i) * nb + b];
        worst = std::min(worst, eigenvalues2(a)[0]);
    }
    return worst;
}

}  // namespace

SphericalFunction SphericalFunction::constant(double c) {
    return {[c](const Vec3&) { return c; }, "constant " + std::to_string(c)};
}

SphericalFunction SphericalFunction::harmonic(const HarmonicExpansion& h) {
    return {[h](const Vec3& u) { return h.value(u); },
            "harmonic expansion, degree " + std::to_string(h.max_degree())};
}

CMProblem make_cm_problem(int n, int j, double p, SphericalFunction g, int resolution,
                          int basis_degree) {
    if (n != 3) throw std::invalid_argument("make_cm_problem: n = 3 is the supported dimension");
    if (j < 1 || j > n - 2) throw std::invalid_argument("make_cm_problem: need 1 <= j <= n-2");
    if (!(p >= 0.0 && p < 1.0)) throw std::invalid_argument("make_cm_problem: p must lie in [0, 1)");
    if (basis_degree % 2 != 0 || basis_degree < 4)
        throw std::invalid_argument("make_cm_problem: basis degree must be even and >= 4");

    CMProblem problem;
    problem.n = n;
    problem.j = j;
    problem.p = p;
    problem.g = std::move(g);
    problem.grid = build_grid(3, resolution);
    problem.basis_degree = basis_degree;
    // The pair (p, j) = (0, 1) sits outside the uniqueness theorem (the
    // equatorial-disk example breaks the lower bound there); the solver still
    // accepts it and reports the flag, since the linearization at h == 1
    // stays invertible.
    problem.theorem_excluded = (p == 0.0 && j == 1);

    problem.g_samples.resize(problem.grid.size());
    double gmax = 0.0;
    for (int i = 0; i < problem.grid.size(); ++i) {
        problem.g_samples[i] = problem.g.eval(problem.grid.nodes[i]);
        if (!(problem.g_samples[i] > 0.0))
            throw std::invalid_argument("make_cm_problem: g must be positive");
        gmax = std::max(gmax, std::abs(problem.g_samples[i] - 1.0));
        if (std::abs(problem.g_samples[i] -
                     problem.g.eval(-problem.grid.nodes[i])) > 1e-12)
            throw std::invalid_argument("make_cm_problem: g must be even");
    }
    // C^(1/2) gate measured over node pairs (subsampled for larger grids)
    double quotient = 0.0;
    const int stride = std::max(1, problem.grid.size() / 600);
    for (int a = 0; a < problem.grid.size(); a += stride)
        for (int b = a + stride; b < problem.grid.size(); b += stride) {
            double dist = (problem.grid.nodes[a] - problem.grid.nodes[b]).norm();
            if (dist < 1e-12) continue;
            quotient = std::max(quotient,
                                std::abs(problem.g_samples[a] - problem.g_samples[b]) /
                                    std::sqrt(dist));
        }
    problem.holder_gate = gmax + quotient;
    return problem;
}

double LinearizedOperator::factor(int degree) const {
    return -static_cast<double>(degree) * (degree + n - 2) * j / (n - 1.0) + (j - p + 1.0);
}

HarmonicExpansion LinearizedOperator::apply(const HarmonicExpansion& w) const {
    HarmonicExpansion out = w;
    for (int i = 0; i < w.basis().size(); ++i)
        out.coeffs()[i] = w.coeffs()[i] * factor(w.basis().at(i).degree());
    return out;
}

HarmonicExpansion LinearizedOperator::solve(const HarmonicExpansion& rhs) const {
    HarmonicExpansion out = rhs;
    for (int i = 0; i < rhs.basis().size(); ++i)
        out.coeffs()[i] = rhs.coeffs()[i] / factor(rhs.basis().at(i).degree());
    return out;
}

LinearizedOperator linearized_operator(double p, int j, int n) {
    LinearizedOperator op{n, j, p};
    for (int k = 0; k <= 200; k += 2)
        if (std::abs(op.factor(k)) < 1e-12)
            throw std::invalid_argument(
                "linearized_operator: a degree block is singular on even fields");
    return op;
}

SolveReport newton_solve(const CMProblem& problem, const NewtonConfig& config) {
    const BasisTables& t = even_tables(problem.grid.resolution, problem.basis_degree);
    const int ng = t.grid.size();
    const int nb = t.basis->size();
    const double p = problem.p;
    const LinearizedOperator ball_op = linearized_operator(p, problem.j, problem.n);

    Eigen::VectorXd g = Eigen::Map<const Eigen::VectorXd>(problem.g_samples.data(), ng);
    Eigen::VectorXd w = Eigen::Map<const Eigen::VectorXd>(t.grid.weights.data(), ng);

    Eigen::VectorXd c = Eigen::VectorXd::Zero(nb);
    c[t.basis->index_of(0, 0)] = std::sqrt(4.0 * kPi);  // h == 1
    if (config.initial_coeffs) {
        if (config.initial_coeffs->size() != nb)
            throw std::invalid_argument("newton_solve: initial coefficient size mismatch");
        c = *config.initial_coeffs;
    }

    SolveReport report;
    report.h = HarmonicExpansion(3, problem.basis_degree);

    auto residual_values = [&](const Eigen::VectorXd& coeffs) -> Eigen::VectorXd {
        Eigen::VectorXd h = t.values * coeffs;
        Eigen::VectorXd s1 = t.values * (t.trace_factor.cwiseProduct(coeffs).eval());
        Eigen::VectorXd r(ng);
        for (int i = 0; i < ng; ++i) {
            if (!(h[i] > 0.0)) return Eigen::VectorXd::Constant(ng, std::nan(""));
            r[i] = std::pow(h[i], 1.0 - p) * s1[i] - g[i];
        }
        return r;
    };
    auto sup_norm = [](const Eigen::VectorXd& v) { return v.cwiseAbs().maxCoeff(); };

    Eigen::VectorXd r = residual_values(c);
    if (r.hasNaN()) {
        report.abort_reason = "initial iterate has nonpositive support values";
        return report;
    }
    double res = sup_norm(r);
    report.residual_history.push_back(res);

    int increases_in_a_row = 0;
    for (int iter = 0; iter < config.max_iterations && res > config.tolerance; ++iter) {
        // convexity monitor
        double min_eig = min_a_eigenvalue(t, c);
        report.min_a_eigenvalue = min_eig;
        if (!(min_eig > 0.0)) {
            report.abort_reason = "convexity loss (min eigenvalue of A h <= 0)";
            return report;
        }

        Eigen::VectorXd h = t.values * c;
        Eigen::VectorXd s1 = t.values * (t.trace_factor.cwiseProduct(c).eval());

        // exact Frechet derivative at the current iterate:
        //   D Xi[v] = (1-p) h^-p s_1 v + h^(1-p) s_1'(v)
        Eigen::VectorXd diag_val(ng), diag_trace(ng);
        for (int i = 0; i < ng; ++i) {
            diag_val[i] = w[i] * (1.0 - p) * std::pow(h[i], -p) * s1[i];
            diag_trace[i] = w[i] * std::pow(h[i], 1.0 - p);
        }
        Eigen::MatrixXd jac = t.values.transpose() * diag_val.asDiagonal() * t.values +
                              (t.values.transpose() * diag_trace.asDiagonal() * t.values) *
                                  t.trace_factor.asDiagonal();
        Eigen::VectorXd rhs = -(t.values.transpose() * (w.cwiseProduct(r)).eval());

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(jac,
                                              Eigen::ComputeThinU | Eigen::ComputeThinV);
        double cond = svd.singularValues()(0) /
                      svd.singularValues()(svd.singularValues().size() - 1);
        Eigen::VectorXd delta;
        if (cond > config.condition_threshold) {
            // fall back to the invertible h == 1 linearization
            ++report.fallback_steps;
            delta = rhs;
            for (int b = 0; b < nb; ++b) delta[b] /= ball_op.factor(t.basis->at(b).degree());
        } else {
            delta = svd.solve(rhs);
        }

        // line search: halve on residual increase
        double alpha = 1.0;
        Eigen::VectorXd c_next;
        Eigen::VectorXd r_next;
        double res_next = std::numeric_limits<double>::infinity();
        for (int halving = 0; halving <= config.max_halvings; ++halving) {
            c_next = c + alpha * delta;
            r_next = residual_values(c_next);
            if (!r_next.hasNaN()) {
                res_next = sup_norm(r_next);
                if (res_next < res) break;
            }
            alpha *= 0.5;
        }
        if (!(res_next < res)) increases_in_a_row += 1;
        else increases_in_a_row = 0;
        if (increases_in_a_row >= 2) {
            report.abort_reason = "divergence (residual increased twice in a row)";
            return report;
        }
        if (r_next.hasNaN()) {
            report.abort_reason = "iterate left the positive cone";
            return report;
        }
        c = c_next;
        r = r_next;
        res = res_next;
        report.residual_history.push_back(res);
    }

    if (res > config.tolerance) {
        report.abort_reason = "maximum iterations reached";
        return report;
    }

    report.h.coeffs() = c;
    report.min_a_eigenvalue = min_a_eigenvalue(t, c);
    report.converged = report.min_a_eigenvalue > 0.0;
    if (!report.converged) {
        report.abort_reason = "converged iterate lost convexity";
        return report;
    }

    // certification on a finer grid
    const BasisTables& ct = even_tables(config.cert_resolution, problem.basis_degree);
    Eigen::VectorXd hc = ct.values * c;
    Eigen::VectorXd s1c = ct.values * (ct.trace_factor.cwiseProduct(c).eval());
    double cert = 0.0, min_h = std::numeric_limits<double>::infinity(), max_h = 0.0,
           lip = 0.0;
    for (int i = 0; i < ct.grid.size(); ++i) {
        double gi = problem.g.eval(ct.grid.nodes[i]);
        cert = std::max(cert, std::abs(std::pow(hc[i], 1.0 - p) * s1c[i] - gi));
        min_h = std::min(min_h, hc[i]);
        max_h = std::max(max_h, hc[i]);
        Vec3 grad = Vec3::Zero();
        for (int b = 0; b < ct.basis->size(); ++b)
            if (c[b] != 0.0) grad += c[b] * ct.grads[static_cast<size_t>(i) * ct.basis->size() + b];
        lip = std::max(lip, grad.norm());
    }
    report.residual = cert;
    report.min_h = min_h;
    report.max_h = max_h;
    report.lipschitz = lip;
    return report;
}

UniquenessVerdict uniqueness_probe(const CMProblem& problem, int init_count, double spread,
                                   const NewtonConfig& config) {
    const BasisTables& t = even_tables(problem.grid.resolution, problem.basis_degree);
    const int nb = t.basis->size();

    UniquenessVerdict verdict;
    verdict.total_runs = init_count;
    std::vector<Eigen::VectorXd> solutions;

    for (int run = 0; run < init_count; ++run) {
        NewtonConfig cfg = config;
        Eigen::VectorXd c0 = Eigen::VectorXd::Zero(nb);
        c0[t.basis->index_of(0, 0)] = std::sqrt(4.0 * kPi);
        std::mt19937_64 rng(1000 + 77 * static_cast<unsigned>(run));
        std::normal_distribution<double> gauss;
        Eigen::VectorXd noise = Eigen::VectorXd::Zero(nb);
        for (int b = 0; b < nb; ++b) {
            int l = t.basis->at(b).degree();
            if (l >= 2 && l <= 4) noise[b] = gauss(rng);
        }
        // scale the perturbation so its grid C^2 size is about `spread`
        double size = 0.0;
        for (int i = 0; i < t.grid.size(); ++i) {
            Mat2 a = Mat2::Zero();
            for (int b = 0; b < nb; ++b)
                if (noise[b] != 0.0) a += noise[b] * t.amats[static_cast<size_t>(i) * nb + b];
            auto ev = eigenvalues2(a);
            size = std::max({size, std::abs(ev[0]), std::abs(ev[1])});
        }
        c0 += noise * (spread / size);
        cfg.initial_coeffs = c0;

        SolveReport rep = newton_solve(problem, cfg);
        if (!rep.converged) {
            verdict.status = ProbeStatus::Inconclusive;
            return verdict;
        }
        ++verdict.converged_runs;
        solutions.push_back(rep.h.coeffs());
    }

    double worst = 0.0;
    for (size_t a = 0; a < solutions.size(); ++a)
        for (size_t b = a + 1; b < solutions.size(); ++b) {
            Eigen::VectorXd diff = t.values * (solutions[a] - solutions[b]);
            worst = std::max(worst, diff.cwiseAbs().maxCoeff());
        }
    verdict.max_disagreement = worst;
    verdict.status = worst <= 1e-8 ? ProbeStatus::Agree : ProbeStatus::Disagree;
    return verdict;
}

BoundMonitorResult bound_monitor(const SolveReport& report, int resolution) {
    if (!report.converged) throw std::invalid_argument("bound_monitor: report not converged");
    SphereGrid g = build_grid(3, resolution);
    BoundMonitorResult out;
    out.min_h = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.size(); ++i) {
        Jet2 j = report.h.jet(g.nodes[i], 1);
        out.min_h = std::min(out.min_h, j.v);
        out.max_h = std::max(out.max_h, j.v);
        out.lipschitz = std::max(out.lipschitz, (j.g - j.g.dot(g.nodes[i]) * g.nodes[i]).norm());
    }
    return out;
}

double residual_supremum(const std::function<double(const Vec3&)>& h,
                         const std::function<double(const Vec3&)>& sj, double p,
                         const std::function<double(const Vec3&)>& g,
                         const std::vector<Vec3>& directions) {
    double worst = 0.0;
    for (const auto& u : directions)
        worst = std::max(worst, std::abs(std::pow(h(u), 1.0 - p) * sj(u) - g(u)));
    return worst;
}

}  // namespace quermass
