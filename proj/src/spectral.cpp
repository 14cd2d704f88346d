#include "quermass/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace quermass {

namespace {

constexpr double kPi = 3.14159265358979323846;

// V_j of a 1-homogeneous field (not necessarily backed by a Body).
double vj_of_field(const AmbientField& f, int j, const SphereGrid& grid) {
    const int n = grid.n;
    std::vector<AmbientField> args;
    for (int i = 0; i < j - 1; ++i) args.push_back(f);
    const Body ball = make_ball(n, 1.0);
    for (int i = 0; i < n - j; ++i) args.push_back(ball.jet_field());
    auto s = mixed_curvature_fields(args, grid);
    double acc = 0.0;
    for (int i = 0; i < grid.size(); ++i) acc += grid.weights[i] * f(grid.nodes[i]).v * s[i];
    return d_nj(n, j) * acc / n;
}

void require_spectral_case(const SphereGrid& grid, int j) {
    if (grid.n != 3 || j != 2)
        throw std::invalid_argument("spectral: the supported case is n = 3, j = 2");
}

}  // namespace

ConeMeasure cone_measure(const Body& k, int j, const SphereGrid& grid) {
    if (!k.smooth()) throw std::invalid_argument("cone_measure: smooth body required");
    const int n = grid.n;
    if (j < 1 || j > n - 1) throw std::invalid_argument("cone_measure: need 1 <= j <= n-1");

    // membership in S^n: A h must be positive definite on the grid
    auto mats = hessian_operator(k.jet_field(), grid);
    for (const auto& a : mats) {
        double min_eig = (n == 2) ? a(0, 0) : eigenvalues2(a)[0];
        if (!(min_eig > 0.0))
            throw std::invalid_argument("cone_measure: nonpositive A h eigenvalue detected");
    }

    std::vector<AmbientField> args;
    for (int i = 0; i < j - 1; ++i) args.push_back(k.jet_field());
    const Body ball = make_ball(n, 1.0);
    for (int i = 0; i < n - j; ++i) args.push_back(ball.jet_field());
    auto s = mixed_curvature_fields(args, grid);

    ConeMeasure out;
    out.j = j;
    out.density.resize(grid.size());
    for (int i = 0; i < grid.size(); ++i) {
        out.density[i] = k.support(grid.nodes[i]) * s[i] / n;
        out.mass += grid.weights[i] * out.density[i];
    }
    return out;
}

SpectralProblem assemble_T(const Body& k, int j, const SphereGrid& grid, int basis_degree) {
    require_spectral_case(grid, j);
    if (basis_degree < 4 || basis_degree % 2 != 0)
        throw std::invalid_argument("assemble_T: basis degree must be even and >= 4");

    ConeMeasure mu = cone_measure(k, j, grid);  // also certifies K in S^n
    auto basis = even_basis(3, basis_degree);
    const int nb = basis->size();
    const int ng = grid.size();

    // basis values and 0-homogeneous jets at the nodes
    Eigen::MatrixXd vals(ng, nb);
    std::vector<std::vector<Jet2>> zjets(nb, std::vector<Jet2>(ng));
    for (int b = 0; b < nb; ++b)
        for (int i = 0; i < ng; ++i) {
            zjets[b][i] = basis->at(b).jet(grid.nodes[i], 0);
            vals(i, b) = zjets[b][i].v;
        }

    std::vector<Jet2> hjets(ng);
    for (int i = 0; i < ng; ++i) hjets[i] = k.support_jet(grid.nodes[i]);

    // mass matrix over the cone measure
    Eigen::VectorXd wd(ng);
    for (int i = 0; i < ng; ++i) wd[i] = grid.weights[i] * mu.density[i];
    Eigen::MatrixXd mass = vals.transpose() * wd.asDiagonal() * vals;

    // B_ab = (1/n) int Y_a h s(Y_b h, 1) dH ; s(f, 1) = trace(A f) / 2
    Eigen::MatrixXd traces(ng, nb);
    for (int b = 0; b < nb; ++b)
        for (int i = 0; i < ng; ++i) {
            Jet2 prod = zjets[b][i] * hjets[i];
            const auto& fr = grid.frames[i];
            traces(i, b) =
                0.5 * (fr[0].dot(prod.H * fr[0]) + fr[1].dot(prod.H * fr[1]));
        }
    Eigen::VectorXd wh(ng);
    for (int i = 0; i < ng; ++i) wh[i] = grid.weights[i] * hjets[i].v / 3.0;
    Eigen::MatrixXd b_mat = vals.transpose() * wh.asDiagonal() * traces;

    SpectralProblem out;
    out.j = j;
    out.basis_degree = basis_degree;
    out.basis = basis;
    out.mass = std::move(mass);
    Eigen::MatrixXd op = out.mass - b_mat;
    out.symmetry_defect = (op - op.transpose()).cwiseAbs().maxCoeff();
    out.op = 0.5 * (op + op.transpose());

    Eigen::VectorXd one = Eigen::VectorXd::Zero(nb);
    one[basis->index_of(0, 0)] = std::sqrt(4.0 * kPi);
    out.constraint = out.mass * one;
    return out;
}

namespace {

// orthonormal basis of the kernel of the constraint functional
Eigen::MatrixXd constraint_complement(const Eigen::VectorXd& c) {
    const int nb = static_cast<int>(c.size());
    Eigen::MatrixXd q = Eigen::HouseholderQR<Eigen::MatrixXd>(c).householderQ();
    return q.rightCols(nb - 1);
}

Eigen::VectorXd reduced_spectrum(const SpectralProblem& problem) {
    Eigen::MatrixXd p = constraint_complement(problem.constraint);
    Eigen::MatrixXd a = p.transpose() * problem.op * p;
    Eigen::MatrixXd m = p.transpose() * problem.mass * p;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> probe(m);
    if (probe.eigenvalues().minCoeff() < 1e-12 * probe.eigenvalues().maxCoeff())
        throw std::runtime_error("lambda_1e: ill-conditioned mass matrix");
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, m);
    return es.eigenvalues();
}

}  // namespace

double lambda_1e(const SpectralProblem& problem) { return reduced_spectrum(problem)[0]; }

std::vector<double> even_spectrum(const SpectralProblem& problem, int count) {
    Eigen::VectorXd ev = reduced_spectrum(problem);
    count = std::min<int>(count, static_cast<int>(ev.size()));
    return std::vector<double>(ev.data(), ev.data() + count);
}

SecondDerivative second_derivative_identity_check(const Body& k, int j, double p,
                                                  const HarmonicExpansion& z,
                                                  const SphereGrid& grid, double step) {
    require_spectral_case(grid, j);
    if (p == 0.0) throw std::invalid_argument("second_derivative_identity_check: p must be nonzero");
    if (step < 1e-8) throw std::invalid_argument("second_derivative_identity_check: step underflow");

    auto field_at = [&](double t) -> AmbientField {
        return [&k, &z, t, p](const Vec3& x) {
            Jet2 h = k.support_jet(x);
            Jet2 zf = z.jet(x, 0);
            return h * jet_pow(zf * t + 1.0, 1.0 / p);
        };
    };
    auto check_cone = [&](double t) {
        auto mats = hessian_operator(field_at(t), grid);
        for (const auto& a : mats)
            if (!(eigenvalues2(a)[0] > 0.0))
                throw std::runtime_error(
                    "second_derivative_identity_check: perturbation leaves the support cone");
    };
    check_cone(step);
    check_cone(-step);

    auto f_of = [&](double t) {
        return std::pow(vj_of_field(field_at(t), j, grid), p / j);
    };
    const double f0 = f_of(0.0);
    auto central = [&](double t) { return (f_of(t) - 2.0 * f0 + f_of(-t)) / (t * t); };
    const double fd = (4.0 * central(0.5 * step) - central(step)) / 3.0;

    // spectral side
    ConeMeasure mu = cone_measure(k, j, grid);
    const double vj = d_nj(3, j) * mu.mass;  // V_j(K)
    double zint = 0.0, znorm = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        double zv = z.value(grid.nodes[i]);
        zint += grid.weights[i] * mu.density[i] * zv;
        znorm += grid.weights[i] * mu.density[i] * zv * zv;
    }
    const double c = zint / mu.mass;
    const double z0_norm2 = znorm - 2.0 * c * zint + c * c * mu.mass;

    // <z0, T z0> = ||z0||^2 - (1/n) int (z0 h) s(z0 h, 1) dH
    double bilinear = 0.0;
    AmbientField z0h = [&k, &z, c](const Vec3& x) {
        return k.support_jet(x) * (z.jet(x, 0) - c);
    };
    for (int i = 0; i < grid.size(); ++i) {
        Jet2 f = z0h(grid.nodes[i]);
        const auto& fr = grid.frames[i];
        double tr = 0.5 * (fr[0].dot(f.H * fr[0]) + fr[1].dot(f.H * fr[1]));
        bilinear += grid.weights[i] * f.v * tr / 3.0;
    }
    const double ztz = z0_norm2 - bilinear;

    // d_{n,j}^{-1} V_j^{(j-p)/j} = mass * V_j^{-p/j}
    const double prefactor = (j - 1.0) * std::pow(vj, p / j) / (p * mu.mass);
    const double spectral = -prefactor * (ztz - (j - p) / (j - 1.0) * z0_norm2);

    return SecondDerivative{fd, spectral};
}

IvakiMilmanResult ivaki_milman_check(const Body& k, int j, double p, double c,
                                     const SphereGrid& grid) {
    const int n = grid.n;
    if (j < 1 || j > n - 2)
        throw std::invalid_argument("ivaki_milman_check: need 1 <= j <= n-2");
    if (!(c > 0.0)) throw std::invalid_argument("ivaki_milman_check: c must be positive");
    if (!k.smooth()) throw std::invalid_argument("ivaki_milman_check: smooth body required");

    const double binom_sigma = binomial(n - 1, j);
    auto mats = hessian_operator(k.jet_field(), grid);

    double lhs = 0.0, rhs = 0.0;
    for (int i = 0; i < grid.size(); ++i) {
        const Vec3& u = grid.nodes[i];
        Jet2 jh = k.support_jet(u);
        const double h = jh.v;
        Vec3 sgrad = jh.g - jh.g.dot(u) * u;

        Mat2 a = mats[i];
        Eigen::SelfAdjointEigenSolver<Mat2> es(a);
        Eigen::Vector2d lambda = es.eigenvalues();
        Mat2 rot = es.eigenvectors();

        // sigma_j and sigma_j^{ii} in the principal frame
        const double sj = curvature_sj(k, j, u, n);
        const double sigma_j = binom_sigma * sj;
        MatX sig = sigma_matrix(a, n, j);
        MatX sig_eig = rot.transpose() * sig * rot;

        // gradient components in the principal frame
        Eigen::Vector2d g_frame(grid.frames[i][0].dot(sgrad), grid.frames[i][1].dot(sgrad));
        Eigen::Vector2d g_eig = rot.transpose() * g_frame;

        double mixed_term = 0.0;
        for (int t = 0; t < n - 1; ++t)
            mixed_term += lambda[t] * sig_eig(t, t) * g_eig[t] * g_eig[t];

        const double sigma_1 = a.trace();
        const double hp = std::pow(h, p);
        lhs += grid.weights[i] *
               ((c * (p + 1.0) + (j - 2.0) * std::pow(h, 1.0 - p) * sigma_j) * hp *
                    sgrad.squaredNorm() +
                2.0 * h * mixed_term);
        rhs += grid.weights[i] * (std::pow(h, 1.0 - p) * sigma_j - c) * hp * h *
               (sigma_1 - (n - 1.0) * h);
    }

    IvakiMilmanResult out;
    out.lhs = lhs;
    out.rhs = rhs;
    out.holds = lhs <= rhs + 1e-8;
    return out;
}

}  // namespace quermass
