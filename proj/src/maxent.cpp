#include "mepack/maxent.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "mepack/errors.hpp"
#include "mepack/rng.hpp"

namespace mepack {

MomentConstraints MomentConstraints::from_params(const PacketParams& params, std::size_t nq,
                                                 std::size_t np, double span_sigmas) {
    params.validate();
    MomentConstraints c;
    c.mean_q = params.Q;
    c.mean_q2 = params.dQ * params.dQ + params.Q * params.Q;
    c.mean_p = params.P;
    c.mean_p2 = params.dP * params.dP + params.P * params.P;
    c.v = params.v;
    c.grid.q_lo = params.Q - span_sigmas * params.dQ;
    c.grid.q_hi = params.Q + span_sigmas * params.dQ;
    c.grid.p_lo = params.P - span_sigmas * params.dP;
    c.grid.p_hi = params.P + span_sigmas * params.dP;
    c.grid.nq = nq;
    c.grid.np = np;
    c.validate();
    return c;
}

void MomentConstraints::validate() const {
    if (!(var_q() > 0.0)) throw std::invalid_argument("maxent: <q^2> - <q>^2 must be positive");
    if (!(var_p() > 0.0)) throw std::invalid_argument("maxent: <p^2> - <p>^2 must be positive");
    if (!(v > 0.0)) throw std::invalid_argument("maxent: v must be positive");
    if (grid.nq < 2 || grid.np < 2) throw std::invalid_argument("maxent: grid too small");
    const double sq = std::sqrt(var_q());
    const double sp = std::sqrt(var_p());
    if (grid.q_lo > mean_q - 8.0 * sq || grid.q_hi < mean_q + 8.0 * sq ||
        grid.p_lo > mean_p - 8.0 * sp || grid.p_hi < mean_p + 8.0 * sp)
        throw std::invalid_argument("maxent: grid must cover 8 standard deviations");
}

namespace {

// Log-partition and first four moments of exp(-a x - b x^2) on one axis,
// stabilized by shifting out the max exponent.
struct AxisMoments {
    double log_z = 0.0;
    double m1 = 0.0, m2 = 0.0, m3 = 0.0, m4 = 0.0;
};

AxisMoments axis_moments(const std::vector<double>& x, double a, double b, double log_w) {
    double emax = -std::numeric_limits<double>::infinity();
    std::vector<double> e(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        e[i] = -a * x[i] - b * x[i] * x[i];
        emax = std::max(emax, e[i]);
    }
    double z = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0, s4 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double w = std::exp(e[i] - emax);
        const double x2 = x[i] * x[i];
        z += w;
        s1 += x[i] * w;
        s2 += x2 * w;
        s3 += x2 * x[i] * w;
        s4 += x2 * x2 * w;
    }
    AxisMoments m;
    m.log_z = emax + std::log(z) + log_w;
    m.m1 = s1 / z;
    m.m2 = s2 / z;
    m.m3 = s3 / z;
    m.m4 = s4 / z;
    return m;
}

std::array<double, 4> analytic_multipliers(const MomentConstraints& c) {
    const double vq = c.var_q();
    const double vp = c.var_p();
    return {-c.mean_q / vq, 0.5 / vq, -c.mean_p / vp, 0.5 / vp};
}

}  // namespace

MaxEntSolution solve_dual(const MomentConstraints& constraints, double tol,
                          std::size_t max_iter) {
    constraints.validate();
    if (max_iter == 0) throw std::invalid_argument("maxent: max_iter must be >= 1");
    const PhaseGrid& grid = constraints.grid;
    std::vector<double> qs(grid.nq), ps(grid.np);
    for (std::size_t i = 0; i < grid.nq; ++i) qs[i] = grid.q_at(i);
    for (std::size_t j = 0; j < grid.np; ++j) ps[j] = grid.p_at(j);

    const Eigen::Vector4d target(constraints.mean_q, constraints.mean_q2, constraints.mean_p,
                                 constraints.mean_p2);
    const double log_wq = std::log(grid.dq());
    const double log_wp = std::log(grid.dp());

    // exp(-lambda . T) factorizes over the axes, so the dual and all of its
    // derivatives reduce to one-dimensional sums
    auto dual_value = [&](const Eigen::Vector4d& l) {
        const auto aq = axis_moments(qs, l[0], l[1], log_wq);
        const auto ap = axis_moments(ps, l[2], l[3], log_wp);
        return aq.log_z + ap.log_z - std::log(constraints.v) + l.dot(target);
    };

    // analytic start perturbed by 50% so convergence is a real test
    const auto exact = analytic_multipliers(constraints);
    Eigen::Vector4d lambda(1.5 * exact[0], 1.5 * exact[1], 1.5 * exact[2], 1.5 * exact[3]);
    if (lambda[0] == 0.0) lambda[0] = 0.25 / std::sqrt(constraints.var_q());
    if (lambda[2] == 0.0) lambda[2] = 0.25 / std::sqrt(constraints.var_p());

    MaxEntSolution sol;
    sol.grid = grid;
    sol.v = constraints.v;

    bool converged = false;
    for (std::size_t it = 0; it < max_iter; ++it) {
        const auto aq = axis_moments(qs, lambda[0], lambda[1], log_wq);
        const auto ap = axis_moments(ps, lambda[2], lambda[3], log_wp);
        const Eigen::Vector4d moments(aq.m1, aq.m2, ap.m1, ap.m2);
        const Eigen::Vector4d gradient = target - moments;
        sol.residuals = {moments[0] - target[0], moments[1] - target[1], moments[2] - target[2],
                         moments[3] - target[3]};
        sol.iterations = it;

        // dual Hessian = covariance of (q, q^2, p, p^2); block diagonal
        Eigen::Matrix4d hessian = Eigen::Matrix4d::Zero();
        hessian(0, 0) = aq.m2 - aq.m1 * aq.m1;
        hessian(0, 1) = hessian(1, 0) = aq.m3 - aq.m1 * aq.m2;
        hessian(1, 1) = aq.m4 - aq.m2 * aq.m2;
        hessian(2, 2) = ap.m2 - ap.m1 * ap.m1;
        hessian(2, 3) = hessian(3, 2) = ap.m3 - ap.m1 * ap.m2;
        hessian(3, 3) = ap.m4 - ap.m2 * ap.m2;

        const Eigen::Vector4d step = hessian.ldlt().solve(gradient);
        sol.newton_decrements.push_back(std::sqrt(std::max(0.0, gradient.dot(step))));

        bool small = true;
        for (double r : sol.residuals) small = small && std::abs(r) <= tol;
        if (small) {
            converged = true;
            break;
        }

        const double d0 = dual_value(lambda);
        const double slope = gradient.dot(step);
        double s = 1.0;
        Eigen::Vector4d next = lambda - s * step;
        for (int halvings = 0; halvings < 60; ++halvings) {
            if (dual_value(next) <= d0 - 0.25 * s * slope) break;
            s *= 0.5;
            next = lambda - s * step;
        }
        lambda = next;
    }
    if (!converged) {
        std::string msg = "maxent: no convergence in " + std::to_string(max_iter) +
                          " iterations; residuals =";
        for (double r : sol.residuals) msg += " " + std::to_string(r);
        throw numerics_error(msg);
    }

    sol.lambda = {lambda[0], lambda[1], lambda[2], lambda[3]};

    // materialize the normalized grid distribution and its entropy
    const auto aq = axis_moments(qs, lambda[0], lambda[1], log_wq);
    const auto ap = axis_moments(ps, lambda[2], lambda[3], log_wp);
    const double log_z = aq.log_z + ap.log_z - std::log(constraints.v);
    const double cell = grid.dq() * grid.dp() / constraints.v;
    sol.rho.resize(grid.size());
    double entropy = 0.0;
    for (std::size_t i = 0; i < grid.nq; ++i) {
        for (std::size_t j = 0; j < grid.np; ++j) {
            const double e = -lambda[0] * qs[i] - lambda[1] * qs[i] * qs[i] -
                             lambda[2] * ps[j] - lambda[3] * ps[j] * ps[j] - log_z;
            const double r = std::exp(e);
            sol.rho[i * grid.np + j] = r;
            if (r > 0.0) entropy -= r * e * cell;
        }
    }
    sol.entropy = entropy;
    return sol;
}

double l1_distance_to_analytic(const MaxEntSolution& solution, const PacketParams& params) {
    params.validate();
    const PhaseGrid& grid = solution.grid;
    if (solution.rho.size() != grid.size())
        throw std::invalid_argument("l1_distance_to_analytic: solution grid mismatch");
    const double cell = grid.dq() * grid.dp() / solution.v;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.nq; ++i)
        for (std::size_t j = 0; j < grid.np; ++j)
            acc += std::abs(solution.rho[i * grid.np + j] -
                            classical_density(params, grid.q_at(i), grid.p_at(j))) *
                   cell;
    return acc;
}

double entropy_maximality_gap(const MaxEntSolution& solution, std::size_t n_perturbations,
                              std::uint64_t seed) {
    const PhaseGrid& grid = solution.grid;
    const std::size_t n = grid.size();
    const double cell = grid.dq() * grid.dp() / solution.v;

    // grid moments the perturbation must preserve: normalization plus the
    // four constrained observables
    std::vector<std::array<double, 5>> phi(n);
    double rho_max = 0.0;
    for (std::size_t i = 0; i < grid.nq; ++i) {
        for (std::size_t j = 0; j < grid.np; ++j) {
            const double q = grid.q_at(i);
            const double p = grid.p_at(j);
            phi[i * grid.np + j] = {1.0, q, q * q, p, p * p};
            rho_max = std::max(rho_max, solution.rho[i * grid.np + j]);
        }
    }
    // perturb only where the distribution has real support, so the step size
    // below stays meaningful
    std::vector<char> mask(n);
    for (std::size_t k = 0; k < n; ++k) mask[k] = solution.rho[k] > 1e-6 * rho_max ? 1 : 0;

    Eigen::Matrix<double, 5, 5> gram = Eigen::Matrix<double, 5, 5>::Zero();
    for (std::size_t k = 0; k < n; ++k) {
        if (!mask[k]) continue;
        for (int a = 0; a < 5; ++a)
            for (int b = 0; b < 5; ++b) gram(a, b) += phi[k][a] * phi[k][b] * cell;
    }
    const auto gram_solver = gram.ldlt();

    auto entropy_of = [&](const std::vector<double>& rho) {
        double s = 0.0;
        for (double r : rho)
            if (r > 0.0) s -= r * std::log(r) * cell;
        return s;
    };
    const double s_star = entropy_of(solution.rho);

    double worst_gap = -std::numeric_limits<double>::infinity();
    std::vector<double> eta(n);
    std::vector<double> candidate(n);
    for (std::size_t trial = 0; trial < n_perturbations; ++trial) {
        Eigen::Matrix<double, 5, 1> inner = Eigen::Matrix<double, 5, 1>::Zero();
        for (std::size_t k = 0; k < n; ++k) {
            if (!mask[k]) {
                eta[k] = 0.0;
                continue;
            }
            eta[k] = rng::normal_pair(seed, trial, k).first;
            for (int a = 0; a < 5; ++a) inner(a) += phi[k][a] * eta[k] * cell;
        }
        const Eigen::Matrix<double, 5, 1> coeff = gram_solver.solve(inner);
        double eps = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < n; ++k) {
            if (!mask[k]) continue;
            for (int a = 0; a < 5; ++a) eta[k] -= coeff(a) * phi[k][a];
            if (eta[k] < 0.0) eps = std::min(eps, -0.5 * solution.rho[k] / eta[k]);
        }
        if (!std::isfinite(eps)) continue;
        candidate = solution.rho;
        for (std::size_t k = 0; k < n; ++k) candidate[k] += eps * eta[k];
        worst_gap = std::max(worst_gap, entropy_of(candidate) - s_star);
    }
    return worst_gap;
}

}  // namespace mepack
