#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "mepack/packet.hpp"

namespace mepack {

// Uniform midpoint-rule grid on [q_lo, q_hi] x [p_lo, p_hi]; nodes sit at
// cell centers.
struct PhaseGrid {
    double q_lo = 0.0, q_hi = 0.0;
    double p_lo = 0.0, p_hi = 0.0;
    std::size_t nq = 0, np = 0;

    double dq() const { return (q_hi - q_lo) / static_cast<double>(nq); }
    double dp() const { return (p_hi - p_lo) / static_cast<double>(np); }
    double q_at(std::size_t i) const { return q_lo + (static_cast<double>(i) + 0.5) * dq(); }
    double p_at(std::size_t j) const { return p_lo + (static_cast<double>(j) + 0.5) * dp(); }
    std::size_t size() const { return nq * np; }
};

// First and second moment targets for the entropy maximization, plus the
// discretization they are enforced on.
struct MomentConstraints {
    double mean_q = 0.0, mean_q2 = 1.0;
    double mean_p = 0.0, mean_p2 = 1.0;
    PhaseGrid grid;
    double v = two_pi;

    // Grid centered on the targets, spanning span_sigmas standard deviations.
    static MomentConstraints from_params(const PacketParams& params, std::size_t nq = 512,
                                         std::size_t np = 512, double span_sigmas = 8.0);
    double var_q() const { return mean_q2 - mean_q * mean_q; }
    double var_p() const { return mean_p2 - mean_p * mean_p; }
    void validate() const;  // feasibility and coverage
};

struct MaxEntSolution {
    // multipliers of (q, q^2, p, p^2) in rho proportional to
    // exp(-l1 q - l2 q^2 - l3 p - l4 p^2)
    std::array<double, 4> lambda{};
    std::array<double, 4> residuals{};          // moment mismatches at the solution
    std::vector<double> rho;                    // row-major nq x np, sums to 1 against dq dp / v
    PhaseGrid grid;
    double v = two_pi;
    double entropy = 0.0;                       // -sum rho ln rho dq dp / v
    std::vector<double> newton_decrements;      // one entry per iteration
    std::size_t iterations = 0;
};

// Damped Newton on the strictly convex dual of the discretized problem.
// Starts from the closed-form multipliers perturbed by 50% so convergence is
// exercised for real. Throws on infeasible constraints; throws
// numerics_error with diagnostics if the iteration cap is reached.
MaxEntSolution solve_dual(const MomentConstraints& constraints, double tol = 1e-10,
                          std::size_t max_iter = 100);

// sum |rho_numeric - rho_closed_form| dq dp / v over the solution grid.
double l1_distance_to_analytic(const MaxEntSolution& solution, const PacketParams& params);

// Entropy gap max_k S(rho + eps eta_k) - S(rho) over n random perturbations
// eta_k projected onto the constraint null space (normalization and all four
// moments preserved). A maximizer certifies all gaps <= 0.
double entropy_maximality_gap(const MaxEntSolution& solution, std::size_t n_perturbations,
                              std::uint64_t seed);

}  // namespace mepack
