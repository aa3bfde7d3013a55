#pragma once

#include <cstdint>
#include <vector>

namespace mepack {

// The four tracked state coordinates at one instant.
struct StateQuad {
    double Q = 0.0;
    double P = 0.0;
    double dQ = 0.0;
    double dP = 0.0;
};

enum class TrajectoryKind { classical, quantum, exact };

const char* to_string(TrajectoryKind kind);

// Solver settings and diagnostics attached to a run.
struct SolverMeta {
    double dt = 0.0;
    std::size_t n_samples = 0;      // classical ensemble size
    std::size_t grid_points = 0;    // quantum grid size
    std::size_t n_branches = 0;     // quantum spectral branches
    std::uint64_t seed = 0;
    double max_energy_drift = 0.0;  // classical integrator diagnostic
    double max_edge_mass = 0.0;     // quantum boundary diagnostic
};

// Time series of (Q, P, dQ, dP). `kind` records which engine produced it;
// exact entries come only from the closed-form propagator.
struct Trajectory {
    TrajectoryKind kind = TrajectoryKind::exact;
    std::vector<double> times;
    std::vector<double> Q, P, dQ, dP;
    SolverMeta meta;

    std::size_t size() const { return times.size(); }
    StateQuad at(std::size_t i) const { return {Q[i], P[i], dQ[i], dP[i]}; }
    void push_back(double t, const StateQuad& s);
    void validate() const;  // consistent lengths, positive spreads
};

}  // namespace mepack
