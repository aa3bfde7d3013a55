#pragma once

#include <cstdint>
#include <span>

#include "mepack/packet.hpp"
#include "mepack/potential.hpp"
#include "mepack/trajectory.hpp"

namespace mepack {

struct EvolveOptions {
    double dt = 0.0;           // 0 -> characteristic_time / 1000
    double q_bound = 1e6;      // escape guard: any |q| beyond this aborts
    double drift_tol = 1e-5;   // max tolerated relative energy drift
    std::size_t n_samples = 100000;  // >= 1000
    std::uint64_t seed = 1;
};

// Time scale used for step defaults: sqrt(mu/|V2|) when V2 != 0, otherwise
// the packet crossing time dQ mu / dP.
double characteristic_time(const PacketParams& params, const PolynomialPotential& pot);

// One sample path by fixed-step position-Verlet (drift-kick-drift); a final
// partial step lands exactly on t_total. Time-reversible step by step.
PhasePoint leapfrog_integrate(PhasePoint x0, const PolynomialPotential& pot, double t_total,
                              double dt);

// Max relative per-sample energy change between two snapshots of the same
// ensemble, scaled by |E_before| plus the ensemble mean |E| (guards samples
// that start near E = 0).
double ensemble_energy_drift(const PolynomialPotential& pot, std::span<const PhasePoint> before,
                             std::span<const PhasePoint> after);

// Draws opt.n_samples points from the packet, integrates each through
// Hamilton's equations with leapfrog steps, and records the ensemble mean and
// standard deviation of q and p at each requested time. Deterministic per
// seed, independent of the worker-thread count. Throws numerics_error when a
// sample escapes |q| > q_bound or the energy drift exceeds drift_tol.
Trajectory evolve_classical(const PacketParams& params, const PolynomialPotential& pot,
                            std::span<const double> times, const EvolveOptions& opt);

// First time at which any pilot sample leaves |q| <= q_bound, or +infinity if
// none does before t_max. Used to place probe times for unbound potentials.
double estimate_escape_time(const PacketParams& params, const PolynomialPotential& pot,
                            double t_max, const EvolveOptions& opt);

}  // namespace mepack
