#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "mepack/classical_engine.hpp"
#include "mepack/packet.hpp"
#include "mepack/potential.hpp"
#include "mepack/quantum_engine.hpp"
#include "mepack/trajectory.hpp"

namespace mepack {

// ---------------------------------------------------------------------------
// Exact-coincidence study for at-most-quadratic potentials.
//
// The quantum engine is measured against the closed forms seeded by the true
// packet. The Monte Carlo engine is measured against the closed forms seeded
// by its own realized t=0 ensemble quadruple, which removes the O(1/sqrt(n))
// sampling offset and isolates propagation error; deviations are reported in
// units of the per-component standard error.
// ---------------------------------------------------------------------------

struct CoincidenceRow {
    double t = 0.0;
    StateQuad exact;          // closed form from the true packet
    StateQuad classical;      // ensemble estimates
    StateQuad quantum;        // grid observables
    StateQuad classical_ref;  // closed form from the realized ensemble start
    StateQuad classical_se;   // standard errors of the ensemble estimates
};

struct CoincidenceReport {
    std::vector<CoincidenceRow> rows;
    std::array<double, 4> amplitude{};            // per-component scale of the exact run
    std::array<double, 4> max_quantum_rel{};      // max |quantum - exact| / amplitude
    std::array<double, 4> max_classical_sigma{};  // max |classical - ref| / se
    SolverMeta classical_meta;
    SolverMeta quantum_meta;

    double worst_quantum_rel() const;
    double worst_classical_sigma() const;
};

CoincidenceReport quadratic_coincidence(const PacketParams& params,
                                        const PolynomialPotential& pot,
                                        std::span<const double> times,
                                        const EvolveOptions& copt = {},
                                        const QuantumEvolveOptions& qopt = {});

// ---------------------------------------------------------------------------
// Large-fuzziness scan: both spreads are multiplied by each scale factor and
// the two engines are compared at fixed probe times. Differences are reported
// both relative (|Xq - Xc| / |Xc|) and spread-normalized (|Qq - Qc| / dQc,
// which stays meaningful when the trajectory crosses zero), each with a
// 1-sigma solver-error estimate: Monte Carlo standard errors combined with a
// step-halving (Richardson) estimate of the quantum integration error.
// ---------------------------------------------------------------------------

struct LimitScanOptions {
    std::vector<double> scales{1.0, 2.0, 4.0, 8.0};
    std::vector<double> probe_times;  // empty -> 0.5 * earliest pilot escape time
    std::size_t n_samples = 1000000;
    std::size_t n_pilot = 20000;
    std::uint64_t seed = 20141201;
    double spectrum_tol = 1e-8;
    double dt = 0.0;          // 0 -> characteristic-time defaults per engine
    double q_bound = 0.0;     // 0 -> sized from the pilot envelope
    double drift_tol = 1e-4;  // near-escape tails drift more than gentle runs
    double significance = 3.0;
};

struct LimitScanRow {
    double scale = 0.0;
    double nu = 0.0;
    double t = 0.0;
    StateQuad classical, quantum;
    StateQuad classical_se;  // Monte Carlo standard errors
    StateQuad quantum_err;   // step-halving error estimates
    std::array<double, 4> rel_diff{};    // |Xq - Xc| / |Xc| per component
    double spread_diff_q = 0.0;          // |Qq - Qc| / dQc
    double spread_diff_p = 0.0;          // |Pq - Pc| / dPc
    double spread_sigma_q = 0.0;         // 1-sigma estimate for spread_diff_q
    bool significant_q = false;          // spread_diff_q >= significance * sigma
};

struct LimitScanReport {
    std::vector<LimitScanRow> rows;
    double escape_time = 0.0;     // earliest pilot escape (inf when bounded)
    double probe_time = 0.0;      // last probe time actually used
    bool monotone_spread_q = false;   // decreasing across scales at final probe
    bool all_significant_q = false;   // every final-probe row significant
};

LimitScanReport limit_scan(const PacketParams& base, const PolynomialPotential& pot,
                           const LimitScanOptions& opt = {});

// ---------------------------------------------------------------------------
// Sixth-moment comparison record. Three routes to <q^6>: the closed-form
// Gaussian value, the nu-corrected value
//   <q^6> + dQ^6 (9/nu - 3/nu^3),
// and direct grid quadrature against the packet's position density. The
// record reports all three and which analytic value the quadrature matches.
// ---------------------------------------------------------------------------

struct CubicMomentRecord {
    double nu = 0.0;
    double classical_value = 0.0;
    double corrected_value = 0.0;
    double quadrature_value = 0.0;
    double quadrature_tail_bound = 0.0;
    double dev_from_classical = 0.0;
    double dev_from_corrected = 0.0;
    const char* closer = "";  // "classical" or "corrected"
};

CubicMomentRecord cubic_moment_check(const PacketParams& params, double spectrum_tol = 1e-10);

}  // namespace mepack
