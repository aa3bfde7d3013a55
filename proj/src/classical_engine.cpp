#include "mepack/classical_engine.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "mepack/errors.hpp"
#include "mepack/parallel.hpp"

namespace mepack {

double characteristic_time(const PacketParams& params, const PolynomialPotential& pot) {
    const double v2 = pot.v2();
    if (v2 != 0.0) return std::sqrt(pot.mass() / std::abs(v2));
    return params.dQ * pot.mass() / params.dP;
}

namespace {

// drift-kick-drift with step h
inline void verlet_step(double& q, double& p, const PolynomialPotential& pot, double h,
                        double inv_mass) {
    q += 0.5 * h * p * inv_mass;
    p += h * pot.force(q);
    q += 0.5 * h * p * inv_mass;
}

// Advances (q, p) by t_span using full steps of dt plus one partial step.
// Returns false as soon as |q| exceeds q_bound.
inline bool advance(double& q, double& p, const PolynomialPotential& pot, double t_span,
                    double dt, double inv_mass, double q_bound, double* t_escape) {
    double remaining = t_span;
    while (remaining > 0.0) {
        const double h = std::min(dt, remaining);
        verlet_step(q, p, pot, h, inv_mass);
        remaining -= h;
        if (std::abs(q) > q_bound || !std::isfinite(q) || !std::isfinite(p)) {
            if (t_escape) *t_escape = t_span - remaining;
            return false;
        }
    }
    return true;
}

double sample_energy(const PolynomialPotential& pot, const PhasePoint& x) {
    return 0.5 * x.p * x.p / pot.mass() + pot.value(x.q);
}

struct EnsembleStats {
    double mean_q, mean_p, sd_q, sd_p;
};

// Index-ordered sums, so the result is identical however the integration work
// was split across threads.
EnsembleStats ensemble_stats(std::span<const PhasePoint> pts) {
    const double n = static_cast<double>(pts.size());
    double sq = 0.0, sp = 0.0;
    for (const auto& x : pts) {
        sq += x.q;
        sp += x.p;
    }
    const double mq = sq / n, mp = sp / n;
    double vq = 0.0, vp = 0.0;
    for (const auto& x : pts) {
        vq += (x.q - mq) * (x.q - mq);
        vp += (x.p - mp) * (x.p - mp);
    }
    const double bessel = n > 1.0 ? n - 1.0 : 1.0;
    return {mq, mp, std::sqrt(vq / bessel), std::sqrt(vp / bessel)};
}

}  // namespace

PhasePoint leapfrog_integrate(PhasePoint x0, const PolynomialPotential& pot, double t_total,
                              double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("leapfrog_integrate: dt must be positive");
    const double inv_mass = 1.0 / pot.mass();
    advance(x0.q, x0.p, pot, t_total, dt, inv_mass, std::numeric_limits<double>::infinity(),
            nullptr);
    return x0;
}

double ensemble_energy_drift(const PolynomialPotential& pot, std::span<const PhasePoint> before,
                             std::span<const PhasePoint> after) {
    if (before.size() != after.size())
        throw std::invalid_argument("ensemble_energy_drift: ensembles differ in size");
    if (before.empty()) return 0.0;
    double mean_abs = 0.0;
    std::vector<double> e0(before.size());
    for (std::size_t i = 0; i < before.size(); ++i) {
        e0[i] = sample_energy(pot, before[i]);
        mean_abs += std::abs(e0[i]);
    }
    mean_abs /= static_cast<double>(before.size());
    const double floor = mean_abs > 0.0 ? mean_abs : 1.0;
    double worst = 0.0;
    for (std::size_t i = 0; i < after.size(); ++i) {
        const double e1 = sample_energy(pot, after[i]);
        worst = std::max(worst, std::abs(e1 - e0[i]) / (std::abs(e0[i]) + floor));
    }
    return worst;
}

Trajectory evolve_classical(const PacketParams& params, const PolynomialPotential& pot,
                            std::span<const double> times, const EvolveOptions& opt) {
    params.validate();
    if (times.empty()) throw std::invalid_argument("evolve_classical: empty time grid");
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (times[i] < 0.0) throw std::invalid_argument("evolve_classical: negative time");
        if (i > 0 && !(times[i] > times[i - 1]))
            throw std::invalid_argument("evolve_classical: times must be ascending");
    }
    if (opt.n_samples < 1000)
        throw std::invalid_argument("evolve_classical: need at least 1000 samples");
    const double dt = opt.dt > 0.0 ? opt.dt : characteristic_time(params, pot) / 1000.0;

    std::vector<PhasePoint> pts = sample_classical(params, opt.n_samples, opt.seed);
    const std::vector<PhasePoint> initial = pts;
    const double inv_mass = 1.0 / pot.mass();

    Trajectory traj;
    traj.kind = TrajectoryKind::classical;
    traj.meta.dt = dt;
    traj.meta.n_samples = opt.n_samples;
    traj.meta.seed = opt.seed;

    double t_now = 0.0;
    for (double t_out : times) {
        const double span = t_out - t_now;
        std::atomic<bool> escaped{false};
        if (span > 0.0) {
            parallel_for(pts.size(), [&](std::size_t begin, std::size_t end) {
                for (std::size_t i = begin; i < end; ++i) {
                    if (!advance(pts[i].q, pts[i].p, pot, span, dt, inv_mass, opt.q_bound,
                                 nullptr)) {
                        escaped.store(true, std::memory_order_relaxed);
                        // finish the chunk; the run aborts after the join
                    }
                }
            });
        }
        if (escaped.load())
            throw numerics_error("evolve_classical: sample escaped |q| > " +
                                 std::to_string(opt.q_bound) + " before t = " +
                                 std::to_string(t_out) +
                                 "; shorten the run or raise q_bound");
        t_now = t_out;
        const auto stats = ensemble_stats(pts);
        traj.push_back(t_out, {stats.mean_q, stats.mean_p, stats.sd_q, stats.sd_p});
        const double drift = ensemble_energy_drift(pot, initial, pts);
        traj.meta.max_energy_drift = std::max(traj.meta.max_energy_drift, drift);
    }
    if (traj.meta.max_energy_drift > opt.drift_tol)
        throw numerics_error("evolve_classical: energy drift " +
                             std::to_string(traj.meta.max_energy_drift) + " exceeds tolerance " +
                             std::to_string(opt.drift_tol) + " (dt = " + std::to_string(dt) +
                             " too coarse?)");
    traj.validate();
    return traj;
}

double estimate_escape_time(const PacketParams& params, const PolynomialPotential& pot,
                            double t_max, const EvolveOptions& opt) {
    params.validate();
    if (!(t_max > 0.0)) throw std::invalid_argument("estimate_escape_time: t_max must be > 0");
    const double dt = opt.dt > 0.0 ? opt.dt : characteristic_time(params, pot) / 1000.0;
    std::vector<PhasePoint> pts = sample_classical(params, opt.n_samples, opt.seed);
    const double inv_mass = 1.0 / pot.mass();

    std::vector<double> escape(pts.size(), std::numeric_limits<double>::infinity());
    parallel_for(pts.size(), [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            double t_esc = 0.0;
            if (!advance(pts[i].q, pts[i].p, pot, t_max, dt, inv_mass, opt.q_bound, &t_esc))
                escape[i] = t_esc;
        }
    });
    return *std::min_element(escape.begin(), escape.end());
}

}  // namespace mepack
