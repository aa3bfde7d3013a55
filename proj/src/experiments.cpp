#include "mepack/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace mepack {

namespace {

std::vector<double> with_leading_zero(std::span<const double> times) {
    std::vector<double> t;
    if (times.empty()) throw std::invalid_argument("empty time grid");
    if (times[0] > 0.0) t.push_back(0.0);
    t.insert(t.end(), times.begin(), times.end());
    return t;
}

StateQuad standard_errors(const StateQuad& s, std::size_t n) {
    const double rn = std::sqrt(static_cast<double>(n));
    const double rn2 = std::sqrt(2.0 * static_cast<double>(n > 1 ? n - 1 : 1));
    return {s.dQ / rn, s.dP / rn, s.dQ / rn2, s.dP / rn2};
}

std::array<double, 4> quad_array(const StateQuad& s) { return {s.Q, s.P, s.dQ, s.dP}; }

// Envelope of a trajectory, padded to quantum grid requirements.
struct Envelope {
    double q_lo, q_hi, p_max;
};

Envelope envelope_of(const Trajectory& traj, const PacketParams& params, double pad_sigmas) {
    Envelope env{params.Q - pad_sigmas * params.dQ, params.Q + pad_sigmas * params.dQ,
                 std::abs(params.P) + pad_sigmas * params.dP};
    for (std::size_t i = 0; i < traj.size(); ++i) {
        env.q_lo = std::min(env.q_lo, traj.Q[i] - pad_sigmas * traj.dQ[i]);
        env.q_hi = std::max(env.q_hi, traj.Q[i] + pad_sigmas * traj.dQ[i]);
        env.p_max = std::max(env.p_max, std::abs(traj.P[i]) + pad_sigmas * traj.dP[i]);
    }
    return env;
}

}  // namespace

double CoincidenceReport::worst_quantum_rel() const {
    return *std::max_element(max_quantum_rel.begin(), max_quantum_rel.end());
}

double CoincidenceReport::worst_classical_sigma() const {
    return *std::max_element(max_classical_sigma.begin(), max_classical_sigma.end());
}

CoincidenceReport quadratic_coincidence(const PacketParams& params,
                                        const PolynomialPotential& pot,
                                        std::span<const double> times,
                                        const EvolveOptions& copt,
                                        const QuantumEvolveOptions& qopt) {
    params.validate();
    if (!pot.at_most_quadratic())
        throw std::invalid_argument("quadratic_coincidence: potential degree must be <= 2");
    const auto grid_times = with_leading_zero(times);

    const Trajectory exact = exact_trajectory(params, pot, grid_times);

    const Trajectory classical = evolve_classical(params, pot, grid_times, copt);
    PacketParams realized = params;
    realized.Q = classical.Q[0];
    realized.P = classical.P[0];
    realized.dQ = classical.dQ[0];
    realized.dP = classical.dP[0];
    const Trajectory classical_ref = exact_trajectory(realized, pot, grid_times);

    // grid sized from the closed-form envelope over a fine sweep
    std::vector<double> fine(257);
    const double t_max = grid_times.back();
    for (std::size_t i = 0; i < fine.size(); ++i)
        fine[i] = t_max * static_cast<double>(i + 1) / static_cast<double>(fine.size());
    const auto env = envelope_of(exact_trajectory(params, pot, fine), params, 8.5);
    const GridSpec grid = make_grid(env.q_lo - 0.5 * (env.q_hi - env.q_lo) * 0.1,
                                    env.q_hi + 0.5 * (env.q_hi - env.q_lo) * 0.1,
                                    env.p_max * 1.1, params.hbar);
    MixedStateGrid state = build_state(params, grid);
    const Trajectory quantum = evolve_quantum(state, pot, grid_times, qopt);

    CoincidenceReport report;
    report.classical_meta = classical.meta;
    report.quantum_meta = quantum.meta;
    for (int c = 0; c < 4; ++c) report.amplitude[c] = 0.0;
    for (std::size_t i = 0; i < exact.size(); ++i) {
        const auto e = quad_array(exact.at(i));
        for (int c = 0; c < 4; ++c)
            report.amplitude[c] = std::max(report.amplitude[c], std::abs(e[c]));
    }

    for (std::size_t i = 0; i < grid_times.size(); ++i) {
        CoincidenceRow row;
        row.t = grid_times[i];
        row.exact = exact.at(i);
        row.classical = classical.at(i);
        row.quantum = quantum.at(i);
        row.classical_ref = classical_ref.at(i);
        row.classical_se = standard_errors(classical.at(i), classical.meta.n_samples);
        report.rows.push_back(row);

        const auto e = quad_array(row.exact);
        const auto qv = quad_array(row.quantum);
        const auto cv = quad_array(row.classical);
        const auto rv = quad_array(row.classical_ref);
        const auto se = quad_array(row.classical_se);
        for (int c = 0; c < 4; ++c) {
            report.max_quantum_rel[c] = std::max(
                report.max_quantum_rel[c], std::abs(qv[c] - e[c]) / report.amplitude[c]);
            report.max_classical_sigma[c] =
                std::max(report.max_classical_sigma[c], std::abs(cv[c] - rv[c]) / se[c]);
        }
    }
    return report;
}

LimitScanReport limit_scan(const PacketParams& base, const PolynomialPotential& pot,
                           const LimitScanOptions& opt) {
    base.validate();
    if (opt.scales.empty()) throw std::invalid_argument("limit_scan: no scales");
    for (std::size_t i = 1; i < opt.scales.size(); ++i)
        if (!(opt.scales[i] > opt.scales[i - 1]))
            throw std::invalid_argument("limit_scan: scales must be ascending");
    if (nu(base) < 1.0)
        throw std::invalid_argument("limit_scan: base packet needs nu >= 1");

    LimitScanReport report;

    // pilot on the widest packet: escape horizon and grid envelope
    PacketParams widest = base;
    widest.dQ *= opt.scales.back();
    widest.dP *= opt.scales.back();
    EvolveOptions pilot_opt;
    pilot_opt.n_samples = std::max<std::size_t>(opt.n_pilot, 1000);
    pilot_opt.seed = opt.seed + 7;
    pilot_opt.dt = opt.dt;
    pilot_opt.drift_tol = opt.drift_tol;
    pilot_opt.q_bound = opt.q_bound > 0.0
                            ? opt.q_bound
                            : std::abs(widest.Q) + 60.0 * widest.dQ +
                                  60.0 * widest.dP / pot.mass() *
                                      characteristic_time(widest, pot);
    const double horizon = 4.0 * characteristic_time(widest, pot);
    report.escape_time = estimate_escape_time(widest, pot, horizon, pilot_opt);

    std::vector<double> probes = opt.probe_times;
    if (probes.empty()) {
        const double t_star = std::isfinite(report.escape_time)
                                  ? 0.5 * report.escape_time
                                  : characteristic_time(widest, pot);
        probes = {t_star};
    }
    report.probe_time = probes.back();
    if (std::isfinite(report.escape_time) && probes.back() >= report.escape_time)
        throw std::invalid_argument("limit_scan: probe time reaches the escape event");
    const auto grid_times = with_leading_zero(probes);

    for (double s : opt.scales) {
        PacketParams scaled = base;
        scaled.dQ *= s;
        scaled.dP *= s;

        EvolveOptions copt = pilot_opt;
        copt.n_samples = opt.n_samples;
        copt.seed = opt.seed;
        const Trajectory classical = evolve_classical(scaled, pot, grid_times, copt);

        // quantum grid from the classical envelope of this scale
        const auto env = envelope_of(classical, scaled, 9.0);
        const double pad = 0.15 * (env.q_hi - env.q_lo);
        const GridSpec grid =
            make_grid(env.q_lo - pad, env.q_hi + pad, env.p_max * 1.2, scaled.hbar);

        QuantumEvolveOptions qopt;
        qopt.dt = opt.dt > 0.0 ? opt.dt : characteristic_time(scaled, pot) / 2000.0;
        MixedStateGrid state = build_state(scaled, grid, opt.spectrum_tol);
        const Trajectory quantum = evolve_quantum(state, pot, grid_times, qopt);

        QuantumEvolveOptions qopt2 = qopt;
        qopt2.dt = 2.0 * qopt.dt;
        MixedStateGrid state2 = build_state(scaled, grid, opt.spectrum_tol);
        const Trajectory quantum2 = evolve_quantum(state2, pot, grid_times, qopt2);

        for (std::size_t i = 0; i < grid_times.size(); ++i) {
            if (grid_times[i] == 0.0 && probes.front() > 0.0) continue;  // synthetic row
            LimitScanRow row;
            row.scale = s;
            row.nu = nu(scaled);
            row.t = grid_times[i];
            row.classical = classical.at(i);
            row.quantum = quantum.at(i);
            row.classical_se = standard_errors(classical.at(i), copt.n_samples);
            // second-order splitting: err(dt) ~ |X(dt) - X(2dt)| / 3
            const auto q1 = quad_array(quantum.at(i));
            const auto q2 = quad_array(quantum2.at(i));
            StateQuad qerr{std::abs(q1[0] - q2[0]) / 3.0, std::abs(q1[1] - q2[1]) / 3.0,
                           std::abs(q1[2] - q2[2]) / 3.0, std::abs(q1[3] - q2[3]) / 3.0};
            row.quantum_err = qerr;

            const auto cv = quad_array(row.classical);
            const auto qv = quad_array(row.quantum);
            const auto se = quad_array(row.classical_se);
            const auto qe = quad_array(qerr);
            for (int c = 0; c < 4; ++c)
                row.rel_diff[c] = std::abs(qv[c] - cv[c]) /
                                  std::max(std::abs(cv[c]), 1e-300);
            row.spread_diff_q = std::abs(qv[0] - cv[0]) / row.classical.dQ;
            row.spread_diff_p = std::abs(qv[1] - cv[1]) / row.classical.dP;
            // 1-sigma for the spread-normalized Q difference; the dQ estimate
            // error enters at second order
            const double sigma_abs = std::hypot(se[0], qe[0]);
            const double dq_term = row.spread_diff_q * se[2] / row.classical.dQ;
            row.spread_sigma_q = std::hypot(sigma_abs / row.classical.dQ, dq_term);
            row.significant_q = row.spread_diff_q >= opt.significance * row.spread_sigma_q;
            report.rows.push_back(row);
        }
    }

    // monotonicity across scales at the final probe time
    std::vector<const LimitScanRow*> final_rows;
    for (const auto& row : report.rows)
        if (row.t == probes.back()) final_rows.push_back(&row);
    report.monotone_spread_q = final_rows.size() == opt.scales.size();
    report.all_significant_q = !final_rows.empty();
    for (std::size_t i = 0; i < final_rows.size(); ++i) {
        if (i > 0 && !(final_rows[i]->spread_diff_q < final_rows[i - 1]->spread_diff_q))
            report.monotone_spread_q = false;
        report.all_significant_q = report.all_significant_q && final_rows[i]->significant_q;
    }
    return report;
}

CubicMomentRecord cubic_moment_check(const PacketParams& params, double spectrum_tol) {
    params.validate();
    CubicMomentRecord rec;
    rec.nu = nu(params);
    rec.classical_value = classical_raw_moment(params, 6, 0);
    const double d6 = std::pow(params.dQ, 6);
    rec.corrected_value =
        rec.classical_value + 9.0 * d6 / rec.nu - 3.0 * d6 / std::pow(rec.nu, 3);

    const GridSpec grid = make_grid(params.Q - 10.0 * params.dQ, params.Q + 10.0 * params.dQ,
                                    (std::abs(params.P) + 8.0 * params.dP) * 1.2, params.hbar,
                                    1024);
    const MixedStateGrid state = build_state(params, grid, spectrum_tol);
    const auto moment = quantum_polynomial_moment(state, 6);
    rec.quadrature_value = moment.value;
    rec.quadrature_tail_bound = moment.tail_bound;
    rec.dev_from_classical = std::abs(rec.quadrature_value - rec.classical_value);
    rec.dev_from_corrected = std::abs(rec.quadrature_value - rec.corrected_value);
    rec.closer = rec.dev_from_classical <= rec.dev_from_corrected ? "classical" : "corrected";
    return rec;
}

}  // namespace mepack
