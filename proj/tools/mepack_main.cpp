// mepack: maximum-entropy packet toolkit.
//
// Subcommands: packet, evolve, maxent, rod, scan, coincide, moments.
// Exit codes: 0 ok, 2 configuration error, 3 numerical diagnostic failure,
// 4 I/O error.

#include <CLI11.hpp>

#include <cctype>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "mepack/classical_engine.hpp"
#include "mepack/errors.hpp"
#include "mepack/experiments.hpp"
#include "mepack/io.hpp"
#include "mepack/maxent.hpp"
#include "mepack/packet.hpp"
#include "mepack/potential.hpp"
#include "mepack/quantum_engine.hpp"
#include "mepack/rod.hpp"
#include "mepack/version.hpp"

namespace {

using mepack::io::MetaList;

struct ParamFlags {
    double Q = 0.0, P = 0.0;
    double dQ = 0.0, dP = 0.0;
    double hbar = 1.0;
    double v = 0.0;  // 0 -> 2 pi hbar
};

struct PotentialFlags {
    std::string coeffs = "0";
    double mu = 1.0;
};

struct OutputFlags {
    std::string out;
    std::string json_out;
    std::string format = "csv";
};

std::vector<double> parse_list(const std::string& text, const std::string& what) {
    std::vector<double> values;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            values.push_back(std::stod(item, &pos));
            while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw CLI::ValidationError(what, "cannot parse '" + item + "' as a number");
        }
    }
    if (values.empty()) throw CLI::ValidationError(what, "empty list");
    return values;
}

mepack::PacketParams to_params(const ParamFlags& f) {
    mepack::PacketParams p;
    p.Q = f.Q;
    p.P = f.P;
    p.dQ = f.dQ;
    p.dP = f.dP;
    p.hbar = f.hbar;
    p.v = f.v > 0.0 ? f.v : mepack::two_pi * f.hbar;
    p.validate();
    return p;
}

mepack::PolynomialPotential to_potential(const PotentialFlags& f) {
    return {parse_list(f.coeffs, "--V"), f.mu};
}

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
    cmd->add_option("--Q", f.Q, "position average");
    cmd->add_option("--P", f.P, "momentum average");
    cmd->add_option("--dQ", f.dQ, "position spread (> 0)")->required();
    cmd->add_option("--dP", f.dP, "momentum spread (> 0)")->required();
    cmd->add_option("--hbar", f.hbar, "reduced Planck constant")->check(CLI::PositiveNumber);
    cmd->add_option("--v", f.v, "phase-space volume unit (default 2*pi*hbar)");
}

void add_potential_flags(CLI::App* cmd, PotentialFlags& f) {
    cmd->add_option("--V", f.coeffs,
                    "potential coefficients V0,V1,V2,... of V(q) = sum V_k q^k / k!");
    cmd->add_option("--mu", f.mu, "particle mass")->check(CLI::PositiveNumber);
}

void add_output_flags(CLI::App* cmd, OutputFlags& f, bool with_json_out = false) {
    cmd->add_option("--out", f.out, "output file (default stdout)");
    if (with_json_out) cmd->add_option("--json-out", f.json_out, "JSON summary file");
    cmd->add_option("--format", f.format, "output format")->check(CLI::IsMember({"csv", "json"}));
}

void add_meta(MetaList& meta, const ParamFlags& f) {
    const auto p = to_params(f);
    meta.emplace_back("Q", mepack::io::format_double(p.Q));
    meta.emplace_back("P", mepack::io::format_double(p.P));
    meta.emplace_back("dQ", mepack::io::format_double(p.dQ));
    meta.emplace_back("dP", mepack::io::format_double(p.dP));
    meta.emplace_back("hbar", mepack::io::format_double(p.hbar));
    meta.emplace_back("v", mepack::io::format_double(p.v));
    meta.emplace_back("nu", mepack::io::format_double(mepack::nu(p)));
}

void add_meta(MetaList& meta, const PotentialFlags& f) {
    meta.emplace_back("V", f.coeffs);
    meta.emplace_back("mu", mepack::io::format_double(f.mu));
}

MetaList base_meta(const std::string& subcommand) {
    return {{"tool", std::string("mepack ") + mepack::version}, {"subcommand", subcommand}};
}

// Emits to --out atomically, or to stdout when no path was given.
void emit(const OutputFlags& out, const std::string& content) {
    if (out.out.empty())
        std::cout << content;
    else
        mepack::io::atomic_write(out.out, content);
}

void emit_json_summary(const OutputFlags& out, const nlohmann::json& j) {
    if (!out.json_out.empty()) mepack::io::atomic_write(out.json_out, j.dump(2) + "\n");
}

std::vector<double> linspace_times(double t_max, std::size_t steps) {
    if (!(t_max > 0.0)) throw CLI::ValidationError("--t-max", "must be positive");
    if (steps < 1) throw CLI::ValidationError("--t-steps", "must be >= 1");
    std::vector<double> t(steps + 1);
    for (std::size_t i = 0; i <= steps; ++i)
        t[i] = t_max * static_cast<double>(i) / static_cast<double>(steps);
    return t;
}

// key=value configuration file; '#' starts a comment. Returned pairs are
// injected as options ahead of the explicit flags, so explicit flags win.
std::vector<std::pair<std::string, std::string>> load_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw CLI::FileError::Missing(path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError(path,
                                       "line " + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty())
            throw CLI::ValidationError(path, "line " + std::to_string(lineno) + ": empty key");
        pairs.emplace_back(key, value);
    }
    return pairs;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"maximum-entropy packet toolkit"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(mepack::version));

    // ----- packet -----
    auto* cmd_packet = app.add_subcommand("packet", "packet properties and spectrum");
    ParamFlags packet_params;
    OutputFlags packet_out;
    double packet_tol = 1e-10;
    add_param_flags(cmd_packet, packet_params);
    cmd_packet->add_option("--tol", packet_tol, "spectrum truncation tolerance");
    add_output_flags(cmd_packet, packet_out);

    // ----- evolve -----
    auto* cmd_evolve = app.add_subcommand("evolve", "evolve a packet and emit its trajectory");
    ParamFlags evolve_params;
    PotentialFlags evolve_pot;
    OutputFlags evolve_out;
    std::string engine = "classical";
    double t_max = 1.0, dt = 0.0, q_bound = 1e6, drift_tol = 1e-5, leak_tol = 1e-6;
    double spectrum_tol = 1e-10;
    std::size_t t_steps = 50, n_samples = 100000, grid_n = 0;
    std::uint64_t seed = 1;
    double q_min = 0.0, q_max = 0.0;
    std::string dump_density;
    add_param_flags(cmd_evolve, evolve_params);
    add_potential_flags(cmd_evolve, evolve_pot);
    cmd_evolve->add_option("--engine", engine, "classical | quantum | exact")
        ->check(CLI::IsMember({"classical", "quantum", "exact"}));
    cmd_evolve->add_option("--t-max", t_max, "final time")->check(CLI::PositiveNumber);
    cmd_evolve->add_option("--t-steps", t_steps, "number of output intervals");
    cmd_evolve->add_option("--dt", dt, "integrator step (0 = auto)");
    cmd_evolve->add_option("--n-samples", n_samples, "ensemble size (classical)");
    cmd_evolve->add_option("--seed", seed, "ensemble seed (classical)");
    cmd_evolve->add_option("--q-bound", q_bound, "escape guard on |q| (classical)");
    cmd_evolve->add_option("--drift-tol", drift_tol, "energy drift tolerance (classical)");
    cmd_evolve->add_option("--grid-n", grid_n, "minimum grid size (quantum)");
    cmd_evolve->add_option("--q-min", q_min, "grid lower bound (quantum)");
    cmd_evolve->add_option("--q-max", q_max, "grid upper bound (quantum)");
    cmd_evolve->add_option("--leak-tol", leak_tol, "edge-mass tolerance (quantum)");
    cmd_evolve->add_option("--tol", spectrum_tol, "spectrum truncation tolerance (quantum)");
    cmd_evolve->add_option("--dump-density", dump_density,
                           "write per-branch |psi|^2 dump to this file (quantum)");
    add_output_flags(cmd_evolve, evolve_out);

    // ----- maxent -----
    auto* cmd_maxent = app.add_subcommand("maxent", "solve the constrained entropy maximum");
    ParamFlags maxent_params;
    OutputFlags maxent_out;
    std::size_t maxent_grid = 512, maxent_iter = 100, witness = 0;
    double span_sigmas = 8.0, maxent_tol = 1e-10;
    std::uint64_t maxent_seed = 777;
    add_param_flags(cmd_maxent, maxent_params);
    cmd_maxent->add_option("--grid-n", maxent_grid, "nodes per phase-space axis");
    cmd_maxent->add_option("--span-sigmas", span_sigmas, "half-width in standard deviations");
    cmd_maxent->add_option("--tol", maxent_tol, "moment residual tolerance");
    cmd_maxent->add_option("--max-iter", maxent_iter, "Newton iteration cap");
    cmd_maxent->add_option("--witness", witness, "random feasible perturbations to test");
    cmd_maxent->add_option("--seed", maxent_seed, "witness seed");
    add_output_flags(cmd_maxent, maxent_out);

    // ----- rod -----
    auto* cmd_rod = app.add_subcommand("rod", "stiff-rod chain thermodynamics");
    OutputFlags rod_out;
    mepack::RodSpec rod_spec;
    double rod_energy = 0.0;
    std::string scan_n;
    cmd_rod->add_option("--N", rod_spec.N, "mode count (N+1 particles)")->required();
    cmd_rod->add_option("--mu", rod_spec.mu, "particle mass");
    cmd_rod->add_option("--kappa", rod_spec.kappa, "oscillator strength");
    cmd_rod->add_option("--xi", rod_spec.xi, "equilibrium spacing");
    auto* lam_opt = cmd_rod->add_option("--lambda", rod_spec.lam, "inverse temperature");
    auto* energy_opt =
        cmd_rod->add_option("--energy", rod_energy, "internal energy (inverted to lambda)");
    cmd_rod->add_option("--hbar", rod_spec.hbar, "reduced Planck constant");
    cmd_rod->add_option("--scan-n", scan_n, "comma list of N values for the scaling study");
    add_output_flags(cmd_rod, rod_out);
    energy_opt->excludes(lam_opt);

    // ----- scan -----
    auto* cmd_scan = app.add_subcommand("scan", "large-fuzziness limit scan");
    ParamFlags scan_params;
    PotentialFlags scan_pot;
    OutputFlags scan_out;
    mepack::LimitScanOptions scan_opt;
    std::string scales_text = "1,2,4,8", probes_text;
    add_param_flags(cmd_scan, scan_params);
    add_potential_flags(cmd_scan, scan_pot);
    cmd_scan->add_option("--scales", scales_text, "spread multipliers, ascending");
    cmd_scan->add_option("--t-probe", probes_text, "probe times (default from escape pilot)");
    cmd_scan->add_option("--n-samples", scan_opt.n_samples, "ensemble size per scale");
    cmd_scan->add_option("--n-pilot", scan_opt.n_pilot, "pilot ensemble size");
    cmd_scan->add_option("--seed", scan_opt.seed, "ensemble seed");
    cmd_scan->add_option("--tol", scan_opt.spectrum_tol, "spectrum truncation tolerance");
    cmd_scan->add_option("--dt", scan_opt.dt, "integrator step (0 = auto)");
    cmd_scan->add_option("--q-bound", scan_opt.q_bound, "escape guard (0 = auto)");
    cmd_scan->add_option("--drift-tol", scan_opt.drift_tol, "energy drift tolerance");
    cmd_scan->add_option("--significance", scan_opt.significance, "sigma multiple for a claim");
    add_output_flags(cmd_scan, scan_out, true);

    // ----- coincide -----
    auto* cmd_coincide = app.add_subcommand("coincide", "closed-form comparison for degree <= 2");
    ParamFlags co_params;
    PotentialFlags co_pot;
    OutputFlags co_out;
    double co_t_max = 1.0, co_dt_c = 0.0, co_dt_q = 0.0, co_quantum_tol = 1e-6, co_sigma = 5.0;
    std::size_t co_steps = 16, co_samples = 100000;
    std::uint64_t co_seed = 1;
    add_param_flags(cmd_coincide, co_params);
    add_potential_flags(cmd_coincide, co_pot);
    cmd_coincide->add_option("--t-max", co_t_max, "final time")->check(CLI::PositiveNumber);
    cmd_coincide->add_option("--t-steps", co_steps, "number of output intervals");
    cmd_coincide->add_option("--dt", co_dt_c, "classical step (0 = auto)");
    cmd_coincide->add_option("--dt-quantum", co_dt_q, "quantum step (0 = auto)");
    cmd_coincide->add_option("--n-samples", co_samples, "ensemble size");
    cmd_coincide->add_option("--seed", co_seed, "ensemble seed");
    cmd_coincide->add_option("--quantum-tol", co_quantum_tol, "pass bound, quantum vs exact");
    cmd_coincide->add_option("--sigma", co_sigma, "pass bound, classical, standard errors");
    add_output_flags(cmd_coincide, co_out, true);

    // ----- moments -----
    auto* cmd_moments = app.add_subcommand("moments", "three-way sixth-moment record");
    ParamFlags mom_params;
    OutputFlags mom_out;
    double mom_tol = 1e-10;
    add_param_flags(cmd_moments, mom_params);
    cmd_moments->add_option("--tol", mom_tol, "spectrum truncation tolerance");
    add_output_flags(cmd_moments, mom_out);

    // config file support: inject key=value pairs ahead of the explicit flags
    std::string config_path;
    for (auto* sub : app.get_subcommands({}))
        sub->add_option("--config", config_path, "key=value configuration file");

    std::vector<std::string> args(argv + 1, argv + argc);
    if (!args.empty()) {
        std::string found;
        for (std::size_t i = 1; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size())
                found = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                found = args[i].substr(9);
        }
        if (!found.empty()) {
            std::vector<std::string> injected;
            for (const auto& [key, value] : load_config(found))
                injected.push_back("--" + key + "=" + value);
            args.insert(args.begin() + 1, injected.begin(), injected.end());
        }
    }
    for (auto* sub : app.get_subcommands({}))
        for (auto* opt : sub->get_options())
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);

    if (cmd_packet->parsed()) {
        const auto params = to_params(packet_params);
        MetaList meta = base_meta("packet");
        add_meta(meta, packet_params);
        nlohmann::json j;
        j["meta"] = nlohmann::json::object();
        for (const auto& [k, vv] : meta) j["meta"][k] = vv;
        j["nu"] = mepack::nu(params);
        j["classical_entropy"] = mepack::classical_entropy(params);
        if (mepack::nu(params) >= 1.0) {
            const auto spec = mepack::quantum_spectrum(params, packet_tol);
            double weight_sum = 0.0;
            for (double w : spec.weights) weight_sum += w;
            j["quantum_entropy"] = mepack::quantum_entropy(params);
            j["spectrum"] = {{"ratio", spec.ratio},
                             {"length_scale", spec.length_scale},
                             {"n_max", spec.n_max()},
                             {"weight_sum", weight_sum}};
            std::vector<double> head(
                spec.weights.begin(),
                spec.weights.begin() + std::min<std::size_t>(16, spec.weights.size()));
            j["spectrum"]["weights_head"] = head;
        }
        emit(packet_out, j.dump(2) + "\n");
        return 0;
    }

    if (cmd_evolve->parsed()) {
        const auto params = to_params(evolve_params);
        const auto pot = to_potential(evolve_pot);
        const auto times = linspace_times(t_max, t_steps);
        MetaList meta = base_meta("evolve");
        add_meta(meta, evolve_params);
        add_meta(meta, evolve_pot);
        meta.emplace_back("engine", engine);
        meta.emplace_back("t_max", mepack::io::format_double(t_max));
        meta.emplace_back("seed", std::to_string(seed));

        mepack::Trajectory traj;
        if (engine == "exact") {
            traj = mepack::exact_trajectory(params, pot, times);
        } else if (engine == "classical") {
            mepack::EvolveOptions opt;
            opt.dt = dt;
            opt.q_bound = q_bound;
            opt.drift_tol = drift_tol;
            opt.n_samples = n_samples;
            opt.seed = seed;
            traj = mepack::evolve_classical(params, pot, times, opt);
        } else {
            mepack::GridSpec grid;
            if (q_max > q_min)
                grid = mepack::make_grid(q_min, q_max,
                                         (std::abs(params.P) + 8.0 * params.dP) * 1.25,
                                         params.hbar, std::max<std::size_t>(grid_n, 256));
            else
                grid = mepack::default_grid(params, pot, t_max);
            auto state = mepack::build_state(params, grid, spectrum_tol);
            mepack::QuantumEvolveOptions opt;
            opt.dt = dt;
            opt.leak_tol = leak_tol;
            traj = mepack::evolve_quantum(state, pot, times, opt);
            if (!dump_density.empty()) {
                std::ostringstream os(std::ios::binary);
                mepack::io::write_density_dump(os, state);
                mepack::io::atomic_write(dump_density, os.str());
            }
        }
        meta.emplace_back("dt", mepack::io::format_double(traj.meta.dt));
        if (evolve_out.format == "csv") {
            std::ostringstream os;
            mepack::io::write_trajectory_csv(os, traj, meta);
            emit(evolve_out, os.str());
        } else {
            emit(evolve_out, mepack::io::trajectory_json(traj, meta).dump(2) + "\n");
        }
        return 0;
    }

    if (cmd_maxent->parsed()) {
        const auto params = to_params(maxent_params);
        const auto constraints =
            mepack::MomentConstraints::from_params(params, maxent_grid, maxent_grid, span_sigmas);
        const auto solution = mepack::solve_dual(constraints, maxent_tol, maxent_iter);
        MetaList meta = base_meta("maxent");
        add_meta(meta, maxent_params);
        meta.emplace_back("grid_n", std::to_string(maxent_grid));
        meta.emplace_back("span_sigmas", mepack::io::format_double(span_sigmas));
        nlohmann::json j = mepack::io::maxent_json(solution, meta);
        j["l1_distance"] = mepack::l1_distance_to_analytic(solution, params);
        if (witness > 0) {
            j["witness_perturbations"] = witness;
            j["witness_max_entropy_gap"] =
                mepack::entropy_maximality_gap(solution, witness, maxent_seed);
        }
        emit(maxent_out, j.dump(2) + "\n");
        return 0;
    }

    if (cmd_rod->parsed()) {
        std::vector<mepack::io::RodRow> rows;
        auto resolve = [&](mepack::RodSpec spec) {
            if (energy_opt->count() > 0) spec.lam = mepack::lambda_from_energy(spec, rod_energy);
            return mepack::io::rod_row(spec);
        };
        MetaList meta = base_meta("rod");
        if (scan_n.empty()) {
            rows.push_back(resolve(rod_spec));
        } else {
            for (double n_value : parse_list(scan_n, "--scan-n")) {
                mepack::RodSpec spec = rod_spec;
                spec.N = static_cast<std::size_t>(n_value);
                rows.push_back(resolve(spec));
            }
            meta.emplace_back("scan_n", scan_n);
        }
        meta.emplace_back("mu", mepack::io::format_double(rod_spec.mu));
        meta.emplace_back("kappa", mepack::io::format_double(rod_spec.kappa));
        meta.emplace_back("xi", mepack::io::format_double(rod_spec.xi));
        if (rod_out.format == "csv") {
            std::ostringstream os;
            mepack::io::write_rod_csv(os, rows, meta);
            emit(rod_out, os.str());
        } else {
            emit(rod_out, mepack::io::rod_json(rows, meta).dump(2) + "\n");
        }
        return 0;
    }

    if (cmd_scan->parsed()) {
        const auto params = to_params(scan_params);
        const auto pot = to_potential(scan_pot);
        scan_opt.scales = parse_list(scales_text, "--scales");
        if (!probes_text.empty()) scan_opt.probe_times = parse_list(probes_text, "--t-probe");
        const auto report = mepack::limit_scan(params, pot, scan_opt);
        MetaList meta = base_meta("scan");
        add_meta(meta, scan_params);
        add_meta(meta, scan_pot);
        meta.emplace_back("scales", scales_text);
        meta.emplace_back("n_samples", std::to_string(scan_opt.n_samples));
        meta.emplace_back("seed", std::to_string(scan_opt.seed));
        if (scan_out.format == "json" && scan_out.out.empty()) {
            emit(scan_out, mepack::io::scan_json(report, meta).dump(2) + "\n");
        } else {
            std::ostringstream os;
            mepack::io::write_scan_csv(os, report, meta);
            emit(scan_out, os.str());
        }
        emit_json_summary(scan_out, mepack::io::scan_json(report, meta));
        return 0;
    }

    if (cmd_coincide->parsed()) {
        const auto params = to_params(co_params);
        const auto pot = to_potential(co_pot);
        const auto times = linspace_times(co_t_max, co_steps);
        mepack::EvolveOptions copt;
        copt.dt = co_dt_c;
        copt.n_samples = co_samples;
        copt.seed = co_seed;
        mepack::QuantumEvolveOptions qopt;
        qopt.dt = co_dt_q;
        const auto report = mepack::quadratic_coincidence(params, pot, times, copt, qopt);
        MetaList meta = base_meta("coincide");
        add_meta(meta, co_params);
        add_meta(meta, co_pot);
        meta.emplace_back("t_max", mepack::io::format_double(co_t_max));
        meta.emplace_back("seed", std::to_string(co_seed));
        nlohmann::json summary = mepack::io::coincidence_json(report, meta);
        const bool quantum_ok = report.worst_quantum_rel() <= co_quantum_tol;
        const bool classical_ok = report.worst_classical_sigma() <= co_sigma;
        summary["quantum_ok"] = quantum_ok;
        summary["classical_ok"] = classical_ok;
        if (co_out.format == "json" && co_out.out.empty()) {
            emit(co_out, summary.dump(2) + "\n");
        } else {
            std::ostringstream os;
            mepack::io::write_coincidence_csv(os, report, meta);
            emit(co_out, os.str());
        }
        emit_json_summary(co_out, summary);
        return quantum_ok && classical_ok ? 0 : 3;
    }

    if (cmd_moments->parsed()) {
        const auto params = to_params(mom_params);
        const auto record = mepack::cubic_moment_check(params, mom_tol);
        MetaList meta = base_meta("moments");
        add_meta(meta, mom_params);
        emit(mom_out, mepack::io::moment_record_json(record, meta).dump(2) + "\n");
        return 0;
    }

    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const CLI::ParseError& e) {
        CLI::App dummy;
        const int code = dummy.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const mepack::numerics_error& e) {
        std::cerr << "numerical diagnostic failure: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << "\n";
        return 2;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return 4;
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    }
}
