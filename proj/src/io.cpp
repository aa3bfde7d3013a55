#include "mepack/io.hpp"

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace mepack::io {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

namespace {

void write_meta_header(std::ostream& os, const MetaList& meta) {
    for (const auto& [key, value] : meta) os << "# " << key << "=" << value << "\n";
}

nlohmann::json meta_json(const MetaList& meta) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [key, value] : meta) j[key] = value;
    return j;
}

nlohmann::json quad_json(const StateQuad& s) {
    return {{"Q", s.Q}, {"P", s.P}, {"dQ", s.dQ}, {"dP", s.dP}};
}

void put_u64(std::ostream& os, std::uint64_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
void put_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}
std::uint64_t get_u64(std::istream& is) {
    std::uint64_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}
double get_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof(v));
    return v;
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const MetaList& meta) {
    write_meta_header(os, meta);
    os << "# kind=" << to_string(traj.kind) << "\n";
    os << "# columns: t,Q,P,dQ,dP (time, position, momentum, position spread, momentum spread;"
          " user units)\n";
    for (std::size_t i = 0; i < traj.size(); ++i)
        os << format_double(traj.times[i]) << ',' << format_double(traj.Q[i]) << ','
           << format_double(traj.P[i]) << ',' << format_double(traj.dQ[i]) << ','
           << format_double(traj.dP[i]) << "\n";
}

nlohmann::json trajectory_json(const Trajectory& traj, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["meta"]["kind"] = to_string(traj.kind);
    j["meta"]["dt"] = traj.meta.dt;
    j["meta"]["n_samples"] = traj.meta.n_samples;
    j["meta"]["grid_points"] = traj.meta.grid_points;
    j["meta"]["n_branches"] = traj.meta.n_branches;
    j["meta"]["seed"] = traj.meta.seed;
    j["meta"]["max_energy_drift"] = traj.meta.max_energy_drift;
    j["meta"]["max_edge_mass"] = traj.meta.max_edge_mass;
    j["t"] = traj.times;
    j["Q"] = traj.Q;
    j["P"] = traj.P;
    j["dQ"] = traj.dQ;
    j["dP"] = traj.dP;
    return j;
}

void write_coincidence_csv(std::ostream& os, const CoincidenceReport& report,
                           const MetaList& meta) {
    write_meta_header(os, meta);
    os << "# columns: t,Q_exact,P_exact,dQ_exact,dP_exact,Q_mc,P_mc,dQ_mc,dP_mc,"
          "Q_grid,P_grid,dQ_grid,dP_grid,se_Q,se_P,se_dQ,se_dP\n";
    for (const auto& row : report.rows) {
        os << format_double(row.t);
        for (const StateQuad* s : {&row.exact, &row.classical, &row.quantum, &row.classical_se})
            os << ',' << format_double(s->Q) << ',' << format_double(s->P) << ','
               << format_double(s->dQ) << ',' << format_double(s->dP);
        os << "\n";
    }
}

nlohmann::json coincidence_json(const CoincidenceReport& report, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["amplitude"] = report.amplitude;
    j["max_quantum_rel"] = report.max_quantum_rel;
    j["max_classical_sigma"] = report.max_classical_sigma;
    j["worst_quantum_rel"] = report.worst_quantum_rel();
    j["worst_classical_sigma"] = report.worst_classical_sigma();
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["t"] = row.t;
        r["exact"] = quad_json(row.exact);
        r["classical"] = quad_json(row.classical);
        r["quantum"] = quad_json(row.quantum);
        r["classical_se"] = quad_json(row.classical_se);
        j["rows"].push_back(r);
    }
    return j;
}

void write_scan_csv(std::ostream& os, const LimitScanReport& report, const MetaList& meta) {
    write_meta_header(os, meta);
    os << "# escape_time=" << format_double(report.escape_time) << "\n";
    os << "# columns: scale,nu,t,Q_mc,P_mc,dQ_mc,dP_mc,Q_grid,P_grid,dQ_grid,dP_grid,"
          "rel_Q,rel_P,rel_dQ,rel_dP,spread_Q,spread_P,sigma_spread_Q,significant_Q\n";
    for (const auto& row : report.rows) {
        os << format_double(row.scale) << ',' << format_double(row.nu) << ','
           << format_double(row.t);
        for (const StateQuad* s : {&row.classical, &row.quantum})
            os << ',' << format_double(s->Q) << ',' << format_double(s->P) << ','
               << format_double(s->dQ) << ',' << format_double(s->dP);
        for (double d : row.rel_diff) os << ',' << format_double(d);
        os << ',' << format_double(row.spread_diff_q) << ',' << format_double(row.spread_diff_p)
           << ',' << format_double(row.spread_sigma_q) << ',' << (row.significant_q ? 1 : 0)
           << "\n";
    }
}

nlohmann::json scan_json(const LimitScanReport& report, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["escape_time"] = report.escape_time;
    j["probe_time"] = report.probe_time;
    j["monotone_spread_q"] = report.monotone_spread_q;
    j["all_significant_q"] = report.all_significant_q;
    j["rows"] = nlohmann::json::array();
    for (const auto& row : report.rows) {
        nlohmann::json r;
        r["scale"] = row.scale;
        r["nu"] = row.nu;
        r["t"] = row.t;
        r["classical"] = quad_json(row.classical);
        r["quantum"] = quad_json(row.quantum);
        r["classical_se"] = quad_json(row.classical_se);
        r["quantum_err"] = quad_json(row.quantum_err);
        r["rel_diff"] = row.rel_diff;
        r["spread_diff_q"] = row.spread_diff_q;
        r["spread_diff_p"] = row.spread_diff_p;
        r["spread_sigma_q"] = row.spread_sigma_q;
        r["significant_q"] = row.significant_q;
        j["rows"].push_back(r);
    }
    return j;
}

nlohmann::json maxent_json(const MaxEntSolution& solution, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["lambda"] = solution.lambda;
    j["residuals"] = solution.residuals;
    j["entropy"] = solution.entropy;
    j["iterations"] = solution.iterations;
    j["newton_decrements"] = solution.newton_decrements;
    j["grid"] = {{"q_lo", solution.grid.q_lo}, {"q_hi", solution.grid.q_hi},
                 {"p_lo", solution.grid.p_lo}, {"p_hi", solution.grid.p_hi},
                 {"nq", solution.grid.nq},     {"np", solution.grid.np}};
    return j;
}

nlohmann::json moment_record_json(const CubicMomentRecord& record, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["nu"] = record.nu;
    j["classical_value"] = record.classical_value;
    j["corrected_value"] = record.corrected_value;
    j["quadrature_value"] = record.quadrature_value;
    j["quadrature_tail_bound"] = record.quadrature_tail_bound;
    j["dev_from_classical"] = record.dev_from_classical;
    j["dev_from_corrected"] = record.dev_from_corrected;
    j["closer"] = record.closer;
    return j;
}

RodRow rod_row(const RodSpec& spec) {
    RodRow row;
    row.spec = spec;
    const auto freqs = phonon_frequencies(spec);
    row.omega_min = freqs.front();
    row.omega_max = freqs.back();
    row.energy = internal_energy(spec);
    row.temperature = spec.temperature();
    const auto stats = rod_length_stats(spec);
    row.length = stats.mean;
    row.rel_var_length = stats.variance / (stats.mean * stats.mean);
    row.rel_var_energy = energy_fluctuation(spec);
    return row;
}

void write_rod_csv(std::ostream& os, const std::vector<RodRow>& rows, const MetaList& meta) {
    write_meta_header(os, meta);
    os << "# columns: N,mu,kappa,xi,lambda,omega_min,omega_max,E,T,L,"
          "rel_var_L,rel_var_E\n";
    for (const auto& row : rows) {
        os << row.spec.N << ',' << format_double(row.spec.mu) << ','
           << format_double(row.spec.kappa) << ',' << format_double(row.spec.xi) << ','
           << format_double(row.spec.lam) << ',' << format_double(row.omega_min) << ','
           << format_double(row.omega_max) << ',' << format_double(row.energy) << ','
           << format_double(row.temperature) << ',' << format_double(row.length) << ','
           << format_double(row.rel_var_length) << ',' << format_double(row.rel_var_energy)
           << "\n";
    }
}

nlohmann::json rod_json(const std::vector<RodRow>& rows, const MetaList& meta) {
    nlohmann::json j;
    j["meta"] = meta_json(meta);
    j["rows"] = nlohmann::json::array();
    for (const auto& row : rows) {
        nlohmann::json r;
        r["N"] = row.spec.N;
        r["mu"] = row.spec.mu;
        r["kappa"] = row.spec.kappa;
        r["xi"] = row.spec.xi;
        r["lambda"] = row.spec.lam;
        r["omega_min"] = row.omega_min;
        r["omega_max"] = row.omega_max;
        r["E"] = row.energy;
        r["T"] = row.temperature;
        r["L"] = row.length;
        r["rel_var_L"] = row.rel_var_length;
        r["rel_var_E"] = row.rel_var_energy;
        j["rows"].push_back(r);
    }
    return j;
}

void write_density_dump(std::ostream& os, const MixedStateGrid& state) {
    put_u64(os, state.grid.n_points);
    put_u64(os, state.n_branches());
    put_f64(os, state.grid.q_min);
    put_f64(os, state.grid.dq());
    for (const auto& branch : state.branches)
        for (const auto& z : branch) put_f64(os, std::norm(z));
}

DensityDump read_density_dump(std::istream& is) {
    DensityDump dump;
    dump.n_points = get_u64(is);
    dump.n_branches = get_u64(is);
    dump.q_min = get_f64(is);
    dump.dq = get_f64(is);
    dump.branch_density.assign(dump.n_branches, std::vector<double>(dump.n_points));
    for (auto& row : dump.branch_density)
        for (auto& x : row) x = get_f64(is);
    if (!is) throw std::runtime_error("read_density_dump: truncated stream");
    return dump;
}

void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    const fs::path dir = path.parent_path().empty() ? fs::path(".") : path.parent_path();
    const fs::path tmp = dir / (path.filename().string() + ".tmp");
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        os << content;
        os.flush();
        if (!os) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, path);
}

}  // namespace mepack::io
