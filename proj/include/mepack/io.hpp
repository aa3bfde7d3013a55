#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mepack/experiments.hpp"
#include "mepack/maxent.hpp"
#include "mepack/quantum_engine.hpp"
#include "mepack/rod.hpp"
#include "mepack/trajectory.hpp"

namespace mepack::io {

using MetaList = std::vector<std::pair<std::string, std::string>>;

// Round-trip formatting (%.17g); identical inputs give identical bytes.
std::string format_double(double x);

// Commented key=value header lines followed by a commented column list.
void write_trajectory_csv(std::ostream& os, const Trajectory& traj, const MetaList& meta);
nlohmann::json trajectory_json(const Trajectory& traj, const MetaList& meta);

void write_coincidence_csv(std::ostream& os, const CoincidenceReport& report,
                           const MetaList& meta);
nlohmann::json coincidence_json(const CoincidenceReport& report, const MetaList& meta);

void write_scan_csv(std::ostream& os, const LimitScanReport& report, const MetaList& meta);
nlohmann::json scan_json(const LimitScanReport& report, const MetaList& meta);

nlohmann::json maxent_json(const MaxEntSolution& solution, const MetaList& meta);

nlohmann::json moment_record_json(const CubicMomentRecord& record, const MetaList& meta);

struct RodRow {
    RodSpec spec;
    double omega_min = 0.0, omega_max = 0.0;
    double energy = 0.0, temperature = 0.0;
    double length = 0.0;
    double rel_var_length = 0.0, rel_var_energy = 0.0;
};
RodRow rod_row(const RodSpec& spec);
void write_rod_csv(std::ostream& os, const std::vector<RodRow>& rows, const MetaList& meta);
nlohmann::json rod_json(const std::vector<RodRow>& rows, const MetaList& meta);

// Binary density dump: u64 n_points, u64 n_branches, f64 q_min, f64 dq,
// then n_branches rows of n_points f64 |psi|^2 values.
void write_density_dump(std::ostream& os, const MixedStateGrid& state);

struct DensityDump {
    std::uint64_t n_points = 0;
    std::uint64_t n_branches = 0;
    double q_min = 0.0;
    double dq = 0.0;
    std::vector<std::vector<double>> branch_density;
};
DensityDump read_density_dump(std::istream& is);

// Writes through a temp file in the target directory plus rename, so readers
// never observe a truncated file.
void atomic_write(const std::filesystem::path& path, const std::string& content);

}  // namespace mepack::io
