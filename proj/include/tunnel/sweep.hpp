#pragma once

#include "tunnel/observables.hpp"
#include "tunnel/pipeline.hpp"
#include "tunnel/run_config.hpp"

#include <filesystem>
#include <string>
#include <vector>

namespace tunnel {

/// Header of sweep.csv.
const std::string& sweep_csv_header();
/// One sweep.csv line (17 significant digits, no trailing newline).
std::string format_sweep_row(const ObservableReport& r);
std::vector<ObservableReport> read_sweep_csv(const std::filesystem::path& path);

/// Writes a complete sweep.csv, rows sorted by (gamma, E0).
void write_sweep_csv(const std::filesystem::path& path, std::vector<ObservableReport> rows);
/// Appends a row, creating the file with its header when missing.
void append_sweep_row(const std::filesystem::path& path, const ObservableReport& row);

/// trace_<E0>_<gamma>.csv
std::string trace_file_name(double e0, double gamma);
/// Columns t, j_0, rho_0, j_1, rho_1, ... (one pair per detector).
void write_trace_csv(const std::filesystem::path& path, const std::vector<DetectorRecord>& records);

/// Runs every (E0/Z^3, gamma) combination on `threads` workers. Results are ordered by
/// (gamma, E0) regardless of completion order.
std::vector<PointResult> run_sweep(const RunConfig& cfg, unsigned threads);

}  // namespace tunnel
