// tunnelclock: ground-state check, single ionization runs and (E0, gamma) sweeps.
//
// Exit codes: 0 success, 1 runtime failure, 2 usage or configuration error.

#include "tunnel/run_config.hpp"
#include "tunnel/spectrum.hpp"
#include "tunnel/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <thread>

namespace fs = std::filesystem;
using namespace tunnel;

namespace {

constexpr int kOk = 0;
constexpr int kRuntimeFailure = 1;
constexpr int kUsageError = 2;

void print_report(const ObservableReport& r) {
  std::cout << std::setprecision(8) << "E0 = " << r.E0 << "  gamma = " << r.gamma << "  [" << r.status << "]\n"
            << "  x_in = " << r.x_in << "  x_exit = " << r.x_exit << '\n'
            << "  tau_A = " << r.tau_A << "  tau_MT = " << r.tau_MT << "  tau_2 = " << r.tau_2
            << "  tau_sub (closed-form, 1D) = " << r.tau_sub_1d << '\n'
            << "  p0 (window) = " << r.p0_method1 << "  p0 (flow) = " << r.p0_method2 << "  p_fq = " << r.p_fq
            << '\n';
}

bool is_failure(const ObservableReport& r) { return r.status.rfind("error", 0) == 0; }

void prepare_output(RunConfig& cfg) {
  fs::create_directories(cfg.output_dir);
  if (!cfg.settings.snapshot_times.empty()) {
    cfg.settings.snapshot_dir = cfg.output_dir / "snapshots";
    fs::create_directories(cfg.settings.snapshot_dir);
  }
}

int cmd_ground(const RunConfig& cfg) {
  const AtomFieldModel atom(cfg.settings.Z, 0.0, 1.0, 0.0);
  const Grid grid = Grid::covering(-cfg.settings.spectrum_half_width, cfg.settings.spectrum_half_width, cfg.settings.dx);
  const auto levels = bound_states(atom, grid);
  const double width = ground_momentum_width(levels.front());
  std::cout << std::setprecision(12) << "Z = " << atom.Z << "  alpha = " << atom.alpha << '\n'
            << "ground energy = " << levels.front().energy << '\n'
            << "momentum width = " << width << '\n'
            << "bound levels = " << levels.size() << '\n';
  fs::create_directories(cfg.output_dir);
  std::ofstream os(cfg.output_dir / "ground.csv");
  os << std::setprecision(17) << "Z,energy,momentum_width,bound_levels\n"
     << atom.Z << ',' << levels.front().energy << ',' << width << ',' << levels.size() << '\n';
  return kOk;
}

int cmd_run(RunConfig cfg, double ratio, double gamma) {
  cfg.validate();
  // Over-the-barrier ratios are accepted here: the point is reported and skipped.
  if (!(ratio > 0.0)) throw ConfigError("--e0 must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw ConfigError("--gamma must lie in (0, 1)");
  prepare_output(cfg);
  const PointResult res = run_point(cfg.settings, ratio, gamma);
  print_report(res.report);
  if (!res.records.empty())
    write_trace_csv(cfg.output_dir / trace_file_name(res.report.E0, res.report.gamma), res.records);
  append_sweep_row(cfg.output_dir / "sweep.csv", res.report);
  if (res.report.status == "over_barrier") std::cerr << "warning: over-the-barrier point skipped\n";
  return is_failure(res.report) ? kRuntimeFailure : kOk;
}

int cmd_sweep(RunConfig cfg, unsigned threads) {
  cfg.validate();
  prepare_output(cfg);
  const auto results = run_sweep(cfg, threads);
  std::vector<ObservableReport> rows;
  bool failed = false;
  for (const auto& res : results) {
    print_report(res.report);
    rows.push_back(res.report);
    failed = failed || is_failure(res.report);
    if (!res.records.empty())
      write_trace_csv(cfg.output_dir / trace_file_name(res.report.E0, res.report.gamma), res.records);
  }
  write_sweep_csv(cfg.output_dir / "sweep.csv", rows);
  return failed ? kRuntimeFailure : kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Virtual-detector study of tunnel-ionization delays in a 1D soft-core atom"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--config", config_path, "INI configuration file")->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "Output directory (overrides the config)");
  app.add_option("--threads", threads, "Worker threads for sweeps")->check(CLI::PositiveNumber);

  auto* ground = app.add_subcommand("ground", "Ground state energy, momentum width and bound levels");
  auto* run = app.add_subcommand("run", "One ionization run");
  double e0 = 0.0, gamma = 0.0;
  run->add_option("--e0", e0, "Peak field in units of Z^3 (E0/Z^3)")->required();
  run->add_option("--gamma", gamma, "Keldysh parameter")->required();
  bool delay_only = false;
  for (auto* sub : {run, app.add_subcommand("sweep", "All (E0, gamma) combinations of the config")})
    sub->add_flag("--delay-only", delay_only, "Absorbing box, no asymptotic analysis");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    RunConfig cfg = config_path.empty() ? RunConfig{} : parse_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (delay_only) cfg.settings.delay_only = true;
    if (*ground) return cmd_ground(cfg);
    if (*run) return cmd_run(cfg, e0, gamma);
    return cmd_sweep(cfg, threads);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeFailure;
  }
}
