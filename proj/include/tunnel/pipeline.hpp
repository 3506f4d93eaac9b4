#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/observables.hpp"
#include "tunnel/propagator.hpp"

#include <filesystem>
#include <vector>

namespace tunnel {

/// Numerical settings of one ionization run. Lengths in a.u., windows in units of 1/omega.
struct RunSettings {
  double Z = 1.0;
  double dx = 0.1;
  double dt = 0.01;
  int record_stride = 10;
  /// Eigenstates are computed on [-spectrum_half_width, spectrum_half_width].
  double spectrum_half_width = 100.0;
  /// Initial propagation box for asymptotic runs; it grows as the packet leaves.
  double box_left = 200.0;
  double box_right = 200.0;
  /// Fixed absorbing box for delay-only runs.
  double delay_half_width = 100.0;
  double absorber_width = 0.1;
  double absorber_strength = 12.5;
  double growth_threshold = 1e-8;
  double resolved_momentum = 10.0;
  /// The run starts pre_window/omega before the field maximum ...
  double pre_window = 6.0;
  /// ... and ends post_window/omega after it (t_f of the asymptotic analysis).
  double post_window = 8.0;
  /// Skip the asymptotic analysis: absorbing box, no p_fq / tau_2.
  bool delay_only = false;
  /// Number of virtual detectors spread evenly over [x_in, x_exit].
  int detector_count = 6;
  std::vector<double> snapshot_times;  // relative to t0
  std::filesystem::path snapshot_dir;
};

struct PointResult {
  ObservableReport report;
  std::vector<DetectorRecord> records;  // detector k sits at x_in + k (x_exit - x_in)/(count - 1)
  double ionized_fraction = 0.0;        // norm of the unbound part at the end of the run
  double absorbed_norm = 0.0;
};

/// Runs one (E0/Z^3, gamma) point end to end: ground state, real-time propagation with
/// virtual detectors, tau_A, tau_MT, both exit momenta, and (unless delay_only) the
/// asymptotic momentum, tau_2 and the closed-form tau_sub.
/// Physics failures are reported through report.status rather than thrown.
PointResult run_point(const RunSettings& settings, double e0_over_z3, double gamma);

}  // namespace tunnel
