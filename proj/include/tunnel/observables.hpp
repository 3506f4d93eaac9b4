#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/grid.hpp"
#include "tunnel/propagator.hpp"

#include <string>

namespace tunnel {

/// Everything measured for one (E0, gamma) point, in atomic units.
struct ObservableReport {
  double E0 = 0.0;
  double gamma = 0.0;
  double x_in = 0.0;
  double x_exit = 0.0;
  double tau_A = 0.0;
  double tau_MT = 0.0;
  double p0_method1 = 0.0;
  double p0_method2 = 0.0;
  double p_fq = 0.0;
  double tau_2 = 0.0;
  double tau_sub_1d = 0.0;
  /// "ok", or a short annotation of what went wrong at this point.
  std::string status = "ok";

  /// Checks tau_MT > 0 and tau_A >= tau_MT (no tolerance); on violation the status is
  /// set to "bound_violated" and the values are kept as measured.
  void check_invariants();
  bool ok() const { return status == "ok"; }
};

/// argmax_t j(x_exit, t) - t0, with parabolic peak refinement.
/// Throws ConfigError if the record is not at x_exit (within `dx`), WindowError if the
/// peak lies on the edge of the recording.
double tau_A(const DetectorRecord& record_at_exit, const AtomFieldModel& m, double dx);

/// 1/(2 sigma_H) for H = H(t0); throws NumericalError when the variance is at the
/// numerical floor (psi is an eigenstate).
double tau_MT(const Wavefunction& psi_at_t0, const AtomFieldModel& m);

/// Most probable positive momentum of psi times a Gaussian window centred on x_exit,
/// width (x_exit - x_in)/20. The windowed state is zero-padded to at least
/// `padded_points` nodes before the transform.
double exit_momentum_window(const Wavefunction& psi_at_ionization, const BarrierGeometry& geom,
                            Index padded_points = Index{1} << 16);

/// j / |psi|^2 at the refined instant of maximum current, linearly interpolated
/// (mid-record for a stationary current).
double exit_momentum_flow(const DetectorRecord& record_at_exit);

/// Size of the largest negative excursion after the current maximum, relative to it.
double negative_dip_ratio(const DetectorRecord& record);

}  // namespace tunnel
