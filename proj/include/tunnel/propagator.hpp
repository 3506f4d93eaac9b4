#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/fft.hpp"
#include "tunnel/grid.hpp"

#include <filesystem>
#include <functional>
#include <vector>

namespace tunnel {

/// Time series of the probability current and density at a fixed node.
struct DetectorRecord {
  double position = 0.0;
  std::vector<double> times;
  std::vector<double> current;
  std::vector<double> density;
};

struct PropagationConfig {
  double dt = 0.01;
  double t_start = 0.0;
  double t_end = 0.0;
  /// Fraction of the box, per edge, covered by the absorbing mask. Zero disables it.
  double absorber_width = 0.0;
  /// Mask exponent per unit time: each step multiplies by cos(pi d / 2)^(strength dt),
  /// d in [0, 1] being the depth into the absorbing layer.
  double absorber_strength = 12.5;
  std::vector<double> detector_positions;
  int record_stride = 10;
  /// Largest momentum the run has to resolve; dt p^2/2 must stay below pi for it.
  double resolved_momentum = 10.0;
  /// Enlarge the box whenever the norm in an edge margin exceeds `growth_threshold`
  /// (only without absorber).
  bool grow_box = false;
  double growth_threshold = 1e-8;
  Index max_points = Index{1} << 20;
  /// Binary snapshots are written at the steps nearest to these instants.
  std::vector<double> snapshot_times;
  std::filesystem::path snapshot_dir;

  /// Checks the aliasing guard, the time window and the detector/absorber layout on `grid`.
  void validate(const Grid& grid) const;
  Index step_count() const;
};

/// Strang splitting exp(-i V dt/2) exp(-i T dt) exp(-i V dt/2) with V taken at
/// the step midpoint, kinetic factor applied in Fourier space.
class SplitStepPropagator {
 public:
  SplitStepPropagator(const AtomFieldModel& m, const Grid& grid, double dt, double absorber_width = 0.0,
                      double absorber_strength = 0.0);

  const Grid& grid() const { return grid_; }
  double dt() const { return dt_; }

  /// Advances amplitudes from t to t + dt in place.
  void advance(ComplexVector& amps, double t);

 private:
  void fill_kick(double field_value);

  AtomFieldModel model_;
  Grid grid_;
  double dt_;
  ComplexVector static_kick_;  // exp(-i V_0 dt/2)
  RealVector mask_;            // absorber, 1 in the interior
  ComplexVector kinetic_;      // exp(-i p^2 dt/2) / n
  ComplexVector kick_;         // scratch: full half-step potential factor
  Fft fft_;
  bool absorbing_ = false;
};

/// One absorber-free step of length dt (negative dt steps backwards).
Wavefunction step(const Wavefunction& psi, const AtomFieldModel& m, double t, double dt);

struct PropagationResult {
  Wavefunction final_state;
  std::vector<DetectorRecord> records;
  double initial_norm = 1.0;
  /// Norm removed by the absorber (initial minus final norm).
  double absorbed_norm() const { return initial_norm - final_state.norm_squared(); }
};

/// Called at every recorded sample with the sample time and the current state.
using SampleObserver = std::function<void(double, const Wavefunction&)>;

/// Drives the split-step scheme over [t_start, t_end], sampling every detector every
/// `record_stride` steps (including the first and last step). Throws ConfigError for
/// detectors inside the absorber and NumericalError when the state stops being finite.
PropagationResult propagate(Wavefunction psi, const AtomFieldModel& m, const PropagationConfig& cfg,
                            const SampleObserver& observer = {});

}  // namespace tunnel
