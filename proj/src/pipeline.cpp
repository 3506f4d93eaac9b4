#include "tunnel/pipeline.hpp"

#include "tunnel/asymptotics.hpp"
#include "tunnel/spectrum.hpp"

#include <cmath>
#include <limits>
#include <optional>

namespace tunnel {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Keeps the snapshots bracketing the running maximum of the exit current: the sample
// before the maximum, the maximum itself and the sample after it. Only a window of
// the state around the exit is stored.
class PeakSnapshotBuffer {
 public:
  explicit PeakSnapshotBuffer(Grid window) : window_(std::move(window)) {}

  void observe(double t, double current, const Wavefunction& psi) {
    Wavefunction local = psi.restricted_to(window_);
    if (want_next_) {
      after_ = {t, local};
      want_next_ = false;
    }
    if (current > best_) {
      best_ = current;
      before_ = previous_;
      peak_ = {t, local};
      after_.reset();
      want_next_ = true;
    }
    previous_ = {t, std::move(local)};
  }

  /// Stored snapshot closest to t.
  const Wavefunction& nearest(double t) const {
    const Entry* best = nullptr;
    for (const auto* e : {&before_, &peak_, &after_})
      if (*e && (!best || std::abs((*e)->first - t) < std::abs((*best)->first - t))) best = e;
    if (!best) throw NumericalError("no snapshot recorded near the ionization instant");
    return (*best)->second;
  }

 private:
  using Entry = std::optional<std::pair<double, Wavefunction>>;
  Grid window_;
  double best_ = -std::numeric_limits<double>::infinity();
  bool want_next_ = false;
  Entry previous_, before_, peak_, after_;
};

// Smallest multiple of `quantum` that is >= span.
double ceil_to(double span, double quantum) { return std::ceil(span / quantum - 1e-9) * quantum; }

}  // namespace

PointResult run_point(const RunSettings& s, double e0_over_z3, double gamma) {
  PointResult out;
  ObservableReport& r = out.report;
  const double e0 = e0_over_z3 * s.Z * s.Z * s.Z;
  r.E0 = e0;
  r.gamma = gamma;
  r.x_in = r.x_exit = r.tau_A = r.tau_MT = r.p0_method1 = r.p0_method2 = r.p_fq = r.tau_2 = r.tau_sub_1d = kNaN;

  const AtomFieldModel model = AtomFieldModel::from_keldysh(s.Z, e0, gamma);
  BarrierGeometry geom{};
  try {
    geom = barrier_points(model);
  } catch (const OverBarrier&) {
    r.status = "over_barrier";
    return out;
  }
  r.x_in = geom.x_in;
  r.x_exit = geom.x_exit;

  try {
    r.tau_sub_1d = wigner_closed_form(model, 1);
  } catch (const ConfigError&) {
    // Outside the closed form's range; left as NaN.
  }

  try {
    // Delay-only runs take the ground state of their own (absorbing) box.
    const Grid spectrum_grid = s.delay_only ? Grid::covering(-s.delay_half_width, s.delay_half_width, s.dx)
                                            : Grid::covering(-s.spectrum_half_width, s.spectrum_half_width, s.dx);
    const std::vector<EigenPair> bound = s.delay_only ? std::vector<EigenPair>{ground_state(model, spectrum_grid)}
                                                      : bound_states(model, spectrum_grid);

    PropagationConfig cfg;
    cfg.dt = s.dt;
    cfg.record_stride = s.record_stride;
    cfg.resolved_momentum = s.resolved_momentum;
    const double sample_period = s.dt * s.record_stride;
    // Sample lattice contains t0 exactly.
    cfg.t_start = model.t0 - ceil_to(s.pre_window / model.omega, sample_period);
    Grid grid = spectrum_grid;
    if (s.delay_only) {
      grid = Grid::covering(-s.delay_half_width, s.delay_half_width, s.dx);
      cfg.t_end = model.t0 + ceil_to(s.pre_window / model.omega, sample_period);
      cfg.absorber_width = s.absorber_width;
      cfg.absorber_strength = s.absorber_strength;
    } else {
      grid = Grid::covering(-s.box_left, s.box_right, s.dx);
      cfg.t_end = model.t0 + ceil_to(s.post_window / model.omega, sample_period);
      cfg.grow_box = true;
      cfg.growth_threshold = s.growth_threshold;
    }
    for (int k = 0; k < s.detector_count; ++k)
      cfg.detector_positions.push_back(geom.x_in + geom.width() * k / (s.detector_count - 1));
    for (double t : s.snapshot_times) cfg.snapshot_times.push_back(model.t0 + t);
    cfg.snapshot_dir = s.snapshot_dir;

    const Wavefunction initial = bound.front().state.embedded_in(grid);
    const std::size_t exit_detector = cfg.detector_positions.size() - 1;
    const Index exit_node = grid.nearest_index(geom.x_exit);

    std::optional<Wavefunction> at_peak_field;
    PeakSnapshotBuffer snapshots(Grid::covering(-(geom.x_exit + 20.0), geom.x_exit + 20.0, s.dx));
    const auto observer = [&](double t, const Wavefunction& psi) {
      if (std::abs(t - model.t0) < 0.5 * s.dt) at_peak_field = psi;
      // The exit node index is stable under box growth only to the right; recompute.
      const Index node = exit_node + grid.offset_in(psi.grid);
      snapshots.observe(t, probability_current(psi, node), psi);
    };

    PropagationResult run = propagate(initial, model, cfg, observer);
    out.absorbed_norm = run.absorbed_norm();
    const DetectorRecord& exit_record = run.records[exit_detector];

    r.tau_A = tau_A(exit_record, model, s.dx);
    r.p0_method2 = exit_momentum_flow(exit_record);
    r.p0_method1 = exit_momentum_window(snapshots.nearest(model.t0 + r.tau_A), geom);
    if (!at_peak_field) throw NumericalError("state at the field maximum was not sampled");
    r.tau_MT = tau_MT(*at_peak_field, model);

    if (!s.delay_only) {
      const Wavefunction free =
          project_out_bound(run.final_state, embed_states(bound, run.final_state.grid));
      out.ionized_fraction = free.norm_squared();
      r.p_fq = most_probable_momentum(free);
      r.tau_2 = tau_2(r.p_fq, geom, model, cfg.t_end);
    }
    out.records = std::move(run.records);
    r.check_invariants();
  } catch (const Error& e) {
    r.status = std::string("error: ") + e.what();
  }
  return out;
}

}  // namespace tunnel
