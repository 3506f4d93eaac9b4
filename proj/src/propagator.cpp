#include "tunnel/propagator.hpp"

#include "tunnel/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <sstream>
#include <string>

namespace tunnel {

namespace {

constexpr Index kPhaseBlock = 512;

std::string snapshot_name(std::size_t k, double t) {
  std::ostringstream os;
  os << "snapshot_" << k << "_t" << t << ".bin";
  return os.str();
}

// Norm in the outer `margin` nodes on each side.
std::pair<double, double> edge_norms(const Wavefunction& psi, Index margin) {
  const double dx = psi.grid.dx();
  return {psi.amps.head(margin).squaredNorm() * dx, psi.amps.tail(margin).squaredNorm() * dx};
}

}  // namespace

void PropagationConfig::validate(const Grid& grid) const {
  if (!(dt > 0.0)) throw ConfigError("PropagationConfig: dt must be positive");
  if (!(t_end >= t_start)) throw ConfigError("PropagationConfig: t_end precedes t_start");
  if (record_stride < 1) throw ConfigError("PropagationConfig: record_stride must be >= 1");
  if (!(dt * resolved_momentum * resolved_momentum / 2.0 < std::numbers::pi))
    throw ConfigError("PropagationConfig: kinetic phase per step exceeds pi at the resolved momentum");
  if (resolved_momentum > std::numbers::pi / grid.dx())
    throw ConfigError("PropagationConfig: resolved momentum beyond the grid's Nyquist momentum");
  if (absorber_width < 0.0 || absorber_width >= 0.5) throw ConfigError("PropagationConfig: absorber_width not in [0, 0.5)");
  if (grow_box && absorber_width > 0.0) throw ConfigError("PropagationConfig: box growth and absorber are exclusive");
  const double layer = absorber_width * (grid.x_max() - grid.x_min());
  for (double x : detector_positions) {
    const Index i = grid.nearest_index(x);
    if (i < 1 || i > grid.size() - 2) throw ConfigError("PropagationConfig: detector on the box edge");
    if (x <= grid.x_min() + layer || x >= grid.x_max() - layer)
      throw ConfigError("PropagationConfig: detector at x = " + std::to_string(x) + " lies inside the absorber");
  }
}

Index PropagationConfig::step_count() const { return static_cast<Index>(std::llround((t_end - t_start) / dt)); }

SplitStepPropagator::SplitStepPropagator(const AtomFieldModel& m, const Grid& grid, double dt, double absorber_width,
                                         double absorber_strength)
    : model_(m), grid_(grid), dt_(dt), fft_(grid.size()) {
  const Index n = grid.size();
  const RealVector x = grid.positions();
  static_kick_.resize(n);
  for (Index i = 0; i < n; ++i) static_kick_[i] = std::polar(1.0, -binding_potential(m, x[i]) * dt / 2.0);

  mask_ = RealVector::Ones(n);
  if (absorber_width > 0.0 && absorber_strength > 0.0) {
    absorbing_ = true;
    const double layer = absorber_width * (grid.x_max() - grid.x_min());
    for (Index i = 0; i < n; ++i) {
      const double depth = std::max(grid.x_min() + layer - x[i], x[i] - (grid.x_max() - layer)) / layer;
      if (depth > 0.0)
        mask_[i] = std::pow(std::cos(0.5 * std::numbers::pi * std::min(depth, 1.0)), absorber_strength * std::abs(dt));
    }
  }

  const RealVector p = grid.fft_momenta();
  kinetic_.resize(n);
  for (Index k = 0; k < n; ++k) kinetic_[k] = std::polar(1.0 / static_cast<double>(n), -0.5 * p[k] * p[k] * dt);
  kick_.resize(n);
}

void SplitStepPropagator::fill_kick(double field_value) {
  // exp(-i V dt/2) = static_kick * exp(+i E x dt/2); the linear phase is built by
  // recurrence, restarted exactly every block to bound rounding drift.
  const double theta = field_value * dt_ / 2.0;
  const Index n = grid_.size();
  if (theta == 0.0) {
    kick_ = static_kick_;
    return;
  }
  const cplx ratio = std::polar(1.0, theta * grid_.dx());
  for (Index start = 0; start < n; start += kPhaseBlock) {
    cplx phase = std::polar(1.0, theta * grid_.x(start));
    const Index stop = std::min(n, start + kPhaseBlock);
    for (Index i = start; i < stop; ++i) {
      kick_[i] = static_kick_[i] * phase;
      phase *= ratio;
    }
  }
}

void SplitStepPropagator::advance(ComplexVector& amps, double t) {
  fill_kick(field(model_, t + 0.5 * dt_));
  amps.array() *= kick_.array();
  fft_.forward(amps);
  amps.array() *= kinetic_.array();
  fft_.inverse(amps);
  amps.array() *= kick_.array();
  if (absorbing_) amps.array() *= mask_.array().cast<cplx>();
}

Wavefunction step(const Wavefunction& psi, const AtomFieldModel& m, double t, double dt) {
  SplitStepPropagator prop(m, psi.grid, dt);
  Wavefunction out = psi;
  prop.advance(out.amps, t);
  if (!out.amps.allFinite()) throw NumericalError("step: non-finite amplitudes at t = " + std::to_string(t));
  return out;
}

PropagationResult propagate(Wavefunction psi, const AtomFieldModel& m, const PropagationConfig& cfg,
                            const SampleObserver& observer) {
  cfg.validate(psi.grid);
  const double initial_norm = psi.norm_squared();

  std::vector<DetectorRecord> records(cfg.detector_positions.size());
  std::vector<Index> nodes(records.size());
  const auto locate_detectors = [&](const Grid& g) {
    for (std::size_t k = 0; k < records.size(); ++k) nodes[k] = g.nearest_index(cfg.detector_positions[k]);
  };
  for (std::size_t k = 0; k < records.size(); ++k) records[k].position = cfg.detector_positions[k];
  locate_detectors(psi.grid);

  auto prop = std::make_unique<SplitStepPropagator>(m, psi.grid, cfg.dt, cfg.absorber_width, cfg.absorber_strength);
  const Index steps = cfg.step_count();
  std::vector<bool> snapshot_done(cfg.snapshot_times.size(), false);

  const auto sample = [&](double t) {
    if (!psi.amps.allFinite()) throw NumericalError("propagate: non-finite amplitudes at t = " + std::to_string(t));
    for (std::size_t k = 0; k < records.size(); ++k) {
      records[k].times.push_back(t);
      records[k].current.push_back(probability_current(psi, nodes[k]));
      records[k].density.push_back(probability_density(psi, nodes[k]));
    }
    if (observer) observer(t, psi);
  };

  // Fixed in nodes, so that the atom never ends up inside the margin of a grown box.
  const Index margin = psi.grid.size() / 16;
  const auto maybe_grow = [&](double t) {
    const auto [left, right] = edge_norms(psi, margin);
    const bool grow_left = left > cfg.growth_threshold;
    const bool grow_right = right > cfg.growth_threshold;
    if (!grow_left && !grow_right) return;
    const Index n = psi.grid.size();
    if (2 * n > cfg.max_points)
      throw ConfigError("propagate: box growth at t = " + std::to_string(t) + " exceeds max_points = " +
                        std::to_string(cfg.max_points));
    const Index add_left = grow_left && grow_right ? n / 2 : (grow_left ? n : 0);
    const Grid bigger = psi.grid.extended(add_left, n - add_left);
    psi = psi.embedded_in(bigger);
    locate_detectors(bigger);
    prop = std::make_unique<SplitStepPropagator>(m, bigger, cfg.dt);
  };

  for (Index n = 0;; ++n) {
    const double t = cfg.t_start + static_cast<double>(n) * cfg.dt;
    for (std::size_t k = 0; k < cfg.snapshot_times.size(); ++k) {
      if (!snapshot_done[k] && std::abs(t - cfg.snapshot_times[k]) <= 0.5 * cfg.dt) {
        write_snapshot(cfg.snapshot_dir / snapshot_name(k, cfg.snapshot_times[k]), t, psi);
        snapshot_done[k] = true;
      }
    }
    if (n % cfg.record_stride == 0 || n == steps) {
      sample(t);
      if (cfg.grow_box) maybe_grow(t);
    }
    if (n == steps) break;
    prop->advance(psi.amps, t);
  }

  return PropagationResult{std::move(psi), std::move(records), initial_norm};
}

}  // namespace tunnel
