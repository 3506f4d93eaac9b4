#include "tunnel/asymptotics.hpp"

#include <cmath>
#include <optional>
#include <string>

namespace tunnel {

namespace {

ClassicalState rk4_step(const ClassicalState& s, const AtomFieldModel& m, double h) {
  const auto accel = [&](double x, double t) { return force(m, x, t); };
  const double k1x = s.p;
  const double k1p = accel(s.x, s.t);
  const double k2x = s.p + 0.5 * h * k1p;
  const double k2p = accel(s.x + 0.5 * h * k1x, s.t + 0.5 * h);
  const double k3x = s.p + 0.5 * h * k2p;
  const double k3p = accel(s.x + 0.5 * h * k2x, s.t + 0.5 * h);
  const double k4x = s.p + h * k3p;
  const double k4p = accel(s.x + h * k3x, s.t + h);
  return {s.x + h / 6.0 * (k1x + 2.0 * k2x + 2.0 * k3x + k4x), s.p + h / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p),
          s.t + h};
}

void check_recapture(const ClassicalState& s, const TrajectoryOptions& opts) {
  if (!std::isfinite(s.x) || !std::isfinite(s.p)) throw NumericalError("classical trajectory became non-finite");
  if (!std::isnan(opts.recapture_below) && s.x < opts.recapture_below)
    throw Recaptured("electron fell back below x = " + std::to_string(opts.recapture_below) + " at t = " +
                     std::to_string(s.t));
}

}  // namespace

Wavefunction project_out_bound(const Wavefunction& psi, const std::vector<EigenPair>& bound) {
  Wavefunction out = psi;
  for (const auto& level : bound) {
    if (!(level.state.grid == psi.grid)) throw GridMismatch("project_out_bound: bound state on a different grid");
    out.amps -= inner_product(level.state, psi) * level.state.amps;
  }
  // A second pass removes what the first left behind through non-orthogonality at rounding level.
  for (const auto& level : bound) out.amps -= inner_product(level.state, out) * level.state.amps;
  return out;
}

std::vector<EigenPair> embed_states(const std::vector<EigenPair>& states, const Grid& target) {
  std::vector<EigenPair> out;
  out.reserve(states.size());
  for (const auto& s : states) out.push_back({s.energy, s.state.embedded_in(target)});
  return out;
}

double most_probable_momentum(const Wavefunction& psi_free) {
  if (!(std::sqrt(psi_free.norm_squared()) > 1e-8))
    throw NumericalError("most_probable_momentum: negligible free norm");
  const MomentumDistribution md = momentum_distribution(psi_free);
  return argmax_refined(md.density, md.p_values);
}

ClassicalState integrate_newton(const ClassicalState& s0, const AtomFieldModel& m, double t_end,
                                const TrajectoryOptions& opts) {
  if (!(t_end > s0.t)) throw ConfigError("integrate_newton: t_end must follow the start time");
  ClassicalState s = s0;
  const auto steps = static_cast<long>(std::ceil((t_end - s0.t) / opts.dt));
  const double h = (t_end - s0.t) / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    s = rk4_step(s, m, h);
    check_recapture(s, opts);
  }
  s.t = t_end;
  return s;
}

ClassicalState classical_trajectory(const ClassicalState& s0, const AtomFieldModel& m, double t_end,
                                    const TrajectoryOptions& opts) {
  ClassicalState s = integrate_newton(s0, m, t_end, opts);
  const double give_up = t_end + opts.max_extra_time;
  while (std::abs(s.x) <= opts.coulomb_cutoff) {
    if (s.t > give_up) throw Recaptured("electron did not reach the Coulomb cutoff");
    s = rk4_step(s, m, opts.dt);
    check_recapture(s, opts);
  }
  s.p += field_tail_integral(m, s.t);
  return s;
}

double tau_2(double p_fq, const BarrierGeometry& geom, const AtomFieldModel& m, double t_end,
             const TrajectoryOptions& opts) {
  TrajectoryOptions o = opts;
  o.recapture_below = geom.x_in;
  const double rise = derived_scales(m).rise_time;
  const double lo = m.t0 - 3.0 * rise;
  const double hi = m.t0 + 3.0 * rise;

  // F(t_exit) = p_asym - p_fq; empty when the electron is recaptured.
  const auto mismatch = [&](double t_exit) -> std::optional<double> {
    try {
      return classical_trajectory({geom.x_exit, 0.0, t_exit}, m, std::max(t_end, t_exit + o.dt), o).p - p_fq;
    } catch (const Recaptured&) {
      return std::nullopt;
    }
  };

  constexpr int kScan = 240;
  std::optional<double> best_root;
  std::optional<double> prev = mismatch(lo);
  double prev_t = lo;
  for (int k = 1; k <= kScan; ++k) {
    const double t = lo + (hi - lo) * k / kScan;
    const std::optional<double> cur = mismatch(t);
    if (prev && cur && (*prev < 0.0) != (*cur < 0.0)) {
      double a = prev_t, b = t;
      double fa = *prev;
      while (b - a > 1e-7) {
        const double mid = 0.5 * (a + b);
        const std::optional<double> fm = mismatch(mid);
        if (!fm) throw NumericalError("tau_2: recapture inside an escaping bracket");
        if ((*fm < 0.0) == (fa < 0.0)) {
          a = mid;
          fa = *fm;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      if (!best_root || std::abs(root - m.t0) < std::abs(*best_root - m.t0)) best_root = root;
    }
    prev = cur;
    prev_t = t;
  }
  if (!best_root) throw NumericalError("tau_2: root outside the exit-time window");
  return *best_root - m.t0;
}

double wigner_closed_form(const AtomFieldModel& m, int dim) {
  const double ratio = m.E0 / (m.Z * m.Z * m.Z);
  double coefficient = 0.0, slope = 0.0;
  if (dim == 1) {
    coefficient = 14.29;
    slope = 16.0;
  } else if (dim == 3) {
    coefficient = 9.0;
    slope = 9.5;
  } else {
    throw ConfigError("wigner_closed_form: dimension must be 1 or 3");
  }
  const double radicand = 1.0 - slope * ratio;
  if (radicand < 0.0) throw ConfigError("wigner_closed_form: field strength beyond the formula's validity");
  return coefficient * std::sqrt(radicand) / (m.Z * m.Z);
}

}  // namespace tunnel
