#include "tunnel/observables.hpp"

#include "tunnel/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <span>
#include <string>

namespace tunnel {

namespace {

// Linear interpolation of a uniformly sampled series at time t.
double interpolate(const std::vector<double>& times, const std::vector<double>& values, double t) {
  const auto it = std::upper_bound(times.begin(), times.end(), t);
  if (it == times.begin()) return values.front();
  if (it == times.end()) return values.back();
  const auto k = static_cast<std::size_t>(it - times.begin());
  const double w = (t - times[k - 1]) / (times[k] - times[k - 1]);
  return (1.0 - w) * values[k - 1] + w * values[k];
}

void check_record(const DetectorRecord& r) {
  if (r.times.size() < 3 || r.current.size() != r.times.size() || r.density.size() != r.times.size())
    throw ConfigError("detector record: need >= 3 samples with matching series lengths");
}

}  // namespace

void ObservableReport::check_invariants() {
  if (!ok()) return;
  if (!(tau_MT > 0.0) || !(tau_A >= tau_MT)) status = "bound_violated";
}

double tau_A(const DetectorRecord& record_at_exit, const AtomFieldModel& m, double dx) {
  check_record(record_at_exit);
  const BarrierGeometry geom = barrier_points(m);
  if (std::abs(record_at_exit.position - geom.x_exit) > dx)
    throw ConfigError("tau_A: record at x = " + std::to_string(record_at_exit.position) + " is not at the tunnel exit");
  // The field maximum is t0 by construction of the pulse.
  return argmax_refined(record_at_exit.current, record_at_exit.times) - m.t0;
}

double tau_MT(const Wavefunction& psi_at_t0, const AtomFieldModel& m) {
  const GridHamiltonian h = GridHamiltonian::at_time(m, psi_at_t0.grid, m.t0);
  const double dx = psi_at_t0.grid.dx();
  const double norm2 = psi_at_t0.norm_squared();
  const ComplexVector h_psi = h.apply(psi_at_t0.amps);
  const double mean = std::real(grid_dot(psi_at_t0.amps, h_psi, dx)) / norm2;
  const double second = h_psi.squaredNorm() * dx / norm2;
  const double variance = second - mean * mean;
  if (!(variance > 1e-12 * std::max(1.0, mean * mean)))
    throw NumericalError("tau_MT: energy variance at the numerical floor, infinite tau_MT");
  return 0.5 / std::sqrt(variance);
}

double exit_momentum_window(const Wavefunction& psi_at_ionization, const BarrierGeometry& geom, Index padded_points) {
  const Grid& g = psi_at_ionization.grid;
  const double width = geom.width() / 20.0;
  const RealVector x = g.positions();
  Wavefunction windowed = psi_at_ionization;
  windowed.amps.array() *=
      (-(x.array() - geom.x_exit).square() / (2.0 * width * width)).exp().cast<cplx>();

  if (padded_points > g.size()) {
    const Index extra = padded_points - g.size();
    windowed = windowed.embedded_in(g.extended(extra / 2, extra - extra / 2));
  }
  const MomentumDistribution md = momentum_distribution(windowed);
  const auto first_positive = static_cast<std::size_t>(md.p_values.size() / 2 + 1);
  const auto count = static_cast<std::size_t>(md.p_values.size()) - first_positive;
  const std::span<const double> p(md.p_values.data() + first_positive, count);
  const std::span<const double> rho(md.density.data() + first_positive, count);
  try {
    return argmax_refined(rho, p);
  } catch (const WindowError&) {
    throw NumericalError("exit_momentum_window: no interior maximum at positive momentum");
  }
}

double exit_momentum_flow(const DetectorRecord& record_at_exit) {
  check_record(record_at_exit);
  const auto& current = record_at_exit.current;
  const auto [lo, hi] = std::minmax_element(current.begin(), current.end());
  // A stationary flux has no peak; every instant is equally representative.
  const bool flat = *hi - *lo <= 1e-14 * std::abs(*hi);
  const double t_peak = flat ? record_at_exit.times[record_at_exit.times.size() / 2]
                             : argmax_refined(current, record_at_exit.times);
  const double j = interpolate(record_at_exit.times, record_at_exit.current, t_peak);
  const double rho = interpolate(record_at_exit.times, record_at_exit.density, t_peak);
  if (!(rho > 1e-14)) throw NumericalError("exit_momentum_flow: vanishing density at the current maximum");
  return j / rho;
}

double negative_dip_ratio(const DetectorRecord& record) {
  check_record(record);
  const auto peak = std::max_element(record.current.begin(), record.current.end());
  if (!(*peak > 0.0)) throw NumericalError("negative_dip_ratio: no positive current");
  const double lowest = *std::min_element(peak, record.current.end());
  return std::max(0.0, -lowest) / *peak;
}

}  // namespace tunnel
