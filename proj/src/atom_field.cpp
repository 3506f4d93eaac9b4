#include "tunnel/atom_field.hpp"

#include "tunnel/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace tunnel {

namespace {

template <typename F>
double golden_section_max(F&& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo, b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > tol) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

// Root of f on [lo, hi], assuming a sign change.
template <typename F>
double bisect(F&& f, double lo, double hi, double tol) {
  double flo = f(lo);
  for (int it = 0; it < 200 && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

// Outer bracket end of the exit search.
double search_limit(const AtomFieldModel& m) { return 4.0 * ionization_potential(m) / m.E0 + 20.0; }

}  // namespace

AtomFieldModel::AtomFieldModel(double z, double e0, double w, double t_peak)
    : Z(z), alpha(2.0 / (z * z)), E0(e0), omega(w), t0(t_peak) {
  if (!(z > 0.0)) throw ConfigError("AtomFieldModel: Z must be positive");
  if (!(w > 0.0)) throw ConfigError("AtomFieldModel: omega must be positive");
}

AtomFieldModel AtomFieldModel::from_keldysh(double z, double e0, double gamma, double t_peak) {
  if (!(e0 > 0.0) || !(gamma > 0.0)) throw ConfigError("from_keldysh: E0 and gamma must be positive");
  // gamma = omega sqrt(2 I_p) / E0 with sqrt(2 I_p) = Z
  return AtomFieldModel(z, e0, gamma * e0 / z, t_peak);
}

AtomFieldModel AtomFieldModel::field_free() const {
  AtomFieldModel m = *this;
  m.E0 = 0.0;
  return m;
}

double field(const AtomFieldModel& m, double t) {
  const double s = m.omega * (t - m.t0);
  return m.E0 * std::exp(-0.5 * s * s);
}

double field_tail_integral(const AtomFieldModel& m, double t) {
  return m.E0 / m.omega * std::sqrt(std::numbers::pi / 2.0) * std::erfc(m.omega * (t - m.t0) / std::numbers::sqrt2);
}

double binding_potential(const AtomFieldModel& m, double x) { return -m.Z / std::sqrt(x * x + m.alpha); }

double potential(const AtomFieldModel& m, double x, double t) { return binding_potential(m, x) - field(m, t) * x; }

double force(const AtomFieldModel& m, double x, double t) {
  const double r2 = x * x + m.alpha;
  return -m.Z * x / (r2 * std::sqrt(r2)) + field(m, t);
}

double ionization_potential(const AtomFieldModel& m) { return 0.5 * m.Z * m.Z; }

DerivedScales derived_scales(const AtomFieldModel& m) {
  const double ip = ionization_potential(m);
  const double k = std::sqrt(2.0 * ip);
  return {ip, m.omega * k / m.E0, std::numbers::sqrt2 / m.omega, k / m.E0};
}

double barrier_peak(const AtomFieldModel& m) {
  if (!(m.E0 > 0.0)) throw NoBarrier("barrier_peak: E0 must be positive");
  // V(x, t0) is concave beyond the inflection point sqrt(alpha/2), so the
  // barrier top is the unique maximum there.
  const double lo = std::sqrt(m.alpha / 2.0);
  const auto v = [&](double x) { return binding_potential(m, x) - m.E0 * x; };
  return golden_section_max(v, lo, search_limit(m), 1e-12);
}

BarrierGeometry barrier_points(const AtomFieldModel& m) {
  if (!(m.E0 > 0.0)) throw NoBarrier("barrier_points: no field, no barrier");
  const double ip = ionization_potential(m);
  const auto excess = [&](double x) { return binding_potential(m, x) - m.E0 * x + ip; };
  const double peak = barrier_peak(m);
  if (excess(peak) <= 0.0)
    throw OverBarrier("barrier_points: E0 = " + std::to_string(m.E0) + " is above the over-the-barrier threshold");
  const double x_in = bisect(excess, 0.0, peak, 1e-13);
  const double x_exit = bisect(excess, peak, search_limit(m), 1e-13);
  return {x_in, x_exit};
}

double over_barrier_threshold(double Z) {
  if (!(Z > 0.0)) throw ConfigError("over_barrier_threshold: Z must be positive");
  const auto top_excess = [Z](double e0) {
    const AtomFieldModel m(Z, e0, 1.0, 0.0);
    const double x = barrier_peak(m);
    return binding_potential(m, x) - e0 * x + ionization_potential(m);
  };
  const double z3 = Z * Z * Z;
  return bisect(top_excess, 1e-3 * z3, z3, 1e-11 * z3);
}

}  // namespace tunnel
