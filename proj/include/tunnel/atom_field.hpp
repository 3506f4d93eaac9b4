#pragma once

namespace tunnel {

/// Soft-core atom -Z/sqrt(x^2 + alpha) with alpha = 2/Z^2, driven by the
/// Gaussian field pulse E(t) = E0 exp(-omega^2 (t - t0)^2 / 2) through -E(t) x.
struct AtomFieldModel {
  double Z = 1.0;
  double alpha = 2.0;
  double E0 = 0.0;
  double omega = 1.0;
  double t0 = 0.0;

  AtomFieldModel() = default;
  AtomFieldModel(double z, double e0, double w, double t_peak);

  /// Pulse rate chosen so that the Keldysh parameter equals `gamma`.
  static AtomFieldModel from_keldysh(double z, double e0, double gamma, double t_peak = 0.0);

  /// Same atom with the field switched off.
  AtomFieldModel field_free() const;
};

struct DerivedScales {
  double ionization_potential;  // I_p = Z^2/2
  double keldysh;               // gamma = omega sqrt(2 I_p) / E0
  double rise_time;             // tau_E = sqrt(2) / omega
  double keldysh_time;          // tau_K = sqrt(2 I_p) / E0
};

/// Entry and exit of the tunnelling barrier at peak field.
struct BarrierGeometry {
  double x_in;
  double x_exit;

  double width() const { return x_exit - x_in; }
};

double field(const AtomFieldModel& m, double t);
/// Integral of E over [t, +infinity).
double field_tail_integral(const AtomFieldModel& m, double t);

double binding_potential(const AtomFieldModel& m, double x);
/// V(x, t) = -Z/sqrt(x^2 + alpha) - E(t) x.
double potential(const AtomFieldModel& m, double x, double t);
/// -dV/dx at time t.
double force(const AtomFieldModel& m, double x, double t);

DerivedScales derived_scales(const AtomFieldModel& m);
double ionization_potential(const AtomFieldModel& m);

/// Location of the barrier top at peak field (x > 0).
double barrier_peak(const AtomFieldModel& m);

/// Roots of V(x, t0) = -I_p on x > 0, x_in < x_exit.
/// Throws NoBarrier for E0 <= 0 and OverBarrier when the barrier top is below -I_p.
BarrierGeometry barrier_points(const AtomFieldModel& m);

/// Field strength at which the barrier top touches -I_p.
double over_barrier_threshold(double Z);

}  // namespace tunnel
