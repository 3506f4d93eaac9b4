#pragma once

// Independent reference computations used by the tests. None of these call into the
// library's numerical kernels: transforms are explicit sums, eigenproblems are dense.

#include "tunnel/atom_field.hpp"
#include "tunnel/grid.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>

namespace oracle {

using tunnel::cplx;

/// Periodic Fourier-grid Hamiltonian as a dense matrix, built from the closed-form
/// kinetic kernel t(d) = (1/n) sum_m (p_m^2/2) cos(2 pi m d / n).
inline Eigen::MatrixXd fourier_grid_hamiltonian(const tunnel::AtomFieldModel& m, const tunnel::Grid& g) {
  const Eigen::Index n = g.size();
  const double dp = 2.0 * std::numbers::pi / (static_cast<double>(n) * g.dx());
  Eigen::VectorXd kernel(n);
  for (Eigen::Index d = 0; d < n; ++d) {
    double sum = 0.0;
    for (Eigen::Index k = 0; k < n; ++k) {
      const Eigen::Index mk = k <= n / 2 ? k : k - n;  // Nyquist mode taken as -n/2; even in p
      const double p = static_cast<double>(mk) * dp;
      sum += 0.5 * p * p * std::cos(2.0 * std::numbers::pi * static_cast<double>(mk * d % n) / static_cast<double>(n));
    }
    kernel[d] = sum / static_cast<double>(n);
  }
  Eigen::MatrixXd h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = kernel[(i - j + n) % n];
  for (Eigen::Index i = 0; i < n; ++i) h(i, i) += tunnel::binding_potential(m, g.x(i));
  return h;
}

/// Normalized free Gaussian packet centred at x0 with momentum p0, position std sigma,
/// evolved analytically for time t.
inline cplx free_gaussian(double x, double t, double x0, double p0, double sigma) {
  const cplx spread(1.0, t / (2.0 * sigma * sigma));
  const double norm = std::pow(2.0 * std::numbers::pi * sigma * sigma, -0.25);
  const double shift = x - x0 - p0 * t;
  return norm / std::sqrt(spread) *
         std::exp(-shift * shift / (4.0 * sigma * sigma * spread) + cplx(0.0, p0 * (x - 0.5 * p0 * t)));
}

inline tunnel::Wavefunction sample_free_gaussian(const tunnel::Grid& g, double t, double x0, double p0,
                                                 double sigma) {
  tunnel::Wavefunction psi(g);
  for (Eigen::Index i = 0; i < g.size(); ++i) psi.amps[i] = free_gaussian(g.x(i), t, x0, p0, sigma);
  return psi;
}

/// Exact probability current of a free Gaussian at t = 0: p0 |psi|^2.
inline double gaussian_current(double x, double x0, double p0, double sigma) {
  return p0 * std::norm(free_gaussian(x, 0.0, x0, p0, sigma));
}

/// Direct-sum transform |dx/sqrt(2 pi) sum_j psi_j exp(-i p x_j)|^2.
inline double momentum_density_direct(const tunnel::Wavefunction& psi, double p) {
  cplx sum(0.0, 0.0);
  for (Eigen::Index j = 0; j < psi.grid.size(); ++j) sum += psi.amps[j] * std::polar(1.0, -p * psi.grid.x(j));
  return std::norm(sum * psi.grid.dx() / std::sqrt(2.0 * std::numbers::pi));
}

/// Composite Simpson rule on [a, b] with 2*half_panels subintervals.
template <typename F>
double simpson(F f, double a, double b, int half_panels = 20000) {
  const int n = 2 * half_panels;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Root of f on [a, b] by plain bisection (f(a), f(b) of opposite sign).
template <typename F>
double bisect(F f, double a, double b, double tol = 1e-14) {
  double fa = f(a);
  while (b - a > tol) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0.0) == (fa < 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

/// Maximum of a unimodal f on [a, b] by a fine scan followed by golden-section search.
template <typename F>
double maximize(F f, double a, double b) {
  const int scan = 4000;
  double best = a;
  for (int i = 0; i <= scan; ++i) {
    const double x = a + (b - a) * i / scan;
    if (f(x) > f(best)) best = x;
  }
  double lo = std::max(a, best - (b - a) / scan), hi = std::min(b, best + (b - a) / scan);
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  while (hi - lo > 1e-12) {
    const double c = hi - r * (hi - lo), d = lo + r * (hi - lo);
    (f(c) > f(d) ? hi : lo) = (f(c) > f(d) ? d : c);
  }
  return 0.5 * (lo + hi);
}

}  // namespace oracle
