#pragma once

#include "tunnel/errors.hpp"

#include <Eigen/Core>

#include <complex>
#include <span>

namespace tunnel {

using cplx = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Uniform 1D lattice x_i = x_min + i*dx, i = 0..n-1, with dx = (x_max - x_min)/(n - 1).
///
/// n is a power of two (>= 16) and the box straddles the origin. Spectral
/// operations treat the lattice as periodic with period n*dx.
class Grid {
 public:
  Grid(double x_min, double x_max, Index n);

  /// Lattice anchored at the origin (x = 0 is a node) covering at least [x_lo, x_hi].
  /// The point count is rounded up to a power of two by extending to the right.
  static Grid covering(double x_lo, double x_hi, double dx);

  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }
  Index size() const { return n_; }
  double dx() const { return dx_; }
  double x(Index i) const { return x_min_ + static_cast<double>(i) * dx_; }
  /// Momentum spacing of the periodic transform, 2*pi/(n*dx).
  double dp() const;

  RealVector positions() const;
  /// Angular wavenumbers in FFT storage order (0, dp, ..., -dp).
  RealVector fft_momenta() const;

  /// Index of the node closest to x; throws ConfigError if x lies outside the box.
  Index nearest_index(double x) const;

  /// Same spacing and node positions, with `left` and `right` extra nodes appended.
  /// The result must again have a power-of-two size.
  Grid extended(Index left, Index right) const;

  /// Node offset such that this->x(i) == other.x(i + offset); throws if lattices differ.
  Index offset_in(const Grid& other) const;

  bool operator==(const Grid& other) const;

 private:
  double x_min_;
  double x_max_;
  Index n_;
  double dx_;
};

/// Complex amplitudes on a Grid, in a.u.^{-1/2}.
struct Wavefunction {
  Grid grid;
  ComplexVector amps;

  explicit Wavefunction(const Grid& g) : grid(g), amps(ComplexVector::Zero(g.size())) {}
  Wavefunction(const Grid& g, ComplexVector a);

  double norm_squared() const { return amps.squaredNorm() * grid.dx(); }
  /// Rescales to unit norm; throws NumericalError for a zero or non-finite state.
  Wavefunction& normalize();

  /// Copy onto a larger (or equal) grid sharing the same lattice; new nodes are zero.
  Wavefunction embedded_in(const Grid& target) const;
  /// Copy onto a smaller grid sharing the same lattice, dropping nodes outside it.
  Wavefunction restricted_to(const Grid& target) const;
};

/// |psi~(p)|^2 on an ascending momentum axis.
struct MomentumDistribution {
  RealVector p_values;
  RealVector density;

  double dp() const { return p_values.size() > 1 ? p_values[1] - p_values[0] : 0.0; }
  double integral() const { return density.sum() * dp(); }
};

/// sum_i conj(a_i) b_i dx on a shared grid.
template <typename DerivedA, typename DerivedB>
auto grid_dot(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b, double dx) {
  return a.dot(b) * dx;
}

/// <a|b>. Throws GridMismatch when the grids differ.
cplx inner_product(const Wavefunction& a, const Wavefunction& b);

/// j = Im(psi_i^* (psi_{i+1} - psi_{i-1}) / (2 dx)); valid for 1 <= index <= n-2.
double probability_current(const Wavefunction& psi, Index index);
/// |psi_i|^2.
double probability_density(const Wavefunction& psi, Index index);

/// Unitary transform psi~(p) = dx/sqrt(2 pi) sum_j psi_j exp(-i p x_j) sampled on [-pi/dx, pi/dx).
MomentumDistribution momentum_distribution(const Wavefunction& psi);

/// Vertex of the parabola through the discrete maximum of `samples` and its two neighbours.
/// Throws WindowError if the maximum sits on either end of the series.
double argmax_refined(std::span<const double> samples, std::span<const double> coords);

inline double argmax_refined(const RealVector& samples, const RealVector& coords) {
  return argmax_refined(std::span<const double>(samples.data(), static_cast<std::size_t>(samples.size())),
                        std::span<const double>(coords.data(), static_cast<std::size_t>(coords.size())));
}

/// Index of the largest sample, together with the refined coordinate.
struct RefinedPeak {
  std::size_t index;
  double coord;
};
RefinedPeak refined_peak(std::span<const double> samples, std::span<const double> coords);

}  // namespace tunnel
