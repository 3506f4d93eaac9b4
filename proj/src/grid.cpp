#include "tunnel/grid.hpp"

#include "tunnel/fft.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <string>

namespace tunnel {

namespace {

bool is_power_of_two(Index n) { return n > 0 && std::has_single_bit(static_cast<unsigned long long>(n)); }

}  // namespace

Grid::Grid(double x_min, double x_max, Index n)
    : x_min_(x_min), x_max_(x_max), n_(n), dx_((x_max - x_min) / static_cast<double>(n - 1)) {
  if (n < 16 || !is_power_of_two(n))
    throw ConfigError("Grid: point count must be a power of two >= 16, got " + std::to_string(n));
  if (!(x_min < 0.0 && 0.0 < x_max))
    throw ConfigError("Grid: box must straddle the origin");
}

Grid Grid::covering(double x_lo, double x_hi, double dx) {
  if (!(dx > 0.0)) throw ConfigError("Grid::covering: dx must be positive");
  if (!(x_lo < 0.0 && 0.0 < x_hi)) throw ConfigError("Grid::covering: box must straddle the origin");
  const auto left = static_cast<Index>(std::ceil(-x_lo / dx - 1e-9));
  const auto right = static_cast<Index>(std::ceil(x_hi / dx - 1e-9));
  const auto n = static_cast<Index>(std::bit_ceil(static_cast<unsigned long long>(std::max<Index>(left + right + 1, 16))));
  const double x_min = -static_cast<double>(left) * dx;
  return Grid(x_min, x_min + static_cast<double>(n - 1) * dx, n);
}

double Grid::dp() const { return 2.0 * std::numbers::pi / (static_cast<double>(n_) * dx_); }

RealVector Grid::positions() const {
  return RealVector::LinSpaced(n_, 0.0, static_cast<double>(n_ - 1)).array() * dx_ + x_min_;
}

RealVector Grid::fft_momenta() const {
  RealVector p(n_);
  const double step = dp();
  for (Index k = 0; k < n_; ++k) p[k] = step * static_cast<double>(k < n_ / 2 ? k : k - n_);
  return p;
}

Index Grid::nearest_index(double x) const {
  const double s = (x - x_min_) / dx_;
  if (!(s > -0.5 && s < static_cast<double>(n_) - 0.5))
    throw ConfigError("Grid: position " + std::to_string(x) + " outside the box");
  return static_cast<Index>(std::lround(s));
}

Grid Grid::extended(Index left, Index right) const {
  const double lo = x_min_ - static_cast<double>(left) * dx_;
  const Index n = n_ + left + right;
  return Grid(lo, lo + static_cast<double>(n - 1) * dx_, n);
}

Index Grid::offset_in(const Grid& other) const {
  if (std::abs(dx_ - other.dx_) > 1e-12 * dx_) throw GridMismatch("Grid: spacings differ");
  const double s = (x_min_ - other.x_min_) / dx_;
  const auto off = static_cast<Index>(std::lround(s));
  if (std::abs(s - static_cast<double>(off)) > 1e-6) throw GridMismatch("Grid: lattices are not aligned");
  return off;
}

bool Grid::operator==(const Grid& other) const {
  return n_ == other.n_ && std::abs(x_min_ - other.x_min_) <= 1e-12 * std::max(1.0, std::abs(x_min_)) &&
         std::abs(dx_ - other.dx_) <= 1e-12 * dx_;
}

Wavefunction::Wavefunction(const Grid& g, ComplexVector a) : grid(g), amps(std::move(a)) {
  if (amps.size() != grid.size()) throw GridMismatch("Wavefunction: amplitude count does not match grid");
}

Wavefunction& Wavefunction::normalize() {
  const double n2 = norm_squared();
  if (!(n2 > 0.0) || !std::isfinite(n2)) throw NumericalError("Wavefunction::normalize: zero or non-finite norm");
  amps /= std::sqrt(n2);
  return *this;
}

Wavefunction Wavefunction::embedded_in(const Grid& target) const {
  const Index off = grid.offset_in(target);
  if (off < 0 || off + grid.size() > target.size()) throw GridMismatch("embedded_in: target grid is too small");
  Wavefunction out(target);
  out.amps.segment(off, grid.size()) = amps;
  return out;
}

Wavefunction Wavefunction::restricted_to(const Grid& target) const {
  const Index off = target.offset_in(grid);
  if (off < 0 || off + target.size() > grid.size()) throw GridMismatch("restricted_to: target grid is too large");
  return Wavefunction(target, amps.segment(off, target.size()));
}

cplx inner_product(const Wavefunction& a, const Wavefunction& b) {
  if (!(a.grid == b.grid)) throw GridMismatch("inner_product: wavefunctions live on different grids");
  return grid_dot(a.amps, b.amps, a.grid.dx());
}

double probability_current(const Wavefunction& psi, Index index) {
  if (index < 1 || index > psi.grid.size() - 2)
    throw ConfigError("probability_current: index " + std::to_string(index) + " has no two neighbours");
  const cplx derivative = (psi.amps[index + 1] - psi.amps[index - 1]) / (2.0 * psi.grid.dx());
  return std::imag(std::conj(psi.amps[index]) * derivative);
}

double probability_density(const Wavefunction& psi, Index index) { return std::norm(psi.amps[index]); }

MomentumDistribution momentum_distribution(const Wavefunction& psi) {
  const Grid& g = psi.grid;
  const Index n = g.size();
  ComplexVector work = psi.amps;
  Fft(n).forward(work);
  const double scale = g.dx() * g.dx() / (2.0 * std::numbers::pi);
  MomentumDistribution out{RealVector(n), RealVector(n)};
  const double dp = g.dp();
  // fftshift: storage index k holds momentum k*dp for k < n/2 and (k-n)*dp otherwise.
  for (Index j = 0; j < n; ++j) {
    const Index k = (j + n / 2) % n;
    out.p_values[j] = dp * static_cast<double>(j - n / 2);
    out.density[j] = std::norm(work[k]) * scale;
  }
  return out;
}

RefinedPeak refined_peak(std::span<const double> samples, std::span<const double> coords) {
  if (samples.size() < 3) throw ConfigError("argmax_refined: need at least three samples");
  if (samples.size() != coords.size()) throw ConfigError("argmax_refined: samples and coordinates differ in length");
  const auto it = std::max_element(samples.begin(), samples.end());
  const auto k = static_cast<std::size_t>(it - samples.begin());
  if (k == 0 || k + 1 == samples.size()) throw WindowError("argmax_refined: maximum at the edge of the series");

  const double x0 = coords[k - 1], x1 = coords[k], x2 = coords[k + 1];
  const double y0 = samples[k - 1], y1 = samples[k], y2 = samples[k + 1];
  // Vertex of the interpolating parabola (general, possibly non-uniform abscissae).
  const double d01 = (y1 - y0) / (x1 - x0);
  const double d12 = (y2 - y1) / (x2 - x1);
  const double curvature = (d12 - d01) / (x2 - x0);
  if (curvature >= 0.0) return {k, x1};  // flat top
  return {k, 0.5 * (x0 + x1) - d01 / (2.0 * curvature)};
}

double argmax_refined(std::span<const double> samples, std::span<const double> coords) {
  return refined_peak(samples, coords).coord;
}

}  // namespace tunnel
