#include "tunnel/spectrum.hpp"

#include "tunnel/hamiltonian.hpp"

#include <cmath>
#include <string>

namespace tunnel {

namespace {

void deflate(ComplexVector& v, const std::vector<EigenPair>& lower, double dx) {
  // Two Gram-Schmidt passes keep the overlap at rounding level.
  for (int pass = 0; pass < 2; ++pass)
    for (const auto& e : lower) v -= grid_dot(e.state.amps, v, dx) * e.state.amps;
}

ComplexVector initial_guess(const Grid& g, std::size_t level, double Z) {
  const RealVector x = g.positions();
  const double width = 2.0 * static_cast<double>(level + 1) / Z;
  ComplexVector v(g.size());
  for (Index i = 0; i < g.size(); ++i) {
    const double s = x[i] / width;
    const double parity = (level % 2 == 0) ? 1.0 : s;
    v[i] = parity * std::exp(-0.5 * s * s);
  }
  return v;
}

// Semi-implicit imaginary-time flow psi <- psi - tau (1 + tau T)^{-1} (H - E) psi,
// renormalized each step. Its fixed points are exact eigenvectors of the grid H.
EigenPair relax(const GridHamiltonian& h, ComplexVector v, const std::vector<EigenPair>& lower,
                const RelaxationOptions& opts, double Z) {
  const Grid& g = h.grid();
  const double dx = g.dx();
  const double tau = opts.step / (Z * Z);
  const RealVector precond = (1.0 + tau * h.kinetic_spectrum().array()).inverse();
  Fft fft(g.size());

  deflate(v, lower, dx);
  v /= std::sqrt(v.squaredNorm() * dx);
  double energy = std::real(grid_dot(v, h.apply(v), dx));

  for (long it = 0; it < opts.max_iterations; ++it) {
    ComplexVector r = h.apply(v);
    energy = std::real(grid_dot(v, r, dx));
    r -= energy * v;
    const double residual = std::sqrt(r.squaredNorm() * dx);
    if (!std::isfinite(residual)) throw NumericalError("imaginary-time relaxation produced a non-finite state");

    fft.forward(r);
    r.array() *= precond.array().cast<cplx>() / static_cast<double>(g.size());
    fft.inverse(r);
    v -= tau * r;
    deflate(v, lower, dx);
    v /= std::sqrt(v.squaredNorm() * dx);

    const double next = std::real(grid_dot(v, h.apply(v), dx));
    if (residual < opts.residual_tolerance && std::abs(next - energy) < opts.energy_tolerance) {
      energy = next;
      break;
    }
    if (it + 1 == opts.max_iterations)
      throw ConvergenceError("imaginary-time relaxation did not converge (level " + std::to_string(lower.size()) +
                             ", residual " + std::to_string(residual) + ")");
  }

  // Fix the global phase: real, positive at the largest-magnitude node.
  Index peak = 0;
  v.cwiseAbs().maxCoeff(&peak);
  v *= std::abs(v[peak]) / v[peak];
  v = v.real().cast<cplx>();
  v /= std::sqrt(v.squaredNorm() * dx);
  return EigenPair{energy, Wavefunction(g, std::move(v))};
}

double edge_amplitude(const Wavefunction& psi) {
  return std::max(std::abs(psi.amps[0]), std::abs(psi.amps[psi.amps.size() - 1]));
}

}  // namespace

EigenPair ground_state(const AtomFieldModel& m, const Grid& g, const RelaxationOptions& opts) {
  const GridHamiltonian h = GridHamiltonian::field_free(m, g);
  return relax(h, initial_guess(g, 0, m.Z), {}, opts, m.Z);
}

std::vector<EigenPair> bound_states(const AtomFieldModel& m, const Grid& g, const RelaxationOptions& opts) {
  const GridHamiltonian h = GridHamiltonian::field_free(m, g);
  std::vector<EigenPair> levels;
  while (levels.size() < opts.max_states) {
    EigenPair next = relax(h, initial_guess(g, levels.size(), m.Z), levels, opts, m.Z);
    if (!(next.energy < 0.0) || edge_amplitude(next.state) >= opts.edge_amplitude) break;
    levels.push_back(std::move(next));
  }
  return levels;
}

double ground_momentum_width(const EigenPair& pair) {
  const MomentumDistribution md = momentum_distribution(pair.state);
  const double norm = md.density.sum();
  const double mean = md.density.dot(md.p_values) / norm;
  const double second = md.density.dot(md.p_values.cwiseAbs2()) / norm;
  return std::sqrt(second - mean * mean);
}

double eigen_residual(const AtomFieldModel& m, const EigenPair& pair) {
  const GridHamiltonian h = GridHamiltonian::field_free(m, pair.state.grid);
  const ComplexVector r = h.apply(pair.state.amps) - pair.energy * pair.state.amps;
  return std::sqrt(r.squaredNorm() * pair.state.grid.dx());
}

}  // namespace tunnel
