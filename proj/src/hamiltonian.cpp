#include "tunnel/hamiltonian.hpp"

namespace tunnel {

GridHamiltonian::GridHamiltonian(const Grid& grid, RealVector potential)
    : grid_(grid), potential_(std::move(potential)), fft_(grid.size()) {
  if (potential_.size() != grid_.size()) throw GridMismatch("GridHamiltonian: potential does not match grid");
  kinetic_ = 0.5 * grid_.fft_momenta().array().square();
}

GridHamiltonian GridHamiltonian::field_free(const AtomFieldModel& m, const Grid& grid) {
  return at_time(m.field_free(), grid, m.t0);
}

GridHamiltonian GridHamiltonian::at_time(const AtomFieldModel& m, const Grid& grid, double t) {
  const RealVector x = grid.positions();
  return GridHamiltonian(grid, x.unaryExpr([&](double xi) { return tunnel::potential(m, xi, t); }));
}

ComplexVector GridHamiltonian::apply_kinetic(const ComplexVector& amps) const {
  ComplexVector work = amps;
  fft_.forward(work);
  work.array() *= kinetic_.array().cast<cplx>() / static_cast<double>(grid_.size());
  fft_.inverse(work);
  return work;
}

ComplexVector GridHamiltonian::apply(const ComplexVector& amps) const {
  ComplexVector out = apply_kinetic(amps);
  out.array() += potential_.array().cast<cplx>() * amps.array();
  return out;
}

Wavefunction GridHamiltonian::apply(const Wavefunction& psi) const {
  if (!(psi.grid == grid_)) throw GridMismatch("GridHamiltonian::apply: grid mismatch");
  return Wavefunction(grid_, apply(psi.amps));
}

double GridHamiltonian::expectation(const Wavefunction& psi) const {
  return std::real(inner_product(psi, apply(psi)));
}

}  // namespace tunnel
