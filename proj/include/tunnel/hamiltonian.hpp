#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/fft.hpp"
#include "tunnel/grid.hpp"

namespace tunnel {

/// H = -1/2 d^2/dx^2 + V(x) on a periodic grid: kinetic energy applied
/// spectrally, potential pointwise.
class GridHamiltonian {
 public:
  GridHamiltonian(const Grid& grid, RealVector potential);

  /// Field-free H_0 of the atom.
  static GridHamiltonian field_free(const AtomFieldModel& m, const Grid& grid);
  /// H(t) with the field frozen at time t.
  static GridHamiltonian at_time(const AtomFieldModel& m, const Grid& grid, double t);

  const Grid& grid() const { return grid_; }
  const RealVector& potential() const { return potential_; }
  /// p^2/2 in FFT storage order.
  const RealVector& kinetic_spectrum() const { return kinetic_; }

  ComplexVector apply(const ComplexVector& amps) const;
  Wavefunction apply(const Wavefunction& psi) const;
  /// T psi only.
  ComplexVector apply_kinetic(const ComplexVector& amps) const;

  /// <psi|H|psi> (real part) for the given amplitudes.
  double expectation(const Wavefunction& psi) const;

 private:
  Grid grid_;
  RealVector potential_;
  RealVector kinetic_;
  Fft fft_;
};

}  // namespace tunnel
