#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/grid.hpp"

#include <vector>

namespace tunnel {

struct EigenPair {
  double energy;
  Wavefunction state;  // normalized, real up to a global phase
};

/// Controls for imaginary-time relaxation.
struct RelaxationOptions {
  /// Imaginary-time step in units of 1/Z^2.
  double step = 1.0;
  double energy_tolerance = 1e-12;
  double residual_tolerance = 1e-9;
  long max_iterations = 400000;
  /// States with |psi| >= this at either box edge are box-discretized continuum.
  double edge_amplitude = 1e-6;
  std::size_t max_states = 64;
};

/// Lowest eigenpair of the field-free grid Hamiltonian, by imaginary-time relaxation.
/// Throws ConvergenceError when the iteration budget runs out.
EigenPair ground_state(const AtomFieldModel& m, const Grid& g, const RelaxationOptions& opts = {});

/// All bound eigenpairs (E < 0, localized inside the box), ascending in energy.
std::vector<EigenPair> bound_states(const AtomFieldModel& m, const Grid& g, const RelaxationOptions& opts = {});

/// sqrt(<p^2> - <p>^2) of the state's momentum density.
double ground_momentum_width(const EigenPair& pair);

/// ||H psi - E psi|| for the field-free Hamiltonian.
double eigen_residual(const AtomFieldModel& m, const EigenPair& pair);

}  // namespace tunnel
