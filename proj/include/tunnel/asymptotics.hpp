#pragma once

#include "tunnel/atom_field.hpp"
#include "tunnel/grid.hpp"
#include "tunnel/spectrum.hpp"

#include <limits>
#include <vector>

namespace tunnel {

/// Point of a classical electron trajectory.
struct ClassicalState {
  double x;
  double p;
  double t;
};

/// psi - sum_k <phi_k|psi> phi_k. All states must share psi's grid.
Wavefunction project_out_bound(const Wavefunction& psi, const std::vector<EigenPair>& bound);

/// Re-expresses eigenpairs computed on a smaller box on a larger lattice-aligned grid.
std::vector<EigenPair> embed_states(const std::vector<EigenPair>& states, const Grid& target);

/// Peak of |psi~(p)|^2, refined; throws NumericalError if the state is (almost) empty.
double most_probable_momentum(const Wavefunction& psi_free);

struct TrajectoryOptions {
  double dt = 0.05;
  /// Beyond this distance (and after t_end) the Coulomb force is dropped.
  double coulomb_cutoff = 500.0;
  /// Falling below this position raises Recaptured; NaN disables the check.
  double recapture_below = std::numeric_limits<double>::quiet_NaN();
  /// Give up waiting for |x| > coulomb_cutoff after this much extra time.
  double max_extra_time = 1.0e5;
};

/// RK4 integration of x'' = -dV/dx(x, t) from s0 up to t_end (no tail correction).
ClassicalState integrate_newton(const ClassicalState& s0, const AtomFieldModel& m, double t_end,
                                const TrajectoryOptions& opts = {});

/// Asymptotic state: RK4 up to t_end (continued field-driven until |x| passes the
/// Coulomb cutoff), then the remaining field impulse added in closed form.
ClassicalState classical_trajectory(const ClassicalState& s0, const AtomFieldModel& m, double t_end,
                                    const TrajectoryOptions& opts = {});

/// Exit-time delay that reproduces p_fq for an electron released at rest at x_exit.
/// Searches exit times in [t0 - 3 tau_E, t0 + 3 tau_E] to 1e-6 a.u.; trajectories
/// that are recaptured are excluded from the bracket. `t_end` is the instant at which
/// the quantum distribution was taken.
double tau_2(double p_fq, const BarrierGeometry& geom, const AtomFieldModel& m, double t_end,
             const TrajectoryOptions& opts = {});

/// Closed-form under-barrier Wigner times: 14.29 sqrt(1 - 16 E0/Z^3)/Z^2 (dim 1) and
/// 9.0 sqrt(1 - 9.5 E0/Z^3)/Z^2 (dim 3).
double wigner_closed_form(const AtomFieldModel& m, int dim);

}  // namespace tunnel
