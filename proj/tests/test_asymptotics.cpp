#include "oracles.hpp"

#include "tunnel/asymptotics.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace tunnel;

namespace {

const std::vector<EigenPair>& levels_on(const Grid& g) {
  static const std::vector<EigenPair> levels =
      embed_states(bound_states(AtomFieldModel(1.0, 0.0, 1.0, 0.0), Grid::covering(-100.0, 100.0, 0.1)), g);
  return levels;
}

const Grid& wide() {
  static const Grid g = Grid::covering(-200.0, 200.0, 0.1);
  return g;
}

}  // namespace

TEST_SUITE("asymptotics") {
  TEST_CASE("bound-state projection") {
    const auto& levels = levels_on(wide());

    const Wavefunction none = project_out_bound(levels.front().state, levels);
    CHECK(std::sqrt(none.norm_squared()) < 1e-10);

    const Wavefunction far = oracle::sample_free_gaussian(wide(), 0.0, 150.0, 0.5, 3.0);
    CHECK(std::sqrt((project_out_bound(far, levels).amps - far.amps).squaredNorm() * wide().dx()) < 1e-10);

    Wavefunction mix = oracle::sample_free_gaussian(wide(), 0.0, 4.0, 0.8, 2.0);
    mix.amps += cplx(0.3, 0.2) * levels[0].state.amps + 0.5 * levels[3].state.amps;
    mix.normalize();
    const Wavefunction once = project_out_bound(mix, levels);
    const Wavefunction twice = project_out_bound(once, levels);
    CHECK(std::sqrt((twice.amps - once.amps).squaredNorm() * wide().dx()) < 1e-12);

    double bound_weight = 0.0;
    for (const auto& l : levels) bound_weight += std::norm(inner_product(l.state, mix));
    CHECK(once.norm_squared() == doctest::Approx(1.0 - bound_weight).epsilon(1e-10));

    CHECK_THROWS_AS(project_out_bound(Wavefunction(Grid::covering(-50.0, 50.0, 0.1)), levels), GridMismatch);
  }

  TEST_CASE("most probable momentum of a free packet") {
    const double p1 = 1.37;
    const Wavefunction packet = oracle::sample_free_gaussian(wide(), 0.0, 120.0, p1, 6.0);
    CHECK(std::abs(most_probable_momentum(packet) - p1) < wide().dp());
    CHECK_THROWS_AS(most_probable_momentum(Wavefunction(wide())), NumericalError);
  }

  TEST_CASE("analytic half-pulse impulse without Coulomb force") {
    const AtomFieldModel m(1e-12, 0.048, 0.012, 300.0);
    const ClassicalState s = classical_trajectory({0.0, 0.0, m.t0}, m, m.t0 + 1.0);
    const double expected = m.E0 * std::sqrt(2.0 * std::numbers::pi) / (2.0 * m.omega);
    CHECK(s.p == doctest::Approx(expected).epsilon(1e-9));
    // Quadrature cross-check of the same impulse.
    const double quad = oracle::simpson([&](double t) { return field(m, t); }, m.t0, m.t0 + 4000.0, 200000);
    CHECK(expected == doctest::Approx(quad).epsilon(1e-10));
  }

  TEST_CASE("free motion keeps its momentum") {
    const AtomFieldModel m(1.0, 0.0, 1.0, 0.0);
    const ClassicalState s = integrate_newton({1e7, 0.8, 0.0}, m, 500.0);
    CHECK(s.p == doctest::Approx(0.8).epsilon(1e-10));
    CHECK(s.x == doctest::Approx(1e7 + 400.0).epsilon(1e-12));
  }

  TEST_CASE("trajectory self-convergence") {
    const AtomFieldModel m = AtomFieldModel::from_keldysh(1.0, 0.048, 0.25, 0.0);
    const BarrierGeometry geom = barrier_points(m);
    const double t_end = 8.0 / m.omega;
    TrajectoryOptions fine;
    fine.dt = 0.05 / 4.0;
    const ClassicalState a = classical_trajectory({geom.x_exit, 0.0, 0.0}, m, t_end);
    const ClassicalState b = classical_trajectory({geom.x_exit, 0.0, 0.0}, m, t_end, fine);
    CHECK(std::abs(a.p - b.p) < 1e-6);
    CHECK(a.p > 0.0);
  }

  TEST_CASE("tau_2 inverts the forward map") {
    const AtomFieldModel m = AtomFieldModel::from_keldysh(1.0, 0.048, 0.25, 100.0);
    const BarrierGeometry geom = barrier_points(m);
    const double t_end = m.t0 + 8.0 / m.omega;
    const double at_peak = classical_trajectory({geom.x_exit, 0.0, m.t0}, m, t_end).p;
    CHECK(std::abs(tau_2(at_peak, geom, m, t_end)) < 1e-6);
    const double later = classical_trajectory({geom.x_exit, 0.0, m.t0 + 10.0}, m, t_end).p;
    CHECK(std::abs(tau_2(later, geom, m, t_end) - 10.0) < 1e-5);
    CHECK_THROWS_AS(tau_2(1e3, geom, m, t_end), NumericalError);
  }

  TEST_CASE("closed-form sub-barrier times") {
    const AtomFieldModel weak(1.0, 1e-12, 1.0, 0.0);
    CHECK(wigner_closed_form(weak, 1) == doctest::Approx(14.29).epsilon(1e-10));
    CHECK(wigner_closed_form(weak, 3) == doctest::Approx(9.0).epsilon(1e-10));
    CHECK(wigner_closed_form(AtomFieldModel(1.0, 1.0 / 16.0, 1.0, 0.0), 1) == 0.0);
    CHECK(wigner_closed_form(AtomFieldModel(1.0, 0.048, 1.0, 0.0), 1) ==
          doctest::Approx(14.29 * std::sqrt(1.0 - 16.0 * 0.048)).epsilon(1e-14));
    CHECK(wigner_closed_form(AtomFieldModel(2.0, 8.0 * 0.048, 1.0, 0.0), 3) ==
          doctest::Approx(9.0 * std::sqrt(1.0 - 9.5 * 0.048) / 4.0).epsilon(1e-14));
    CHECK(wigner_closed_form(AtomFieldModel(2.0, 8e-12, 1.0, 0.0), 1) == doctest::Approx(14.29 / 4.0));
    CHECK_THROWS_AS(wigner_closed_form(AtomFieldModel(1.0, 0.07, 1.0, 0.0), 1), ConfigError);
    CHECK_THROWS_AS(wigner_closed_form(weak, 2), ConfigError);
  }
}
