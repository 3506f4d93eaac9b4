#include "oracles.hpp"

#include "tunnel/observables.hpp"
#include "tunnel/spectrum.hpp"

#include <doctest.h>

#include <cmath>

using namespace tunnel;

namespace {

DetectorRecord synthetic(double position, double t_lo, double t_hi, double dt, auto current, auto density) {
  DetectorRecord r;
  r.position = position;
  for (double t = t_lo; t <= t_hi + 1e-9; t += dt) {
    r.times.push_back(t);
    r.current.push_back(current(t));
    r.density.push_back(density(t));
  }
  return r;
}

}  // namespace

TEST_SUITE("observables") {
  const AtomFieldModel model = AtomFieldModel::from_keldysh(1.0, 0.048, 0.25, 400.0);

  TEST_CASE("tau_A from a synthetic exit record") {
    const double x_exit = barrier_points(model).x_exit;
    const auto j = [&](double t) { return std::exp(-(t - model.t0 - 5.0) * (t - model.t0 - 5.0)); };
    const auto rho = [](double) { return 1.0; };
    const DetectorRecord r = synthetic(x_exit, 380.0, 420.0, 0.1, j, rho);
    CHECK(std::abs(tau_A(r, model, 0.1) - 5.0) < 1e-6);

    // Off-lattice peak: parabolic refinement within a few 1e-4.
    const auto j2 = [&](double t) { return std::exp(-(t - model.t0 - 5.037) * (t - model.t0 - 5.037)); };
    CHECK(std::abs(tau_A(synthetic(x_exit, 380.0, 420.0, 0.1, j2, rho), model, 0.1) - 5.037) < 1e-3);

    CHECK_THROWS_AS(tau_A(synthetic(x_exit - 1.0, 380.0, 420.0, 0.1, j, rho), model, 0.1), ConfigError);
    CHECK_THROWS_AS(tau_A(synthetic(x_exit, 380.0, 404.0, 0.1, j, rho), model, 0.1), WindowError);
  }

  TEST_CASE("tau_MT of a free Gaussian matches the moment formula") {
    const AtomFieldModel free(1e-12, 0.0, 1.0, 0.0);
    const Grid g = Grid::covering(-80.0, 80.0, 0.1);
    const double sigma_x = 2.0, sigma_p = 1.0 / (2.0 * sigma_x);
    const Wavefunction psi = oracle::sample_free_gaussian(g, 0.0, 0.0, 0.0, sigma_x);
    CHECK(tau_MT(psi, free) == doctest::Approx(1.0 / (std::sqrt(2.0) * sigma_p * sigma_p)).epsilon(1e-9));
  }

  TEST_CASE("tau_MT is undefined for an eigenstate") {
    const AtomFieldModel atom(1.0, 0.0, 1.0, 0.0);
    const EigenPair ground = ground_state(atom, Grid::covering(-100.0, 100.0, 0.1));
    CHECK_THROWS_AS(tau_MT(ground.state, atom), NumericalError);
  }

  TEST_CASE("window method on a plane wave") {
    const BarrierGeometry geom = barrier_points(model);
    const Grid g = Grid::covering(-100.0, 100.0, 0.1);
    const double p0 = 0.31;
    Wavefunction psi(g);
    for (Index i = 0; i < g.size(); ++i) psi.amps[i] = std::polar(1.0, p0 * g.x(i));
    const double p = exit_momentum_window(psi, geom);
    CHECK(std::abs(p - p0) < 0.5 / (geom.width() / 20.0));
    CHECK(std::abs(p - p0) < 1e-4);
  }

  TEST_CASE("flow method") {
    const auto constant = [](double) { return 0.7; };
    const auto stationary = [](double) { return 0.45 * 0.7; };
    CHECK(exit_momentum_flow(synthetic(7.0, 0.0, 10.0, 0.1, stationary, constant)) == doctest::Approx(0.45));

    const auto rho = [](double t) { return 0.1 + std::exp(-(t - 3.3) * (t - 3.3) / 2.0); };
    const auto j = [&](double t) { return 0.2 * rho(t); };
    CHECK(exit_momentum_flow(synthetic(7.0, 0.0, 10.0, 0.1, j, rho)) == doctest::Approx(0.2).epsilon(1e-12));
  }

  TEST_CASE("negative dip ratio") {
    const auto j = [](double t) { return std::exp(-(t - 3.0) * (t - 3.0)) - 0.3 * std::exp(-(t - 6.0) * (t - 6.0)); };
    const auto one = [](double) { return 1.0; };
    CHECK(negative_dip_ratio(synthetic(0.0, 0.0, 10.0, 0.01, j, one)) == doctest::Approx(0.3).epsilon(1e-3));
    const auto pos = [](double t) { return std::exp(-(t - 3.0) * (t - 3.0)); };
    CHECK(negative_dip_ratio(synthetic(0.0, 0.0, 10.0, 0.01, pos, one)) == 0.0);
  }

  TEST_CASE("report invariants are flagged, not clipped") {
    ObservableReport r;
    r.tau_A = 6.0;
    r.tau_MT = 5.0;
    r.check_invariants();
    CHECK(r.ok());

    r.tau_MT = 7.0;
    r.check_invariants();
    CHECK(r.status == "bound_violated");
    CHECK(r.tau_MT == 7.0);

    ObservableReport zero;
    zero.tau_A = 1.0;
    zero.tau_MT = 0.0;
    zero.check_invariants();
    CHECK_FALSE(zero.ok());
  }
}
