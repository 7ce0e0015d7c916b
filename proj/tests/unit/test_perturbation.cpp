#include <doctest.h>

#include "fixtures.hpp"
#include "qim/entropy.hpp"
#include "qim/perturbation.hpp"

using namespace qim;

TEST_CASE("qubit cumulant and gibbs state") {
  const State phi = fx::half();
  const Hermitian h = fx::diag(1, -1);
  CHECK(cumulant(phi, h) == doctest::Approx(fx::kLogCosh1).epsilon(1e-15));
  const PerturbationResult p = perturb(phi, h);
  const double e = std::exp(1.0), ie = std::exp(-1.0);
  CHECK(distance(p.state.density(), fx::diag(e / (e + ie), ie / (e + ie))) < 1e-14);
  CHECK(p.mass == doctest::Approx(std::cosh(1.0)));
}

TEST_CASE("large observables do not overflow") {
  const State phi = fx::half();
  const double c = cumulant(phi, fx::diag(800, -800));
  CHECK(c == doctest::Approx(800 - std::log(2.0)));
  // The perturbed state is pure to working precision: rejected, not returned.
  CHECK_THROWS_AS(perturb(phi, fx::diag(800, -800)), ValidationError);
}

TEST_CASE("variational maximizer and inversion") {
  Rng rng(11);
  const BlockShape s({2, 2});
  const State phi = random_state(rng, s, 1.0);
  const Hermitian h = random_hermitian(rng, s, 1.0);
  const PerturbationResult p = perturb(phi, h);
  CHECK(std::abs(p.state.expect(h) - relative_entropy(p.state, phi).value - p.c) < 1e-12);
  CHECK(distance(perturb(p.state, -h).state.density(), phi.density()) < 1e-12);
  CHECK(cumulant(phi, h.shifted(2.5)) == doctest::Approx(p.c + 2.5).epsilon(1e-14));
}

TEST_CASE("modular oracle agrees with the density shortcut") {
  Rng rng(5);
  const BlockShape s({2, 1});
  const State phi = random_state(rng, s, 1.0);
  const Hermitian h = random_hermitian(rng, s, 1.0);
  const PerturbedVector xi = perturbed_vector_oracle(phi, h);
  CHECK(xi.mass == doctest::Approx(std::exp(cumulant(phi, h))).epsilon(1e-12));
  CHECK(distance(xi.functional(s) / xi.mass, perturb(phi, h).state.density()) < 1e-12);
}

TEST_CASE("gateaux derivative at the base point") {
  const State phi = State::diagonal(fx::qubit(), {0.75, 0.25});
  const Hermitian k = phi.center(fx::diag(1, -1));
  const DualFunctional d = gateaux_derivative(phi, Hermitian::zero(fx::qubit()));
  CHECK(d.density().frobenius_norm() < 1e-15);
  const double t = 1e-5;
  const double fd = (cumulant(phi, k * t) - cumulant(phi, k * -t)) / (2 * t);
  CHECK(fd == doctest::Approx(0.0).epsilon(1e-9));
}
