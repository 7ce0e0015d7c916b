#include <doctest.h>

#include "fixtures.hpp"
#include "qim/duality.hpp"
#include "qim/entropy.hpp"

using namespace qim;

TEST_CASE("qubit conjugate against the entropy closed form") {
  const State phi = fx::half();
  const Hermitian v = fx::diag(std::tanh(1.0) / 2, -std::tanh(1.0) / 2);
  const ConjugateValue c = cumulant_conjugate(phi, DualFunctional(v));
  CHECK(std::abs(c.value - fx::kConjugateQubit) < 1e-9);
  CHECK(distance(c.maximizer, fx::diag(1, -1)) < 1e-5);
  const ConjugateValue d = conjugate(YoungFunction::phi0(phi), v);
  CHECK(std::abs(d.value - fx::kConjugateQubit) < 1e-9);
}

TEST_CASE("phi0 conjugate domain") {
  const State phi = fx::half();
  CHECK(conjugate(YoungFunction::phi0(phi), fx::diag(0.6, -0.6)).infinite);
  CHECK_FALSE(conjugate(YoungFunction::phi0(phi), fx::diag(0.4, -0.4)).infinite);
}

TEST_CASE("qubit psi decomposition") {
  const Decomposition d = psi_decompose(fx::half(), DualFunctional(fx::diag(0.5, -0.5)));
  CHECK_FALSE(d.infinite);
  CHECK(std::abs(d.psi_value - fx::kPsiQubit) < 1e-9);
  CHECK(distance(d.omega1.density(), fx::diag(0.75, 0.25)) < 1e-7);
  CHECK(distance(d.omega2.density(), fx::diag(0.25, 0.75)) < 1e-7);
  CHECK(psi_decompose(fx::half(), DualFunctional(fx::diag(1.5, -1.5))).infinite);
}

TEST_CASE("boundary of the psi domain is the jordan split") {
  const Decomposition d = psi_decompose(fx::half(), DualFunctional(fx::diag(1.0, -1.0)));
  CHECK_FALSE(d.infinite);
  CHECK(d.psi_value == doctest::Approx(2 * std::log(2.0)));
  const auto [p, m] = jordan_split(fx::diag(1.0, -1.0));
  CHECK(distance(p.density(), d.omega1.density()) < 1e-12);
  CHECK(distance(m.density(), d.omega2.density()) < 1e-12);
}

TEST_CASE("qubit dual norm, direct and amemiya") {
  const State phi = fx::half();
  const DualNorm n = dual_norm(YoungFunction::phi(phi), fx::diag(1, -1));
  CHECK_FALSE(n.flagged);
  CHECK(std::abs(n.value - n.amemiya) < 1e-6);
  // Lemma sandwich against the primal norm of the same element.
  const double primal = luxemburg_norm(YoungFunction::phi(phi), fx::diag(1, -1)).value;
  CHECK(n.value >= primal * 2 - 1e-6);  // pairing of diag(1,-1) with itself is 2
}

TEST_CASE("psi conjugacy on a random state") {
  Rng rng(4);
  const BlockShape s({2, 2});
  const State phi = random_state(rng, s, 0.5);
  const DualFunctional v = random_dual(rng, s, 0.3);
  const Decomposition d = psi_decompose(phi, v);
  REQUIRE_FALSE(d.infinite);
  const ConjugateValue c = conjugate(YoungFunction::phi0(phi), v.density() * 0.5);
  CHECK(std::abs(d.psi_value - 2 * c.value) < 1e-6);
}
