#include <doctest.h>

#include "fixtures.hpp"
#include "qim/orlicz.hpp"

using namespace qim;

TEST_CASE("qubit young values") {
  const State phi = fx::half();
  const Hermitian x = fx::diag(1, -1);
  CHECK(young_eval(YoungFunction::phi(phi), x) == doctest::Approx(std::cosh(1.0) - 1.0));
  CHECK(young_eval(YoungFunction::phi0(phi), x) == doctest::Approx(fx::kLogCosh1));
}

TEST_CASE("qubit luxemburg closed forms") {
  const State phi = fx::half();
  const Hermitian x = fx::diag(1, -1);
  CHECK(std::abs(luxemburg_norm(YoungFunction::phi(phi), x).value - fx::kInvAcosh2) < 1e-9);
  CHECK(std::abs(luxemburg_norm(YoungFunction::phi0(phi), x).value - fx::kInvAcoshE) < 1e-9);
  CHECK(luxemburg_norm(YoungFunction::phi(phi), Hermitian::zero(fx::qubit())).value == 0.0);
}

TEST_CASE("centering and domains") {
  const State phi = State::diagonal(fx::qubit(), {0.75, 0.25});
  bool projected = false;
  const Hermitian c = conform(YoungFunction::phi0(phi), fx::diag(1, 0), &projected);
  CHECK(projected);
  CHECK(std::abs(phi.expect(c)) < 1e-15);
  const YoungEvaluation e = young_evaluate(YoungFunction::phi0(phi), fx::diag(1, 0));
  CHECK(e.projected);
  CHECK(young_eval(YoungFunction::phi(phi), fx::diag(800, -800)) == std::numeric_limits<double>::infinity());
}

TEST_CASE("near retraction matches bisection") {
  Rng rng(9);
  const BlockShape s({3});
  const State phi = random_state(rng, s, 1.0);
  const YoungFunction f = YoungFunction::phi0(phi);
  const Hermitian x = phi.center(random_hermitian(rng, s, 1.0));
  const double n = luxemburg_norm(f, x).value;
  CHECK(luxemburg_norm_near(f, x, n * 1.01).value == doctest::Approx(n).epsilon(1e-12));
}

TEST_CASE("norm equivalence constant on a sample") {
  Rng rng(21);
  const BlockShape s({2, 2});
  const State phi = random_state(rng, s, 1.0);
  const Hermitian x = phi.center(random_hermitian(rng, s, 1.0));
  const double a = luxemburg_norm(YoungFunction::phi0(phi), x).value;
  const double b = luxemburg_norm(YoungFunction::phi(phi), x).value;
  CHECK(a <= b + 1e-12);
  CHECK(b <= 2.0 / std::log(2.0) * a + 1e-12);
}
