#include <doctest.h>

#include "fixtures.hpp"
#include "qim/entropy.hpp"

using namespace qim;

TEST_CASE("relative entropy closed forms") {
  const State phi = fx::half();
  CHECK(relative_entropy(phi, phi).value == doctest::Approx(0.0));
  const State omega = State::diagonal(fx::qubit(), {0.75, 0.25});
  CHECK(relative_entropy(omega, phi).value == doctest::Approx(std::log(2.0) - fx::entropy2(0.75)).epsilon(1e-14));
}

TEST_CASE("support condition") {
  const PositiveFunctional pure(fx::diag(1, 0));
  const PositiveFunctional other(fx::diag(0, 1));
  CHECK(relative_entropy(pure, other).infinite);
  const EntropyValue finite = relative_entropy(pure, PositiveFunctional(fx::diag(0.5, 0.5)));
  CHECK_FALSE(finite.infinite);
  CHECK(finite.value == doctest::Approx(std::log(2.0)));
  CHECK(relative_entropy(PositiveFunctional::zero(fx::qubit()), fx::half()).value == 0.0);
}

TEST_CASE("donald identity on a random split") {
  Rng rng(3);
  const BlockShape s({3});
  const State phi = random_state(rng, s, 1.0);
  std::vector<PositiveFunctional> parts{random_state(rng, s, 1.0).functional().scaled(0.3),
                                        random_state(rng, s, 1.0).functional().scaled(0.7)};
  CHECK(donald_residual(parts, phi) < 1e-10);
}
