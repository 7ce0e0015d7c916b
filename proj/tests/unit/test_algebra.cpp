#include <doctest.h>

#include "fixtures.hpp"
#include "qim/algebra.hpp"

using namespace qim;

TEST_CASE("block shapes") {
  const BlockShape s({2, 1, 3});
  CHECK(s.total() == 6);
  CHECK(s.real_dimension() == 14);
  CHECK_FALSE(s.commutative());
  CHECK(BlockShape({1, 1}).commutative());
  CHECK_THROWS_AS(BlockShape({}), ValidationError);
  CHECK_THROWS_AS(BlockShape({0}), ValidationError);
}

TEST_CASE("hermitian validation") {
  Matrix m(2, 2);
  m << 1.0, Complex(0, 1), Complex(0, 1), 2.0;  // not Hermitian
  CHECK_THROWS_AS(Hermitian(fx::qubit(), {m}), ValidationError);
  CHECK_THROWS_AS(Hermitian(BlockShape({2, 1}), {Matrix::Identity(2, 2)}), ShapeError);
  Matrix off = Matrix::Zero(3, 3);
  off(0, 2) = 1.0;
  off(2, 0) = 1.0;
  CHECK_THROWS_AS(Hermitian::from_dense(BlockShape({2, 1}), off), ValidationError);
}

TEST_CASE("functional calculus round trip") {
  Rng rng(7);
  const BlockShape s({2, 3});
  const Hermitian h = random_hermitian(rng, s, 1.0);
  CHECK(distance(log(exp(h)), h) < 1e-12);
  CHECK(exp(Hermitian::zero(s)).trace() == doctest::Approx(5.0));
  CHECK_THROWS_AS(log(Hermitian::diagonal(fx::qubit(), {1.0, 0.0})), DomainError);
}

TEST_CASE("states and duals") {
  CHECK_THROWS_AS(State(fx::diag(0.5, 0.6)), ValidationError);
  CHECK_THROWS_AS(State(fx::diag(1.0, 0.0)), ValidationError);
  const State phi = State::diagonal(fx::qubit(), {0.75, 0.25});
  CHECK(phi.expect(fx::diag(1, -1)) == doctest::Approx(0.5));
  CHECK(phi.center(fx::diag(1, -1)).trace() == doctest::Approx(-1.0));  // diag(1/2, -3/2)
  CHECK_THROWS_AS(DualFunctional(fx::diag(1, 0)), ValidationError);
  CHECK(DualFunctional::project(fx::diag(1, 0)).density().trace() == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("sampling is seeded") {
  const BlockShape s({2, 2});
  const auto a = std::get<State>(sample(SampleKind::faithful_state, s, 1.0, 42));
  const auto b = std::get<State>(sample(SampleKind::faithful_state, s, 1.0, 42));
  CHECK(distance(a.density(), b.density()) == 0.0);
  CHECK(a.density().trace() == doctest::Approx(1.0));
  CHECK(a.spectrum().min() > kFaithfulFloor);
}
