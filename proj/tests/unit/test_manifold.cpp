#include <doctest.h>

#include "fixtures.hpp"
#include "qim/manifold.hpp"

using namespace qim;

TEST_CASE("chart round trip and ball") {
  const Chart chart(fx::half());
  const Hermitian h = fx::diag(0.5, -0.5);
  CHECK(chart.contains(h));
  const State s = chart_forward(chart, h);
  const ChartPoint p = chart_inverse(chart, s);
  CHECK(distance(p.h, h) < 1e-12);
  CHECK(p.norm == doctest::Approx(0.5 * fx::kInvAcoshE));
  CHECK_THROWS_AS(chart_forward(chart, fx::diag(3, -3)), ChartError);
  CHECK_THROWS_AS(chart_forward(chart, fx::diag(1, 0)), DomainError);
}

TEST_CASE("out-of-ball inverse is flagged, not raised") {
  const Chart chart(fx::half());
  const ChartPoint p = chart_inverse(chart, State::diagonal(fx::qubit(), {0.999, 0.001}));
  CHECK_FALSE(p.in_ball);
  CHECK(p.norm > 1.0);
}

TEST_CASE("qubit transition") {
  const State phi1 = fx::half();
  const State phi2 = State::diagonal(fx::qubit(), {0.75, 0.25});
  const TransitionResult t = transition(phi1, phi2, Hermitian::zero(fx::qubit()));
  // Coordinates are centered under the target state; the trace-centered
  // form diag(-log 3 / 2, log 3 / 2) differs by a multiple of the identity.
  const double l3 = 0.5 * std::log(3.0);
  const Hermitian shift = t.h - fx::diag(-l3, l3);
  CHECK(std::abs(shift.block(0)(0, 0).real() - shift.block(0)(1, 1).real()) < 1e-12);
  CHECK(std::abs(phi2.expect(t.h)) < 1e-15);
  CHECK(t.h.block(0)(0, 0).real() == doctest::Approx(std::log(2.0 / 3.0) - phi2.expect(fx::diag(std::log(2.0 / 3.0), std::log(2.0)))));
  CHECK(distance(transition(phi1, phi1, fx::diag(0.3, -0.3)).h, fx::diag(0.3, -0.3)) < 1e-14);
}

TEST_CASE("transports") {
  const State src = fx::half();
  const State dst = State::diagonal(fx::qubit(), {0.75, 0.25});
  const TransportMap e{TransportKind::exponential, src, dst};
  CHECK(distance(transport(e, fx::diag(1, -1)), fx::diag(0.5, -1.5)) < 1e-15);
  const TransportMap m{TransportKind::mixture, src, dst};
  const DualFunctional v(fx::diag(0.2, -0.2));
  CHECK(distance(transport(m, v).density(), v.density()) == 0.0);
  CHECK(pair(v, transport(e, fx::diag(1, -1))) == doctest::Approx(pair(v, fx::diag(1, -1))));
}
