#include "checks.hpp"
#include "qim/manifold.hpp"
#include "qim/perturbation.hpp"

namespace qim::verify {

namespace {

/// A centered observable of chart norm in (0.05, 0.9).
Hermitian in_chart(Rng& rng, const Chart& chart) {
  const Hermitian h = centered(rng, chart.base(), 1.0);
  return h * (rng.uniform(0.05, 0.9) / chart.norm(h));
}

Outcome chart_roundtrip(Sample& s) {
  const Chart chart(random_state(s.rng, s.shape, 1.0));
  const Hermitian h = in_chart(s.rng, chart);
  const double forward_back = distance(chart_inverse(chart, chart_forward(chart, h)).h, h);
  // psi near the base so that its coordinates land in the ball.
  const State psi = perturb(chart.base(), in_chart(s.rng, chart)).state;
  const ChartPoint p = chart_inverse(chart, psi);
  const double back_forward = distance(chart_forward(chart, p.h).density(), psi.density());
  return {std::max(forward_back, back_forward)};
}

Outcome transition_consistency(Sample& s) {
  const State phi1 = random_state(s.rng, s.shape, 1.0), phi2 = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, phi1, 0.5);
  const TransitionResult t = transition(phi1, phi2, h);
  return {distance(perturb(phi2, t.h).state.density(), perturb(phi1, h).state.density())};
}

Outcome transition_affinity(Sample& s) {
  const State phi1 = random_state(s.rng, s.shape, 1.0), phi2 = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, phi1, 0.5), g = centered(s.rng, phi1, 0.5);
  const double l = s.rng.uniform(-1.0, 2.0);
  const Hermitian lhs = transition(phi1, phi2, h * l + g * (1.0 - l)).h;
  const Hermitian rhs = transition(phi1, phi2, h).h * l + transition(phi1, phi2, g).h * (1.0 - l);
  return {distance(lhs, rhs)};
}

Outcome transport_cocycle(Sample& s) {
  const State p1 = random_state(s.rng, s.shape, 1.0), p2 = random_state(s.rng, s.shape, 1.0),
              p3 = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, p1, 1.0);
  const auto exp_map = [](const State& a, const State& b) { return TransportMap{TransportKind::exponential, a, b}; };
  const Hermitian composed = transport(exp_map(p2, p3), transport(exp_map(p1, p2), h));
  const Hermitian direct = transport(exp_map(p1, p3), h);
  const DualFunctional v = random_dual(s.rng, s.shape, 1.0);
  const auto mix_map = [](const State& a, const State& b) { return TransportMap{TransportKind::mixture, a, b}; };
  const DualFunctional mixed = transport(mix_map(p2, p3), transport(mix_map(p1, p2), v));
  return {std::max(distance(composed, direct), distance(mixed.density(), v.density()))};
}

Outcome transition_cocycle(Sample& s) {
  // Three nearby states, so that the chart images overlap.
  const Chart c1(random_state(s.rng, s.shape, 1.0));
  const State& p1 = c1.base();
  const State p2 = perturb(p1, in_chart(s.rng, c1) * 0.25).state;
  const State p3 = perturb(p1, in_chart(s.rng, c1) * 0.25).state;
  const Hermitian h = in_chart(s.rng, c1) * 0.25;
  const TransitionResult first = transition(p1, p2, h);
  const TransitionResult second = transition(p2, p3, first.h);
  const TransitionResult direct = transition(p1, p3, h);
  // Only instances whose images stay inside the charts count.
  Outcome o;
  if (!first.target_in_chart || !second.target_in_chart || !direct.target_in_chart) {
    o.skipped = true;
    return o;
  }
  o.violation = distance(second.h, direct.h);
  return o;
}

Outcome transport_duality(Sample& s) {
  const State p1 = random_state(s.rng, s.shape, 1.0), p2 = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, p1, 1.0);
  const DualFunctional v = random_dual(s.rng, s.shape, 1.0);
  const Hermitian moved = transport(TransportMap{TransportKind::exponential, p1, p2}, h);
  const DualFunctional carried = transport(TransportMap{TransportKind::mixture, p1, p2}, v);
  return {std::abs(pair(carried, moved) - pair(v, h)) / (1.0 + std::abs(pair(v, h)))};
}

Outcome injectivity(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, phi, 1.0);
  // The closest admissible pair: centered and 1e-6 apart.
  const Hermitian k = h + unit(centered(s.rng, phi, 1.0)) * 1e-6;
  const double gap = distance(perturb(phi, h).state.density(), perturb(phi, k).state.density());
  return {excess(1e-12, gap), gap, false};
}

Outcome space_equality(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const State moved = perturb(phi, centered(s.rng, phi, 1.0)).state;
  double worst = 1.0;
  for (int i = 0; i < 5; ++i) {
    const Hermitian k = random_hermitian(s.rng, s.shape, log_uniform(s.rng, 0.1, 3.0));
    const double ratio =
        luxemburg_norm(YoungFunction::phi(moved), k).value / luxemburg_norm(YoungFunction::phi(phi), k).value;
    if (!(ratio > 0.0) || !std::isfinite(ratio)) return {kInf};
    worst = std::max({worst, ratio, 1.0 / ratio});
  }
  return {0.0, worst};
}

Outcome connected_component(Sample& s) {
  const Chart chart(random_state(s.rng, s.shape, 1.0));
  // Arbitrary faithful states, in or out of the unit ball.
  const State psi = random_state(s.rng, s.shape, 2.0);
  const ChartPoint p = chart_inverse(chart, psi);
  return {distance(perturb(chart.base(), p.h).state.density(), psi.density()), p.norm};
}

}  // namespace

void add_manifold_checks(std::vector<Check>& out) {
  out.push_back({"chart_roundtrip", "e_phi(s_phi(h)) = h, s_phi(e_phi(psi)) = psi", chart_roundtrip});
  out.push_back({"transition_consistency", "[phi2^(k + h - phi2(h))] = [phi1^h], phi1 = [phi2^k]",
                 transition_consistency});
  out.push_back({"transition_affinity", "transition is affine in h", transition_affinity});
  out.push_back({"transport_cocycle", "U(e)_23 U(e)_12 = U(e)_13, U(m)_23 U(m)_12 = U(m)_13", transport_cocycle});
  out.push_back({"transition_cocycle", "t_23 t_12 = t_13 on in-chart images", transition_cocycle});
  out.push_back({"transport_duality", "v(h - phi2(h)) = v(h) for v(1) = 0", transport_duality});
  Check inj{"injectivity", "h != k centered implies [phi^h] != [phi^k]", injectivity};
  inj.info_label = "min state separation at |h - k| = 1e-6";
  inj.info_max = false;
  out.push_back(std::move(inj));
  Check space{"space_equality", "||k||_[phi^h] / ||k||_phi bounded above and below", space_equality};
  space.info_label = "max ratio R";
  out.push_back(std::move(space));
  Check component{"connected_component", "every faithful psi is [phi^h] for a centered h", connected_component};
  component.info_label = "max chart norm reached";
  out.push_back(std::move(component));
}

}  // namespace qim::verify
