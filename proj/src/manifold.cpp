#include "qim/manifold.hpp"

#include <cmath>

#include "qim/perturbation.hpp"

namespace qim {

namespace {

constexpr double kCenterTolerance = 1e-10;

void require_centered(const State& phi, const Hermitian& h, const char* where) {
  const double mean = phi.expect(h);
  if (std::abs(mean) > kCenterTolerance * (1.0 + h.frobenius_norm())) {
    throw DomainError(std::string(where) + ": observable is not centered (mean " + std::to_string(mean) + ")");
  }
}

}  // namespace

Chart::Chart(State base) : young_(YoungFunction::phi0(std::move(base))) {}

double Chart::norm(const Hermitian& h) const {
  require_centered(base(), h, "chart");
  return luxemburg_norm(young_, h).value;
}

bool Chart::contains(const Hermitian& h) const {
  require_same_shape(base().shape(), h.shape(), "chart");
  const double mean = base().expect(h);
  if (std::abs(mean) > kCenterTolerance * (1.0 + h.frobenius_norm())) return false;
  return norm(h) < 1.0;
}

State chart_forward(const Chart& chart, const Hermitian& h) {
  require_same_shape(chart.base().shape(), h.shape(), "chart_forward");
  const double n = chart.norm(h);
  if (!(n < 1.0)) throw ChartError("observable of norm " + std::to_string(n) + " is outside the chart");
  return perturb(chart.base(), h).state;
}

ChartPoint chart_inverse(const Chart& chart, const State& psi) {
  require_same_shape(chart.base().shape(), psi.shape(), "chart_inverse");
  Hermitian h = chart.base().center(psi.log_density() - chart.base().log_density());
  const double n = chart.norm(h);
  return {std::move(h), n, n < 1.0};
}

TransitionResult transition(const State& phi1, const State& phi2, const Hermitian& h) {
  require_same_shape(phi1.shape(), h.shape(), "transition");
  require_same_shape(phi2.shape(), h.shape(), "transition");
  const Chart source(phi1), target(phi2);
  const ChartPoint k = chart_inverse(target, phi1);
  Hermitian out = k.h + h.shifted(-phi2.expect(h));
  const bool source_in = source.contains(h);
  const bool target_in = target.contains(out);
  return {std::move(out), source_in, target_in};
}

Hermitian transport(const TransportMap& map, const Hermitian& h) {
  if (map.kind != TransportKind::exponential) {
    throw DomainError("observables are carried by the exponential transport");
  }
  require_same_shape(map.source.shape(), h.shape(), "transport");
  require_same_shape(map.target.shape(), h.shape(), "transport");
  require_centered(map.source, h, "transport");
  return h.shifted(-map.target.expect(h));
}

DualFunctional transport(const TransportMap& map, const DualFunctional& v) {
  if (map.kind != TransportKind::mixture) {
    throw DomainError("functionals are carried by the mixture transport");
  }
  require_same_shape(map.source.shape(), v.shape(), "transport");
  require_same_shape(map.target.shape(), v.shape(), "transport");
  return v;
}

}  // namespace qim
