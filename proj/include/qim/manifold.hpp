#pragma once

// Charts on the set of faithful states: the open unit ball of centered
// observables in the phi0 norm, mapped to states by h -> [phi^h].

#include "qim/algebra.hpp"
#include "qim/orlicz.hpp"

namespace qim {

class Chart {
 public:
  explicit Chart(State base);

  const State& base() const noexcept { return young_.reference(); }
  /// ||h||_{phi,0}; h must be centered for the base.
  double norm(const Hermitian& h) const;
  bool contains(const Hermitian& h) const;

 private:
  YoungFunction young_;
};

/// [base^h]. ChartError when ||h|| >= 1, DomainError when h is off-center
/// beyond 1e-10 (1 + |h|).
State chart_forward(const Chart& chart, const Hermitian& h);

struct ChartPoint {
  Hermitian h;
  double norm;
  bool in_ball;  // false: the closed form is still returned
};

/// Centered log-density difference; the exact inverse of chart_forward.
ChartPoint chart_inverse(const Chart& chart, const State& psi);

struct TransitionResult {
  Hermitian h;
  bool source_in_chart;
  bool target_in_chart;
};

/// Coordinates of [phi1^h] in the chart at phi2: k + h - phi2(h) with
/// phi1 = [phi2^k].
TransitionResult transition(const State& phi1, const State& phi2, const Hermitian& h);

enum class TransportKind { exponential, mixture };

struct TransportMap {
  TransportKind kind;
  State source;
  State target;
};

/// Exponential transport h -> h - target(h); h must be centered for source.
Hermitian transport(const TransportMap& map, const Hermitian& h);
/// Mixture transport: the identity on traceless functionals.
DualFunctional transport(const TransportMap& map, const DualFunctional& v);

}  // namespace qim
