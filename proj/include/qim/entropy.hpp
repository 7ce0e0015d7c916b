#pragma once

#include <limits>
#include <span>

#include "qim/algebra.hpp"

namespace qim {

/// Support tolerance separating genuine rank deficiency from rounding.
inline constexpr double kSupportTolerance = 1e-10;

/// Relative entropy in nats, or +infinity when the support condition fails.
struct EntropyValue {
  double value = 0.0;
  bool infinite = false;

  static EntropyValue finite(double v) { return {v, false}; }
  static EntropyValue infinity() { return {std::numeric_limits<double>::infinity(), true}; }

  double as_double() const noexcept {
    return infinite ? std::numeric_limits<double>::infinity() : value;
  }
};

/// S(omega, phi) = Tr rho_omega (log rho_omega - log rho_phi), computed in the
/// two eigenbases. Neither argument needs unit mass.
EntropyValue relative_entropy(const PositiveFunctional& omega, const PositiveFunctional& phi);

/// |S(psi,phi) + sum_i S(psi_i,psi) - sum_i S(psi_i,phi)| with psi = sum_i psi_i.
/// Throws ValidationError for an empty list or when psi lacks full support.
double donald_residual(std::span<const PositiveFunctional> parts, const State& phi);

/// omega in S_C = { S(omega, phi) <= C }.
bool entropy_ball_member(const State& omega, const State& phi, double radius);

}  // namespace qim
