#pragma once

// Exponential perturbation of a faithful state: the Gibbs variational
// problem sup_omega { omega(h) - S(omega, phi) } and its maximizer.

#include <vector>

#include "qim/algebra.hpp"

namespace qim {

/// Largest total dimension for which the superoperator oracle is built.
inline constexpr int kOracleDimensionCap = 16;

/// c_phi(h) = log Tr exp(log rho_phi + h), by max-shifted log-sum-exp.
double cumulant(const State& phi, const Hermitian& h);

/// Unnormalized-safe Gibbs data without the faithfulness check on the
/// result: density = exp(log rho_phi + h - c). Used by the optimizers,
/// where far iterates may leave the faithful range.
struct Gibbs {
  double cumulant;
  Hermitian density;
};
Gibbs gibbs(const State& phi, const Hermitian& h);

struct PerturbationResult {
  double c;     // c_phi(h)
  State state;  // [phi^h]
  double mass;  // phi^h(1) = e^c
};

/// Throws ValidationError if [phi^h] falls below the faithfulness floor.
PerturbationResult perturb(const State& phi, const Hermitian& h);

/// The perturbed vector xi = exp(1/2 (log Delta_phi + h)) xi_phi in the
/// Hilbert-Schmidt representation, xi_phi = rho^{1/2}. Built from the
/// n^2 x n^2 modular generator per block, independent of the density
/// shortcut used by `perturb`.
struct PerturbedVector {
  std::vector<Matrix> xi;  // one per block
  double mass;             // <xi, xi>

  /// Density of a -> <xi, a xi>, i.e. xi xi^*.
  Hermitian functional(const BlockShape& shape) const;
};
PerturbedVector perturbed_vector_oracle(const State& phi, const Hermitian& h);

/// Traceless representative of [phi^h] - phi, the derivative of the
/// centered cumulant at h.
DualFunctional gateaux_derivative(const State& phi, const Hermitian& h);

}  // namespace qim
