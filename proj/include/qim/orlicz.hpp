#pragma once

// Quantum Young functions and their Luxemburg (Minkowski) norms.
//
//   Phi_phi(h)   = (phi^h(1) + phi^{-h}(1)) / 2 - 1      on observables
//   Phi_phi,0(h) = (c_phi(h) + c_phi(-h)) / 2             on centered observables
//   Psi_phi,0(v) = min { S(w1,phi) + S(w2,phi) : w1 - w2 = v } on traceless duals
//
// plus the numeric Fenchel conjugate of any of these. Psi and conjugates are
// evaluated by the optimizers in duality.hpp.

#include <memory>
#include <string>

#include "qim/algebra.hpp"

namespace qim {

enum class YoungKind { phi, phi0, psi0, conjugate };

enum class YoungDomain {
  observables,            // all of M_s
  centered_observables,   // phi(h) = 0
  hermitian_functionals,  // all of M_s^*
  traceless_duals,        // v(1) = 0
};

class YoungFunction {
 public:
  static YoungFunction phi(State reference);
  static YoungFunction phi0(State reference);
  static YoungFunction psi0(State reference);
  /// Numeric conjugate; the conjugate of a conjugate is not supported.
  static YoungFunction conjugate_of(const YoungFunction& base);

  YoungKind kind() const noexcept { return kind_; }
  const State& reference() const noexcept { return *reference_; }
  YoungDomain domain() const noexcept;
  /// Function this one conjugates; only valid for YoungKind::conjugate.
  const YoungFunction& base() const;
  std::string name() const;

 private:
  YoungFunction(YoungKind kind, std::shared_ptr<const State> reference,
                std::shared_ptr<const YoungFunction> base)
      : kind_(kind), reference_(std::move(reference)), base_(std::move(base)) {}

  YoungKind kind_;
  std::shared_ptr<const State> reference_;
  std::shared_ptr<const YoungFunction> base_;
};

struct YoungEvaluation {
  double value;    // may be +infinity for psi0 and conjugates
  bool projected;  // an off-center input was centered first
};

/// Maps x into the handle's domain. Off-center inputs to phi0 are centered
/// (setting *projected); a nonzero trace on a traceless domain beyond
/// 1e-10 * (1 + |x|) is a DomainError.
Hermitian conform(const YoungFunction& f, const Hermitian& x, bool* projected = nullptr);

YoungEvaluation young_evaluate(const YoungFunction& f, const Hermitian& x);
double young_eval(const YoungFunction& f, const Hermitian& x);

/// Gradient identified with a Hermitian matrix through Re Tr(g k), lying in
/// the tangent space of the handle's domain.
Hermitian young_gradient(const YoungFunction& f, const Hermitian& x);

struct NormValue {
  double value = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double residual = 0.0;  // |Phi(x / value) - 1|
};

/// inf { t > 0 : Phi(x / t) <= 1 } by bracketing and bisection.
NormValue luxemburg_norm(const YoungFunction& f, const Hermitian& x);

/// Root t of Phi(x / t) = 1, located by bracketed false position (Illinois)
/// seeded at `guess`. Same contract as luxemburg_norm, fewer evaluations
/// when a good guess exists.
NormValue luxemburg_norm_near(const YoungFunction& f, const Hermitian& x, double guess);

}  // namespace qim
