#pragma once

// Fenchel conjugates, dual norms and the optimal decomposition of a centered
// functional into a difference of states.

#include <optional>
#include <utility>

#include "qim/algebra.hpp"
#include "qim/orlicz.hpp"

namespace qim {

struct AscentOptions {
  double gradient_tolerance = 1e-8;
  int max_iterations = 10000;
  std::optional<Hermitian> warm_start;
};

struct ConjugateValue {
  double value = 0.0;
  Hermitian maximizer;  // argmax certificate, in the base function's domain
  double gap = 0.0;     // first-order estimate |grad| * (1 + |x|)
  double gradient_norm = 0.0;
  int iterations = 0;
  bool infinite = false;
};

/// sup_x { <v, x> - Phi(x) } by gradient ascent with Barzilai-Borwein steps
/// and Armijo backtracking. Throws ConvergenceError past the iteration cap.
ConjugateValue conjugate(const YoungFunction& f, const Hermitian& v, const AscentOptions& options = {});

/// Conjugate of the centered cumulant: sup_y { v(y) - c_phi(y) } over
/// centered y, for a traceless v. Finite iff v + phi is positive.
ConjugateValue cumulant_conjugate(const State& phi, const DualFunctional& v,
                                  const AscentOptions& options = {});

struct DualNorm {
  double value = 0.0;     // direct sup { <v,x> : Phi(x) <= 1 }
  double amemiya = 0.0;   // inf_s (1 + Phi*(s v)) / s, NaN when skipped
  bool flagged = false;   // |value - amemiya| > 1e-4 (1 + value)
  int iterations = 0;
  double gradient_norm = 0.0;
};

struct DualNormOptions {
  bool cross_check = true;
  int max_iterations = 10000;
};

DualNorm dual_norm(const YoungFunction& f, const Hermitian& v, const DualNormOptions& options = {});

struct Decomposition {
  PositiveFunctional omega1;
  PositiveFunctional omega2;
  double psi_value = 0.0;  // S(omega1, phi) + S(omega2, phi), or +infinity
  bool infinite = false;
  double feasibility_residual = 0.0;  // |omega1 - omega2 - v|_F
  double stationarity = 0.0;          // traceless part of the objective gradient
  int newton_steps = 0;
};

/// Minimizes S(w1,phi) + S(w2,phi) over states with w1 - w2 = v by a
/// log-barrier Newton method on the spectrahedron, then polishes with plain
/// Newton steps. Infeasible v (Tr v_+ > 1) yields the +infinity marker.
Decomposition psi_decompose(const State& phi, const DualFunctional& v);

/// v = v_+ - v_- with v_+ v_- = 0.
std::pair<PositiveFunctional, PositiveFunctional> jordan_split(const DualFunctional& v);
std::pair<PositiveFunctional, PositiveFunctional> jordan_split(const Hermitian& v);

}  // namespace qim
