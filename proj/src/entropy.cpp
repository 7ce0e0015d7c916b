#include "qim/entropy.hpp"

#include <cmath>

namespace qim {

EntropyValue relative_entropy(const PositiveFunctional& omega, const PositiveFunctional& phi) {
  require_same_shape(omega.shape(), phi.shape(), "relative_entropy");
  const auto& sw = omega.spectrum().blocks();
  const auto& sp = phi.spectrum().blocks();
  if (phi.spectrum().min() < -kPositivityTolerance) {
    throw ValidationError("reference functional is not positive");
  }

  double total = 0.0;
  for (std::size_t b = 0; b < sw.size(); ++b) {
    const Eigen::VectorXd& a = sw[b].values;
    const Eigen::VectorXd& p = sp[b].values;
    // overlap(i, j) = |<u_i, v_j>|^2
    const Eigen::MatrixXd overlap = (sw[b].vectors.adjoint() * sp[b].vectors).cwiseAbs2();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      const double ai = std::max(a(i), 0.0);
      if (ai == 0.0) continue;
      total += ai * std::log(ai);
      for (Eigen::Index j = 0; j < p.size(); ++j) {
        if (p(j) <= kSupportTolerance) {
          if (ai > kSupportTolerance && overlap(i, j) > kSupportTolerance) {
            return EntropyValue::infinity();
          }
          continue;
        }
        total -= ai * overlap(i, j) * std::log(p(j));
      }
    }
  }
  return EntropyValue::finite(total);
}

double donald_residual(std::span<const PositiveFunctional> parts, const State& phi) {
  if (parts.empty()) throw ValidationError("donald_residual needs at least one part");
  Hermitian sum = Hermitian::zero(phi.shape());
  for (const auto& p : parts) sum += p.density();
  const PositiveFunctional psi(sum);
  if (psi.spectrum().min() <= kSupportTolerance) {
    throw ValidationError("sum of parts must have full support");
  }

  double lhs = relative_entropy(psi, phi).as_double();
  double rhs = 0.0;
  for (const auto& p : parts) {
    lhs += relative_entropy(p, psi).as_double();
    rhs += relative_entropy(p, phi).as_double();
  }
  return std::abs(lhs - rhs);
}

bool entropy_ball_member(const State& omega, const State& phi, double radius) {
  if (!(radius > 0)) throw ValidationError("entropy ball radius must be positive");
  const EntropyValue s = relative_entropy(omega, phi);
  return !s.infinite && s.value <= radius;
}

}  // namespace qim
