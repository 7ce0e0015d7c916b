#pragma once

#include <cmath>

#include "qim/algebra.hpp"

namespace fx {

inline const qim::BlockShape& qubit() {
  static const qim::BlockShape s({2});
  return s;
}
inline qim::State half() { return qim::State::maximally_mixed(qubit()); }
inline qim::Hermitian diag(double a, double b) { return qim::Hermitian::diagonal(qubit(), {a, b}); }

// Frozen values, each computed independently from its closed form:
//   log cosh 1, 1/acosh 2, 1/acosh e, S(diag(p,1-p), I/2) with p = (1 + tanh 1)/2,
//   2 (log 2 - H(3/4)).
inline constexpr double kLogCosh1 = 0.4337808304830271;
inline constexpr double kInvAcosh2 = 0.759325717500207;
inline constexpr double kInvAcoshE = 0.6033348291980536;
inline constexpr double kConjugateQubit = 0.3278133254727376;
inline constexpr double kPsiQubit = 0.261624071882274;

inline double entropy2(double p) { return -p * std::log(p) - (1 - p) * std::log(1 - p); }

}  // namespace fx
