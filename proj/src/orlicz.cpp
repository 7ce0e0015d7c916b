#include "qim/orlicz.hpp"

#include <cmath>
#include <limits>
#include <optional>

#include "qim/duality.hpp"
#include "qim/perturbation.hpp"

namespace qim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDomainTolerance = 1e-10;
// e^c overflows past this cumulant.
constexpr double kExpLimit = 700.0;

bool on_traceless_domain(YoungDomain d) { return d == YoungDomain::traceless_duals; }

Hermitian remove_trace(const Hermitian& x) { return x.shifted(-x.trace() / x.shape().total()); }

/// Evaluates t -> Phi(x / t) - 1 along a ray, carrying the conjugate
/// maximizer between calls as a warm start.
class RayFunction {
 public:
  RayFunction(const YoungFunction& f, const Hermitian& x) : f_(f), x_(x) {}

  double operator()(double t) {
    const Hermitian point = x_ / t;
    if (f_.kind() != YoungKind::conjugate) return young_evaluate(f_, point).value - 1.0;
    AscentOptions options;
    options.warm_start = warm_;
    try {
      const ConjugateValue cv = conjugate(f_.base(), point, options);
      if (cv.infinite) return kInf;
      warm_ = cv.maximizer;
      return cv.value - 1.0;
    } catch (const ConvergenceError& e) {
      // A lower bound above 1 still decides the sign.
      if (e.best_value() > 1.0) return e.best_value() - 1.0;
      throw;
    }
  }

 private:
  const YoungFunction& f_;
  const Hermitian& x_;
  std::optional<Hermitian> warm_;
};

}  // namespace

YoungFunction YoungFunction::phi(State reference) {
  return YoungFunction(YoungKind::phi, std::make_shared<const State>(std::move(reference)), nullptr);
}

YoungFunction YoungFunction::phi0(State reference) {
  return YoungFunction(YoungKind::phi0, std::make_shared<const State>(std::move(reference)), nullptr);
}

YoungFunction YoungFunction::psi0(State reference) {
  return YoungFunction(YoungKind::psi0, std::make_shared<const State>(std::move(reference)), nullptr);
}

YoungFunction YoungFunction::conjugate_of(const YoungFunction& base) {
  if (base.kind() == YoungKind::conjugate) {
    throw DomainError("the conjugate of a numeric conjugate is not supported");
  }
  return YoungFunction(YoungKind::conjugate, base.reference_, std::make_shared<const YoungFunction>(base));
}

YoungDomain YoungFunction::domain() const noexcept {
  switch (kind_) {
    case YoungKind::phi:
      return YoungDomain::observables;
    case YoungKind::phi0:
      return YoungDomain::centered_observables;
    case YoungKind::psi0:
      return YoungDomain::traceless_duals;
    case YoungKind::conjugate:
      switch (base_->kind()) {
        case YoungKind::phi:
          return YoungDomain::hermitian_functionals;
        case YoungKind::phi0:
          return YoungDomain::traceless_duals;
        default:
          return YoungDomain::observables;
      }
  }
  return YoungDomain::observables;
}

const YoungFunction& YoungFunction::base() const {
  if (!base_) throw DomainError(name() + " is not a conjugate handle");
  return *base_;
}

std::string YoungFunction::name() const {
  switch (kind_) {
    case YoungKind::phi:
      return "phi";
    case YoungKind::phi0:
      return "phi0";
    case YoungKind::psi0:
      return "psi0";
    case YoungKind::conjugate:
      return "conj(" + base_->name() + ")";
  }
  return "?";
}

Hermitian conform(const YoungFunction& f, const Hermitian& x, bool* projected) {
  require_same_shape(f.reference().shape(), x.shape(), f.name().c_str());
  if (projected) *projected = false;
  const double tol = kDomainTolerance * (1.0 + x.frobenius_norm());
  switch (f.domain()) {
    case YoungDomain::observables:
    case YoungDomain::hermitian_functionals:
      return x;
    case YoungDomain::centered_observables: {
      const double mean = f.reference().expect(x);
      if (std::abs(mean) > tol && projected) *projected = true;
      return x.shifted(-mean);
    }
    case YoungDomain::traceless_duals: {
      if (std::abs(x.trace()) > tol) {
        throw DomainError(f.name() + " is defined on traceless functionals, trace is " +
                          std::to_string(x.trace()));
      }
      return remove_trace(x);
    }
  }
  return x;
}

YoungEvaluation young_evaluate(const YoungFunction& f, const Hermitian& x) {
  bool projected = false;
  const Hermitian y = conform(f, x, &projected);
  const State& phi = f.reference();
  switch (f.kind()) {
    case YoungKind::phi: {
      const double cp = cumulant(phi, y);
      const double cm = cumulant(phi, -y);
      if (cp > kExpLimit || cm > kExpLimit) return {kInf, projected};
      // (e^{c+} - 1 + e^{c-} - 1) / 2 without cancellation near 0
      return {0.5 * (std::expm1(cp) + std::expm1(cm)), projected};
    }
    case YoungKind::phi0:
      return {0.5 * (cumulant(phi, y) + cumulant(phi, -y)), projected};
    case YoungKind::psi0: {
      const Decomposition d = psi_decompose(phi, DualFunctional::project(y));
      return {d.infinite ? kInf : d.psi_value, projected};
    }
    case YoungKind::conjugate: {
      const ConjugateValue cv = conjugate(f.base(), y);
      return {cv.infinite ? kInf : cv.value, projected};
    }
  }
  return {kInf, projected};
}

double young_eval(const YoungFunction& f, const Hermitian& x) { return young_evaluate(f, x).value; }

Hermitian young_gradient(const YoungFunction& f, const Hermitian& x) {
  const Hermitian y = conform(f, x);
  const State& phi = f.reference();
  switch (f.kind()) {
    case YoungKind::phi: {
      const Gibbs plus = gibbs(phi, y);
      const Gibbs minus = gibbs(phi, -y);
      if (plus.cumulant > kExpLimit || minus.cumulant > kExpLimit) {
        throw DomainError("phi gradient overflows");
      }
      return 0.5 * (plus.density * std::exp(plus.cumulant) - minus.density * std::exp(minus.cumulant));
    }
    case YoungKind::phi0: {
      const Gibbs plus = gibbs(phi, y);
      const Gibbs minus = gibbs(phi, -y);
      return remove_trace(0.5 * (plus.density - minus.density));
    }
    case YoungKind::psi0: {
      const Decomposition d = psi_decompose(phi, DualFunctional::project(y));
      if (d.infinite) throw DomainError("psi0 is infinite here; no gradient");
      return remove_trace(0.5 * (log(d.omega1.density()) - log(d.omega2.density())));
    }
    case YoungKind::conjugate: {
      const ConjugateValue cv = conjugate(f.base(), y);
      if (cv.infinite) throw DomainError(f.name() + " is infinite here; no gradient");
      return on_traceless_domain(f.domain()) ? remove_trace(cv.maximizer) : cv.maximizer;
    }
  }
  throw DomainError("unknown Young function");
}

NormValue luxemburg_norm(const YoungFunction& f, const Hermitian& x) {
  const Hermitian y = conform(f, x);
  if (y.frobenius_norm() == 0.0) return {};
  RayFunction g(f, y);

  double t_hi = std::max(1.0, y.spectral_norm() / std::acosh(2.0));
  double g_hi = g(t_hi);
  for (int i = 0; g_hi >= 0.0; ++i) {
    if (g_hi == 0.0) return {t_hi, t_hi, t_hi, 0.0};
    if (i > 2000) throw DomainError(f.name() + " stays above 1 on the whole ray");
    t_hi *= 2.0;
    g_hi = g(t_hi);
  }
  double t_lo = t_hi;
  double g_lo = g_hi;
  for (int i = 0; g_lo <= 0.0; ++i) {
    if (g_lo == 0.0) return {t_lo, t_lo, t_lo, 0.0};
    if (i > 2000) throw DomainError(f.name() + " does not grow along the ray");
    t_hi = t_lo;
    t_lo *= 0.5;
    g_lo = g(t_lo);
  }

  // g(t_lo) > 0 > g(t_hi); bisect well past the 1e-12 relative width.
  for (int i = 0; i < 200 && (t_hi - t_lo) > 1e-14 * t_hi; ++i) {
    const double mid = 0.5 * (t_lo + t_hi);
    if (mid <= t_lo || mid >= t_hi) break;
    const double gm = g(mid);
    if (gm == 0.0) {
      t_lo = t_hi = mid;
      break;
    }
    (gm > 0.0 ? t_lo : t_hi) = mid;
  }
  const double value = 0.5 * (t_lo + t_hi);
  return {value, t_lo, t_hi, std::abs(g(value))};
}

NormValue luxemburg_norm_near(const YoungFunction& f, const Hermitian& x, double guess) {
  const Hermitian y = conform(f, x);
  if (y.frobenius_norm() == 0.0) return {};
  if (!(guess > 0) || !std::isfinite(guess)) return luxemburg_norm(f, x);
  RayFunction g(f, y);

  // Bracket by geometric expansion around the guess.
  double a = guess * (1.0 - 1e-3);
  double b = guess * (1.0 + 1e-3);
  double ga = g(a);
  double gb = g(b);
  for (int i = 0; ga <= 0.0; ++i) {
    if (ga == 0.0) return {a, a, a, 0.0};
    if (i > 200) return luxemburg_norm(f, x);
    b = a;
    gb = ga;
    a *= 0.5;
    ga = g(a);
  }
  for (int i = 0; gb >= 0.0; ++i) {
    if (gb == 0.0) return {b, b, b, 0.0};
    if (i > 200) return luxemburg_norm(f, x);
    a = b;
    ga = gb;
    b *= 2.0;
    gb = g(b);
  }

  // Illinois false position; ga > 0 > gb throughout.
  int side = 0;
  for (int i = 0; i < 200 && (b - a) > 1e-14 * b; ++i) {
    double c = (std::isfinite(ga) ? (a * gb - b * ga) / (gb - ga) : 0.5 * (a + b));
    if (!(c > a && c < b)) c = 0.5 * (a + b);
    const double gc = g(c);
    if (gc == 0.0) {
      a = b = c;
      break;
    }
    if (gc > 0.0) {
      a = c;
      ga = gc;
      if (side == +1) gb *= 0.5;
      side = +1;
    } else {
      b = c;
      gb = gc;
      if (side == -1) ga *= 0.5;
      side = -1;
    }
  }
  const double value = 0.5 * (a + b);
  return {value, a, b, std::abs(g(value))};
}

}  // namespace qim
