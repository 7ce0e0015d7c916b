#include "checks.hpp"
#include "qim/entropy.hpp"
#include "qim/orlicz.hpp"

namespace qim::verify {

namespace {

const double kEquivalence = 2.0 / std::log(2.0);

double norm(const YoungFunction& f, const Hermitian& x) { return luxemburg_norm(f, x).value; }

Outcome young_axioms(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const double l = s.rng.uniform();
  const Hermitian a = random_hermitian(s.rng, s.shape, 1.0), b = random_hermitian(s.rng, s.shape, 1.0);
  const double v1 = young_violation(YoungFunction::phi(phi), a, b, l);
  const double v2 = young_violation(YoungFunction::phi0(phi), phi.center(a), phi.center(b), l);
  return {std::max(v1, v2)};
}

double lemma_violation(const YoungFunction& f, const Hermitian& x) {
  const NormValue n = luxemburg_norm(f, x);
  const double value = young_eval(f, x);
  double worst = n.residual > 1e-10 ? n.residual : 0.0;
  // Phi(x) <= 1 iff ||x|| <= 1
  worst = std::max(worst, value <= 1.0 ? excess(n.value, 1.0) : excess(1.0, n.value));
  // ||x|| <= 1 => Phi(x) <= ||x||;  ||x|| > 1 => Phi(x) >= ||x||
  worst = std::max(worst, n.value <= 1.0 ? excess(value, n.value) : excess(n.value, value));
  return worst;
}

Outcome luxemburg_lemmas(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  // Scales straddling the unit sphere.
  const Hermitian x = random_hermitian(s.rng, s.shape, log_uniform(s.rng, 0.1, 3.0));
  return {std::max(lemma_violation(YoungFunction::phi(phi), x),
                   lemma_violation(YoungFunction::phi0(phi), phi.center(x)))};
}

double axioms_violation(const YoungFunction& f, const Hermitian& x, const Hermitian& y, double alpha) {
  const double nx = norm(f, x), ny = norm(f, y);
  const double homogeneity = std::abs(norm(f, x * alpha) - std::abs(alpha) * nx) / (std::abs(alpha) * nx);
  return std::max(homogeneity, excess(norm(f, x + y), nx + ny));
}

Outcome norm_axioms(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian x = random_hermitian(s.rng, s.shape, 1.0), y = random_hermitian(s.rng, s.shape, 1.0);
  const double alpha = (s.rng.uniform() < 0.5 ? -1.0 : 1.0) * log_uniform(s.rng, 0.1, 10.0);
  return {std::max(axioms_violation(YoungFunction::phi(phi), x, y, alpha),
                   axioms_violation(YoungFunction::phi0(phi), phi.center(x), phi.center(y), alpha))};
}

Outcome norm_equivalence(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian x = centered(s.rng, phi, log_uniform(s.rng, 0.1, 3.0));
  const double centered_norm = norm(YoungFunction::phi0(phi), x);
  const double full_norm = norm(YoungFunction::phi(phi), x);
  return {std::max(excess(centered_norm, full_norm), excess(full_norm, kEquivalence * centered_norm)),
          full_norm / centered_norm};
}

Outcome young_sandwich(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, phi, 1.0);
  const double lower = young_eval(YoungFunction::phi0(phi), h);
  const double middle = young_eval(YoungFunction::phi(phi), h);
  return {std::max(excess(lower, middle), excess(middle, std::expm1(2.0 * lower)))};
}

Outcome cosh_bounds(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian x = random_hermitian(s.rng, s.shape, 1.0);
  const double value = young_eval(YoungFunction::phi(phi), x);
  double worst = excess(std::cosh(phi.expect(x)) - 1.0, value);
  for (int i = 0; i < 10; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    const double bound = std::cosh(w.expect(x)) * std::exp(-relative_entropy(w, phi).value) - 1.0;
    worst = std::max(worst, excess(bound, value));
  }
  return {worst};
}

Outcome state_domination(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian x = random_hermitian(s.rng, s.shape, 1.0);
  const double n = norm(YoungFunction::phi(phi), x);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    worst = std::max(worst, excess(std::cosh(w.expect(x) / n), 2.0 * std::exp(relative_entropy(w, phi).value)));
  }
  return {worst};
}

}  // namespace

double young_violation(const YoungFunction& f, const Hermitian& a, const Hermitian& b, double l) {
  const double fa = young_eval(f, a), fb = young_eval(f, b);
  double worst = std::abs(young_eval(f, Hermitian::zero(a.shape())));
  worst = std::max(worst, std::abs(young_eval(f, -a) - fa));
  worst = std::max({worst, excess(0.0, fa), excess(0.0, fb)});
  worst = std::max(worst, excess(young_eval(f, a * l + b * (1.0 - l)), l * fa + (1.0 - l) * fb));
  bool grows = false;
  for (double t = 1.0; t <= 1e6 && !grows; t *= 10.0) grows = young_eval(f, a * t) > 1e3;
  return grows ? worst : kInf;
}

void add_orlicz_checks(std::vector<Check>& out) {
  out.push_back({"young_axioms", "Phi_phi, Phi_phi0: Phi(0) = 0, even, nonnegative, convex, unbounded on rays",
                 young_axioms});
  out.push_back({"luxemburg_lemmas", "Phi(x) <= 1 iff ||x|| <= 1; Phi(x) <= ||x|| inside, >= ||x|| outside",
                 luxemburg_lemmas});
  out.push_back({"norm_axioms", "||a x|| = |a| ||x||, ||x + y|| <= ||x|| + ||y||", norm_axioms});
  Check equivalence{"norm_equivalence", "||x||_phi0 <= ||x||_phi <= (2/log 2) ||x||_phi0", norm_equivalence};
  equivalence.info_label = "max ratio ||x||_phi/||x||_phi0";
  out.push_back(std::move(equivalence));
  out.push_back({"young_sandwich", "Phi_phi0 <= Phi_phi <= exp(2 Phi_phi0) - 1", young_sandwich});
  out.push_back({"cosh_bounds", "cosh(w(x)) exp(-S(w,phi)) - 1 <= Phi_phi(x), cosh(phi(x)) - 1 <= Phi_phi(x)",
                 cosh_bounds});
  out.push_back({"state_domination", "cosh(w(x)/||x||_phi) <= 2 exp(S(w,phi))", state_domination});
}

}  // namespace qim::verify
