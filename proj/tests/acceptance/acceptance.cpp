// Acceptance run: every criterion is either a group of suite checks at the
// default profile, or a closed-form instance, or both. One line each.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <string>
#include <vector>

#include "classical.hpp"
#include "qim/duality.hpp"
#include "qim/orlicz.hpp"
#include "qim/verify.hpp"

using namespace qim;

namespace {

struct Outcome {
  bool passed;
  std::string detail;
};

struct Criterion {
  int id;
  std::string title;
  std::vector<std::string> checks;
  std::function<Outcome()> extra;  // closed-form instance, optional
};

char buf[256];

const char* fmt(const char* f, double a, double b = 0.0, double c = 0.0) {
  std::snprintf(buf, sizeof buf, f, a, b, c);
  return buf;
}

const BlockShape& qubit() {
  static const BlockShape s({2});
  return s;
}

Outcome closed(const char* what, double got, double want, double tol) {
  const double err = std::abs(got - want);
  return {err <= tol, std::string(what) + fmt(" %.12g vs %.12g (err %.2g)", got, want, err)};
}

Outcome luxemburg_closed_forms() {
  const State phi = State::maximally_mixed(qubit());
  const Hermitian x = Hermitian::diagonal(qubit(), {1.0, -1.0});
  const Outcome a = closed("|diag(1,-1)|_phi", luxemburg_norm(YoungFunction::phi(phi), x).value, 1.0 / std::acosh(2.0), 1e-9);
  const Outcome b = closed("|diag(1,-1)|_phi0", luxemburg_norm(YoungFunction::phi0(phi), x).value,
                           1.0 / std::acosh(std::exp(1.0)), 1e-9);
  return {a.passed && b.passed, a.detail + "; " + b.detail};
}

Outcome conjugate_closed_form() {
  const State phi = State::maximally_mixed(qubit());
  const double d = 0.5 * std::tanh(1.0);
  const double p = 0.5 + d;
  // S(diag(p, 1-p), I/2), by the scalar formula.
  const double want = verify::classical::kl({p, 1.0 - p}, {0.5, 0.5});
  const ConjugateValue c = cumulant_conjugate(phi, DualFunctional(Hermitian::diagonal(qubit(), {d, -d})));
  return closed("qubit conjugate", c.value, want, 1e-5);
}

Outcome psi_closed_form() {
  const State phi = State::maximally_mixed(qubit());
  const Decomposition dec = psi_decompose(phi, DualFunctional(Hermitian::diagonal(qubit(), {0.5, -0.5})));
  const double oracle = verify::classical::psi({0.5, 0.5}, {0.5, -0.5});
  const double h = -0.75 * std::log(0.75) - 0.25 * std::log(0.25);
  const Outcome a = closed("qubit Psi vs 1-D oracle", dec.psi_value, oracle, 1e-6);
  const Outcome b = closed("vs 2(log 2 - H(3/4))", dec.psi_value, 2.0 * (std::log(2.0) - h), 1e-6);
  return {a.passed && b.passed, a.detail + "; " + b.detail};
}

}  // namespace

// No argument: all criteria. A number: that criterion only.
int main(int argc, char** argv) {
  const int only = argc > 1 ? std::atoi(argv[1]) : 0;
  VerifyConfig config;
  config.dims = default_dims();
  config.samples = 100;
  config.seed = 1;

  const std::vector<Criterion> criteria = {
      {1, "entropy decomposition identity", {"donald_identity"}, nullptr},
      {2, "variational principle and its maximizer", {"variational_principle"}, nullptr},
      {3, "cumulant between expectation and log-moment bounds", {"cumulant_bounds"}, nullptr},
      {4, "entropy of the perturbed state identity", {"gibbs_identity"}, nullptr},
      {5, "chain rule and inversion of perturbations", {"chain_rule", "inversion"}, nullptr},
      {6, "perturbed vector agrees with the density shortcut", {"modular_oracle"}, nullptr},
      {7, "scalar shift of the observable", {"scalar_shift"}, nullptr},
      {8, "Young function axioms", {"young_axioms"}, nullptr},
      {9, "Luxemburg gauge lemmas and qubit closed forms", {"luxemburg_lemmas"}, luxemburg_closed_forms},
      {10, "norm equivalence and Young sandwich", {"norm_equivalence", "young_sandwich"}, nullptr},
      {11, "cosh lower bounds", {"cosh_bounds"}, nullptr},
      {12, "Hoelder inequality with factor 2", {"holder"}, nullptr},
      {13, "dual norm equivalence", {"dual_norm_equivalence"}, nullptr},
      {14, "cumulant conjugate equals relative entropy", {"conjugate_lemma"}, conjugate_closed_form},
      {15, "Psi is twice the conjugate of Phi0 at half the argument", {"psi_conjugacy"}, psi_closed_form},
      {16, "unit ball decomposition", {"unit_ball_decomposition"}, nullptr},
      {17, "Gateaux derivative of the cumulant", {"gateaux_derivative"}, nullptr},
      {18,
       "atlas: charts, transitions, transports",
       {"chart_roundtrip", "transition_consistency", "transition_affinity", "transport_cocycle",
        "transition_cocycle", "transport_duality"},
       nullptr},
      {19, "continuity along constructed sequences", {"continuity"}, nullptr},
      {20, "commutative reduction to scalar formulas", {"commutative"}, nullptr},
  };

  int failed = 0, ran = 0;
  for (const auto& c : criteria) {
    if (only != 0 && c.id != only) continue;
    ++ran;
    bool ok = true;
    std::string detail;
    for (const auto& name : c.checks) {
      const CheckResult r = run_check(name, config);
      ok = ok && r.passed;
      if (!detail.empty()) detail += "; ";
      detail += name + fmt(" %.3g/%.3g", r.max_violation, r.tolerance);
      if (!r.note.empty()) detail += " (" + r.note + ")";
    }
    if (c.extra) {
      const Outcome o = c.extra();
      ok = ok && o.passed;
      detail += "; " + o.detail;
    }
    failed += !ok;
    std::printf("%s criterion %2d  %s: %s\n", ok ? "PASS" : "FAIL", c.id, c.title.c_str(), detail.c_str());
  }
  if (ran == 0) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  std::printf("%d/%d criteria passed\n", ran - failed, ran);
  return failed == 0 ? 0 : 1;
}
