#include "checks.hpp"
#include "qim/duality.hpp"
#include "qim/entropy.hpp"
#include "qim/perturbation.hpp"

namespace qim::verify {

namespace {

double entropy(const PositiveFunctional& a, const PositiveFunctional& b) {
  return relative_entropy(a, b).as_double();
}

double positive_mass(const Hermitian& v) { return jordan_split(v).first.mass(); }

/// Traceless functional rescaled so that Tr v+ = mass.
Hermitian dual_with_mass(Rng& rng, const BlockShape& shape, double mass) {
  const Hermitian v = random_dual(rng, shape, 1.0).density();
  return v * (mass / positive_mass(v));
}

/// A state within relative entropy 1 of phi.
State entropy_ball_state(Rng& rng, const State& phi) {
  const State other = random_state(rng, phi.shape(), 1.0);
  double t = rng.uniform();
  for (;;) {
    const State w = State::normalized(other.density() * t + phi.density() * (1.0 - t));
    if (entropy(w, phi) <= 1.0) return w;
    t *= 0.5;
  }
}

Outcome conjugate_lemma(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const State w = random_state(s.rng, s.shape, 1.0);
  const ConjugateValue c = cumulant_conjugate(phi, DualFunctional::difference(w.density(), phi.density()));
  return {std::abs(c.value - entropy(w, phi))};
}

Outcome cumulant_conjugacy(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult p = perturb(phi, h);
  const auto value = [&](const State& w) { return w.expect(h) - entropy(w, phi); };
  double worst = std::abs(value(p.state) - p.c);
  // States approaching the maximizer along random segments.
  for (double t : {1.0, 0.5, 0.1, 1e-3}) {
    const State other = random_state(s.rng, s.shape, 1.0);
    const State w = State::normalized(other.density() * t + p.state.density() * (1.0 - t));
    worst = std::max(worst, excess(value(w), p.c));
  }
  return {worst};
}

Outcome fbar_conjugacy(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult p = perturb(phi, h);
  const auto value = [&](const PositiveFunctional& w) { return pair(w, h) - entropy(w, phi) + w.mass(); };
  double worst = std::abs(value(p.state.functional().scaled(p.mass)) - p.mass);
  for (int i = 0; i < 10; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    worst = std::max(worst, excess(value(w.functional().scaled(s.rng.uniform(0.05, 3.0))), p.mass));
  }
  return {worst};
}

Outcome psi_conjugacy(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian v = dual_with_mass(s.rng, s.shape, s.rng.uniform(0.05, 0.7));
  const Decomposition d = psi_decompose(phi, DualFunctional::project(v));
  const ConjugateValue c = conjugate(YoungFunction::phi0(phi), v * 0.5);
  return {std::abs(d.psi_value - 2.0 * c.value)};
}

Outcome dual_norm_equivalence(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const bool centered_case = s.index % 2 == 1;
  const YoungFunction f = centered_case ? YoungFunction::phi0(phi) : YoungFunction::phi(phi);
  const Hermitian raw = random_hermitian(s.rng, s.shape, log_uniform(s.rng, 0.3, 2.0));
  const Hermitian x = centered_case ? phi.center(raw) : raw;
  const double n = luxemburg_norm(f, x).value;
  const DualNorm d = dual_norm(YoungFunction::conjugate_of(f), x);
  return {std::max(excess(n, d.value), excess(d.value, 2.0 * n)),
          std::abs(d.value - d.amemiya) / (1.0 + d.value)};
}

Outcome holder(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const bool centered_case = s.index % 2 == 1;
  const YoungFunction f = centered_case ? YoungFunction::phi0(phi) : YoungFunction::phi(phi);
  const Hermitian x = centered_case ? centered(s.rng, phi, 1.0) : random_hermitian(s.rng, s.shape, 1.0);
  const Hermitian v = centered_case ? dual_with_mass(s.rng, s.shape, s.rng.uniform(0.05, 2.0))
                                    : random_hermitian(s.rng, s.shape, 0.5);
  const double nx = luxemburg_norm(f, x).value;
  const double nv = luxemburg_norm(YoungFunction::conjugate_of(f), v).value;
  return {excess(std::abs(pair(v, x)), 2.0 * nx * nv)};
}

Outcome young_inequality(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const bool centered_case = s.index % 2 == 1;
  const YoungFunction f = centered_case ? YoungFunction::phi0(phi) : YoungFunction::phi(phi);
  const Hermitian v = centered_case ? dual_with_mass(s.rng, s.shape, s.rng.uniform(0.05, 0.4))
                                    : random_hermitian(s.rng, s.shape, 0.5);
  const ConjugateValue c = conjugate(f, v);
  // The certificate itself must be tight.
  double worst = c.gap > 1e-6 ? c.gap : 0.0;
  for (int i = 0; i < 20; ++i) {
    const Hermitian raw = random_hermitian(s.rng, s.shape, log_uniform(s.rng, 0.1, 3.0));
    const Hermitian x = centered_case ? phi.center(raw) : raw;
    worst = std::max(worst, excess(std::abs(pair(v, x)), young_eval(f, x) + c.value));
  }
  return {worst};
}

Outcome polar_sandwich(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  // v in D* = { cbar* <= 1 } with cbar*(v) = S(v + phi, phi).
  const State w = entropy_ball_state(s.rng, phi);
  const Hermitian half = (w.density() - phi.density()) * 0.5;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    // x on the boundary of D = { c_phi <= 1 } along a random centered ray.
    const Hermitian dir = centered(s.rng, phi, 1.0);
    double lo = 0.0, hi = 1.0;
    while (cumulant(phi, dir * hi) < 1.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-14 * hi; ++it) {
      const double mid = 0.5 * (lo + hi);
      (cumulant(phi, dir * mid) < 1.0 ? lo : hi) = mid;
    }
    worst = std::max(worst, excess(pair(half, dir * lo), 1.0));
  }
  return {worst};
}

Outcome unit_ball_decomposition(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const YoungFunction f = YoungFunction::phi0(phi);
  const Hermitian v = random_dual(s.rng, s.shape, 1.0).density();
  const double a = dual_norm(f, v, {false}).value;

  // Forward: inside the dual unit ball, Psi <= 1.
  const Hermitian inside = v * (s.rng.uniform(0.2, 1.0) / a);
  const Decomposition d = psi_decompose(phi, DualFunctional::project(inside));
  const double violation = excess(d.psi_value, 1.0);

  // Reverse (informational): the dual norm on the boundary of the Psi unit
  // ball, by bisection along the ray of v.
  double lo = 0.0, hi = 1.0 / positive_mass(v);
  for (int it = 0; it < 60; ++it) {
    const double mid = 0.5 * (lo + hi);
    const Decomposition m = psi_decompose(phi, DualFunctional::project(v * mid));
    (!m.infinite && m.psi_value <= 1.0 ? lo : hi) = mid;
  }
  return {violation, lo * a};
}

Outcome psi_young(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian a = dual_with_mass(s.rng, s.shape, s.rng.uniform(0.05, 0.45));
  const Hermitian b = dual_with_mass(s.rng, s.shape, s.rng.uniform(0.05, 0.45));
  return {young_violation(YoungFunction::psi0(phi), a, b, s.rng.uniform())};
}

}  // namespace

void add_duality_checks(std::vector<Check>& out) {
  out.push_back({"conjugate_lemma", "cbar*_phi(v) = S(v + phi, phi)", conjugate_lemma});
  out.push_back({"cumulant_conjugacy", "sup_w { w(h) - S(w,phi) } = c_phi(h), attained at [phi^h]",
                 cumulant_conjugacy});
  out.push_back({"fbar_conjugacy", "sup_w { w(h) - S(w,phi) + w(1) } = exp(c_phi(h)), attained at phi^h",
                 fbar_conjugacy});
  out.push_back({"psi_conjugacy", "Psi_phi0(v) = 2 Phi_phi0*(v/2)", psi_conjugacy, 20});
  Check equivalence{"dual_norm_equivalence", "||x||_Phi <= ||x||*_Phi* <= 2 ||x||_Phi", dual_norm_equivalence,
                    20};
  equivalence.info_label = "max relative gap between direct and Amemiya dual norms";
  out.push_back(std::move(equivalence));
  out.push_back({"holder", "|v(x)| <= 2 ||x||_Phi ||v||_Phi*", holder});
  out.push_back({"young_inequality", "|v(x)| <= Phi(x) + Phi*(v)", young_inequality});
  out.push_back({"polar_sandwich", "cbar*_phi(v) <= 1 implies v/2 <= 1 on { c_phi <= 1 }", polar_sandwich});
  Check ball{"unit_ball_decomposition", "||v||*_phi0 <= 1 implies Psi_phi0(v) <= 1", unit_ball_decomposition,
             10};
  ball.info_label = "max ||v||*_phi0 on the Psi_phi0 unit sphere (reverse bound 8, informational)";
  out.push_back(std::move(ball));
  out.push_back({"psi_young", "Psi_phi0: Psi(0) = 0, even, nonnegative, convex, infinite off the state differences",
                 psi_young});
}

}  // namespace qim::verify
