#include "checks.hpp"
#include "qim/entropy.hpp"
#include "qim/perturbation.hpp"

namespace qim::verify {

namespace {

double entropy(const PositiveFunctional& a, const PositiveFunctional& b) {
  return relative_entropy(a, b).as_double();
}

/// omega(h) - S(omega, phi)
double free_energy(const State& omega, const State& phi, const Hermitian& h) {
  return omega.expect(h) - entropy(omega, phi);
}

Outcome variational(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult p = perturb(phi, h);
  double worst = std::abs(free_energy(p.state, phi, h) - p.c);
  for (int i = 0; i < 10; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    worst = std::max(worst, excess(free_energy(w, phi, h), p.c));
  }
  return {worst};
}

Outcome cumulant_bounds(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const double c = cumulant(phi, h);
  const double upper = std::log(phi.expect(exp(h)));
  return {std::max(excess(phi.expect(h), c), excess(c, upper))};
}

Outcome gibbs_identity(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult p = perturb(phi, h);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    worst = std::max(worst, std::abs(free_energy(w, phi, h) - (p.c - entropy(w, p.state))));
  }
  return {worst};
}

Outcome chain_rule(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const Hermitian k = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult ph = perturb(phi, h);
  const PerturbationResult phk = perturb(phi, h + k);
  const PerturbationResult nested = perturb(ph.state, k);
  const double scalar = std::abs(phk.c - nested.c - ph.c);
  return {std::max(scalar, distance(nested.state.density(), phk.state.density()))};
}

Outcome inversion(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const State back = perturb(perturb(phi, h).state, -h).state;
  return {distance(back.density(), phi.density())};
}

Outcome uniqueness(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const Hermitian k = h.shifted(s.rng.uniform(-2.0, 2.0));
  const State a = perturb(phi, h).state, b = perturb(phi, k).state;
  // Equal states force log-densities differing by a scalar.
  const Hermitian diff = log(a.density()) - log(b.density());
  const double non_scalar = diff.shifted(-diff.trace() / s.shape.total()).frobenius_norm();
  // State coincidence is required at 1e-12; rescaled onto the 1e-9 scale.
  const double coincidence = distance(a.density(), b.density()) * 1e3;
  return {std::max(non_scalar, coincidence)};
}

Outcome continuity(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const State target = perturb(phi, h).state;
  // Along a ray s -> c(h + s k) is convex; orienting k uphill at s = 0
  // ([phi^h](k) >= 0) makes |c(h + s k) - c(h)| increase in s, so the
  // sequence s = 2^-n is monotone as required.
  Hermitian k = unit(random_hermitian(s.rng, s.shape, 1.0));
  if (target.expect(k) < 0.0) k = -k;
  const double c = cumulant(phi, h);

  double worst = 0.0;
  double previous = kInf;
  for (int n = 1; n <= 40; ++n) {
    const double step = std::ldexp(1.0, -n);
    const double gap = std::abs(cumulant(phi, h + k * step) - c);
    // Monotone decrease, up to rounding of c itself.
    worst = std::max(worst, excess(gap, previous + 1e-15 * (1.0 + std::abs(c))));
    previous = gap;
  }
  const double last = std::ldexp(1.0, -40);
  worst = std::max(worst, previous);
  worst = std::max(worst, entropy(perturb(phi, h + k * last).state, target));
  // Vanishing sequence: c_phi(t h_n) -> 0 for every fixed t.
  for (double t : {-5.0, -2.0, -1.0, 1.0, 2.0, 5.0}) {
    worst = std::max(worst, std::abs(cumulant(phi, k * (t * last))));
  }
  return {worst};
}

Outcome modular_oracle(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const PerturbationResult p = perturb(phi, h);
  const PerturbedVector xi = perturbed_vector_oracle(phi, h);
  const double mass = std::abs(xi.mass - p.mass) / p.mass;
  const double functional = distance(xi.functional(s.shape), p.state.density() * p.mass) / p.mass;
  return {std::max(mass, functional)};
}

Outcome scalar_shift(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const double lambda = s.rng.uniform(-3.0, 3.0);
  const PerturbationResult a = perturb(phi, h), b = perturb(phi, h.shifted(lambda));
  return {std::max(std::abs(b.c - a.c - lambda), distance(a.state.density(), b.state.density()))};
}

Outcome gateaux(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = centered(s.rng, phi, 1.0);
  const DualFunctional d = gateaux_derivative(phi, h);
  constexpr double t = 1e-5;
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const Hermitian k = random_hermitian(s.rng, s.shape, 1.0);
    const double fd = (cumulant(phi, h + k * t) - cumulant(phi, h - k * t)) / (2.0 * t);
    // d/dt c(h + t k) = [phi^h](k) = (d + phi)(k)
    worst = std::max(worst, std::abs(fd - pair(d, k) - phi.expect(k)) / (1.0 + k.frobenius_norm()));
  }
  return {worst};
}

}  // namespace

void add_perturbation_checks(std::vector<Check>& out) {
  out.push_back({"variational_principle", "w(h) - S(w,phi) <= c_phi(h), equality at [phi^h]", variational});
  out.push_back({"cumulant_bounds", "phi(h) <= c_phi(h) <= log phi(e^h)", cumulant_bounds});
  out.push_back({"gibbs_identity", "w(h) - S(w,phi) = c_phi(h) - S(w,[phi^h])", gibbs_identity});
  out.push_back({"chain_rule", "c_phi(h+k) = c_[phi^h](k) + c_phi(h), [[phi^h]^k] = [phi^(h+k)]", chain_rule});
  out.push_back({"inversion", "[[phi^h]^(-h)] = phi", inversion});
  out.push_back({"uniqueness", "[phi^h] = [phi^k] implies h - k = phi(h - k) 1", uniqueness});
  out.push_back({"continuity", "h_n -> h implies c_phi(h_n) -> c_phi(h) and [phi^h_n] -> [phi^h]", continuity});
  out.push_back({"modular_oracle", "<xi, a xi> = phi^h(a), xi = exp((log Delta_phi + h)/2) xi_phi",
                 modular_oracle,
                 0,
                 [](const std::vector<BlockShape>& dims) {
                   std::vector<BlockShape> small;
                   for (const auto& d : dims)
                     if (d.total() <= kOracleDimensionCap) small.push_back(d);
                   return small;
                 }});
  out.push_back({"scalar_shift", "c_phi(h + l) = c_phi(h) + l, [phi^(h+l)] = [phi^h]", scalar_shift});
  out.push_back({"gateaux_derivative", "d/dt c_phi(h + t k) = ([phi^h] - phi)(k) + phi(k)", gateaux, 20});
}

}  // namespace qim::verify
