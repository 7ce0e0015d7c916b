#include <algorithm>

#include "checks.hpp"
#include "classical.hpp"
#include "qim/duality.hpp"
#include "qim/entropy.hpp"
#include "qim/manifold.hpp"
#include "qim/perturbation.hpp"

namespace qim::verify {

namespace {

namespace cl = classical;

cl::Vec diagonal_of(const Hermitian& h) {
  cl::Vec d;
  for (const auto& b : h.blocks()) d.push_back(b(0, 0).real());
  return d;
}

double rel(double a, double b) { return std::abs(a - b) / (1.0 + std::abs(b)); }

double rel(const Hermitian& a, const cl::Vec& b) {
  const cl::Vec d = diagonal_of(a);
  double worst = 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) worst = std::max(worst, rel(d[i], b[i]));
  return worst;
}

Outcome commutative(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const State omega = random_state(s.rng, s.shape, 1.0);
  const Hermitian h = random_hermitian(s.rng, s.shape, 1.0);
  const cl::Vec q = diagonal_of(phi.density()), p = diagonal_of(omega.density()), x = diagonal_of(h);
  const cl::Vec xc = diagonal_of(phi.center(h));

  double worst = rel(relative_entropy(omega, phi).value, cl::kl(p, q));
  worst = std::max(worst, rel(cumulant(phi, h), cl::cumulant(q, x)));
  worst = std::max(worst, rel(perturb(phi, h).state.density(), cl::gibbs(q, x)));
  worst = std::max(worst, rel(young_eval(YoungFunction::phi(phi), h), cl::phi_young(q, x)));
  worst = std::max(worst, rel(young_eval(YoungFunction::phi0(phi), phi.center(h)), cl::phi0_young(q, xc)));
  worst = std::max(worst, rel(luxemburg_norm(YoungFunction::phi(phi), h).value, cl::luxemburg(cl::phi_young, q, x)));
  worst = std::max(worst, rel(luxemburg_norm(YoungFunction::phi0(phi), phi.center(h)).value,
                              cl::luxemburg(cl::phi0_young, q, xc)));

  cl::Vec expected = cl::gibbs(q, xc);
  for (std::size_t i = 0; i < q.size(); ++i) expected[i] -= q[i];
  worst = std::max(worst, rel(gateaux_derivative(phi, phi.center(h)).density(), expected));

  worst = std::max(worst, rel(chart_inverse(Chart(phi), omega).h, cl::log_ratio(p, q)));

  // Psi on a feasible traceless diagonal.
  const DualFunctional v = random_dual(s.rng, s.shape, 1.0);
  const double tau = jordan_split(v).first.mass();
  const DualFunctional feasible = v * (s.rng.uniform(0.05, 0.9) / tau);
  worst = std::max(worst,
                   rel(psi_decompose(phi, feasible).psi_value, cl::psi(q, diagonal_of(feasible.density()))));
  return {worst};
}

}  // namespace

void add_reduction_checks(std::vector<Check>& out) {
  Check c{"commutative", "diagonal inputs reproduce the scalar formulas (KL, log-sum-exp, Young, Psi)",
          commutative};
  c.shapes = [](const std::vector<BlockShape>& dims) {
    std::vector<BlockShape> out;
    for (const auto& d : dims)
      if (d.commutative()) out.push_back(d);
    if (!out.empty()) return out;
    // No commutative shape requested: use the diagonal algebra of each size.
    for (const auto& d : dims) {
      BlockShape flat(std::vector<int>(d.total(), 1));
      if (std::find(out.begin(), out.end(), flat) == out.end()) out.push_back(flat);
    }
    return out;
  };
  out.push_back(std::move(c));
}

}  // namespace qim::verify
