#include "checks.hpp"
#include "qim/entropy.hpp"

namespace qim::verify {

namespace {

double entropy(const PositiveFunctional& a, const PositiveFunctional& b) {
  return relative_entropy(a, b).as_double();
}

Outcome donald(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  // Alternate between the two-part weighted form and three-part splits.
  const int parts_count = s.index % 2 == 0 ? 2 : 3;
  std::vector<double> weights;
  double total = 0.0;
  for (int i = 0; i < parts_count; ++i) total += weights.emplace_back(s.rng.uniform(0.1, 1.0));
  std::vector<PositiveFunctional> parts;
  double scale = 0.0;
  for (int i = 0; i < parts_count; ++i) {
    const State w = random_state(s.rng, s.shape, 1.0);
    parts.push_back(w.functional().scaled(weights[i] / total));
    scale += entropy(parts.back(), phi);
  }
  return {donald_residual(parts, phi) / (1.0 + scale)};
}

Outcome joint_convexity(Sample& s) {
  const State w1 = random_state(s.rng, s.shape, 1.0), w2 = random_state(s.rng, s.shape, 1.0);
  const State p1 = random_state(s.rng, s.shape, 1.0), p2 = random_state(s.rng, s.shape, 1.0);
  const double l = s.rng.uniform();
  const State w = State::normalized(w1.density() * l + w2.density() * (1.0 - l));
  const State p = State::normalized(p1.density() * l + p2.density() * (1.0 - l));
  return {excess(entropy(w, p), l * entropy(w1, p1) + (1.0 - l) * entropy(w2, p2))};
}

Outcome strict_positivity(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  const State other = random_state(s.rng, s.shape, 1.0);
  // Exact coincidence, and a 1e-7 mixture whose entropy is ~1e-14.
  double worst = 0.0;
  for (double eps : {0.0, 1e-7}) {
    const State w = State::normalized(phi.density() * (1.0 - eps) + other.density() * eps);
    if (entropy(w, phi) <= 1e-12) worst = std::max(worst, distance(w.density(), phi.density()));
  }
  // Nonnegativity on an unrelated pair, within the state tolerance.
  worst = std::max(worst, excess(-entropy(other, phi), 1e-10));
  return {worst};
}

Outcome face_support(Sample& s) {
  const State phi = random_state(s.rng, s.shape, 1.0);
  // Compress a random state away from one random direction of one block.
  const State base = random_state(s.rng, s.shape, 1.0);
  const std::size_t b = static_cast<std::size_t>(s.rng.bits() % s.shape.block_count());
  std::vector<Matrix> blocks = base.density().blocks();
  const int d = s.shape.dim(b);
  Eigen::VectorXcd u(d);
  for (int i = 0; i < d; ++i) u(i) = Complex(s.rng.normal(), s.rng.normal());
  u.normalize();
  const Matrix keep = Matrix::Identity(d, d) - u * u.adjoint();
  blocks[b] = keep * blocks[b] * keep;
  const PositiveFunctional deficient(Hermitian(s.shape, std::move(blocks)));
  int wrong = 0;
  // Every functional has finite entropy against a faithful state ...
  wrong += relative_entropy(deficient, phi).infinite;
  // ... and a faithful state against a rank-deficient reference does not.
  wrong += !relative_entropy(phi, deficient).infinite;
  // A functional against itself stays finite despite the deficiency.
  wrong += relative_entropy(deficient, deficient).infinite;
  return {static_cast<double>(wrong)};
}

}  // namespace

void add_entropy_checks(std::vector<Check>& out) {
  out.push_back({"donald_identity", "S(psi,phi) + sum_i S(psi_i,psi) = sum_i S(psi_i,phi), psi = sum_i psi_i",
                 donald});
  out.push_back({"joint_convexity", "S(l w1 + (1-l) w2, l p1 + (1-l) p2) <= l S(w1,p1) + (1-l) S(w2,p2)",
                 joint_convexity});
  out.push_back({"strict_positivity", "S(w,phi) = 0 implies w = phi; S >= 0 on states", strict_positivity});
  out.push_back({"face_support", "S(w,phi) = +inf iff supp w is not inside supp phi", face_support});
}

}  // namespace qim::verify
