#include "qim/perturbation.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qim {

namespace {

double log_sum_exp(const std::vector<Eigen::VectorXd>& values) {
  double top = -std::numeric_limits<double>::infinity();
  for (const auto& v : values) top = std::max(top, v.maxCoeff());
  double s = 0.0;
  for (const auto& v : values) s += (v.array() - top).exp().sum();
  return top + std::log(s);
}

}  // namespace

double cumulant(const State& phi, const Hermitian& h) {
  require_same_shape(phi.shape(), h.shape(), "cumulant");
  const Hermitian a = phi.log_density() + h;
  std::vector<Eigen::VectorXd> values;
  values.reserve(a.blocks().size());
  for (const auto& m : a.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    values.push_back(es.eigenvalues());
  }
  return log_sum_exp(values);
}

Gibbs gibbs(const State& phi, const Hermitian& h) {
  require_same_shape(phi.shape(), h.shape(), "gibbs");
  const Spectrum s(phi.log_density() + h);
  std::vector<Eigen::VectorXd> values;
  for (const auto& b : s.blocks()) values.push_back(b.values);
  const double c = log_sum_exp(values);
  Hermitian rho = s.apply([c](double x) { return std::exp(x - c); });
  // Renormalize away the rounding in the exponentials.
  rho = rho / rho.trace();
  return {c, std::move(rho)};
}

PerturbationResult perturb(const State& phi, const Hermitian& h) {
  Gibbs g = gibbs(phi, h);
  return {g.cumulant, State(std::move(g.density)), std::exp(g.cumulant)};
}

Hermitian PerturbedVector::functional(const BlockShape& shape) const {
  std::vector<Matrix> blocks;
  for (const auto& x : xi) blocks.push_back(x * x.adjoint());
  return Hermitian(shape, std::move(blocks));
}

PerturbedVector perturbed_vector_oracle(const State& phi, const Hermitian& h) {
  require_same_shape(phi.shape(), h.shape(), "perturbed_vector_oracle");
  if (phi.shape().total() > kOracleDimensionCap) {
    throw DomainError("superoperator oracle is capped at total dimension " +
                      std::to_string(kOracleDimensionCap));
  }
  const Hermitian root = phi.spectrum().apply([](double x) { return std::sqrt(x); });

  PerturbedVector out{{}, 0.0};
  for (std::size_t b = 0; b < h.blocks().size(); ++b) {
    const int d = phi.shape().dim(b);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix& log_rho = phi.log_density().block(b);
    // Column-major vec: vec(A X) = (I (x) A) vec X, vec(X B) = (B^T (x) I) vec X.
    const Matrix left = Eigen::kroneckerProduct(id, Matrix(log_rho + h.block(b))).eval();
    const Matrix right = Eigen::kroneckerProduct(Matrix(log_rho.transpose()), id).eval();
    const Matrix generator = 0.5 * (left - right);

    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (generator + generator.adjoint()));
    const Matrix& u = es.eigenvectors();
    const Eigen::VectorXcd e = es.eigenvalues().array().exp().cast<Complex>();

    const Matrix& r = root.block(b);
    const Eigen::VectorXcd vec_root = Eigen::Map<const Eigen::VectorXcd>(r.data(), d * d);
    const Eigen::VectorXcd vec_xi = u * (e.asDiagonal() * (u.adjoint() * vec_root));

    Matrix xi = Eigen::Map<const Matrix>(vec_xi.data(), d, d);
    out.mass += xi.squaredNorm();
    out.xi.push_back(std::move(xi));
  }
  return out;
}

DualFunctional gateaux_derivative(const State& phi, const Hermitian& h) {
  const Gibbs g = gibbs(phi, h);
  return DualFunctional::project(g.density - phi.density());
}

}  // namespace qim
