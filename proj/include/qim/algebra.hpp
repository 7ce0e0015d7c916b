#pragma once

// Finite-dimensional von Neumann algebras: direct sums of full complex
// matrix algebras. Elements are stored block by block; nothing ever mixes
// two blocks.

#include <complex>
#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qim/errors.hpp"

namespace qim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

/// Eigenvalue floor below which a density matrix is not faithful at
/// working precision.
inline constexpr double kFaithfulFloor = 1e-9;
/// Entrywise Hermiticity tolerance for user-supplied blocks.
inline constexpr double kHermitianTolerance = 1e-12;
/// Trace tolerance for states (trace 1) and duals (trace 0).
inline constexpr double kTraceTolerance = 1e-12;
/// Most negative eigenvalue accepted for a positive functional.
inline constexpr double kPositivityTolerance = 1e-12;

class BlockShape {
 public:
  explicit BlockShape(std::vector<int> dims);

  const std::vector<int>& dims() const noexcept { return dims_; }
  std::size_t block_count() const noexcept { return dims_.size(); }
  int dim(std::size_t b) const { return dims_.at(b); }
  /// Total dimension n of the underlying Hilbert space.
  int total() const noexcept { return total_; }
  /// Real dimension of the self-adjoint part, sum of d^2.
  int real_dimension() const noexcept;
  bool commutative() const noexcept;
  std::string to_string() const;

  friend bool operator==(const BlockShape&, const BlockShape&) = default;

 private:
  std::vector<int> dims_;
  int total_ = 0;
};

void require_same_shape(const BlockShape& a, const BlockShape& b, const char* where);

/// Block-diagonal Hermitian matrix. Doubles as the self-adjoint observable
/// type and as the density of a hermitian functional under the trace form.
class Hermitian {
 public:
  /// Validates Hermiticity entrywise and stores the exactly symmetrized blocks.
  Hermitian(BlockShape shape, std::vector<Matrix> blocks);

  static Hermitian zero(const BlockShape& shape);
  static Hermitian identity(const BlockShape& shape);
  /// Diagonal matrix, `values` listed in block order (size n).
  static Hermitian diagonal(const BlockShape& shape, const std::vector<double>& values);
  /// Splits a dense n x n matrix into blocks; off-block entries must vanish.
  static Hermitian from_dense(const BlockShape& shape, const Matrix& dense);

  const BlockShape& shape() const noexcept { return shape_; }
  const std::vector<Matrix>& blocks() const noexcept { return blocks_; }
  const Matrix& block(std::size_t b) const { return blocks_.at(b); }
  Matrix dense() const;

  double trace() const;
  double frobenius_norm() const;
  /// Largest absolute eigenvalue.
  double spectral_norm() const;

  /// h + lambda * identity
  Hermitian shifted(double lambda) const;

  Hermitian operator-() const;
  Hermitian& operator+=(const Hermitian& other);
  Hermitian& operator-=(const Hermitian& other);
  Hermitian& operator*=(double s);

  friend Hermitian operator+(Hermitian a, const Hermitian& b) { return a += b; }
  friend Hermitian operator-(Hermitian a, const Hermitian& b) { return a -= b; }
  friend Hermitian operator*(Hermitian a, double s) { return a *= s; }
  friend Hermitian operator*(double s, Hermitian a) { return a *= s; }
  friend Hermitian operator/(Hermitian a, double s) { return a *= 1.0 / s; }

 private:
  struct Unchecked {};
  Hermitian(Unchecked, BlockShape shape, std::vector<Matrix> blocks)
      : shape_(std::move(shape)), blocks_(std::move(blocks)) {}

  BlockShape shape_;
  std::vector<Matrix> blocks_;

  friend class Spectrum;
};

using Observable = Hermitian;

/// Frobenius distance of two block matrices of the same shape.
double distance(const Hermitian& a, const Hermitian& b);

struct BlockSpectrum {
  Eigen::VectorXd values;  // ascending
  Matrix vectors;          // columns orthonormal
};

/// Blockwise eigendecomposition; the single primitive behind every
/// matrix function in the library.
class Spectrum {
 public:
  explicit Spectrum(const Hermitian& h);

  const BlockShape& shape() const noexcept { return shape_; }
  const std::vector<BlockSpectrum>& blocks() const noexcept { return blocks_; }

  /// All eigenvalues, ascending.
  std::vector<double> eigenvalues() const;
  /// Dense n x n orthonormal frame; column j belongs to eigenvalues()[j].
  Matrix frame() const;
  double min() const;
  double max() const;

  /// sum_i f(lambda_i) u_i u_i^*
  template <class F>
  Hermitian apply(F&& f) const {
    std::vector<Matrix> out;
    out.reserve(blocks_.size());
    for (const auto& b : blocks_) {
      Eigen::VectorXd fv(b.values.size());
      for (Eigen::Index i = 0; i < b.values.size(); ++i) fv(i) = f(b.values(i));
      Matrix m = b.vectors * fv.asDiagonal() * b.vectors.adjoint();
      out.push_back(0.5 * (m + m.adjoint()));
    }
    return Hermitian(Hermitian::Unchecked{}, shape_, std::move(out));
  }

 private:
  BlockShape shape_;
  std::vector<BlockSpectrum> blocks_;
};

inline Spectrum spectral(const Hermitian& h) { return Spectrum(h); }

template <class F>
Hermitian func_calc(const Hermitian& h, F&& f) {
  return Spectrum(h).apply(std::forward<F>(f));
}

Hermitian exp(const Hermitian& h);
/// Matrix logarithm; DomainError when an eigenvalue is <= kFaithfulFloor / 10.
Hermitian log(const Hermitian& h);

/// Positive semidefinite block matrix, not necessarily normalized.
class PositiveFunctional {
 public:
  explicit PositiveFunctional(Hermitian density);

  static PositiveFunctional zero(const BlockShape& shape);

  const Hermitian& density() const noexcept { return density_; }
  const BlockShape& shape() const noexcept { return density_.shape(); }
  const Spectrum& spectrum() const noexcept { return spectrum_; }
  double mass() const noexcept { return mass_; }

  PositiveFunctional scaled(double s) const;
  friend PositiveFunctional operator+(const PositiveFunctional& a, const PositiveFunctional& b);

 private:
  Hermitian density_;
  Spectrum spectrum_;
  double mass_;
};

/// Faithful normal state: positive definite density matrix of unit trace.
class State {
 public:
  explicit State(Hermitian density);

  /// Divides by the trace first, then validates.
  static State normalized(const Hermitian& positive);
  static State maximally_mixed(const BlockShape& shape);
  static State diagonal(const BlockShape& shape, const std::vector<double>& probabilities);

  const Hermitian& density() const noexcept { return functional_.density(); }
  const Hermitian& log_density() const noexcept { return log_density_; }
  const Spectrum& spectrum() const noexcept { return functional_.spectrum(); }
  const BlockShape& shape() const noexcept { return functional_.shape(); }

  operator const PositiveFunctional&() const noexcept { return functional_; }
  const PositiveFunctional& functional() const noexcept { return functional_; }

  /// phi(h) = Tr(rho h)
  double expect(const Hermitian& h) const;
  /// h - phi(h) * identity
  Hermitian center(const Hermitian& h) const;

 private:
  PositiveFunctional functional_;
  Hermitian log_density_;
};

/// Centered hermitian functional, represented by its traceless density.
class DualFunctional {
 public:
  explicit DualFunctional(Hermitian density);

  /// Removes the trace part exactly: h - Tr(h)/n * identity.
  static DualFunctional project(const Hermitian& h);
  static DualFunctional difference(const Hermitian& a, const Hermitian& b);
  static DualFunctional zero(const BlockShape& shape);

  const Hermitian& density() const noexcept { return density_; }
  const BlockShape& shape() const noexcept { return density_.shape(); }

  DualFunctional operator-() const { return DualFunctional(Trusted{}, -density_); }
  friend DualFunctional operator*(const DualFunctional& v, double s) {
    return DualFunctional(Trusted{}, v.density_ * s);
  }
  friend DualFunctional operator*(double s, const DualFunctional& v) { return v * s; }
  friend DualFunctional operator+(const DualFunctional& a, const DualFunctional& b) {
    return DualFunctional(Trusted{}, a.density_ + b.density_);
  }
  friend DualFunctional operator-(const DualFunctional& a, const DualFunctional& b) {
    return DualFunctional(Trusted{}, a.density_ - b.density_);
  }

 private:
  struct Trusted {};
  DualFunctional(Trusted, Hermitian density) : density_(std::move(density)) {}
  Hermitian density_;
};

/// Re Tr(V h): the duality pairing between functionals and observables.
double pair(const Hermitian& functional, const Hermitian& h);
inline double pair(const PositiveFunctional& w, const Hermitian& h) { return pair(w.density(), h); }
inline double pair(const State& w, const Hermitian& h) { return pair(w.density(), h); }
inline double pair(const DualFunctional& v, const Hermitian& h) { return pair(v.density(), h); }

/// Deterministic random source; all sampling draws from an explicit seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * std::uniform_real_distribution<double>(0.0, 1.0)(engine_);
  }
  std::uint64_t bits() { return engine_(); }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

/// GUE-like Hermitian matrix, entries of standard deviation `scale`.
Hermitian random_hermitian(Rng& rng, const BlockShape& shape, double scale);
/// exp(scale * H) / Tr, mixed slightly with the trace state if needed to
/// stay above the faithfulness floor.
State random_state(Rng& rng, const BlockShape& shape, double scale);
DualFunctional random_dual(Rng& rng, const BlockShape& shape, double scale);
/// Rank-deficient positive functional: a random state projected onto a
/// random subspace of the given rank inside each block.
PositiveFunctional random_rank_deficient(Rng& rng, const BlockShape& shape, int rank);

enum class SampleKind { observable, faithful_state, dual_functional };
using Sampled = std::variant<Hermitian, State, DualFunctional>;

Sampled sample(SampleKind kind, const BlockShape& shape, double scale, std::uint64_t seed);

}  // namespace qim
