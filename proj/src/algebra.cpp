#include "qim/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace qim {

BlockShape::BlockShape(std::vector<int> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw ShapeError("block shape must have at least one block");
  for (int d : dims_) {
    if (d < 1) throw ShapeError("block dimensions must be >= 1, got " + std::to_string(d));
    total_ += d;
  }
}

int BlockShape::real_dimension() const noexcept {
  int r = 0;
  for (int d : dims_) r += d * d;
  return r;
}

bool BlockShape::commutative() const noexcept {
  return std::all_of(dims_.begin(), dims_.end(), [](int d) { return d == 1; });
}

std::string BlockShape::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < dims_.size(); ++i) os << (i ? "," : "") << dims_[i];
  os << ']';
  return os.str();
}

void require_same_shape(const BlockShape& a, const BlockShape& b, const char* where) {
  if (!(a == b)) {
    throw ShapeError(std::string(where) + ": shape mismatch " + a.to_string() + " vs " +
                     b.to_string());
  }
}

// ---------------------------------------------------------------------------

Hermitian::Hermitian(BlockShape shape, std::vector<Matrix> blocks)
    : shape_(std::move(shape)), blocks_(std::move(blocks)) {
  if (blocks_.size() != shape_.block_count()) {
    throw ShapeError("expected " + std::to_string(shape_.block_count()) + " blocks, got " +
                     std::to_string(blocks_.size()));
  }
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    Matrix& m = blocks_[b];
    const int d = shape_.dim(b);
    if (m.rows() != d || m.cols() != d) {
      throw ShapeError("block " + std::to_string(b) + " must be " + std::to_string(d) + "x" +
                       std::to_string(d));
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= kHermitianTolerance)) {
      throw ValidationError("block " + std::to_string(b) + " is not Hermitian (deviation " +
                            std::to_string(asym) + ")");
    }
    m = (0.5 * (m + m.adjoint())).eval();
  }
}

Hermitian Hermitian::zero(const BlockShape& shape) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) blocks.push_back(Matrix::Zero(d, d));
  return Hermitian(Unchecked{}, shape, std::move(blocks));
}

Hermitian Hermitian::identity(const BlockShape& shape) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) blocks.push_back(Matrix::Identity(d, d));
  return Hermitian(Unchecked{}, shape, std::move(blocks));
}

Hermitian Hermitian::diagonal(const BlockShape& shape, const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != shape.total()) {
    throw ShapeError("diagonal needs " + std::to_string(shape.total()) + " values");
  }
  std::vector<Matrix> blocks;
  std::size_t k = 0;
  for (int d : shape.dims()) {
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = values[k++];
    blocks.push_back(std::move(m));
  }
  return Hermitian(Unchecked{}, shape, std::move(blocks));
}

Hermitian Hermitian::from_dense(const BlockShape& shape, const Matrix& dense) {
  const int n = shape.total();
  if (dense.rows() != n || dense.cols() != n) throw ShapeError("dense matrix has wrong size");
  std::vector<Matrix> blocks;
  int offset = 0;
  for (int d : shape.dims()) {
    blocks.push_back(dense.block(offset, offset, d, d));
    offset += d;
  }
  Matrix rebuilt = Matrix::Zero(n, n);
  offset = 0;
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const int d = shape.dim(b);
    rebuilt.block(offset, offset, d, d) = blocks[b];
    offset += d;
  }
  if ((dense - rebuilt).cwiseAbs().maxCoeff() > kHermitianTolerance) {
    throw ValidationError("matrix has entries outside the block-diagonal structure");
  }
  return Hermitian(shape, std::move(blocks));
}

Matrix Hermitian::dense() const {
  const int n = shape_.total();
  Matrix out = Matrix::Zero(n, n);
  int offset = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    const int d = shape_.dim(b);
    out.block(offset, offset, d, d) = blocks_[b];
    offset += d;
  }
  return out;
}

double Hermitian::trace() const {
  double t = 0.0;
  for (const auto& m : blocks_) t += m.trace().real();
  return t;
}

double Hermitian::frobenius_norm() const {
  double s = 0.0;
  for (const auto& m : blocks_) s += m.squaredNorm();
  return std::sqrt(s);
}

double Hermitian::spectral_norm() const {
  const Spectrum s(*this);
  return std::max(std::abs(s.min()), std::abs(s.max()));
}

Hermitian Hermitian::shifted(double lambda) const {
  Hermitian out = *this;
  for (auto& m : out.blocks_) m.diagonal().array() += lambda;
  return out;
}

Hermitian Hermitian::operator-() const {
  Hermitian out = *this;
  for (auto& m : out.blocks_) m = -m;
  return out;
}

Hermitian& Hermitian::operator+=(const Hermitian& other) {
  require_same_shape(shape_, other.shape_, "addition");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] += other.blocks_[b];
  return *this;
}

Hermitian& Hermitian::operator-=(const Hermitian& other) {
  require_same_shape(shape_, other.shape_, "subtraction");
  for (std::size_t b = 0; b < blocks_.size(); ++b) blocks_[b] -= other.blocks_[b];
  return *this;
}

Hermitian& Hermitian::operator*=(double s) {
  for (auto& m : blocks_) m *= s;
  return *this;
}

double distance(const Hermitian& a, const Hermitian& b) { return (a - b).frobenius_norm(); }

// ---------------------------------------------------------------------------

Spectrum::Spectrum(const Hermitian& h) : shape_(h.shape()) {
  blocks_.reserve(h.blocks().size());
  for (const auto& m : h.blocks()) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m);
    if (es.info() != Eigen::Success) throw DomainError("eigendecomposition failed");
    blocks_.push_back({es.eigenvalues(), es.eigenvectors()});
  }
}

std::vector<double> Spectrum::eigenvalues() const {
  std::vector<double> all;
  all.reserve(shape_.total());
  for (const auto& b : blocks_) all.insert(all.end(), b.values.data(), b.values.data() + b.values.size());
  std::sort(all.begin(), all.end());
  return all;
}

Matrix Spectrum::frame() const {
  const int n = shape_.total();
  struct Column {
    double value;
    int block;
    int index;
  };
  std::vector<Column> cols;
  std::vector<int> offsets;
  int offset = 0;
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    offsets.push_back(offset);
    for (Eigen::Index i = 0; i < blocks_[b].values.size(); ++i) {
      cols.push_back({blocks_[b].values(i), static_cast<int>(b), static_cast<int>(i)});
    }
    offset += shape_.dim(b);
  }
  std::stable_sort(cols.begin(), cols.end(),
                   [](const Column& a, const Column& c) { return a.value < c.value; });
  Matrix out = Matrix::Zero(n, n);
  for (int j = 0; j < n; ++j) {
    const auto& c = cols[j];
    const int d = shape_.dim(c.block);
    out.block(offsets[c.block], j, d, 1) = blocks_[c.block].vectors.col(c.index);
  }
  return out;
}

double Spectrum::min() const {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) m = std::min(m, b.values.minCoeff());
  return m;
}

double Spectrum::max() const {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& b : blocks_) m = std::max(m, b.values.maxCoeff());
  return m;
}

Hermitian exp(const Hermitian& h) {
  return func_calc(h, [](double x) { return std::exp(x); });
}

Hermitian log(const Hermitian& h) {
  const Spectrum s(h);
  if (!(s.min() > kFaithfulFloor / 10)) {
    throw DomainError("matrix logarithm needs eigenvalues > " + std::to_string(kFaithfulFloor / 10) +
                      ", smallest is " + std::to_string(s.min()));
  }
  return s.apply([](double x) { return std::log(x); });
}

// ---------------------------------------------------------------------------

PositiveFunctional::PositiveFunctional(Hermitian density)
    : density_(std::move(density)), spectrum_(density_), mass_(density_.trace()) {
  if (spectrum_.min() < -kPositivityTolerance) {
    throw ValidationError("functional is not positive: eigenvalue " + std::to_string(spectrum_.min()));
  }
}

PositiveFunctional PositiveFunctional::zero(const BlockShape& shape) {
  return PositiveFunctional(Hermitian::zero(shape));
}

PositiveFunctional PositiveFunctional::scaled(double s) const {
  if (s < 0) throw ValidationError("positive functionals scale by nonnegative factors only");
  return PositiveFunctional(density_ * s);
}

PositiveFunctional operator+(const PositiveFunctional& a, const PositiveFunctional& b) {
  return PositiveFunctional(a.density() + b.density());
}

State::State(Hermitian density)
    : functional_(std::move(density)), log_density_(Hermitian::zero(functional_.shape())) {
  if (std::abs(functional_.mass() - 1.0) > kTraceTolerance) {
    throw ValidationError("state must have unit trace, got " + std::to_string(functional_.mass()));
  }
  if (!(functional_.spectrum().min() >= kFaithfulFloor)) {
    throw ValidationError("state is not faithful at working precision: smallest eigenvalue " +
                          std::to_string(functional_.spectrum().min()));
  }
  log_density_ = functional_.spectrum().apply([](double x) { return std::log(x); });
}

State State::normalized(const Hermitian& positive) {
  const double t = positive.trace();
  if (!(t > 0)) throw ValidationError("cannot normalize a functional of zero mass");
  return State(positive / t);
}

State State::maximally_mixed(const BlockShape& shape) {
  return State(Hermitian::identity(shape) / shape.total());
}

State State::diagonal(const BlockShape& shape, const std::vector<double>& probabilities) {
  return State(Hermitian::diagonal(shape, probabilities));
}

double State::expect(const Hermitian& h) const { return pair(density(), h); }

Hermitian State::center(const Hermitian& h) const { return h.shifted(-expect(h)); }

DualFunctional::DualFunctional(Hermitian density) : density_(std::move(density)) {
  const double t = density_.trace();
  if (std::abs(t) > kTraceTolerance * std::max(1.0, density_.frobenius_norm())) {
    throw ValidationError("dual functional must be traceless, trace is " + std::to_string(t));
  }
}

DualFunctional DualFunctional::project(const Hermitian& h) {
  return DualFunctional(Trusted{}, h.shifted(-h.trace() / h.shape().total()));
}

DualFunctional DualFunctional::difference(const Hermitian& a, const Hermitian& b) {
  return DualFunctional(a - b);
}

DualFunctional DualFunctional::zero(const BlockShape& shape) {
  return DualFunctional(Trusted{}, Hermitian::zero(shape));
}

double pair(const Hermitian& functional, const Hermitian& h) {
  require_same_shape(functional.shape(), h.shape(), "pair");
  double s = 0.0;
  for (std::size_t b = 0; b < h.blocks().size(); ++b) {
    // Tr(V H) = sum_ij V_ij H_ji = sum_ij V_ij conj(H_ij) for Hermitian H
    s += (functional.block(b).array() * h.block(b).array().conjugate()).sum().real();
  }
  return s;
}

// ---------------------------------------------------------------------------

Hermitian random_hermitian(Rng& rng, const BlockShape& shape, double scale) {
  if (!(scale > 0)) throw ValidationError("sampling scale must be positive");
  std::vector<Matrix> blocks;
  const double off = scale / std::sqrt(2.0);
  for (int d : shape.dims()) {
    Matrix m(d, d);
    for (int i = 0; i < d; ++i) {
      m(i, i) = scale * rng.normal();
      for (int j = i + 1; j < d; ++j) {
        const double re = rng.normal();
        const double im = rng.normal();
        m(i, j) = off * Complex(re, im);
        m(j, i) = std::conj(m(i, j));
      }
    }
    blocks.push_back(std::move(m));
  }
  return Hermitian(shape, std::move(blocks));
}

State random_state(Rng& rng, const BlockShape& shape, double scale) {
  const Hermitian h = random_hermitian(rng, shape, scale);
  const Spectrum s(h);
  const double top = s.max();
  Hermitian rho = s.apply([top](double x) { return std::exp(x - top); });
  rho = rho / rho.trace();
  const double n = shape.total();
  if (Spectrum(rho).min() < 100 * kFaithfulFloor) {
    rho = rho * (1.0 - 1e-6) + Hermitian::identity(shape) * (1e-6 / n);
  }
  return State::normalized(rho);
}

DualFunctional random_dual(Rng& rng, const BlockShape& shape, double scale) {
  return DualFunctional::project(random_hermitian(rng, shape, scale));
}

PositiveFunctional random_rank_deficient(Rng& rng, const BlockShape& shape, int rank) {
  std::vector<Matrix> blocks;
  for (int d : shape.dims()) {
    const int r = std::clamp(rank, 0, d);
    Matrix g(d, r);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < r; ++j) g(i, j) = Complex(rng.normal(), rng.normal());
    blocks.push_back(g * g.adjoint());
  }
  Hermitian h(shape, std::move(blocks));
  const double t = h.trace();
  return PositiveFunctional(t > 0 ? h / t : h);
}

Sampled sample(SampleKind kind, const BlockShape& shape, double scale, std::uint64_t seed) {
  Rng rng(seed);
  switch (kind) {
    case SampleKind::observable:
      return random_hermitian(rng, shape, scale);
    case SampleKind::faithful_state:
      return random_state(rng, shape, scale);
    case SampleKind::dual_functional:
      return random_dual(rng, shape, scale);
  }
  throw ValidationError("unknown sample kind");
}

}  // namespace qim
