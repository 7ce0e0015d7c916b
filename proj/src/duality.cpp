#include "qim/duality.hpp"

#include <cfloat>
#include <cmath>
#include <functional>
#include <limits>

#include "qim/entropy.hpp"
#include "qim/perturbation.hpp"

namespace qim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kExpLimit = 700.0;

Hermitian remove_trace(const Hermitian& x) { return x.shifted(-x.trace() / x.shape().total()); }

double inner(const Hermitian& a, const Hermitian& b) { return pair(a, b); }

double positive_mass(const Hermitian& v) {
  double s = 0.0;
  for (double x : Spectrum(v).eigenvalues()) s += std::max(x, 0.0);
  return s;
}

// ---------------------------------------------------------------------------
// Gradient ascent with Barzilai-Borwein steps.

struct Point {
  double value;
  Hermitian gradient;
};
/// nullopt marks a point outside the effective domain (value -infinity).
using Objective = std::function<std::optional<Point>(const Hermitian&)>;

struct Ascent {
  Hermitian x;
  double value;
  double gradient_norm;
  int iterations;
};

Ascent ascend(const Objective& f, Hermitian x, const AscentOptions& options, const std::string& what) {
  std::optional<Point> p = f(x);
  if (!p) {
    x = Hermitian::zero(x.shape());
    p = f(x);
  }
  if (!p) throw DomainError(what + ": starting point is outside the domain");

  double step = 1.0;
  for (int it = 0;; ++it) {
    const double gn = p->gradient.frobenius_norm();
    if (gn <= options.gradient_tolerance) return {std::move(x), p->value, gn, it};
    if (it >= options.max_iterations) {
      throw ConvergenceError(what + ": iteration cap reached", p->value, gn * (1.0 + x.frobenius_norm()));
    }

    const double slack = 4.0 * DBL_EPSILON * (1.0 + std::abs(p->value));
    double t = step;
    std::optional<Point> next;
    Hermitian xn = x;
    for (int ls = 0; ls < 80; ++ls, t *= 0.5) {
      xn = x + p->gradient * t;
      std::optional<Point> q = f(xn);
      if (!q) continue;
      const bool armijo = q->value >= p->value + 1e-4 * t * gn * gn - slack;
      // Near the optimum value differences drown in rounding; fall back
      // on the gradient norm.
      const bool flat = q->value >= p->value - slack && q->gradient.frobenius_norm() < gn;
      if (armijo || flat) {
        next = std::move(q);
        break;
      }
    }
    if (!next) {
      throw ConvergenceError(what + ": line search stalled", p->value, gn * (1.0 + x.frobenius_norm()));
    }

    const Hermitian s = xn - x;
    const Hermitian y = next->gradient - p->gradient;
    const double sy = inner(s, y);
    step = sy < 0.0 ? inner(s, s) / -sy : 2.0 * t;
    step = std::clamp(step, 1e-10, 1e10);
    x = std::move(xn);
    p = std::move(next);
  }
}

ConjugateValue finish(const Ascent& a, Hermitian maximizer) {
  return {a.value, std::move(maximizer), a.gradient_norm * (1.0 + a.x.frobenius_norm()), a.gradient_norm,
          a.iterations, false};
}

ConjugateValue infinite_value(const BlockShape& shape) {
  return {kInf, Hermitian::zero(shape), 0.0, 0.0, 0, true};
}

Hermitian start(const AscentOptions& o, const BlockShape& shape) {
  if (o.warm_start && o.warm_start->shape() == shape) return *o.warm_start;
  return Hermitian::zero(shape);
}

// ---------------------------------------------------------------------------
// Orthonormal real coordinates for Hermitian blocks under Re Tr(a b):
// diagonal entries, then sqrt2 Re and sqrt2 Im of each upper entry.

struct BlockBasis {
  int d;
  // Index pair for coordinate k >= d, in (i, j, imaginary) form.
  std::vector<std::tuple<int, int, bool>> off;

  explicit BlockBasis(int dim) : d(dim) {
    for (int i = 0; i < d; ++i)
      for (int j = i + 1; j < d; ++j) {
        off.emplace_back(i, j, false);
        off.emplace_back(i, j, true);
      }
  }

  int size() const { return d * d; }

  Matrix element(int k) const {
    Matrix e = Matrix::Zero(d, d);
    if (k < d) {
      e(k, k) = 1.0;
      return e;
    }
    const auto [i, j, im] = off[k - d];
    const Complex z = im ? Complex(0.0, M_SQRT1_2) : Complex(M_SQRT1_2, 0.0);
    e(i, j) = z;
    e(j, i) = std::conj(z);
    return e;
  }

  Eigen::VectorXd coords(const Matrix& m) const {
    Eigen::VectorXd x(size());
    for (int i = 0; i < d; ++i) x(i) = m(i, i).real();
    for (std::size_t k = 0; k < off.size(); ++k) {
      const auto [i, j, im] = off[k];
      x(d + k) = M_SQRT2 * (im ? m(i, j).imag() : m(i, j).real());
    }
    return x;
  }

  Matrix matrix(const Eigen::VectorXd& x) const {
    Matrix m = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) m(i, i) = x(i);
    for (std::size_t k = 0; k < off.size(); ++k) {
      const auto [i, j, im] = off[k];
      const Complex z = im ? Complex(0.0, x(d + k) * M_SQRT1_2) : Complex(x(d + k) * M_SQRT1_2, 0.0);
      m(i, j) += z;
      m(j, i) += std::conj(z);
    }
    return m;
  }
};

class Coordinates {
 public:
  explicit Coordinates(const BlockShape& shape) : shape_(shape) {
    int offset = 0;
    for (int d : shape.dims()) {
      bases_.emplace_back(d);
      offsets_.push_back(offset);
      offset += d * d;
    }
    size_ = offset;
  }

  int size() const { return size_; }
  const BlockBasis& basis(std::size_t b) const { return bases_[b]; }
  int offset(std::size_t b) const { return offsets_[b]; }

  Eigen::VectorXd to(const Hermitian& h) const {
    Eigen::VectorXd x(size_);
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      x.segment(offsets_[b], bases_[b].size()) = bases_[b].coords(h.block(b));
    }
    return x;
  }

  Hermitian from(const Eigen::VectorXd& x) const {
    std::vector<Matrix> blocks;
    for (std::size_t b = 0; b < bases_.size(); ++b) {
      blocks.push_back(bases_[b].matrix(x.segment(offsets_[b], bases_[b].size())));
    }
    return Hermitian(shape_, std::move(blocks));
  }

 private:
  BlockShape shape_;
  std::vector<BlockBasis> bases_;
  std::vector<int> offsets_;
  int size_ = 0;
};

// ---------------------------------------------------------------------------
// Barrier Newton method for the optimal decomposition.

/// (log a - log b) / (a - b), accurate when a and b are close.
double log_divided_difference(double a, double b) {
  const double delta = (a - b) / b;
  if (std::abs(delta) < 1e-12) return (1.0 - 0.5 * delta) / b;
  return std::log1p(delta) / (a - b);
}

struct Barrier {
  const State& phi;
  double mu;

  /// S(w, phi) - mu log det w, or +inf off the open cone.
  double value(const Spectrum& s, const Hermitian& w) const {
    double v = -pair(w, phi.log_density());
    for (const auto& b : s.blocks())
      for (Eigen::Index i = 0; i < b.values.size(); ++i) {
        const double a = b.values(i);
        if (!(a > 0.0)) return kInf;
        v += a * std::log(a) - mu * std::log(a);
      }
    return v;
  }

  Hermitian gradient(const Spectrum& s) const {
    const double m = mu;
    return s.apply([m](double a) { return std::log(a) + 1.0 - m / a; }) - phi.log_density();
  }

  /// Adds the Hessian of w -> S(w, phi) - mu log det w to `h`, block b.
  void add_hessian(const Spectrum& s, const Coordinates& c, Eigen::MatrixXd& h) const {
    for (std::size_t b = 0; b < s.blocks().size(); ++b) {
      const BlockSpectrum& bs = s.blocks()[b];
      const BlockBasis& basis = c.basis(b);
      const int d = basis.d;
      Eigen::MatrixXd kernel(d, d);
      for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
          const double ai = bs.values(i), aj = bs.values(j);
          kernel(i, j) = log_divided_difference(ai, aj) + mu / (ai * aj);
        }
      const Matrix& u = bs.vectors;
      for (int k = 0; k < basis.size(); ++k) {
        const Matrix rotated = u.adjoint() * basis.element(k) * u;
        const Matrix image = u * rotated.cwiseProduct(kernel.cast<Complex>()) * u.adjoint();
        h.block(c.offset(b), c.offset(b) + k, basis.size(), 1) += basis.coords(image);
      }
    }
  }
};

struct NewtonState {
  Hermitian w1;
  Hermitian w2;
  int steps = 0;
};

/// Damped Newton on w1 -> B(w1) + B(w1 - v) subject to Tr w1 = 1.
void newton_stage(const State& phi, const Hermitian& v, double mu, const Coordinates& coords,
                  NewtonState& st, double decrement_tolerance) {
  const Barrier barrier{phi, mu};
  const Eigen::VectorXd trace_row = coords.to(Hermitian::identity(v.shape()));
  for (int it = 0; it < 100; ++it) {
    const Spectrum s1(st.w1), s2(st.w2);
    const double f = barrier.value(s1, st.w1) + barrier.value(s2, st.w2);
    const Eigen::VectorXd g = coords.to(barrier.gradient(s1) + barrier.gradient(s2));
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(coords.size(), coords.size());
    barrier.add_hessian(s1, coords, h);
    barrier.add_hessian(s2, coords, h);
    h = 0.5 * (h + h.transpose());

    // Eliminate the trace constraint through its multiplier.
    Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
    const Eigen::VectorXd hg = ldlt.solve(g);
    const Eigen::VectorXd ha = ldlt.solve(trace_row);
    const double lambda = -trace_row.dot(hg) / trace_row.dot(ha);
    const Eigen::VectorXd dx = -(hg + lambda * ha);
    const double decrement = -g.dot(dx);
    if (!(decrement > decrement_tolerance)) return;

    const Hermitian dw = remove_trace(coords.from(dx));
    const double slack = 4.0 * DBL_EPSILON * (1.0 + std::abs(f));
    bool moved = false;
    for (double t = 1.0; t > 1e-14; t *= 0.5) {
      Hermitian n1 = st.w1 + dw * t;
      Hermitian n2 = n1 - v;
      const Spectrum t1(n1), t2(n2);
      if (!(t1.min() > 0.0) || !(t2.min() > 0.0)) continue;
      const double fn = barrier.value(t1, n1) + barrier.value(t2, n2);
      if (fn <= f - 1e-4 * t * decrement + slack) {
        st.w1 = std::move(n1);
        st.w2 = std::move(n2);
        ++st.steps;
        moved = true;
        break;
      }
    }
    if (!moved) return;
  }
}

// ---------------------------------------------------------------------------
// Second-order ascent for the conjugates of phi and phi0.

/// (e^a - e^b) / (a - b) with a, b <= 0 and no overflow.
double exp_divided_difference(double a, double b) {
  if (a < b) std::swap(a, b);
  const double d = b - a;  // <= 0
  if (d > -1e-10) return std::exp(a) * (1.0 + 0.5 * d);
  return std::exp(a) * std::expm1(d) / d;
}

/// Cumulant y -> c_phi(y) to second order: value, gradient (the Gibbs
/// density) and Hessian in real coordinates.
struct CumulantJet {
  double value;
  Hermitian gradient;
  Eigen::MatrixXd hessian;
};

CumulantJet cumulant_jet(const State& phi, const Hermitian& y, const Coordinates& c) {
  const Spectrum s(phi.log_density() + y);
  const double top = s.max();
  double z = 0.0;
  for (const auto& b : s.blocks()) z += (b.values.array() - top).exp().sum();
  const double value = top + std::log(z);
  Hermitian g = s.apply([value](double a) { return std::exp(a - value); });

  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(c.size(), c.size());
  for (std::size_t b = 0; b < s.blocks().size(); ++b) {
    const BlockSpectrum& bs = s.blocks()[b];
    const BlockBasis& basis = c.basis(b);
    const int d = basis.d;
    Eigen::MatrixXd kernel(d, d);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) kernel(i, j) = exp_divided_difference(bs.values(i) - value, bs.values(j) - value);
    const Matrix& u = bs.vectors;
    for (int k = 0; k < basis.size(); ++k) {
      const Matrix rotated = u.adjoint() * basis.element(k) * u;
      const Matrix image = u * rotated.cwiseProduct(kernel.cast<Complex>()) * u.adjoint();
      h.block(c.offset(b), c.offset(b) + k, basis.size(), 1) = basis.coords(image);
    }
  }
  const Eigen::VectorXd gv = c.to(g);
  h -= gv * gv.transpose();
  return {value, std::move(g), 0.5 * (h + h.transpose())};
}

/// Maximizes <v, y> - Phi(y) by damped Newton for the two symmetrized
/// cumulant Young functions. Phi0 is flat along the identity; the iterate is
/// kept traceless and that direction pinned by a unit penalty.
Ascent young_conjugate_newton(const YoungFunction& f, const Hermitian& v, Hermitian y,
                              const AscentOptions& options) {
  const State& phi = f.reference();
  const bool centered = f.kind() == YoungKind::phi0;
  const std::string what = "conjugate of " + f.name();
  const Coordinates coords(phi.shape());
  const Eigen::VectorXd unit_row = coords.to(Hermitian::identity(v.shape()));
  const Eigen::MatrixXd pin = unit_row * unit_row.transpose() / unit_row.squaredNorm();
  const auto value_at = [&](const Hermitian& x) {
    const double cp = cumulant(phi, x), cm = cumulant(phi, -x);
    if (centered) return pair(v, x) - 0.5 * (cp + cm);
    if (cp > kExpLimit || cm > kExpLimit) return -kInf;
    return pair(v, x) - 0.5 * (std::expm1(cp) + std::expm1(cm));
  };

  if (centered) y = remove_trace(y);
  if (!std::isfinite(value_at(y))) y = Hermitian::zero(y.shape());
  double last_value = -kInf, last_gn = kInf;
  int stalled = 0;
  for (int it = 0;; ++it) {
    const CumulantJet plus = cumulant_jet(phi, y, coords), minus = cumulant_jet(phi, -y, coords);
    double f_value;
    Hermitian grad = v;
    Eigen::MatrixXd h;
    if (centered) {
      f_value = pair(v, y) - 0.5 * (plus.value + minus.value);
      grad -= 0.5 * (plus.gradient - minus.gradient);
      h = 0.5 * (plus.hessian + minus.hessian) + pin;
    } else {
      // d^2 e^c = e^c (Hess c + grad c grad c^T)
      const double ep = std::exp(plus.value), em = std::exp(minus.value);
      f_value = pair(v, y) - 0.5 * (std::expm1(plus.value) + std::expm1(minus.value));
      grad -= 0.5 * (plus.gradient * ep - minus.gradient * em);
      const Eigen::VectorXd gp = coords.to(plus.gradient), gm = coords.to(minus.gradient);
      h = 0.5 * (ep * (plus.hessian + gp * gp.transpose()) + em * (minus.hessian + gm * gm.transpose()));
    }
    const double gn = grad.frobenius_norm();
    // Far out on the ray (|y| ~ 1e4 next to the phi0 domain boundary) the
    // gradient bottoms out at rounding level; stop once steps stop paying.
    stalled = (std::abs(f_value - last_value) <= 4.0 * DBL_EPSILON * (1.0 + std::abs(f_value)) && gn >= last_gn)
                  ? stalled + 1
                  : 0;
    last_value = f_value;
    last_gn = gn;
    if (gn <= options.gradient_tolerance || stalled >= 5) return {std::move(y), f_value, gn, it};
    if (it >= options.max_iterations) {
      throw ConvergenceError(what + ": iteration cap reached", f_value, gn * (1.0 + y.frobenius_norm()));
    }

    // h is the negated Hessian; a small Levenberg shift keeps the step an
    // ascent direction where it is numerically singular.
    const Eigen::VectorXd g = coords.to(grad);
    Eigen::VectorXd dx = Eigen::LDLT<Eigen::MatrixXd>(h).solve(g);
    if (!dx.allFinite() || g.dot(dx) <= 0.0) {
      h.diagonal().array() += 1e-8 * (1.0 + h.diagonal().cwiseAbs().maxCoeff());
      dx = Eigen::LDLT<Eigen::MatrixXd>(h).solve(g);
    }
    Hermitian step = coords.from(dx);
    if (centered) step = remove_trace(step);
    const double slope = pair(grad, step);

    const double slack = 4.0 * DBL_EPSILON * (1.0 + std::abs(f_value));
    bool moved = false;
    for (double t = 1.0; t > 1e-14; t *= 0.5) {
      Hermitian yn = y + step * t;
      const double fn = value_at(yn);
      if (fn >= f_value + 1e-4 * t * slope - slack) {
        y = std::move(yn);
        moved = true;
        break;
      }
    }
    if (!moved) throw ConvergenceError(what + ": line search stalled", f_value, gn * (1.0 + y.frobenius_norm()));
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::pair<PositiveFunctional, PositiveFunctional> jordan_split(const Hermitian& v) {
  const Spectrum s(v);
  return {PositiveFunctional(s.apply([](double x) { return std::max(x, 0.0); })),
          PositiveFunctional(s.apply([](double x) { return std::max(-x, 0.0); }))};
}

std::pair<PositiveFunctional, PositiveFunctional> jordan_split(const DualFunctional& v) {
  return jordan_split(v.density());
}

Decomposition psi_decompose(const State& phi, const DualFunctional& v) {
  require_same_shape(phi.shape(), v.shape(), "psi_decompose");
  const Hermitian& vd = v.density();
  auto [plus, minus] = jordan_split(vd);
  const double tau = plus.mass();

  if (tau > 1.0 + kTraceTolerance) {
    return {std::move(plus), std::move(minus), kInf, true, 0.0, 0.0, 0};
  }
  if (tau >= 1.0 - kTraceTolerance) {
    // Tr v+ = 1: the Jordan pair is the only feasible decomposition.
    const double value = relative_entropy(plus, phi).as_double() + relative_entropy(minus, phi).as_double();
    const double residual = (plus.density() - minus.density() - vd).frobenius_norm();
    return {std::move(plus), std::move(minus), value, false, residual, 0.0, 0};
  }

  const Coordinates coords(phi.shape());
  const Hermitian slack_part = phi.density() * (1.0 - tau);
  NewtonState st{plus.density() + slack_part, minus.density() + slack_part, 0};
  st.w2 = st.w1 - vd;
  for (double mu : {1e-2, 1e-4, 1e-6, 1e-8}) newton_stage(phi, vd, mu, coords, st, 1e-12);
  newton_stage(phi, vd, 0.0, coords, st, 1e-28);

  const Spectrum s1(st.w1), s2(st.w2);
  const auto safe_log = [](double a) { return std::log(std::max(a, std::numeric_limits<double>::min())); };
  const double stationarity =
      remove_trace(s1.apply(safe_log) + s2.apply(safe_log) - phi.log_density() * 2.0).frobenius_norm();
  PositiveFunctional w1(st.w1), w2(st.w2);
  const double value = relative_entropy(w1, phi).as_double() + relative_entropy(w2, phi).as_double();
  const double residual = (st.w1 - st.w2 - vd).frobenius_norm();
  return {std::move(w1), std::move(w2), value, false, residual, stationarity, st.steps};
}

ConjugateValue cumulant_conjugate(const State& phi, const DualFunctional& v, const AscentOptions& options) {
  require_same_shape(phi.shape(), v.shape(), "cumulant_conjugate");
  const Hermitian target = v.density() + phi.density();
  if (Spectrum(target).min() < -kPositivityTolerance) return infinite_value(v.shape());

  const Objective f = [&](const Hermitian& y) -> std::optional<Point> {
    const Gibbs g = gibbs(phi, y);
    return Point{pair(target, y) - g.cumulant, target - g.density};
  };
  const Ascent a = ascend(f, start(options, v.shape()), options, "cumulant conjugate");
  return finish(a, phi.center(a.x));
}

ConjugateValue conjugate(const YoungFunction& f, const Hermitian& v_in, const AscentOptions& options) {
  if (f.kind() == YoungKind::conjugate) {
    throw DomainError("the conjugate of a numeric conjugate is not supported");
  }
  const Hermitian v = conform(YoungFunction::conjugate_of(f), v_in);
  const State& phi = f.reference();
  const BlockShape& shape = phi.shape();

  switch (f.kind()) {
    case YoungKind::phi: {
      const Ascent a = young_conjugate_newton(f, v, start(options, shape), options);
      return finish(a, a.x);
    }
    case YoungKind::phi0: {
      // Finite exactly when Tr v+ <= 1/2.
      if (positive_mass(v) > 0.5 + kTraceTolerance) return infinite_value(shape);
      // The objective ignores constants; near Tr v+ = 1/2 the maximizer runs
      // off to infinity and first-order steps stall, hence Newton.
      const Ascent a = young_conjugate_newton(f, v, start(options, shape), options);
      return finish(a, phi.center(a.x));
    }
    case YoungKind::psi0: {
      const Hermitian h = remove_trace(v);
      const Objective obj = [&](const Hermitian& w) -> std::optional<Point> {
        const Decomposition d = psi_decompose(phi, DualFunctional::project(w));
        if (d.infinite) return std::nullopt;
        const Hermitian grad =
            remove_trace(h - 0.5 * (log(d.omega1.density()) - log(d.omega2.density())));
        return Point{pair(h, w) - d.psi_value, grad};
      };
      Hermitian x0 = start(options, shape);
      const Ascent a = ascend(obj, remove_trace(x0), options, "conjugate of psi0");
      return finish(a, remove_trace(a.x));
    }
    case YoungKind::conjugate:
      break;
  }
  throw DomainError("unknown Young function");
}

namespace {

/// inf_s (1 + F(s)) / s over s > 0 by golden section on log s; F is the
/// conjugate evaluated along the ray of v.
double amemiya(const std::function<double(double)>& conj_along, double scale_hint) {
  const auto h = [&](double u) {
    const double s = std::exp(u);
    const double c = conj_along(s);
    return std::isfinite(c) ? (1.0 + c) / s : kInf;
  };
  double m = std::log(scale_hint);
  double fm = h(m);
  double width = 1.0;
  double lo = m - width, hi = m + width;
  double flo = h(lo), fhi = h(hi);
  // Expand until the middle point is lowest.
  for (int i = 0; i < 200 && !(fm <= flo && fm <= fhi); ++i) {
    if (flo < fm) {
      hi = m;
      fhi = fm;
      m = lo;
      fm = flo;
      width *= 1.6;
      lo = m - width;
      flo = h(lo);
    } else {
      lo = m;
      flo = fm;
      m = hi;
      fm = fhi;
      width *= 1.6;
      hi = m + width;
      fhi = h(hi);
    }
  }
  const double r = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double x1 = b - r * (b - a), x2 = a + r * (b - a);
  double f1 = h(x1), f2 = h(x2);
  for (int i = 0; i < 200 && (b - a) > 1e-9; ++i) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = h(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = h(x2);
    }
  }
  return std::min({f1, f2, fm});
}

Hermitian tangent(const YoungFunction& f, const Hermitian& x) {
  switch (f.domain()) {
    case YoungDomain::traceless_duals:
      return remove_trace(x);
    case YoungDomain::centered_observables:
      return remove_trace(x);
    default:
      return x;
  }
}

/// The space dual to the handle's domain, where v lives.
Hermitian conform_dual(const YoungFunction& f, const Hermitian& v) {
  switch (f.domain()) {
    case YoungDomain::centered_observables: {
      if (std::abs(v.trace()) > 1e-10 * (1.0 + v.frobenius_norm())) {
        throw DomainError("dual norm of " + f.name() + " needs a traceless functional");
      }
      return remove_trace(v);
    }
    default:
      return v;
  }
}

/// sup { <x, (w1 - w2)/2> : S(w1, phi) + S(w2, phi) <= 2 } over states.
struct FacetedAscent {
  double value;
  int iterations;
};

FacetedAscent phi0_dual_ball(const State& phi, const Hermitian& x) {
  const auto pair_at = [&](double beta) {
    // Gibbs densities, not States: at large beta they leave the faithful cone.
    const PositiveFunctional w1(gibbs(phi, x * beta).density), w2(gibbs(phi, x * -beta).density);
    return std::pair{relative_entropy(w1, phi).as_double() + relative_entropy(w2, phi).as_double(),
                     0.5 * (pair(w1, x) - pair(w2, x))};
  };
  // Both the entropy budget and the pairing increase with beta.
  const Spectrum sx(x);
  const double spread = sx.max() - sx.min();
  double lo = 0.0, hi = 1.0 / spread;
  int it = 0;
  for (; pair_at(hi).first < 2.0; ++it) {
    lo = hi;
    hi *= 2.0;
    // Budget never exhausted: the sup sits on the face, at the extreme
    // eigenvectors of x.
    if (hi * spread > 1e6) return {0.5 * spread, it};
  }
  for (; it < 400 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (pair_at(mid).first <= 2.0 ? lo : hi) = mid;
  }
  return {pair_at(lo).second, it};
}

}  // namespace

DualNorm dual_norm(const YoungFunction& f, const Hermitian& v_in, const DualNormOptions& options) {
  const Hermitian v = conform_dual(f, v_in);
  const Hermitian x0 = conform(f, tangent(f, v));
  DualNorm out;
  out.amemiya = std::numeric_limits<double>::quiet_NaN();
  if (x0.frobenius_norm() == 0.0) {
    out.amemiya = options.cross_check ? 0.0 : out.amemiya;
    return out;
  }

  if (f.kind() == YoungKind::conjugate && f.base().kind() == YoungKind::phi0) {
    // (a) The unit ball of conj(phi0) has a flat face on its domain boundary
    // Tr y+ = 1/2, where sphere ascent stalls. It is the set of halved
    // differences (w1 - w2)/2 of states with S(w1) + S(w2) <= 2, and the
    // maximizing pair is the Gibbs pair at +-beta v: bisect beta onto the
    // boundary.
    const FacetedAscent a = phi0_dual_ball(f.reference(), v);
    out.value = a.value;
    out.iterations = a.iterations;
  } else {
    // (a) Maximize <v, y> on the unit sphere { Phi(y) = 1 }: projected
    // gradient steps retracted radially onto the sphere.
    const auto on_sphere = [&](const Hermitian& x, double guess) {
      const Hermitian y = conform(f, x);
      return Hermitian(y / luxemburg_norm_near(f, y, guess).value);
    };
    Hermitian y = x0 / luxemburg_norm(f, x0).value;
    double r = pair(v, y);
    const auto sphere_gradient = [&](const Hermitian& at, double value) {
      const Hermitian g = young_gradient(f, at);
      return tangent(f, v - g * (value / pair(g, at)));
    };
    Hermitian grad = sphere_gradient(y, r);
    double step = 0.1 * y.frobenius_norm() / std::max(grad.frobenius_norm(), 1e-300);
    const double tolerance = 1e-9 * v.frobenius_norm();
    int it = 0;
    for (; it < options.max_iterations; ++it) {
      const double gn = grad.frobenius_norm();
      if (gn <= tolerance) break;
      bool improved = false;
      for (int ls = 0; ls < 40 && step * gn > 1e-16 * y.frobenius_norm(); ++ls, step *= 0.25) {
        Hermitian trial = on_sphere(y + grad * step, 1.0);
        const double rt = pair(v, trial);
        if (rt > r) {
          const Hermitian gt = sphere_gradient(trial, rt);
          const Hermitian s = trial - y;
          const double sy = inner(s, gt - grad);
          const double next_step = sy < 0.0 ? inner(s, s) / -sy : 2.0 * step;
          y = std::move(trial);
          r = rt;
          grad = gt;
          step = std::clamp(next_step, 1e-12, 1e12);
          improved = true;
          break;
        }
      }
      if (!improved) break;
    }
    out.value = r;
    out.iterations = it;
    out.gradient_norm = grad.frobenius_norm();
  }

  if (options.cross_check) {
    const double hint = 1.0 / std::max(out.value, 1e-300);
    if (f.kind() == YoungKind::conjugate) {
      const YoungFunction& base = f.base();
      out.amemiya = amemiya([&](double s) { return young_eval(base, v * s); }, hint);
    } else {
      std::optional<Hermitian> warm;
      out.amemiya = amemiya(
          [&](double s) {
            AscentOptions o;
            o.warm_start = warm;
            try {
              const ConjugateValue cv = conjugate(f, v * s, o);
              if (cv.infinite) return kInf;
              warm = cv.maximizer;
              return cv.value;
            } catch (const ConvergenceError&) {
              // Diverging maximizer: the conjugate is at least this large.
              return kInf;
            }
          },
          hint);
    }
    out.flagged = !(std::abs(out.value - out.amemiya) <= 1e-4 * (1.0 + out.value));
  }
  return out;
}

}  // namespace qim
