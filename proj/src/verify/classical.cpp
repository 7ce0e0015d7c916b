#include "classical.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace qim::verify::classical {

double kl(const Vec& p, const Vec& q) {
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s += p[i] * std::log(p[i] / q[i]);
  return s;
}

double cumulant(const Vec& q, const Vec& h) {
  double top = -INFINITY;
  for (std::size_t i = 0; i < q.size(); ++i) top = std::max(top, std::log(q[i]) + h[i]);
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += std::exp(std::log(q[i]) + h[i] - top);
  return top + std::log(s);
}

Vec gibbs(const Vec& q, const Vec& h) {
  const double c = cumulant(q, h);
  Vec p(q.size());
  for (std::size_t i = 0; i < q.size(); ++i) p[i] = std::exp(std::log(q[i]) + h[i] - c);
  return p;
}

namespace {
Vec negate(const Vec& h) {
  Vec m(h.size());
  std::transform(h.begin(), h.end(), m.begin(), [](double x) { return -x; });
  return m;
}
Vec scale(const Vec& h, double t) {
  Vec m(h.size());
  std::transform(h.begin(), h.end(), m.begin(), [t](double x) { return x * t; });
  return m;
}
}  // namespace

double phi_young(const Vec& q, const Vec& h) {
  return 0.5 * (std::expm1(cumulant(q, h)) + std::expm1(cumulant(q, negate(h))));
}

double phi0_young(const Vec& q, const Vec& h) { return 0.5 * (cumulant(q, h) + cumulant(q, negate(h))); }

double luxemburg(double (*young)(const Vec&, const Vec&), const Vec& q, const Vec& h) {
  double lo = 1e-3, hi = 1e3;
  while (young(q, scale(h, 1.0 / lo)) <= 1.0) lo *= 0.5;
  while (young(q, scale(h, 1.0 / hi)) > 1.0) hi *= 2.0;
  for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
    const double mid = 0.5 * (lo + hi);
    (young(q, scale(h, 1.0 / mid)) > 1.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double psi(const Vec& q, const Vec& d) {
  const auto p_of = [&](double kappa) {
    Vec p(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) {
      p[i] = 0.5 * (d[i] + std::sqrt(d[i] * d[i] + 4.0 * kappa * q[i] * q[i]));
    }
    return p;
  };
  const auto mass = [&](double kappa) {
    const Vec p = p_of(kappa);
    return std::accumulate(p.begin(), p.end(), 0.0);
  };
  double lo = -80.0, hi = 10.0;  // log kappa
  for (int i = 0; i < 400 && hi - lo > 1e-15 * std::max(1.0, std::abs(hi)); ++i) {
    const double mid = 0.5 * (lo + hi);
    (mass(std::exp(mid)) < 1.0 ? lo : hi) = mid;
  }
  const Vec p = p_of(std::exp(0.5 * (lo + hi)));
  Vec r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i] - d[i];
  return kl(p, q) + kl(r, q);
}

Vec log_ratio(const Vec& p, const Vec& q) {
  Vec h(p.size());
  double mean = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    h[i] = std::log(p[i]) - std::log(q[i]);
    mean += q[i] * h[i];
  }
  for (double& x : h) x -= mean;
  return h;
}

}  // namespace qim::verify::classical
