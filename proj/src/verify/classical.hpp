#pragma once

// Scalar formulas for commuting (diagonal) inputs, written against plain
// vectors with no shared code path into the matrix library.

#include <vector>

namespace qim::verify::classical {

using Vec = std::vector<double>;

/// sum p log(p/q), 0 log 0 = 0
double kl(const Vec& p, const Vec& q);
/// log sum q_i exp(h_i)
double cumulant(const Vec& q, const Vec& h);
/// q_i exp(h_i - c)
Vec gibbs(const Vec& q, const Vec& h);
double phi_young(const Vec& q, const Vec& h);
double phi0_young(const Vec& q, const Vec& h);
/// Root of young(x / t) = 1 by scalar bisection.
double luxemburg(double (*young)(const Vec&, const Vec&), const Vec& q, const Vec& h);
/// min KL(p,q) + KL(p-d,q) over probability vectors p >= max(d, 0):
/// stationarity gives p_i (p_i - d_i) = kappa q_i^2, solved for kappa.
double psi(const Vec& q, const Vec& d);
/// log p - log q, centered under q
Vec log_ratio(const Vec& p, const Vec& q);

}  // namespace qim::verify::classical
