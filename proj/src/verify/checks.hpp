#pragma once

// Internal registry shared by the check files.

#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "qim/algebra.hpp"
#include "qim/orlicz.hpp"
#include "qim/verify.hpp"

namespace qim::verify {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct Sample {
  const BlockShape& shape;
  int index;
  Rng rng;
};

/// One sampled evaluation: the worst violation it observed and an optional
/// informational measurement folded into the check's note.
struct Outcome {
  double violation = 0.0;
  double info = std::numeric_limits<double>::quiet_NaN();
  bool skipped = false;
};

struct Check {
  std::string name;
  std::string anchor;
  std::function<Outcome(Sample&)> kernel;
  int sample_cap = 0;  // per shape; 0 = config.samples
  /// Shapes to run on; defaults to config.dims.
  std::function<std::vector<BlockShape>(const std::vector<BlockShape>&)> shapes;
  /// Describes the aggregated informational values, e.g. "max ratio".
  std::string info_label;
  bool info_max = true;  // aggregate info by max (else min)
};

void add_entropy_checks(std::vector<Check>& out);
void add_perturbation_checks(std::vector<Check>& out);
void add_orlicz_checks(std::vector<Check>& out);
void add_duality_checks(std::vector<Check>& out);
void add_manifold_checks(std::vector<Check>& out);
void add_reduction_checks(std::vector<Check>& out);

// Sampling helpers -----------------------------------------------------------

/// Centered observable for phi with entries of the given scale.
Hermitian centered(Rng& rng, const State& phi, double scale);
/// Log-uniform scale in [lo, hi].
double log_uniform(Rng& rng, double lo, double hi);
/// Unit-Frobenius version of h.
Hermitian unit(const Hermitian& h);

/// Evenness, nonnegativity, convexity on the segment [b, a] at weight l,
/// value at 0 and growth along the ray of a; +inf when the ray stays bounded.
double young_violation(const YoungFunction& f, const Hermitian& a, const Hermitian& b, double l);

inline double excess(double lhs, double rhs) { return std::max(0.0, lhs - rhs); }

}  // namespace qim::verify
