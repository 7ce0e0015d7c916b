#include <algorithm>
#include <chrono>
#include <cstdio>
#include <map>
#include <sstream>

#include "checks.hpp"

namespace qim {

namespace {

using verify::Check;
using verify::Outcome;

// Tolerances as stated per invariant; one table so precision experiments
// touch a single place.
const std::map<std::string, std::map<std::string, double>>& profiles() {
  static const std::map<std::string, std::map<std::string, double>> table = {
      {"default",
       {
           {"chain_rule", 1e-9},
           {"chart_roundtrip", 1e-9},
           {"commutative", 1e-12},
           {"conjugate_lemma", 1e-5},
           {"connected_component", 1e-9},
           {"continuity", 1e-8},
           {"cosh_bounds", 1e-9},
           {"cumulant_bounds", 1e-10},
           {"cumulant_conjugacy", 1e-9},
           {"donald_identity", 1e-9},
           {"dual_norm_equivalence", 1e-4},
           {"face_support", 0.0},
           {"fbar_conjugacy", 1e-8},
           {"gateaux_derivative", 1e-6},
           {"gibbs_identity", 1e-9},
           {"holder", 1e-9},
           {"injectivity", 0.0},
           {"inversion", 1e-9},
           {"joint_convexity", 1e-9},
           {"luxemburg_lemmas", 1e-9},
           {"modular_oracle", 1e-9},
           {"norm_axioms", 1e-9},
           {"norm_equivalence", 1e-9},
           {"polar_sandwich", 1e-6},
           {"psi_conjugacy", 1e-4},
           {"psi_young", 1e-8},
           {"scalar_shift", 1e-10},
           {"space_equality", 0.0},
           {"state_domination", 1e-9},
           {"strict_positivity", 1e-6},
           {"transition_affinity", 1e-10},
           {"transition_cocycle", 1e-9},
           {"transition_consistency", 1e-9},
           {"transport_cocycle", 1e-12},
           {"transport_duality", 1e-12},
           {"uniqueness", 1e-9},
           {"unit_ball_decomposition", 1e-4},
           {"variational_principle", 1e-9},
           {"young_axioms", 1e-8},
           {"young_inequality", 1e-9},
           {"young_sandwich", 1e-10},
       }},
  };
  return table;
}

const std::vector<Check>& registry() {
  static const std::vector<Check> checks = [] {
    std::vector<Check> out;
    verify::add_entropy_checks(out);
    verify::add_perturbation_checks(out);
    verify::add_orlicz_checks(out);
    verify::add_duality_checks(out);
    verify::add_manifold_checks(out);
    verify::add_reduction_checks(out);
    std::sort(out.begin(), out.end(), [](const Check& a, const Check& b) { return a.name < b.name; });
    return out;
  }();
  return checks;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) h = (h ^ c) * 0x100000001b3ULL;
  return h;
}

/// Stream for one sample, a function of (seed, check, shape, sample) only.
std::uint64_t sample_seed(std::uint64_t seed, const std::string& check, std::size_t shape, int index) {
  std::uint64_t s = splitmix64(seed ^ fnv1a(check));
  s = splitmix64(s ^ (static_cast<std::uint64_t>(shape) << 32));
  return splitmix64(s ^ static_cast<std::uint64_t>(index));
}

std::string format_double(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

CheckResult evaluate(const Check& check, const VerifyConfig& config) {
  const std::vector<BlockShape> shapes = check.shapes ? check.shapes(config.dims) : config.dims;
  const int per_shape = check.sample_cap > 0 ? std::min(config.samples, check.sample_cap) : config.samples;
  const int total = per_shape * static_cast<int>(shapes.size());

  std::vector<Outcome> outcomes(total);
  std::vector<std::string> errors(total);
  const auto body = [&](int i) {
    const std::size_t s = static_cast<std::size_t>(i / per_shape);
    const int index = i % per_shape;
    verify::Sample sample{shapes[s], index, Rng(sample_seed(config.seed, check.name, s, index))};
    try {
      outcomes[i] = check.kernel(sample);
      if (std::isnan(outcomes[i].violation)) {
        outcomes[i].violation = verify::kInf;
        errors[i] = "violation is NaN";
      }
    } catch (const std::exception& e) {
      outcomes[i].violation = verify::kInf;
      errors[i] = e.what();
    }
  };
  if (config.execution == Execution::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < total; ++i) body(i);
  } else {
    for (int i = 0; i < total; ++i) body(i);
  }

  // Serial reduction in index order keeps the report independent of scheduling.
  CheckResult r;
  r.name = check.name;
  r.anchor = check.anchor;
  r.tolerance = profile_tolerance(config.tol_profile, check.name);
  int skipped = 0, failures = 0;
  double info = std::numeric_limits<double>::quiet_NaN();
  std::string first_error;
  for (int i = 0; i < total; ++i) {
    const Outcome& o = outcomes[i];
    if (o.skipped) {
      ++skipped;
      continue;
    }
    r.max_violation = std::max(r.max_violation, o.violation);
    if (!errors[i].empty()) {
      ++failures;
      if (first_error.empty()) first_error = errors[i];
    }
    if (!std::isnan(o.info)) {
      info = std::isnan(info) ? o.info : (check.info_max ? std::max(info, o.info) : std::min(info, o.info));
    }
  }
  r.samples = total - skipped;
  r.passed = r.max_violation <= r.tolerance;

  std::ostringstream note;
  const auto sep = [&] {
    if (note.tellp() > 0) note << "; ";
  };
  if (!check.info_label.empty() && !std::isnan(info)) note << check.info_label << " " << format_double(info);
  if (skipped) {
    sep();
    note << skipped << " samples skipped";
  }
  if (failures) {
    sep();
    note << failures << " samples raised: " << first_error;
  }
  r.note = note.str();
  return r;
}

}  // namespace

std::vector<BlockShape> default_dims() {
  return {BlockShape({2}), BlockShape({3}), BlockShape({4}), BlockShape({2, 2}), BlockShape({1, 1, 1, 1})};
}

bool Report::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

bool known_profile(const std::string& profile) { return profiles().count(profile) > 0; }

double profile_tolerance(const std::string& profile, const std::string& check) {
  const auto p = profiles().find(profile);
  if (p == profiles().end()) throw ValidationError("unknown tolerance profile '" + profile + "'");
  const auto t = p->second.find(check);
  if (t == p->second.end()) throw ValidationError("profile '" + profile + "' has no tolerance for " + check);
  return t->second;
}

std::vector<std::string> check_names() {
  std::vector<std::string> names;
  for (const auto& c : registry()) names.push_back(c.name);
  return names;
}

CheckResult run_check(const std::string& name, const VerifyConfig& config) {
  for (const auto& c : registry())
    if (c.name == name) return evaluate(c, config);
  throw ValidationError("unknown check '" + name + "'");
}

Report run_suite(const VerifyConfig& config) {
  if (config.dims.empty()) throw ValidationError("verify needs at least one shape");
  if (config.samples < 1) throw ValidationError("verify needs at least one sample");
  if (!known_profile(config.tol_profile)) {
    throw ValidationError("unknown tolerance profile '" + config.tol_profile + "'");
  }
  for (const auto& name : config.only) {
    const auto names = check_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
      throw ValidationError("unknown check '" + name + "'");
    }
  }
  const auto start = std::chrono::steady_clock::now();
  Report report{"qim-verify", config, {}, 0.0};
  for (const auto& c : registry()) {
    if (!config.only.empty() && std::find(config.only.begin(), config.only.end(), c.name) == config.only.end()) {
      continue;
    }
    report.checks.push_back(evaluate(c, config));
  }
  report.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

nlohmann::json report_json(const Report& report) {
  using nlohmann::json;
  json dims = json::array();
  for (const auto& s : report.config.dims) dims.push_back(s.dims());
  json checks = json::array();
  for (const auto& c : report.checks) {
    json v = std::isfinite(c.max_violation) ? json(c.max_violation) : json("inf");
    checks.push_back(json{{"name", c.name},
                          {"anchor", c.anchor},
                          {"passed", c.passed},
                          {"max_violation", std::move(v)},
                          {"tolerance", c.tolerance},
                          {"samples", c.samples},
                          {"note", c.note}});
  }
  return json{{"suite", report.suite},
              {"dims", std::move(dims)},
              {"samples", report.config.samples},
              {"seed", report.config.seed},
              {"tol_profile", report.config.tol_profile},
              {"passed", report.passed()},
              {"checks", std::move(checks)},
              {"wall_time_s", report.wall_time_s}};
}

namespace verify {

Hermitian centered(Rng& rng, const State& phi, double scale) {
  return phi.center(random_hermitian(rng, phi.shape(), scale));
}

double log_uniform(Rng& rng, double lo, double hi) { return std::exp(rng.uniform(std::log(lo), std::log(hi))); }

Hermitian unit(const Hermitian& h) { return h / h.frobenius_norm(); }

}  // namespace verify

}  // namespace qim
