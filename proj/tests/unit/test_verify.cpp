#include <doctest.h>

#include <algorithm>

#include "qim/verify.hpp"

using namespace qim;

namespace {

VerifyConfig quick(Execution ex) {
  VerifyConfig c;
  c.dims = {BlockShape({2}), BlockShape({1, 2})};
  c.samples = 6;
  c.seed = 17;
  c.execution = ex;
  c.only = {"chain_rule", "commutative", "holder", "transition_cocycle", "young_axioms"};
  return c;
}

}  // namespace

TEST_CASE("registry is sorted, unique and fully toleranced") {
  const auto names = check_names();
  CHECK(names.size() >= 25);
  CHECK(std::is_sorted(names.begin(), names.end()));
  CHECK(std::adjacent_find(names.begin(), names.end()) == names.end());
  for (const auto& n : names) CHECK_NOTHROW(profile_tolerance("default", n));
  CHECK_THROWS_AS(profile_tolerance("missing", names.front()), ValidationError);
}

TEST_CASE("serial and parallel execution give identical reports") {
  Report a = run_suite(quick(Execution::serial));
  Report b = run_suite(quick(Execution::parallel));
  a.wall_time_s = b.wall_time_s = 0.0;
  a.config.execution = b.config.execution;
  CHECK(report_json(a).dump() == report_json(b).dump());
  CHECK(a.passed());
}

TEST_CASE("same config, same report") {
  Report a = run_suite(quick(Execution::parallel));
  Report b = run_suite(quick(Execution::parallel));
  a.wall_time_s = b.wall_time_s = 0.0;
  CHECK(report_json(a).dump() == report_json(b).dump());
}

TEST_CASE("a different seed keeps the verdicts") {
  VerifyConfig c = quick(Execution::parallel);
  c.seed = 99;
  CHECK(run_suite(c).passed());
}

TEST_CASE("passed iff violation within tolerance") {
  for (const auto& r : run_suite(quick(Execution::serial)).checks) CHECK(r.passed == (r.max_violation <= r.tolerance));
}
