#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>

#include "fixtures.hpp"
#include "qim/cli.hpp"
#include "qim/matrix_io.hpp"
#include "qim/verify.hpp"

using namespace qim;
namespace fs = std::filesystem;

namespace {

struct Run {
  int status;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string temp(const std::string& name) { return (fs::temp_directory_path() / ("qim_test_" + name)).string(); }

}  // namespace

TEST_CASE("cumulant on the qubit example") {
  write_matrix(temp("phi.json"), fx::half().density());
  write_matrix(temp("h.json"), fx::diag(1, -1));
  const Run r = run({"cumulant", "--state", temp("phi.json"), "--obs", temp("h.json")});
  CHECK(r.status == cli::kExitOk);
  CHECK(std::stod(r.out) == doctest::Approx(fx::kLogCosh1).epsilon(1e-15));
}

TEST_CASE("entropy prints inf outside the support") {
  write_matrix(temp("pure.json"), fx::diag(1, 0));
  write_matrix(temp("other.json"), fx::diag(0, 1));
  const Run r = run({"entropy", "--a", temp("pure.json"), "--b", temp("other.json")});
  CHECK(r.status == cli::kExitOk);
  CHECK(r.out == "inf\n");
}

TEST_CASE("malformed input exits 2 and names the field") {
  {
    std::FILE* f = std::fopen(temp("bad.json").c_str(), "w");
    std::fputs(R"({"shape":[2],"blocks":[[[[1,0],[0,0]],[[0,0],[1,"z"]]]]})", f);
    std::fclose(f);
  }
  const Run r = run({"cumulant", "--state", temp("bad.json"), "--obs", temp("h.json")});
  CHECK(r.status == cli::kExitUsage);
  CHECK(r.err.find("blocks[0][1][1][1]") != std::string::npos);
}

TEST_CASE("usage errors") {
  CHECK(run({}).status == cli::kExitUsage);
  CHECK(run({"nonsense"}).status == cli::kExitUsage);
  CHECK(run({"verify", "--tol-profile", "nope"}).status == cli::kExitUsage);
  CHECK(run({"verify", "--dims", "2,x"}).status == cli::kExitUsage);
}

TEST_CASE("dims syntax") {
  CHECK(cli::parse_dims("2,2") == std::vector<std::vector<int>>{{2, 2}});
  CHECK(cli::parse_dims("2;3;1,1").size() == 3);
}

TEST_CASE("small verify run passes and writes a report") {
  const Run r = run({"verify", "--dims", "2", "--samples", "3", "--seed", "1", "--check", "donald_identity", "--check",
                     "commutative", "--out", temp("report.json")});
  CHECK(r.status == cli::kExitOk);
  CHECK(fs::exists(temp("report.json")));
}
