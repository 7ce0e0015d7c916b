// Serial reference loop vs OpenMP sample kernels on the verification suite.
// Usage: bench_verify [samples] [repeats]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qim/verify.hpp"

using namespace qim;

namespace {

double seconds(const VerifyConfig& config, int repeats, bool& passed) {
  double best = 1e300;
  for (int r = 0; r < repeats; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    const Report report = run_suite(config);
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    passed = passed && report.passed();
    best = std::min(best, dt);
  }
  return best;
}

}  // namespace

int main(int argc, char** argv) {
  VerifyConfig config;
  config.dims = default_dims();
  config.samples = argc > 1 ? std::atoi(argv[1]) : 30;
  const int repeats = argc > 2 ? std::atoi(argv[2]) : 3;

#ifdef _OPENMP
  const int threads = omp_get_max_threads();
#else
  const int threads = 1;
#endif
  bool passed = true;
  config.execution = Execution::serial;
  const double serial = seconds(config, repeats, passed);
  config.execution = Execution::parallel;
  const double parallel = seconds(config, repeats, passed);

  std::printf("suite, %d samples per shape, best of %d\n", config.samples, repeats);
  std::printf("  serial    %8.3f s\n", serial);
  std::printf("  parallel  %8.3f s  (%d threads)\n", parallel, threads);
  std::printf("  speedup   %8.2fx\n", serial / parallel);
  return passed ? 0 : 1;
}
