// Times the OpenMP kernels against their serial references and checks that
// both produce identical results.
//
//   bench_parallel [crude_samples] [replicates]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "awh/harness.hpp"

namespace {

template <typename F>
double time_seconds(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(const char* name, double serial, double parallel, bool identical) {
  std::printf("%-22s serial %8.3f s  parallel %8.3f s  speedup %5.2fx  identical=%s\n", name,
              serial, parallel, serial / parallel, identical ? "yes" : "NO");
}

}  // namespace

int main(int argc, char** argv) {
  const std::uint64_t crude_samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 4000000;
  const std::size_t replicates = argc > 2 ? std::strtoull(argv[2], nullptr, 10) : 16;
  std::printf("threads=%d\n", omp_get_max_threads());
  bool all_identical = true;

  {
    const awh::FiberBundleModel model(100, 1.0, 22.0);
    awh::CrudeEstimate ser, par;
    const double ts = time_seconds([&] {
      awh::Rng rng(1);
      ser = awh::crude_mc_serial(model, crude_samples, rng);
    });
    const double tp = time_seconds([&] {
      awh::Rng rng(1);
      par = awh::crude_mc(model, crude_samples, rng);
    });
    const bool same = ser.failures == par.failures;
    all_identical &= same;
    report("crude_mc (fbm N=100)", ts, tp, same);
  }

  {
    auto model = std::make_shared<awh::NormalLinearModel>(2, 6.0, 0.5);
    awh::AwhConfig config{.ladder = awh::build_ladder(0.1, 61)};
    config.iterations = 100000;
    const awh::ReplicationStudy study{model, config, replicates, 7, 9.865876450377e-10, "exact"};
    awh::ErrorReport ser, par;
    const double ts = time_seconds([&] { ser = awh::run_replication_serial(study); });
    const double tp = time_seconds([&] { par = awh::run_replication(study); });
    const bool same = ser.estimates == par.estimates && ser.evals == par.evals;
    all_identical &= same;
    report("replication (awh)", ts, tp, same);
  }

  return all_identical ? EXIT_SUCCESS : EXIT_FAILURE;
}
