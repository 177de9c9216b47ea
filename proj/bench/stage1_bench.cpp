// Compares the serial stage-1 reference against the OpenMP path on a
// synthetic cohort and reports throughput plus an equality check.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dd/dataio.hpp"
#include "dd/metrics.hpp"
#include "dd/screening.hpp"
#include "dd/series.hpp"

namespace {

dd::Dataset make_cohort(std::size_t n, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> lnk(-9.0, -1.0);
  std::normal_distribution<double> noise(0.0, 0.04);
  std::uniform_int_distribution<int> age(21, 67);

  dd::Dataset ds;
  ds.delay_schedule = dd::default_delay_schedule();
  for (std::size_t i = 0; i < n; ++i) {
    const double k = std::exp(lnk(rng));
    std::vector<double> y;
    for (double d : ds.delay_schedule) {
      double v = 1.0 / (1.0 + k * d) + noise(rng);
      y.push_back(std::min(1.0, std::max(0.0, v)));
    }
    ds.rows.push_back({std::to_string(i + 1), double(age(rng)), "Male", "No",
                       dd::IndifferenceSeries(ds.delay_schedule, y),
                       std::nullopt, std::nullopt});
  }
  return ds;
}

double run_timed(const dd::Dataset& ds, dd::Execution exec,
                 std::vector<dd::ParticipantMetrics>& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = dd::run_stage1(ds, dd::FitConfig{}, dd::ModelSelection::both, exec);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 1000;
  const dd::Dataset ds = make_cohort(n, 12345);

#ifdef _OPENMP
  std::printf("openmp threads: %d\n", omp_get_max_threads());
#else
  std::printf("openmp: not enabled\n");
#endif

  std::vector<dd::ParticipantMetrics> serial, parallel;
  const double t_serial = run_timed(ds, dd::Execution::serial, serial);
  const double t_parallel = run_timed(ds, dd::Execution::parallel, parallel);

  bool identical = serial.size() == parallel.size();
  for (std::size_t i = 0; identical && i < serial.size(); ++i) {
    identical = serial[i].mazur.params.k == parallel[i].mazur.params.k &&
                serial[i].mazur.rss == parallel[i].mazur.rss &&
                serial[i].rachlin->params.k == parallel[i].rachlin->params.k &&
                serial[i].rachlin->params.s == parallel[i].rachlin->params.s;
  }

  std::printf("participants: %zu\n", ds.rows.size());
  std::printf("serial:   %.3f s  (%.0f rows/s)\n", t_serial, n / t_serial);
  std::printf("parallel: %.3f s  (%.0f rows/s)\n", t_parallel, n / t_parallel);
  std::printf("speedup:  %.2fx\n", t_serial / t_parallel);
  std::printf("results bit-identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
