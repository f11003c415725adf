// Timing comparison: serial reference campaign runner vs the OpenMP kernel.
// Also asserts the two produce identical results, since that equivalence is
// the whole point of the counter-based substream design.
//
// Usage: bench_campaign [repetitions] [n_preparations]

#include <chrono>
#include <cstdio>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qchan/campaign.hpp"

using namespace qchan;

namespace {

ScenarioConfig bench_scenario(std::int64_t reps, std::int64_t n) {
  ScenarioConfig c;
  c.mode = CampaignMode::SinglePrep;
  c.case_truth = CaseTruth::Case1;
  c.coupling = CouplingSpec{CouplingSpec::Kind::MixingV, 0.8};
  c.n_preparations = n;
  c.repetitions = reps;
  c.seed = 1234;
  DetectorConfig d;
  d.method = DetectorMethod::SinglePrepSemiBlind;
  d.alpha = 0.05;
  d.prior_mean_r1_sq = 0.5;
  c.detector = d;
  c.validate();
  return c;
}

double time_run(const ScenarioConfig& c, ExecutionPolicy policy, CampaignSummary& out) {
  const auto t0 = std::chrono::steady_clock::now();
  out = run_detect_campaigns(c, policy);
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const std::int64_t reps = argc > 1 ? std::atoll(argv[1]) : 200;
  const std::int64_t n = argc > 2 ? std::atoll(argv[2]) : 20000;
  const ScenarioConfig c = bench_scenario(reps, n);

#ifdef _OPENMP
  std::printf("openmp enabled, max threads %d\n", omp_get_max_threads());
#else
  std::printf("openmp not available; parallel policy runs serially\n");
#endif
  std::printf("campaign: %lld repetitions x %lld preparations\n",
              static_cast<long long>(reps), static_cast<long long>(n));

  CampaignSummary serial, parallel;
  const double ts = time_run(c, ExecutionPolicy::Serial, serial);
  const double tp = time_run(c, ExecutionPolicy::Parallel, parallel);

  bool identical = serial.repetitions.size() == parallel.repetitions.size() &&
                   serial.alarm_rate == parallel.alarm_rate &&
                   serial.mean_statistic == parallel.mean_statistic &&
                   serial.mean_plus_fraction == parallel.mean_plus_fraction;
  for (std::size_t i = 0; identical && i < serial.repetitions.size(); ++i) {
    identical = serial.repetitions[i].verdict.statistic ==
                parallel.repetitions[i].verdict.statistic;
  }

  std::printf("serial   %8.3fs  (%.1f Mtrials/s)\n", ts,
              static_cast<double>(reps * n) / ts / 1e6);
  std::printf("parallel %8.3fs  (%.1f Mtrials/s)  speedup %.2fx\n", tp,
              static_cast<double>(reps * n) / tp / 1e6, ts / tp);
  std::printf("results bitwise identical: %s\n", identical ? "yes" : "NO");
  return identical ? 0 : 1;
}
