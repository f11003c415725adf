#include "qchan/campaign.hpp"

#include <chrono>
#include <exception>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qchan {

namespace {

// One trial of a repetition.  All randomness comes from (seed, repetition,
// trial, purpose), never from shared generator state, so trials and
// repetitions can execute in any order.
OutcomeRecord run_trial(const ScenarioConfig& s, const RngState& rep_stream,
                        std::int64_t trial, const PreparationPair* fixed_prep,
                        const JointProbs* fixed_probs) {
  PreparationPair prep;
  JointProbs probs;
  if (fixed_prep != nullptr) {
    prep = *fixed_prep;
    probs = *fixed_probs;
  } else {
    Rng prep_rng = trial_rng(rep_stream, static_cast<std::uint64_t>(trial), Draw::Preparation);
    prep = sample_preparation(s.emitter1, s.emitter2, prep_rng);
    probs = joint_probabilities(prep, s.coupling_at(trial));
  }
  Rng meas_rng = trial_rng(rep_stream, static_cast<std::uint64_t>(trial), Draw::Measurement);
  // The joint event is always drawn and projected, so the random stream does
  // not depend on whether the joint outcome is recorded.
  OutcomeRecord rec = measure_joint(trial, probs, s.record_joint, meas_rng);
  if (s.prep_observable()) rec.prep = prep;
  return rec;
}

// Execute fn(rep) for every repetition index under the chosen policy.  The
// parallel path is the production kernel; the serial path is the reference
// the tests compare it against.
template <typename Fn>
void for_each_repetition(std::int64_t repetitions, ExecutionPolicy policy, Fn&& fn) {
  if (policy == ExecutionPolicy::Serial) {
    for (std::int64_t rep = 0; rep < repetitions; ++rep) fn(rep);
    return;
  }
  std::exception_ptr first_error;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
  for (std::int64_t rep = 0; rep < repetitions; ++rep) {
    try {
      fn(rep);
    } catch (...) {
      // Exceptions must not escape an OpenMP region; surface the first one
      // after the join.
#ifdef _OPENMP
#pragma omp critical(qchan_campaign_error)
#endif
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace

std::vector<OutcomeRecord> run_campaign(const ScenarioConfig& s, std::uint64_t repetition) {
  const RngState rep_stream = repetition_stream(s.seed, repetition);

  // Multi-prep campaigns reuse one preparation; precompute the per-segment
  // probabilities instead of recomputing them every trial.
  const bool fixed = s.mode == CampaignMode::MultiplePrep;
  PreparationPair prep;
  JointProbs base_probs, switched_probs;
  if (fixed) {
    prep = PreparationPair{s.emitter1.fixed, s.emitter2.fixed};
    base_probs = joint_probabilities(prep, s.effective_coupling());
    if (s.coupling_switch) {
      switched_probs = joint_probabilities(prep, s.coupling_switch->coupling.resolve());
    }
  }
  const std::int64_t boundary = s.switch_index();

  std::vector<OutcomeRecord> records;
  records.reserve(static_cast<std::size_t>(s.n_preparations));
  for (std::int64_t trial = 0; trial < s.n_preparations; ++trial) {
    const JointProbs* probs =
        fixed ? (trial < boundary ? &base_probs : &switched_probs) : nullptr;
    records.push_back(run_trial(s, rep_stream, trial, fixed ? &prep : nullptr, probs));
  }
  return records;
}

Verdict run_detector(const ScenarioConfig& s, std::span<const OutcomeRecord> records) {
  if (!s.detector) throw config_error("detector: required to run detection");
  const DetectorConfig& cfg = *s.detector;
  switch (cfg.method) {
    case DetectorMethod::NonBlindMultiPrep: {
      std::int64_t plus = 0;
      for (const auto& r : records) plus += r.marginal_q1 == MarginalOutcome::Plus;
      return detect_nonblind_multiprep(plus, static_cast<std::int64_t>(records.size()), cfg);
    }
    case DetectorMethod::BlindSplit:
    case DetectorMethod::SinglePrepSplit:
      return detect_blind_split(records, cfg);
    case DetectorMethod::SinglePrepSemiBlind:
      return detect_singleprep(records, cfg);
  }
  throw std::logic_error("run_detector: bad method");
}

CampaignSummary run_detect_campaigns(const ScenarioConfig& s, ExecutionPolicy policy) {
  const auto t0 = std::chrono::steady_clock::now();
  CampaignSummary out;
  out.config_hash = scenario_hash(s);
  out.seed = s.seed;
  out.repetitions.resize(static_cast<std::size_t>(s.repetitions));

  const bool expect_alarm = s.expects_alarm();
  for_each_repetition(s.repetitions, policy, [&](std::int64_t rep) {
    const auto records = run_campaign(s, static_cast<std::uint64_t>(rep));
    RepetitionResult& r = out.repetitions[static_cast<std::size_t>(rep)];
    r.verdict = run_detector(s, records);
    r.plus_fraction = estimate_expectation_plus(records);
    r.correct = r.verdict.alarmed() == expect_alarm;
  });

  // Sequential reduction in repetition order: aggregates are identical for
  // both execution policies.
  double alarms = 0.0, corrects = 0.0, stats = 0.0, plus = 0.0;
  for (const auto& r : out.repetitions) {
    alarms += r.verdict.alarmed() ? 1.0 : 0.0;
    corrects += r.correct ? 1.0 : 0.0;
    stats += r.verdict.statistic;
    plus += r.plus_fraction;
  }
  const auto n = static_cast<double>(out.repetitions.size());
  out.alarm_rate = alarms / n;
  out.correct_rate = corrects / n;
  out.mean_statistic = stats / n;
  out.mean_plus_fraction = plus / n;
  out.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

std::vector<std::vector<OutcomeRecord>> run_simulation(const ScenarioConfig& s,
                                                       ExecutionPolicy policy) {
  std::vector<std::vector<OutcomeRecord>> reps(static_cast<std::size_t>(s.repetitions));
  for_each_repetition(s.repetitions, policy, [&](std::int64_t rep) {
    reps[static_cast<std::size_t>(rep)] = run_campaign(s, static_cast<std::uint64_t>(rep));
  });
  return reps;
}

std::vector<double> campaign_statistics(const ScenarioConfig& s, ExecutionPolicy policy) {
  std::vector<double> stats(static_cast<std::size_t>(s.repetitions));
  for_each_repetition(s.repetitions, policy, [&](std::int64_t rep) {
    const auto records = run_campaign(s, static_cast<std::uint64_t>(rep));
    stats[static_cast<std::size_t>(rep)] = run_detector(s, records).statistic;
  });
  return stats;
}

}  // namespace qchan
