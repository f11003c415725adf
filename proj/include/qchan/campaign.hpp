#pragma once

#include <cstdint>
#include <vector>

#include "qchan/scenario.hpp"

// Campaign execution.  One repetition = n_preparations trials through the
// channel; a run = `repetitions` independent repetitions.  Every repetition
// derives all of its randomness from (seed, repetition index) alone, so the
// OpenMP kernel and the serial reference produce bitwise-identical results.

namespace qchan {

enum class ExecutionPolicy { Serial, Parallel };

// All trial records for one repetition, in trial order.
std::vector<OutcomeRecord> run_campaign(const ScenarioConfig& s, std::uint64_t repetition);

struct RepetitionResult {
  Verdict verdict;
  double plus_fraction = 0.0;  // fraction of trials with qubit 1 measured +
  bool correct = false;        // verdict.alarmed() == s.expects_alarm()
};

struct CampaignSummary {
  std::uint64_t config_hash = 0;
  std::uint64_t seed = 0;
  std::vector<RepetitionResult> repetitions;
  // Aggregates are sequential reductions over `repetitions` in order, so
  // they are independent of the execution policy.
  double alarm_rate = 0.0;
  double correct_rate = 0.0;
  double mean_statistic = 0.0;
  double mean_plus_fraction = 0.0;
  double wall_seconds = 0.0;  // timing only; never part of file output
};

// Run the scenario's detector over one repetition's records.
// Requires s.detector.
Verdict run_detector(const ScenarioConfig& s, std::span<const OutcomeRecord> records);

// Detection campaign: every repetition simulated, detected, and scored.
CampaignSummary run_detect_campaigns(const ScenarioConfig& s, ExecutionPolicy policy);

// Simulation-only: materialize all records for all repetitions (outer index
// = repetition).
std::vector<std::vector<OutcomeRecord>> run_simulation(const ScenarioConfig& s,
                                                       ExecutionPolicy policy);

// Per-repetition detection statistics, for ROC sweeps.
std::vector<double> campaign_statistics(const ScenarioConfig& s, ExecutionPolicy policy);

}  // namespace qchan
