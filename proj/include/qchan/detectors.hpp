#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qchan/sampling.hpp"

// Intrusion / channel-change detectors over campaign records.  All decisions
// compare an absolute deviation statistic against a distribution-free
// Hoeffding threshold (or, for comparison only, a normal-approximation
// threshold).  Ties resolve to the benign decision.

namespace qchan {

enum class DetectorMethod {
  NonBlindMultiPrep,     // known fixed preparation, known prior_r1_sq
  BlindSplit,            // no priors; compares two halves of the record stream
  SinglePrepSemiBlind,   // random preparations, known prior_mean_r1_sq
  SinglePrepSplit,       // experimental: BlindSplit machinery on single-prep records
};

enum class ThresholdKind { Hoeffding, Normal };

struct DetectorConfig {
  DetectorMethod method = DetectorMethod::SinglePrepSemiBlind;
  double alpha = 0.05;  // in (0, 1)
  std::optional<double> prior_r1_sq;       // NonBlindMultiPrep only, in [0, 1]
  std::optional<double> prior_mean_r1_sq;  // SinglePrepSemiBlind only, in [0, 1]
  double split_fraction = 0.5;             // split methods only, in (0, 1)
  ThresholdKind threshold_kind = ThresholdKind::Hoeffding;

  // Throws config_error if the prior required by `method` is missing, a
  // prior another method owns is present, or any value is out of range.
  void validate() const;
};

enum class Decision { NoIntrusion, Intrusion, ChannelChanged };

struct Verdict {
  Decision decision = Decision::NoIntrusion;
  double statistic = 0.0;
  double threshold = 0.0;
  std::vector<std::int64_t> n_used;  // record counts per subset examined

  bool alarmed() const noexcept { return decision != Decision::NoIntrusion; }
};

// Hoeffding deviation bound at confidence 1 - alpha:
//   one-sample: sqrt(ln(2/alpha) / (2n))
//   two-sample: twice that (equal halves of size n each)
// Throws std::domain_error for n < 1 or alpha outside (0, 1).
double hoeffding_threshold(std::int64_t n, double alpha, bool two_sample = false);

// Normal-approximation counterpart (conservative variance bound 1/4):
//   one-sample: z_{1-alpha/2} / (2 sqrt(n))
//   two-sample: z_{1-alpha/2} * sqrt(1/(4n) + 1/(4n))
double normal_threshold(std::int64_t n, double alpha, bool two_sample = false);

// Inverse standard normal CDF (Acklam rational approximation, |err| < 1.2e-9).
double inverse_normal_cdf(double p);

// Fraction of records with qubit 1 measured +.  Throws on empty input.
double estimate_expectation_plus(std::span<const OutcomeRecord> records);

// |plus_count/n - prior_r1_sq| vs one-sample threshold -> Intrusion.
Verdict detect_nonblind_multiprep(std::int64_t plus_count, std::int64_t n,
                                  const DetectorConfig& cfg);

// Order-preserving split at floor(split_fraction * n); |p_hat_A - p_hat_B|
// vs a two-sample threshold (sum of per-half one-sample bounds, which equals
// the equal-halves form when the split is even) -> ChannelChanged.
// Requires at least 2 records per half.
Verdict detect_blind_split(std::span<const OutcomeRecord> records,
                           const DetectorConfig& cfg);

// |plus fraction - prior_mean_r1_sq| over K single-prep records vs one-sample
// threshold -> Intrusion.
Verdict detect_singleprep(std::span<const OutcomeRecord> records,
                          const DetectorConfig& cfg);

struct RocPoint {
  double threshold = 0.0;
  double false_alarm_rate = 0.0;
  double detection_rate = 0.0;
};

// Sweep a sorted threshold grid over per-repetition statistics gathered under
// the null (no intrusion) and alternative hypotheses.  rate = fraction of
// statistics strictly above the threshold, so both rates are nonincreasing
// in the threshold.  Throws std::invalid_argument on empty inputs or an
// unsorted grid.
std::vector<RocPoint> roc_curve(std::span<const double> null_stats,
                                std::span<const double> alt_stats,
                                std::span<const double> grid);

// Trapezoidal area under (false_alarm_rate, detection_rate), with (0,0) and
// (1,1) endpoints included.
double roc_auc(std::span<const RocPoint> points);

std::string to_string(DetectorMethod m);
std::string to_string(Decision d);
std::string to_string(ThresholdKind k);

}  // namespace qchan
