#include "qchan/detectors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qchan/errors.hpp"

namespace qchan {

namespace {

void require_count(std::int64_t n, const char* where) {
  if (n < 1) throw std::domain_error(std::string(where) + ": need at least one record");
}

void require_alpha(double alpha, const char* where) {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw std::domain_error(std::string(where) + ": alpha must lie in (0, 1)");
  }
}

double one_sample_hoeffding(std::int64_t n, double alpha) {
  return std::sqrt(std::log(2.0 / alpha) / (2.0 * static_cast<double>(n)));
}

double one_sample_normal(std::int64_t n, double alpha) {
  // Worst-case Bernoulli variance 1/4: sd of the mean is 1/(2 sqrt(n)).
  return inverse_normal_cdf(1.0 - alpha / 2.0) / (2.0 * std::sqrt(static_cast<double>(n)));
}

double subset_threshold(std::int64_t n, double alpha, ThresholdKind kind) {
  return kind == ThresholdKind::Hoeffding ? one_sample_hoeffding(n, alpha)
                                          : one_sample_normal(n, alpha);
}

std::int64_t plus_count(std::span<const OutcomeRecord> records) {
  return std::count_if(records.begin(), records.end(), [](const OutcomeRecord& r) {
    return r.marginal_q1 == MarginalOutcome::Plus;
  });
}

void require_prior(const std::optional<double>& prior, const char* field) {
  if (!prior) {
    throw config_error(std::string(field) + ": required by the configured method");
  }
}

}  // namespace

void DetectorConfig::validate() const {
  if (!std::isfinite(alpha) || alpha <= 0.0 || alpha >= 1.0) {
    throw config_error("detector.alpha: must lie in (0, 1)");
  }
  const bool split_method =
      method == DetectorMethod::BlindSplit || method == DetectorMethod::SinglePrepSplit;

  if (method == DetectorMethod::NonBlindMultiPrep) {
    require_prior(prior_r1_sq, "detector.prior_r1_sq");
  } else if (prior_r1_sq) {
    throw config_error("detector.prior_r1_sq: only valid for non_blind_multi_prep");
  }
  if (method == DetectorMethod::SinglePrepSemiBlind) {
    require_prior(prior_mean_r1_sq, "detector.prior_mean_r1_sq");
  } else if (prior_mean_r1_sq) {
    throw config_error("detector.prior_mean_r1_sq: only valid for single_prep_semi_blind");
  }
  for (const auto& [prior, field] :
       {std::pair{prior_r1_sq, "detector.prior_r1_sq"},
        std::pair{prior_mean_r1_sq, "detector.prior_mean_r1_sq"}}) {
    if (prior && !(*prior >= 0.0 && *prior <= 1.0)) {
      throw config_error(std::string(field) + ": must lie in [0, 1]");
    }
  }
  if (split_method) {
    if (!std::isfinite(split_fraction) || split_fraction <= 0.0 || split_fraction >= 1.0) {
      throw config_error("detector.split_fraction: must lie in (0, 1)");
    }
  }
}

double hoeffding_threshold(std::int64_t n, double alpha, bool two_sample) {
  require_count(n, "hoeffding_threshold");
  require_alpha(alpha, "hoeffding_threshold");
  const double t = one_sample_hoeffding(n, alpha);
  return two_sample ? 2.0 * t : t;
}

double normal_threshold(std::int64_t n, double alpha, bool two_sample) {
  require_count(n, "normal_threshold");
  require_alpha(alpha, "normal_threshold");
  const double t = one_sample_normal(n, alpha);
  return two_sample ? 2.0 * t : t;
}

double inverse_normal_cdf(double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::domain_error("inverse_normal_cdf: p must lie in (0, 1)");
  }
  // Acklam's rational approximation, relative error < 1.15e-9 over (0, 1).
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double p_low = 0.02425;

  if (p < p_low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  if (p > 1.0 - p_low) {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double q = p - 0.5;
  const double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
}

double estimate_expectation_plus(std::span<const OutcomeRecord> records) {
  require_count(static_cast<std::int64_t>(records.size()), "estimate_expectation_plus");
  return static_cast<double>(plus_count(records)) / static_cast<double>(records.size());
}

Verdict detect_nonblind_multiprep(std::int64_t n_plus, std::int64_t n,
                                  const DetectorConfig& cfg) {
  if (cfg.method != DetectorMethod::NonBlindMultiPrep) {
    throw config_error("detector.method: detect_nonblind_multiprep requires non_blind_multi_prep");
  }
  cfg.validate();
  require_count(n, "detect_nonblind_multiprep");
  if (n_plus < 0 || n_plus > n) {
    throw std::domain_error("detect_nonblind_multiprep: plus count outside [0, n]");
  }
  Verdict v;
  v.statistic = std::abs(static_cast<double>(n_plus) / static_cast<double>(n) - *cfg.prior_r1_sq);
  v.threshold = subset_threshold(n, cfg.alpha, cfg.threshold_kind);
  v.n_used = {n};
  // Strict inequality: a tie is the benign decision.
  v.decision = v.statistic > v.threshold ? Decision::Intrusion : Decision::NoIntrusion;
  return v;
}

Verdict detect_blind_split(std::span<const OutcomeRecord> records,
                           const DetectorConfig& cfg) {
  if (cfg.method != DetectorMethod::BlindSplit &&
      cfg.method != DetectorMethod::SinglePrepSplit) {
    throw config_error("detector.method: detect_blind_split requires a split method");
  }
  cfg.validate();
  const auto n = static_cast<std::int64_t>(records.size());
  const auto n_a = static_cast<std::int64_t>(cfg.split_fraction * static_cast<double>(n));
  const auto n_b = n - n_a;
  if (n_a < 2 || n_b < 2) {
    throw std::domain_error("detect_blind_split: need at least 2 records per half");
  }
  const auto first = records.first(static_cast<std::size_t>(n_a));
  const auto second = records.subspan(static_cast<std::size_t>(n_a));
  const double p_a = static_cast<double>(plus_count(first)) / static_cast<double>(n_a);
  const double p_b = static_cast<double>(plus_count(second)) / static_cast<double>(n_b);

  Verdict v;
  v.statistic = std::abs(p_a - p_b);
  // Union bound over the halves; equals the equal-halves two-sample form
  // when n_a == n_b.
  v.threshold = subset_threshold(n_a, cfg.alpha, cfg.threshold_kind) +
                subset_threshold(n_b, cfg.alpha, cfg.threshold_kind);
  v.n_used = {n_a, n_b};
  v.decision = v.statistic > v.threshold ? Decision::ChannelChanged : Decision::NoIntrusion;
  return v;
}

Verdict detect_singleprep(std::span<const OutcomeRecord> records,
                          const DetectorConfig& cfg) {
  if (cfg.method != DetectorMethod::SinglePrepSemiBlind) {
    throw config_error("detector.method: detect_singleprep requires single_prep_semi_blind");
  }
  cfg.validate();
  const auto k = static_cast<std::int64_t>(records.size());
  require_count(k, "detect_singleprep");

  Verdict v;
  v.statistic = std::abs(estimate_expectation_plus(records) - *cfg.prior_mean_r1_sq);
  v.threshold = subset_threshold(k, cfg.alpha, cfg.threshold_kind);
  v.n_used = {k};
  v.decision = v.statistic > v.threshold ? Decision::Intrusion : Decision::NoIntrusion;
  return v;
}

std::vector<RocPoint> roc_curve(std::span<const double> null_stats,
                                std::span<const double> alt_stats,
                                std::span<const double> grid) {
  if (null_stats.empty() || alt_stats.empty()) {
    throw std::invalid_argument("roc_curve: statistic samples must be non-empty");
  }
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end())) {
    throw std::invalid_argument("roc_curve: grid must be non-empty and sorted ascending");
  }
  auto exceed_rate = [](std::span<const double> stats, double thr) {
    const auto over = std::count_if(stats.begin(), stats.end(),
                                    [thr](double s) { return s > thr; });
    return static_cast<double>(over) / static_cast<double>(stats.size());
  };
  std::vector<RocPoint> points;
  points.reserve(grid.size());
  for (double thr : grid) {
    points.push_back({thr, exceed_rate(null_stats, thr), exceed_rate(alt_stats, thr)});
  }
  return points;
}

double roc_auc(std::span<const RocPoint> points) {
  std::vector<std::pair<double, double>> fd;
  fd.reserve(points.size() + 2);
  fd.emplace_back(0.0, 0.0);
  fd.emplace_back(1.0, 1.0);
  for (const auto& p : points) fd.emplace_back(p.false_alarm_rate, p.detection_rate);
  std::sort(fd.begin(), fd.end());
  double area = 0.0;
  for (std::size_t i = 1; i < fd.size(); ++i) {
    area += (fd[i].first - fd[i - 1].first) * 0.5 * (fd[i].second + fd[i - 1].second);
  }
  return area;
}

std::string to_string(DetectorMethod m) {
  switch (m) {
    case DetectorMethod::NonBlindMultiPrep: return "non_blind_multi_prep";
    case DetectorMethod::BlindSplit: return "blind_split";
    case DetectorMethod::SinglePrepSemiBlind: return "single_prep_semi_blind";
    case DetectorMethod::SinglePrepSplit: return "single_prep_split";
  }
  throw std::logic_error("to_string(DetectorMethod): bad value");
}

std::string to_string(Decision d) {
  switch (d) {
    case Decision::NoIntrusion: return "no_intrusion";
    case Decision::Intrusion: return "intrusion";
    case Decision::ChannelChanged: return "channel_changed";
  }
  throw std::logic_error("to_string(Decision): bad value");
}

std::string to_string(ThresholdKind k) {
  return k == ThresholdKind::Hoeffding ? "hoeffding" : "normal";
}

}  // namespace qchan
