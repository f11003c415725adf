#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "qchan/detectors.hpp"
#include "qchan/errors.hpp"

using namespace qchan;

namespace {

bool close(double a, double b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

std::vector<OutcomeRecord> records_with(std::int64_t plus, std::int64_t minus) {
  std::vector<OutcomeRecord> out;
  out.reserve(static_cast<std::size_t>(plus + minus));
  for (std::int64_t i = 0; i < plus + minus; ++i) {
    OutcomeRecord r;
    r.trial_index = i;
    r.marginal_q1 = i < plus ? MarginalOutcome::Plus : MarginalOutcome::Minus;
    out.push_back(r);
  }
  return out;
}

DetectorConfig nonblind_cfg(double alpha = 0.05, double prior = 0.64) {
  DetectorConfig cfg;
  cfg.method = DetectorMethod::NonBlindMultiPrep;
  cfg.alpha = alpha;
  cfg.prior_r1_sq = prior;
  return cfg;
}

DetectorConfig split_cfg(double alpha = 0.05, double fraction = 0.5) {
  DetectorConfig cfg;
  cfg.method = DetectorMethod::BlindSplit;
  cfg.alpha = alpha;
  cfg.split_fraction = fraction;
  return cfg;
}

DetectorConfig singleprep_cfg(double alpha = 0.05, double prior = 0.5) {
  DetectorConfig cfg;
  cfg.method = DetectorMethod::SinglePrepSemiBlind;
  cfg.alpha = alpha;
  cfg.prior_mean_r1_sq = prior;
  return cfg;
}

}  // namespace

TEST_CASE("hoeffding_threshold: frozen values and scaling") {
  // sqrt(ln(200)/20000), computed independently.
  CHECK(close(hoeffding_threshold(10000, 0.01), 0.016276236307187292, 1e-16));
  CHECK(close(hoeffding_threshold(10000, 0.05), 0.013581015157406196, 1e-16));
  // alpha = 2 e^-2 makes ln(2/alpha) = 2, so the bound is exactly 1/sqrt(n).
  CHECK(close(hoeffding_threshold(100, 2.0 * std::exp(-2.0)), 0.1, 1e-15));
  // 1/sqrt(n) scaling: quadrupling n halves the bound.
  CHECK(close(hoeffding_threshold(40000, 0.05), hoeffding_threshold(10000, 0.05) / 2.0, 1e-15));
  // Two-sample doubles the one-sample bound.
  CHECK(close(hoeffding_threshold(5000, 0.05, true), 0.038412911652796831, 1e-16));
  CHECK(hoeffding_threshold(5000, 0.05, true) == 2.0 * hoeffding_threshold(5000, 0.05));

  CHECK_THROWS_AS(hoeffding_threshold(0, 0.05), std::domain_error);
  CHECK_THROWS_AS(hoeffding_threshold(100, 0.0), std::domain_error);
  CHECK_THROWS_AS(hoeffding_threshold(100, 1.0), std::domain_error);
  CHECK_THROWS_AS(hoeffding_threshold(100, std::nan("")), std::domain_error);
}

TEST_CASE("inverse_normal_cdf: Acklam approximation against frozen quantiles") {
  CHECK(close(inverse_normal_cdf(0.5), 0.0, 1e-9));
  CHECK(close(inverse_normal_cdf(0.975), 1.959963984540054, 1e-8));
  CHECK(close(inverse_normal_cdf(0.001), -3.090232306167813, 1e-7));
  CHECK(close(inverse_normal_cdf(0.999), 3.090232306167813, 1e-7));
  // Symmetry across the median.
  for (double p : {0.01, 0.1, 0.3, 0.45}) {
    CHECK(close(inverse_normal_cdf(p), -inverse_normal_cdf(1.0 - p), 1e-9));
  }
  CHECK_THROWS_AS(inverse_normal_cdf(0.0), std::domain_error);
  CHECK_THROWS_AS(inverse_normal_cdf(1.0), std::domain_error);
}

TEST_CASE("normal_threshold sits below Hoeffding at moderate alpha") {
  const double z975 = 1.959963984540054;
  CHECK(close(normal_threshold(10000, 0.05), z975 / 200.0, 1e-8));
  CHECK(normal_threshold(10000, 0.05, true) == 2.0 * normal_threshold(10000, 0.05));
  // The distribution-free bound is the conservative one.
  for (std::int64_t n : {100LL, 1000LL, 10000LL}) {
    CHECK(normal_threshold(n, 0.05) < hoeffding_threshold(n, 0.05));
  }
}

TEST_CASE("estimate_expectation_plus") {
  CHECK(estimate_expectation_plus(records_with(10, 0)) == 1.0);
  CHECK(estimate_expectation_plus(records_with(0, 10)) == 0.0);
  CHECK(estimate_expectation_plus(records_with(5, 5)) == 0.5);
  const std::vector<OutcomeRecord> empty;
  CHECK_THROWS_AS(estimate_expectation_plus(empty), std::domain_error);
}

TEST_CASE("detect_nonblind_multiprep: worked point and tie handling") {
  // Exact prior match: statistic 0, benign.
  const Verdict tie = detect_nonblind_multiprep(6400, 10000, nonblind_cfg());
  CHECK(tie.decision == Decision::NoIntrusion);
  CHECK(tie.statistic == 0.0);
  CHECK(tie.n_used == std::vector<std::int64_t>{10000});

  // Worked intrusion point: plus fraction 0.3705 against prior 0.64.
  const Verdict hit = detect_nonblind_multiprep(3705, 10000, nonblind_cfg(0.01));
  CHECK(close(hit.statistic, 0.2695, 1e-12));
  CHECK(close(hit.threshold, 0.016276236307187292, 1e-15));
  CHECK(hit.decision == Decision::Intrusion);

  CHECK_THROWS_AS(detect_nonblind_multiprep(-1, 100, nonblind_cfg()), std::domain_error);
  CHECK_THROWS_AS(detect_nonblind_multiprep(101, 100, nonblind_cfg()), std::domain_error);
  CHECK_THROWS_AS(detect_nonblind_multiprep(0, 0, nonblind_cfg()), std::domain_error);

  DetectorConfig wrong = split_cfg();
  CHECK_THROWS_AS(detect_nonblind_multiprep(50, 100, wrong), config_error);
  DetectorConfig missing = nonblind_cfg();
  missing.prior_r1_sq.reset();
  CHECK_THROWS_AS(detect_nonblind_multiprep(50, 100, missing), config_error);
}

TEST_CASE("decision consistency: alarm iff statistic exceeds threshold") {
  for (int n : {10, 100, 1000}) {
    for (int plus = 0; plus <= n; plus += n / 10) {
      for (double alpha : {0.01, 0.05, 0.5}) {
        const Verdict v = detect_nonblind_multiprep(plus, n, nonblind_cfg(alpha, 0.3));
        CHECK((v.decision != Decision::NoIntrusion) == (v.statistic > v.threshold));
      }
    }
  }
}

TEST_CASE("detect_blind_split: worked change point") {
  // First half plus fraction 0.64, second half 0.3705, 10^4 records each.
  auto records = records_with(6400, 3600);
  const auto second = records_with(3705, 6295);
  records.insert(records.end(), second.begin(), second.end());

  const Verdict v = detect_blind_split(records, split_cfg());
  CHECK(close(v.statistic, 0.64 - 0.3705, 1e-12));
  CHECK(close(v.threshold, 2.0 * hoeffding_threshold(10000, 0.05), 1e-15));
  CHECK(v.decision == Decision::ChannelChanged);
  CHECK(v.n_used == std::vector<std::int64_t>{10000, 10000});
}

TEST_CASE("detect_blind_split: identical halves stay benign") {
  const auto records = records_with(20, 0);  // every outcome Plus
  const Verdict v = detect_blind_split(records, split_cfg());
  CHECK(v.statistic == 0.0);
  CHECK(v.decision == Decision::NoIntrusion);
}

TEST_CASE("detect_blind_split: uneven split uses per-half bounds") {
  const auto records = records_with(8, 0);
  const Verdict v = detect_blind_split(records, split_cfg(0.05, 0.25));
  CHECK(v.n_used == std::vector<std::int64_t>{2, 6});
  const double expected = std::sqrt(std::log(2.0 / 0.05) / (2.0 * 2.0)) +
                          std::sqrt(std::log(2.0 / 0.05) / (2.0 * 6.0));
  CHECK(close(v.threshold, expected, 1e-15));
}

TEST_CASE("detect_blind_split: minimum half sizes enforced") {
  CHECK_THROWS_AS(detect_blind_split(records_with(3, 0), split_cfg()), std::domain_error);
  CHECK_NOTHROW(detect_blind_split(records_with(4, 0), split_cfg()));
  CHECK_THROWS_AS(detect_blind_split(records_with(100, 0), nonblind_cfg()), config_error);
}

TEST_CASE("detect_singleprep: threshold and decisions") {
  const Verdict hit = detect_singleprep(records_with(100, 0), singleprep_cfg());
  CHECK(hit.statistic == 0.5);
  CHECK(close(hit.threshold, hoeffding_threshold(100, 0.05), 1e-15));
  CHECK(hit.decision == Decision::Intrusion);

  const Verdict ok = detect_singleprep(records_with(50, 50), singleprep_cfg());
  CHECK(ok.statistic == 0.0);
  CHECK(ok.decision == Decision::NoIntrusion);

  const std::vector<OutcomeRecord> empty;
  CHECK_THROWS_AS(detect_singleprep(empty, singleprep_cfg()), std::domain_error);
  CHECK_THROWS_AS(detect_singleprep(records_with(5, 5), split_cfg()), config_error);
  DetectorConfig missing = singleprep_cfg();
  missing.prior_mean_r1_sq.reset();
  CHECK_THROWS_AS(detect_singleprep(records_with(5, 5), missing), config_error);
}

TEST_CASE("DetectorConfig::validate: prior ownership per method") {
  CHECK_NOTHROW(nonblind_cfg().validate());
  CHECK_NOTHROW(split_cfg().validate());
  CHECK_NOTHROW(singleprep_cfg().validate());

  DetectorConfig stray = split_cfg();
  stray.prior_r1_sq = 0.5;
  CHECK_THROWS_AS(stray.validate(), config_error);

  DetectorConfig swapped = nonblind_cfg();
  swapped.prior_mean_r1_sq = 0.5;
  CHECK_THROWS_AS(swapped.validate(), config_error);

  DetectorConfig range = nonblind_cfg(0.05, 1.5);
  CHECK_THROWS_AS(range.validate(), config_error);

  DetectorConfig alpha_bad = nonblind_cfg(0.0);
  CHECK_THROWS_AS(alpha_bad.validate(), config_error);

  DetectorConfig frac = split_cfg(0.05, 1.0);
  CHECK_THROWS_AS(frac.validate(), config_error);

  DetectorConfig experimental;
  experimental.method = DetectorMethod::SinglePrepSplit;
  CHECK_NOTHROW(experimental.validate());
}

TEST_CASE("roc_curve: hand-computed sweep") {
  const std::vector<double> null_stats{0.1, 0.2};
  const std::vector<double> alt_stats{0.15, 0.3};
  const std::vector<double> grid{0.0, 0.12, 0.2, 0.25, 0.5};
  const auto points = roc_curve(null_stats, alt_stats, grid);
  REQUIRE(points.size() == 5);
  CHECK(points[0].false_alarm_rate == 1.0);
  CHECK(points[0].detection_rate == 1.0);
  CHECK(points[1].false_alarm_rate == 0.5);
  CHECK(points[1].detection_rate == 1.0);
  // Exceedance is strict: a statistic equal to the threshold does not alarm.
  CHECK(points[2].false_alarm_rate == 0.0);
  CHECK(points[2].detection_rate == 0.5);
  CHECK(points[3].false_alarm_rate == 0.0);
  CHECK(points[3].detection_rate == 0.5);
  CHECK(points[4].false_alarm_rate == 0.0);
  CHECK(points[4].detection_rate == 0.0);

  // Rates are nonincreasing along the ascending grid.
  for (std::size_t i = 1; i < points.size(); ++i) {
    CHECK(points[i].false_alarm_rate <= points[i - 1].false_alarm_rate);
    CHECK(points[i].detection_rate <= points[i - 1].detection_rate);
  }
}

TEST_CASE("roc_curve: input validation") {
  const std::vector<double> stats{0.1};
  const std::vector<double> empty;
  const std::vector<double> grid{0.0, 1.0};
  const std::vector<double> unsorted{1.0, 0.0};
  CHECK_THROWS_AS(roc_curve(empty, stats, grid), std::invalid_argument);
  CHECK_THROWS_AS(roc_curve(stats, empty, grid), std::invalid_argument);
  CHECK_THROWS_AS(roc_curve(stats, stats, empty), std::invalid_argument);
  CHECK_THROWS_AS(roc_curve(stats, stats, unsorted), std::invalid_argument);
}

TEST_CASE("roc_auc: separable and indistinguishable cases") {
  const std::vector<double> low(50, 0.1);
  const std::vector<double> high(50, 0.9);
  const std::vector<double> grid{0.5};
  CHECK(roc_auc(roc_curve(low, high, grid)) == 1.0);

  // Identical statistic distributions walk the diagonal: AUC 1/2.
  std::vector<double> same;
  for (int i = 0; i < 100; ++i) same.push_back(i / 100.0);
  std::vector<double> dense_grid;
  for (int i = 0; i <= 200; ++i) dense_grid.push_back(i / 200.0);
  const double auc = roc_auc(roc_curve(same, same, dense_grid));
  CHECK(close(auc, 0.5, 1e-12));
}

TEST_CASE("labels") {
  CHECK(to_string(DetectorMethod::NonBlindMultiPrep) == "non_blind_multi_prep");
  CHECK(to_string(DetectorMethod::BlindSplit) == "blind_split");
  CHECK(to_string(DetectorMethod::SinglePrepSemiBlind) == "single_prep_semi_blind");
  CHECK(to_string(DetectorMethod::SinglePrepSplit) == "single_prep_split");
  CHECK(to_string(Decision::NoIntrusion) == "no_intrusion");
  CHECK(to_string(Decision::Intrusion) == "intrusion");
  CHECK(to_string(Decision::ChannelChanged) == "channel_changed");
  CHECK(to_string(ThresholdKind::Hoeffding) == "hoeffding");
  CHECK(to_string(ThresholdKind::Normal) == "normal");
}
