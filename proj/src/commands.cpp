#include "qchan/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include "qchan/csv.hpp"

namespace qchan {

namespace {

ScenarioConfig load_with_seed(const CommonOptions& opt) {
  ScenarioConfig s = load_scenario(opt.config);
  s.seed = resolve_seed(opt.seed, std::getenv("QCHAN_SEED"), s.seed);
  return s;
}

std::ofstream open_output(const std::filesystem::path& path) {
  std::ofstream os(path, std::ios::binary);  // LF endings everywhere
  if (!os) throw config_error("out: cannot open " + path.string() + " for writing");
  return os;
}

// Errors always reach stderr, quiet or not; quiet only suppresses the
// success summary.
int run_guarded(const std::function<int()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

void print_summary_header(const ScenarioConfig& s) {
  std::cout << "scenario " << std::hex << scenario_hash(s) << std::dec << "  mode="
            << to_string(s.mode) << " case=" << to_string(s.case_truth)
            << " n=" << s.n_preparations << " repetitions=" << s.repetitions
            << " seed=" << s.seed << '\n';
}

}  // namespace

int cmd_simulate(const CommonOptions& opt) {
  return run_guarded([&] {
    const ScenarioConfig s = load_with_seed(opt);
    const auto reps = run_simulation(s, ExecutionPolicy::Parallel);
    auto os = open_output(opt.out);
    write_simulate_csv(os, s, reps);
    if (!os) throw config_error("out: write failed for " + opt.out.string());

    if (!opt.quiet) {
      std::int64_t total = 0, plus = 0;
      for (const auto& rep : reps) {
        total += static_cast<std::int64_t>(rep.size());
        for (const auto& r : rep) plus += r.marginal_q1 == MarginalOutcome::Plus;
      }
      print_summary_header(s);
      std::cout << "records " << total << "  plus_fraction "
                << format_double(static_cast<double>(plus) / static_cast<double>(total))
                << '\n';
    }
    return 0;
  });
}

int cmd_detect(const CommonOptions& opt) {
  return run_guarded([&] {
    const ScenarioConfig s = load_with_seed(opt);
    if (!s.detector) throw config_error("detector: required for the detect command");
    const CampaignSummary summary = run_detect_campaigns(s, ExecutionPolicy::Parallel);
    auto os = open_output(opt.out);
    write_detect_csv(os, s, summary);
    if (!os) throw config_error("out: write failed for " + opt.out.string());

    if (!opt.quiet) {
      print_summary_header(s);
      std::cout << "method " << to_string(s.detector->method) << "  alarm_rate "
                << format_double(summary.alarm_rate) << "  correct_rate "
                << format_double(summary.correct_rate) << "  mean_statistic "
                << format_double(summary.mean_statistic) << "  mean_plus_fraction "
                << format_double(summary.mean_plus_fraction) << "  wall_s "
                << summary.wall_seconds << '\n';
    }
    return 0;
  });
}

std::vector<double> parse_threshold_grid(const std::string& spec) {
  if (spec.empty()) return parse_threshold_grid("0:1:201");

  std::vector<double> grid;
  if (spec.find(':') != std::string::npos) {
    double lo = 0.0, hi = 0.0;
    long count = 0;
    int consumed = -1;
    const int fields =
        std::sscanf(spec.c_str(), "%lf:%lf:%ld%n", &lo, &hi, &count, &consumed);
    if (fields != 3 || consumed != static_cast<int>(spec.size()) ||
        !std::isfinite(lo) || !std::isfinite(hi) || lo > hi || count < 1 ||
        (count == 1 && lo != hi)) {
      throw config_error("grid: expected \"lo:hi:count\" with lo <= hi, count >= 1");
    }
    grid.reserve(static_cast<std::size_t>(count));
    for (long i = 0; i < count; ++i) {
      grid.push_back(count == 1 ? lo
                                : lo + (hi - lo) * static_cast<double>(i) /
                                           static_cast<double>(count - 1));
    }
    return grid;
  }

  std::istringstream in(spec);
  std::string token;
  while (std::getline(in, token, ',')) {
    try {
      std::size_t pos = 0;
      const double value = std::stod(token, &pos);
      if (pos != token.size() || !std::isfinite(value)) throw std::invalid_argument(token);
      grid.push_back(value);
    } catch (const std::exception&) {
      throw config_error("grid: malformed value \"" + token + "\"");
    }
  }
  if (grid.empty()) throw config_error("grid: no values given");
  std::sort(grid.begin(), grid.end());
  return grid;
}

int cmd_roc(const RocOptions& opt) {
  return run_guarded([&] {
    const ScenarioConfig base = load_with_seed(opt.common);
    if (!base.detector) throw config_error("detector: required for the roc command");
    const std::vector<double> grid = parse_threshold_grid(opt.grid);

    const bool split_method =
        base.detector->method == DetectorMethod::BlindSplit ||
        base.detector->method == DetectorMethod::SinglePrepSplit;

    // The two hypotheses are derived from the one config.  For split
    // methods the alternative is the configured mid-campaign switch; for
    // point-statistic methods it is the coupled case.
    ScenarioConfig h0 = base;
    ScenarioConfig h1 = base;
    if (split_method) {
      if (!base.coupling_switch) {
        throw config_error("coupling_switch: required for a split-method roc");
      }
      h0.coupling_switch.reset();
    } else {
      h0.case_truth = CaseTruth::Case0;
      h0.coupling_switch.reset();
      h1.case_truth = CaseTruth::Case1;
      h1.coupling_switch.reset();
      if (!h1.coupling) {
        throw config_error("coupling: required for a point-method roc (case1 variant)");
      }
    }
    h0.validate();
    h1.validate();
    // Decorrelate the two statistic samples; still a pure function of the
    // resolved seed.
    h1.seed = hash_combine(base.seed, 0x726f63ULL);

    const auto null_stats = campaign_statistics(h0, ExecutionPolicy::Parallel);
    const auto alt_stats = campaign_statistics(h1, ExecutionPolicy::Parallel);
    const auto points = roc_curve(null_stats, alt_stats, grid);

    auto os = open_output(opt.common.out);
    write_roc_csv(os, points);
    if (!os) throw config_error("out: write failed for " + opt.common.out.string());

    if (!opt.common.quiet) {
      print_summary_header(base);
      std::cout << "roc points " << points.size() << "  auc "
                << format_double(roc_auc(points)) << '\n';
    }
    return 0;
  });
}

int cmd_oracle_check(const OracleCheckOptions& opt) {
  return run_guarded([&] {
    if (opt.trials < 1) throw config_error("trials: must be >= 1");
    if (!std::isfinite(opt.tolerance) || opt.tolerance < 0.0) {
      throw config_error("tol: must be a finite non-negative number");
    }

    Rng rng(RngState{opt.seed, 0});
    double worst = 0.0;
    struct {
      double r1, theta1, phi1, r2, theta2, phi2, jxy;
    } worst_tuple{};

    for (std::int64_t i = 0; i < opt.trials; ++i) {
      const QubitPolar q1(rng.next_unit(), rng.next_uniform(0.0, kTwoPi),
                          rng.next_uniform(0.0, kTwoPi));
      const QubitPolar q2(rng.next_unit(), rng.next_uniform(0.0, kTwoPi),
                          rng.next_uniform(0.0, kTwoPi));
      const double jxy = rng.next_uniform(-kTwoPi, kTwoPi);
      const std::pair<double, double> diag{rng.next_uniform(0.0, kTwoPi),
                                           rng.next_uniform(0.0, kTwoPi)};
      const PreparationPair prep{q1, q2};
      const CouplingStrength c = coupling_from_physical(jxy);

      const JointProbs closed = joint_probabilities(prep, c);
      const TwoQubitAmplitudes evolved =
          oracle_evolve(tensor_product(polar_to_amplitudes(q1), polar_to_amplitudes(q2)),
                        c, diag);
      const double d = std::max(
          {std::abs(std::norm(evolved.c_pp) - closed.p_pp),
           std::abs(std::norm(evolved.c_pm) - closed.p_pm),
           std::abs(std::norm(evolved.c_mp) - closed.p_mp),
           std::abs(std::norm(evolved.c_mm) - closed.p_mm)});
      if (d > worst) {
        worst = d;
        worst_tuple = {q1.r(), q1.theta(), q1.phi(), q2.r(), q2.theta(), q2.phi(), jxy};
      }
    }

    const bool ok = worst <= opt.tolerance;
    if (!opt.quiet || !ok) {
      std::cout << "oracle-check trials " << opt.trials << "  max_discrepancy "
                << format_double(worst) << "  tolerance " << format_double(opt.tolerance)
                << (ok ? "  OK" : "  FAIL") << '\n';
      if (!ok) {
        std::cout << "worst tuple: r1 " << format_double(worst_tuple.r1) << " theta1 "
                  << format_double(worst_tuple.theta1) << " phi1 "
                  << format_double(worst_tuple.phi1) << " r2 "
                  << format_double(worst_tuple.r2) << " theta2 "
                  << format_double(worst_tuple.theta2) << " phi2 "
                  << format_double(worst_tuple.phi2) << " jxy_dt_over_hbar "
                  << format_double(worst_tuple.jxy) << '\n';
      }
    }
    return ok ? 0 : 2;
  });
}

}  // namespace qchan
