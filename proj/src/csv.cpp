#include "qchan/csv.hpp"

#include <cstdio>

namespace qchan {

std::string format_double(double d) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", d);
  return buf;
}

void write_simulate_csv(std::ostream& os, const ScenarioConfig& s,
                        const std::vector<std::vector<OutcomeRecord>>& reps) {
  (void)s;
  os << kSimulateHeader << '\n';
  for (std::size_t rep = 0; rep < reps.size(); ++rep) {
    for (const OutcomeRecord& r : reps[rep]) {
      os << rep << ',' << r.trial_index << ',' << to_string(r.marginal_q1) << ',';
      if (r.joint) os << to_string(*r.joint);
      os << ',';
      // Preparation columns stay empty unless the record carries one --
      // blind scenarios must not leak state values into files.
      if (r.prep) {
        const QubitPolar& q1 = r.prep->qubit1;
        os << format_double(q1.r()) << ',' << format_double(q1.theta()) << ','
           << format_double(q1.phi());
      } else {
        os << ",,";
      }
      os << '\n';
    }
  }
}

void write_detect_csv(std::ostream& os, const ScenarioConfig& s,
                      const CampaignSummary& summary) {
  os << kDetectHeader << '\n';
  const std::string method = to_string(s.detector->method);
  const std::string case_truth = to_string(s.case_truth);
  for (std::size_t rep = 0; rep < summary.repetitions.size(); ++rep) {
    const RepetitionResult& r = summary.repetitions[rep];
    os << rep << ',' << method << ',' << case_truth << ','
       << format_double(r.verdict.statistic) << ','
       << format_double(r.verdict.threshold) << ',' << to_string(r.verdict.decision)
       << ',' << (r.correct ? 1 : 0) << '\n';
  }
}

void write_roc_csv(std::ostream& os, const std::vector<RocPoint>& points) {
  os << kRocHeader << '\n';
  for (const RocPoint& p : points) {
    os << format_double(p.threshold) << ',' << format_double(p.false_alarm_rate)
       << ',' << format_double(p.detection_rate) << '\n';
  }
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace qchan
