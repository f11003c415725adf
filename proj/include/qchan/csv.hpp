#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "qchan/campaign.hpp"

// CSV output (RFC 4180 flavor: comma-separated, LF line endings, header row
// first).  Doubles are printed with %.17g so files round-trip bit-exactly
// and identical runs produce byte-identical bytes.

namespace qchan {

inline constexpr char kSimulateHeader[] = "repetition,trial,marginal_q1,joint,r1,theta1,phi1";
inline constexpr char kDetectHeader[] = "repetition,method,case_truth,statistic,threshold,decision,correct";
inline constexpr char kRocHeader[] = "threshold,false_alarm_rate,detection_rate";

// Shortest exact decimal form of d (%.17g).
std::string format_double(double d);

void write_simulate_csv(std::ostream& os, const ScenarioConfig& s,
                        const std::vector<std::vector<OutcomeRecord>>& reps);

void write_detect_csv(std::ostream& os, const ScenarioConfig& s,
                      const CampaignSummary& summary);

void write_roc_csv(std::ostream& os, const std::vector<RocPoint>& points);

// Split one CSV line on commas.  Our writers never emit quoted fields, so a
// plain split is a faithful inverse; used by round-trip tests.
std::vector<std::string> split_csv_line(const std::string& line);

}  // namespace qchan
