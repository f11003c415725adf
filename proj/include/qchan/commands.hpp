#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qchan/campaign.hpp"

// Subcommand entry points.  Each loads / validates, runs, writes its output
// file, prints a one-paragraph summary to stdout (unless quiet), and returns
// the process exit code: 0 success, 1 usage/validation/IO error, 2 oracle
// acceptance failure.

namespace qchan {

struct CommonOptions {
  std::filesystem::path config;
  std::filesystem::path out;
  std::optional<std::uint64_t> seed;  // overrides QCHAN_SEED and the config
  bool quiet = false;
};

int cmd_simulate(const CommonOptions& opt);
int cmd_detect(const CommonOptions& opt);

struct RocOptions {
  CommonOptions common;
  // "lo:hi:count" linspace or comma-separated values; empty = 0:1:201.
  std::string grid;
};

int cmd_roc(const RocOptions& opt);

struct OracleCheckOptions {
  std::int64_t trials = 10000;
  double tolerance = 1e-12;
  std::uint64_t seed = 0;
  bool quiet = false;
};

int cmd_oracle_check(const OracleCheckOptions& opt);

// Parse a grid spec (see RocOptions::grid).  Throws config_error on a
// malformed spec; the result is sorted ascending.
std::vector<double> parse_threshold_grid(const std::string& spec);

}  // namespace qchan
