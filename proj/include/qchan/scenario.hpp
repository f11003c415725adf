#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "qchan/detectors.hpp"
#include "qchan/errors.hpp"

// Scenario configuration: the single JSON document that fully determines a
// run (together with the resolved seed).  Validation is strict -- unknown
// keys and inconsistent mode/method/prior combinations are rejected with
// messages naming the field.

namespace qchan {

enum class CampaignMode {
  MultiplePrep,  // both emitters fixed; same preparation every trial
  SinglePrep,    // emitter 1 drawn fresh each trial (emitter 2 may be fixed)
};

enum class CaseTruth {
  Case0,  // no coupling: effective v = 0 regardless of the coupling field
  Case1,  // coupling on, as configured
};

// A coupling given either directly as the mixing value v or as the physical
// combination J_xy (t - t0) / hbar.
struct CouplingSpec {
  enum class Kind { MixingV, Physical };
  Kind kind = Kind::MixingV;
  double value = 0.0;

  CouplingStrength resolve() const;
};

// Mid-campaign channel change: trials with index >= floor(after_fraction * n)
// run under `coupling` instead of the base coupling.
struct CouplingSwitch {
  double after_fraction = 0.5;  // in (0, 1)
  CouplingSpec coupling;
};

struct ScenarioConfig {
  CampaignMode mode = CampaignMode::SinglePrep;
  CaseTruth case_truth = CaseTruth::Case0;
  std::optional<CouplingSpec> coupling;  // required for Case1
  StateDistribution emitter1;
  StateDistribution emitter2;
  std::int64_t n_preparations = 10000;  // trials per repetition
  std::int64_t repetitions = 1;
  std::uint64_t seed = 0;
  bool record_joint = false;
  std::optional<CouplingSwitch> coupling_switch;
  std::optional<DetectorConfig> detector;  // absent = simulate-only scenario

  // Base coupling with the case applied: Case0 -> v = 0 identity.
  CouplingStrength effective_coupling() const;

  // First trial index of the switched segment; n_preparations when no switch.
  std::int64_t switch_index() const;

  // Coupling governing a given trial (honors the switch).
  CouplingStrength coupling_at(std::int64_t trial) const;

  // Preparations are observable to the detector only in non-blind
  // multi-prep monitoring.
  bool prep_observable() const;

  // Ground truth for scoring verdicts: split methods alarm on a switch,
  // point-statistic methods alarm on Case1 or a switch.
  bool expects_alarm() const;

  // Full consistency check (field ranges plus mode/method coherence).
  // Throws config_error naming the offending field.
  void validate() const;
};

// Parse + validate.  config_error on any schema violation; the "schema"
// field must equal 1.
ScenarioConfig parse_scenario(const std::string& json_text);
ScenarioConfig load_scenario(const std::filesystem::path& file);

// Canonical JSON for a validated config (sorted keys, no whitespace).
// parse_scenario(canonical_json(c)) reproduces c exactly.
std::string canonical_json(const ScenarioConfig& c);

// FNV-1a64 over canonical_json: the scenario identity reported in summaries.
std::uint64_t scenario_hash(const ScenarioConfig& c);

// Seed precedence: command-line flag > QCHAN_SEED environment > config.
// env_value may be null (unset); a set but malformed value is a config_error.
std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_flag,
                           const char* env_value, std::uint64_t config_seed);

std::string to_string(CampaignMode m);
std::string to_string(CaseTruth c);

}  // namespace qchan
