#include "qchan/scenario.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace qchan {

namespace {

using nlohmann::json;

// All validation errors must name the offending field, so every helper
// carries a dotted path prefix.

[[noreturn]] void fail(const std::string& field, const std::string& what) {
  throw config_error(field + ": " + what);
}

void require_object(const json& j, const std::string& field) {
  if (!j.is_object()) fail(field, "must be a JSON object");
}

void reject_unknown_keys(const json& j, const std::string& field,
                         const std::set<std::string>& known) {
  for (const auto& [key, value] : j.items()) {
    (void)value;
    if (!known.contains(key)) fail(field + "." + key, "unknown key");
  }
}

double get_finite(const json& j, const std::string& field) {
  if (!j.is_number()) fail(field, "must be a number");
  const double d = j.get<double>();
  if (!std::isfinite(d)) fail(field, "must be finite");
  return d;
}

std::int64_t get_positive_int(const json& j, const std::string& field) {
  if (!j.is_number_integer()) fail(field, "must be an integer");
  const auto n = j.get<std::int64_t>();
  if (n < 1) fail(field, "must be >= 1");
  return n;
}

std::uint64_t get_u64(const json& j, const std::string& field) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0)) {
    fail(field, "must be a non-negative 64-bit integer");
  }
  return j.get<std::uint64_t>();
}

bool get_bool(const json& j, const std::string& field) {
  if (!j.is_boolean()) fail(field, "must be a boolean");
  return j.get<bool>();
}

std::string get_string(const json& j, const std::string& field) {
  if (!j.is_string()) fail(field, "must be a string");
  return j.get<std::string>();
}

CouplingSpec parse_coupling(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"v", "jxy_dt_over_hbar"});
  const bool has_v = j.contains("v");
  const bool has_jxy = j.contains("jxy_dt_over_hbar");
  if (has_v == has_jxy) {
    fail(field, "exactly one of \"v\" or \"jxy_dt_over_hbar\" is required");
  }
  CouplingSpec spec;
  if (has_v) {
    spec.kind = CouplingSpec::Kind::MixingV;
    spec.value = get_finite(j.at("v"), field + ".v");
    if (spec.value < -1.0 || spec.value > 1.0) fail(field + ".v", "must lie in [-1, 1]");
  } else {
    spec.kind = CouplingSpec::Kind::Physical;
    spec.value = get_finite(j.at("jxy_dt_over_hbar"), field + ".jxy_dt_over_hbar");
  }
  return spec;
}

StateDistribution parse_emitter(const json& j, const std::string& field) {
  require_object(j, field);
  if (!j.contains("kind")) fail(field + ".kind", "required");
  const std::string kind = get_string(j.at("kind"), field + ".kind");

  StateDistribution d;
  if (kind == "fixed") {
    reject_unknown_keys(j, field, {"kind", "r", "theta", "phi"});
    if (!j.contains("r")) fail(field + ".r", "required for a fixed emitter");
    const double r = get_finite(j.at("r"), field + ".r");
    const double theta = j.contains("theta") ? get_finite(j.at("theta"), field + ".theta") : 0.0;
    const double phi = j.contains("phi") ? get_finite(j.at("phi"), field + ".phi") : 0.0;
    if (r < 0.0 || r > 1.0) fail(field + ".r", "must lie in [0, 1]");
    d = StateDistribution::fixed_state(QubitPolar(r, theta, phi));
  } else if (kind == "uniform_mod_sq" || kind == "uniform_mod") {
    reject_unknown_keys(j, field, {"kind", "lo", "hi", "phases"});
    const double lo = j.contains("lo") ? get_finite(j.at("lo"), field + ".lo") : 0.0;
    const double hi = j.contains("hi") ? get_finite(j.at("hi"), field + ".hi") : 1.0;
    d = kind == "uniform_mod_sq" ? StateDistribution::uniform_mod_sq(lo, hi)
                                 : StateDistribution::uniform_mod(lo, hi);
    if (j.contains("phases")) {
      const json& ph = j.at("phases");
      if (ph.is_string()) {
        if (ph.get<std::string>() != "uniform") {
          fail(field + ".phases", "must be \"uniform\" or an object {theta, phi}");
        }
        d.phases = StateDistribution::Phases::Uniform;
      } else if (ph.is_object()) {
        reject_unknown_keys(ph, field + ".phases", {"theta", "phi"});
        d.phases = StateDistribution::Phases::Fixed;
        d.fixed_theta = ph.contains("theta")
                            ? reduce_angle(get_finite(ph.at("theta"), field + ".phases.theta"))
                            : 0.0;
        d.fixed_phi = ph.contains("phi")
                          ? reduce_angle(get_finite(ph.at("phi"), field + ".phases.phi"))
                          : 0.0;
      } else {
        fail(field + ".phases", "must be \"uniform\" or an object {theta, phi}");
      }
    }
  } else {
    fail(field + ".kind", "must be one of \"fixed\", \"uniform_mod_sq\", \"uniform_mod\"");
  }
  try {
    d.validate();
  } catch (const std::domain_error& e) {
    fail(field, e.what());
  }
  return d;
}

DetectorMethod parse_method(const std::string& name, const std::string& field) {
  if (name == "non_blind_multi_prep") return DetectorMethod::NonBlindMultiPrep;
  if (name == "blind_split") return DetectorMethod::BlindSplit;
  if (name == "single_prep_semi_blind") return DetectorMethod::SinglePrepSemiBlind;
  if (name == "single_prep_split") return DetectorMethod::SinglePrepSplit;
  fail(field, "unknown method \"" + name + "\"");
}

DetectorConfig parse_detector(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field,
                      {"method", "alpha", "prior_r1_sq", "prior_mean_r1_sq",
                       "split_fraction", "threshold"});
  if (!j.contains("method")) fail(field + ".method", "required");

  DetectorConfig cfg;
  cfg.method = parse_method(get_string(j.at("method"), field + ".method"), field + ".method");
  if (j.contains("alpha")) cfg.alpha = get_finite(j.at("alpha"), field + ".alpha");
  if (j.contains("prior_r1_sq")) {
    cfg.prior_r1_sq = get_finite(j.at("prior_r1_sq"), field + ".prior_r1_sq");
  }
  if (j.contains("prior_mean_r1_sq")) {
    cfg.prior_mean_r1_sq = get_finite(j.at("prior_mean_r1_sq"), field + ".prior_mean_r1_sq");
  }
  const bool split_method = cfg.method == DetectorMethod::BlindSplit ||
                            cfg.method == DetectorMethod::SinglePrepSplit;
  if (j.contains("split_fraction")) {
    if (!split_method) fail(field + ".split_fraction", "only valid for split methods");
    cfg.split_fraction = get_finite(j.at("split_fraction"), field + ".split_fraction");
  }
  if (j.contains("threshold")) {
    const std::string kind = get_string(j.at("threshold"), field + ".threshold");
    if (kind == "hoeffding") {
      cfg.threshold_kind = ThresholdKind::Hoeffding;
    } else if (kind == "normal") {
      cfg.threshold_kind = ThresholdKind::Normal;
    } else {
      fail(field + ".threshold", "must be \"hoeffding\" or \"normal\"");
    }
  }
  cfg.validate();  // throws config_error with field-level messages
  return cfg;
}

CouplingSwitch parse_switch(const json& j, const std::string& field) {
  require_object(j, field);
  reject_unknown_keys(j, field, {"after_fraction", "v", "jxy_dt_over_hbar"});
  CouplingSwitch sw;
  if (!j.contains("after_fraction")) fail(field + ".after_fraction", "required");
  sw.after_fraction = get_finite(j.at("after_fraction"), field + ".after_fraction");
  if (sw.after_fraction <= 0.0 || sw.after_fraction >= 1.0) {
    fail(field + ".after_fraction", "must lie in (0, 1)");
  }
  json coupling = j;
  coupling.erase("after_fraction");
  sw.coupling = parse_coupling(coupling, field);
  return sw;
}

json emitter_to_json(const StateDistribution& d) {
  json j;
  switch (d.modulus) {
    case StateDistribution::Modulus::Fixed:
      j["kind"] = "fixed";
      j["r"] = d.fixed.r();
      j["theta"] = d.fixed.theta();
      j["phi"] = d.fixed.phi();
      return j;
    case StateDistribution::Modulus::UniformModSq:
      j["kind"] = "uniform_mod_sq";
      break;
    case StateDistribution::Modulus::UniformMod:
      j["kind"] = "uniform_mod";
      break;
  }
  j["lo"] = d.lo;
  j["hi"] = d.hi;
  if (d.phases == StateDistribution::Phases::Uniform) {
    j["phases"] = "uniform";
  } else {
    j["phases"] = json{{"theta", d.fixed_theta}, {"phi", d.fixed_phi}};
  }
  return j;
}

json coupling_to_json(const CouplingSpec& c) {
  if (c.kind == CouplingSpec::Kind::MixingV) return json{{"v", c.value}};
  return json{{"jxy_dt_over_hbar", c.value}};
}

}  // namespace

CouplingStrength CouplingSpec::resolve() const {
  return kind == Kind::MixingV ? coupling_from_mixing(value)
                               : coupling_from_physical(value);
}

CouplingStrength ScenarioConfig::effective_coupling() const {
  if (case_truth == CaseTruth::Case0) return coupling_from_physical(0.0);
  return coupling->resolve();
}

std::int64_t ScenarioConfig::switch_index() const {
  if (!coupling_switch) return n_preparations;
  return static_cast<std::int64_t>(coupling_switch->after_fraction *
                                   static_cast<double>(n_preparations));
}

CouplingStrength ScenarioConfig::coupling_at(std::int64_t trial) const {
  if (coupling_switch && trial >= switch_index()) {
    return coupling_switch->coupling.resolve();
  }
  return effective_coupling();
}

bool ScenarioConfig::prep_observable() const {
  return detector && detector->method == DetectorMethod::NonBlindMultiPrep;
}

bool ScenarioConfig::expects_alarm() const {
  if (!detector) return false;
  const bool split_method = detector->method == DetectorMethod::BlindSplit ||
                            detector->method == DetectorMethod::SinglePrepSplit;
  if (split_method) return coupling_switch.has_value();
  return case_truth == CaseTruth::Case1 || coupling_switch.has_value();
}

void ScenarioConfig::validate() const {
  if (n_preparations < 1) fail("n_preparations", "must be >= 1");
  if (repetitions < 1) fail("repetitions", "must be >= 1");
  if (case_truth == CaseTruth::Case1 && !coupling) {
    fail("coupling", "required when case = \"case1\"");
  }
  try {
    emitter1.validate();
  } catch (const std::domain_error& e) {
    fail("emitter1", e.what());
  }
  try {
    emitter2.validate();
  } catch (const std::domain_error& e) {
    fail("emitter2", e.what());
  }
  if (mode == CampaignMode::MultiplePrep) {
    if (!emitter1.is_fixed()) {
      fail("emitter1", "multiple_prep requires a fixed emitter state");
    }
    if (!emitter2.is_fixed()) {
      fail("emitter2", "multiple_prep requires a fixed emitter state");
    }
  } else if (emitter1.is_fixed()) {
    fail("emitter1", "single_prep requires a random emitter state");
  }
  if (detector) {
    detector->validate();
    const auto m = detector->method;
    const bool needs_multi =
        m == DetectorMethod::NonBlindMultiPrep || m == DetectorMethod::BlindSplit;
    if (needs_multi && mode != CampaignMode::MultiplePrep) {
      fail("detector.method", to_string(m) + " requires mode \"multiple_prep\"");
    }
    if (!needs_multi && mode != CampaignMode::SinglePrep) {
      fail("detector.method", to_string(m) + " requires mode \"single_prep\"");
    }
    const bool split_method =
        m == DetectorMethod::BlindSplit || m == DetectorMethod::SinglePrepSplit;
    if (split_method) {
      const std::int64_t n_a = static_cast<std::int64_t>(
          detector->split_fraction * static_cast<double>(n_preparations));
      if (n_a < 2 || n_preparations - n_a < 2) {
        fail("n_preparations", "split detection needs at least 2 records per half");
      }
    }
  }
  if (coupling_switch && switch_index() < 1) {
    fail("coupling_switch.after_fraction", "switch segment would start before trial 1");
  }
}

ScenarioConfig parse_scenario(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("scenario: JSON parse error: ") + e.what());
  }
  require_object(j, "scenario");
  reject_unknown_keys(j, "scenario",
                      {"schema", "mode", "case", "coupling", "emitter1", "emitter2",
                       "n_preparations", "repetitions", "seed", "record_joint",
                       "coupling_switch", "detector"});
  if (!j.contains("schema")) fail("schema", "required");
  if (!j.at("schema").is_number_integer() || j.at("schema").get<std::int64_t>() != 1) {
    fail("schema", "unsupported version (expected 1)");
  }
  if (!j.contains("mode")) fail("mode", "required");
  if (!j.contains("case")) fail("case", "required");

  ScenarioConfig c;
  const std::string mode = get_string(j.at("mode"), "mode");
  if (mode == "multiple_prep") {
    c.mode = CampaignMode::MultiplePrep;
  } else if (mode == "single_prep") {
    c.mode = CampaignMode::SinglePrep;
  } else {
    fail("mode", "must be \"multiple_prep\" or \"single_prep\"");
  }
  const std::string case_name = get_string(j.at("case"), "case");
  if (case_name == "case0") {
    c.case_truth = CaseTruth::Case0;
  } else if (case_name == "case1") {
    c.case_truth = CaseTruth::Case1;
  } else {
    fail("case", "must be \"case0\" or \"case1\"");
  }

  if (j.contains("coupling")) c.coupling = parse_coupling(j.at("coupling"), "coupling");

  // Emitters default to the fully random state (uniform r^2, uniform phases)
  // in single-prep mode; multiple_prep has no sensible default and requires
  // both emitters explicitly.
  if (c.mode == CampaignMode::MultiplePrep) {
    if (!j.contains("emitter1")) fail("emitter1", "required for mode \"multiple_prep\"");
    if (!j.contains("emitter2")) fail("emitter2", "required for mode \"multiple_prep\"");
  }
  if (j.contains("emitter1")) c.emitter1 = parse_emitter(j.at("emitter1"), "emitter1");
  if (j.contains("emitter2")) c.emitter2 = parse_emitter(j.at("emitter2"), "emitter2");

  if (j.contains("n_preparations")) {
    c.n_preparations = get_positive_int(j.at("n_preparations"), "n_preparations");
  }
  if (j.contains("repetitions")) {
    c.repetitions = get_positive_int(j.at("repetitions"), "repetitions");
  }
  if (j.contains("seed")) c.seed = get_u64(j.at("seed"), "seed");
  if (j.contains("record_joint")) c.record_joint = get_bool(j.at("record_joint"), "record_joint");
  if (j.contains("coupling_switch")) {
    c.coupling_switch = parse_switch(j.at("coupling_switch"), "coupling_switch");
  }
  if (j.contains("detector")) c.detector = parse_detector(j.at("detector"), "detector");

  c.validate();
  return c;
}

ScenarioConfig load_scenario(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw config_error("scenario: cannot open " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string canonical_json(const ScenarioConfig& c) {
  json j;
  j["schema"] = 1;
  j["mode"] = to_string(c.mode);
  j["case"] = to_string(c.case_truth);
  if (c.coupling) j["coupling"] = coupling_to_json(*c.coupling);
  j["emitter1"] = emitter_to_json(c.emitter1);
  j["emitter2"] = emitter_to_json(c.emitter2);
  j["n_preparations"] = c.n_preparations;
  j["repetitions"] = c.repetitions;
  j["seed"] = c.seed;
  j["record_joint"] = c.record_joint;
  if (c.coupling_switch) {
    json sw = coupling_to_json(c.coupling_switch->coupling);
    sw["after_fraction"] = c.coupling_switch->after_fraction;
    j["coupling_switch"] = sw;
  }
  if (c.detector) {
    const DetectorConfig& d = *c.detector;
    json dj;
    dj["method"] = to_string(d.method);
    dj["alpha"] = d.alpha;
    if (d.prior_r1_sq) dj["prior_r1_sq"] = *d.prior_r1_sq;
    if (d.prior_mean_r1_sq) dj["prior_mean_r1_sq"] = *d.prior_mean_r1_sq;
    if (d.method == DetectorMethod::BlindSplit || d.method == DetectorMethod::SinglePrepSplit) {
      dj["split_fraction"] = d.split_fraction;
    }
    dj["threshold"] = to_string(d.threshold_kind);
    j["detector"] = dj;
  }
  // nlohmann::json objects iterate in key order, so dump() is canonical.
  return j.dump();
}

std::uint64_t scenario_hash(const ScenarioConfig& c) {
  const std::string s = canonical_json(c);
  std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a 64
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> cli_flag,
                           const char* env_value, std::uint64_t config_seed) {
  if (cli_flag) return *cli_flag;
  if (env_value != nullptr && *env_value != '\0') {
    std::string s(env_value);
    std::uint64_t parsed = 0;
    std::size_t pos = 0;
    try {
      parsed = std::stoull(s, &pos, 10);
    } catch (const std::exception&) {
      throw config_error("QCHAN_SEED: not a decimal 64-bit unsigned integer");
    }
    if (pos != s.size() || s[0] == '-') {
      throw config_error("QCHAN_SEED: not a decimal 64-bit unsigned integer");
    }
    return parsed;
  }
  return config_seed;
}

std::string to_string(CampaignMode m) {
  return m == CampaignMode::MultiplePrep ? "multiple_prep" : "single_prep";
}

std::string to_string(CaseTruth c) {
  return c == CaseTruth::Case0 ? "case0" : "case1";
}

}  // namespace qchan
