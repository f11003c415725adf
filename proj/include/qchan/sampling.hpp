#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "qchan/channel.hpp"
#include "qchan/rng.hpp"

// Monte Carlo layer: emitter state distributions, measurement draws, and the
// per-trial outcome record.

namespace qchan {

// How an emitter prepares its qubit each trial.
//
// Moduli:
//   Fixed        - the exact state `fixed` every trial (phases from it too)
//   UniformModSq - r^2 ~ Uniform[lo, hi]  (uniform in probability)
//   UniformMod   - r   ~ Uniform[lo, hi]  (uniform in modulus)
// Phases (random-modulus kinds only):
//   Uniform - theta, phi ~ Uniform[0, 2*pi), independent
//   Fixed   - theta = fixed_theta, phi = fixed_phi every trial
struct StateDistribution {
  enum class Modulus { Fixed, UniformModSq, UniformMod };
  enum class Phases { Uniform, Fixed };

  Modulus modulus = Modulus::UniformModSq;
  Phases phases = Phases::Uniform;
  QubitPolar fixed;                     // Modulus::Fixed only
  double lo = 0.0, hi = 1.0;            // modulus-law support, 0 <= lo <= hi <= 1
  double fixed_theta = 0.0, fixed_phi = 0.0;  // Phases::Fixed only

  bool is_fixed() const noexcept { return modulus == Modulus::Fixed; }

  static StateDistribution fixed_state(const QubitPolar& s);
  static StateDistribution uniform_mod_sq(double lo = 0.0, double hi = 1.0);
  static StateDistribution uniform_mod(double lo = 0.0, double hi = 1.0);

  // Throws std::domain_error on an invalid support or non-finite fields.
  void validate() const;
};

enum class JointOutcome : std::uint8_t { PP, PM, MP, MM };
enum class MarginalOutcome : std::uint8_t { Plus, Minus };

inline bool qubit1_plus(JointOutcome o) noexcept {
  return o == JointOutcome::PP || o == JointOutcome::PM;
}

// One trial as seen by the detector side.  `joint` is only populated when the
// scenario declares joint outcomes observable; `prep` only when preparations
// are (non-blind multi-prep monitoring).  Absent fields stay absent all the
// way to the CSV output -- redaction happens at record creation, not display.
struct OutcomeRecord {
  std::int64_t trial_index = 0;
  MarginalOutcome marginal_q1 = MarginalOutcome::Plus;
  std::optional<JointOutcome> joint;
  std::optional<PreparationPair> prep;
};

// Draw one qubit state.  Consumes 0 (Fixed), 1 (random modulus, fixed
// phases), or 3 uniforms.
QubitPolar sample_qubit(const StateDistribution& d, Rng& rng);

// Draw both emitter states for one trial, qubit 1 first.
PreparationPair sample_preparation(const StateDistribution& d1,
                                   const StateDistribution& d2, Rng& rng);

// Inverse-CDF draw from a validated JointProbs (cumulative order
// PP, PM, MP, MM).  Consumes one uniform.
JointOutcome draw_joint_outcome(const JointProbs& probs, Rng& rng);

// Bernoulli draw of the qubit-1 marginal.  Consumes one uniform.
MarginalOutcome draw_marginal_outcome(double p_plus, Rng& rng);

// Measurement helpers producing redacted records (no prep attached; caller
// adds it when observable).
OutcomeRecord measure_joint(std::int64_t trial_index, const JointProbs& probs,
                            bool record_joint, Rng& rng);

// Marginal-only measurement (no joint draw at all).  Campaigns do not use
// this -- they always draw the joint event and project, so toggling joint
// observability cannot change the random stream -- but it is the honest
// model of a detector that can only ever see qubit 1.
OutcomeRecord measure_marginal_q1(std::int64_t trial_index, double p_plus, Rng& rng);

std::string to_string(JointOutcome o);
std::string to_string(MarginalOutcome o);

}  // namespace qchan
