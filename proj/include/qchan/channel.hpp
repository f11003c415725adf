#pragma once

#include <optional>
#include <utility>

#include "qchan/qubit.hpp"

// Closed-form outcome statistics for two qubits after an exchange-coupling
// interaction, plus a brute-force unitary oracle used to cross-check them.
// The closed forms and the oracle are deliberately independent code paths;
// tests compare them, so neither may be implemented in terms of the other.

namespace qchan {

// Interaction strength in derived form.
//   delta = -jxy_dt_over_hbar
//   v     = sgn(cos delta) * sin delta, in [-1, 1], with sgn(0) := +1
struct CouplingStrength {
  double jxy_dt_over_hbar = 0.0;
  double delta = 0.0;
  double v = 0.0;
};

// Build a CouplingStrength from the physical combination J_xy (t - t0) / hbar.
// Throws std::domain_error on non-finite input.
CouplingStrength coupling_from_physical(double jxy_dt_over_hbar);

// Build a CouplingStrength realizing a given mixing value v in [-1, 1].
// Chooses jxy_dt_over_hbar = -asin(v), so delta = asin(v) and cos(delta) >= 0.
CouplingStrength coupling_from_mixing(double v);

// Joint measurement probabilities in the order (+,+), (+,-), (-,+), (-,-).
// Each lies in [0, 1] and they sum to 1 within kNormTol.
struct JointProbs {
  double p_pp = 1.0;
  double p_pm = 0.0;
  double p_mp = 0.0;
  double p_mm = 0.0;

  double sum() const noexcept { return p_pp + p_pm + p_mp + p_mm; }
};

// The two prepared states entering the channel.  The interference phase
// delta_i is always recomputed from the stored states, never cached.
struct PreparationPair {
  QubitPolar qubit1;  // monitored emitter
  QubitPolar qubit2;  // other emitter

  // (phi2 - theta2) - (phi1 - theta1)
  double delta_i() const noexcept {
    return qubit2.phase_difference() - qubit1.phase_difference();
  }
};

// Closed-form joint probabilities after the interaction.
//   p_pp = r1^2 r2^2
//   p_pm = r1^2 q2^2 (1-v^2) + q1^2 r2^2 v^2
//          - 2 r1 r2 q1 q2 sqrt(1-v^2) v sin(delta_i)
//   p_mm = q1^2 q2^2
//   p_mp = 1 - p_pp - p_pm - p_mm
// Throws std::logic_error if a component leaves [0,1] by more than kNormTol
// (values within the tolerance band are clamped).
JointProbs joint_probabilities(const PreparationPair& prep, const CouplingStrength& c);

// P(qubit 1 measures +) = p_pp + p_pm, evaluated in closed form:
//   r1^2 + v^2 (r2^2 - r1^2) - 2 r1 r2 q1 q2 sqrt(1-v^2) v sin(delta_i)
double marginal_plus_qubit1(const PreparationPair& prep, const CouplingStrength& c);

// Apply the interaction unitary to raw amplitudes (the oracle route).
// |++> and |--> pick up optional diagonal phases e^{-i phase.first},
// e^{-i phase.second} (both 0 by default; squared moduli never depend on
// them).  The {|+->, |-+>} block mixes as
//   [ cos d     -i sin d ]
//   [ -i sin d   cos d   ],  d = c.delta.
TwoQubitAmplitudes oracle_evolve(
    const TwoQubitAmplitudes& in, const CouplingStrength& c,
    const std::optional<std::pair<double, double>>& diag_phases = std::nullopt);

// |marginal_plus_qubit1 - r1^2|: how far the monitored marginal moves from
// its no-coupling value.  Zero exactly when the preparation sits in the
// deterministic blind spot (r1 = r2 and sin(delta_i) = 0) or v = 0.
double blind_spot_residual(const PreparationPair& prep, const CouplingStrength& c);

}  // namespace qchan
