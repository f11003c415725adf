#include "qchan/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace qchan {

StateDistribution StateDistribution::fixed_state(const QubitPolar& s) {
  StateDistribution d;
  d.modulus = Modulus::Fixed;
  d.phases = Phases::Fixed;
  d.fixed = s;
  return d;
}

StateDistribution StateDistribution::uniform_mod_sq(double lo, double hi) {
  StateDistribution d;
  d.modulus = Modulus::UniformModSq;
  d.lo = lo;
  d.hi = hi;
  return d;
}

StateDistribution StateDistribution::uniform_mod(double lo, double hi) {
  StateDistribution d;
  d.modulus = Modulus::UniformMod;
  d.lo = lo;
  d.hi = hi;
  return d;
}

void StateDistribution::validate() const {
  if (modulus == Modulus::Fixed) return;  // QubitPolar validated itself
  if (!std::isfinite(lo) || !std::isfinite(hi) || lo < 0.0 || hi > 1.0 || lo > hi) {
    throw std::domain_error("StateDistribution: support must satisfy 0 <= lo <= hi <= 1");
  }
  if (phases == Phases::Fixed &&
      (!std::isfinite(fixed_theta) || !std::isfinite(fixed_phi))) {
    throw std::domain_error("StateDistribution: non-finite fixed phase");
  }
}

QubitPolar sample_qubit(const StateDistribution& d, Rng& rng) {
  if (d.modulus == StateDistribution::Modulus::Fixed) return d.fixed;

  // Draw order is part of the reproducibility contract: modulus, theta, phi.
  const double u = rng.next_uniform(d.lo, d.hi);
  const double r = d.modulus == StateDistribution::Modulus::UniformModSq
                       ? std::sqrt(u)
                       : u;
  double theta = d.fixed_theta, phi = d.fixed_phi;
  if (d.phases == StateDistribution::Phases::Uniform) {
    theta = rng.next_uniform(0.0, kTwoPi);
    phi = rng.next_uniform(0.0, kTwoPi);
  }
  return QubitPolar(r, theta, phi);
}

PreparationPair sample_preparation(const StateDistribution& d1,
                                   const StateDistribution& d2, Rng& rng) {
  PreparationPair p;
  p.qubit1 = sample_qubit(d1, rng);
  p.qubit2 = sample_qubit(d2, rng);
  return p;
}

JointOutcome draw_joint_outcome(const JointProbs& probs, Rng& rng) {
  if (std::abs(probs.sum() - 1.0) > kNormTol) {
    throw std::domain_error("draw_joint_outcome: probabilities do not sum to 1");
  }
  const double u = rng.next_unit();
  double c = probs.p_pp;
  if (u < c) return JointOutcome::PP;
  c += probs.p_pm;
  if (u < c) return JointOutcome::PM;
  c += probs.p_mp;
  if (u < c) return JointOutcome::MP;
  return JointOutcome::MM;
}

MarginalOutcome draw_marginal_outcome(double p_plus, Rng& rng) {
  if (!(p_plus >= 0.0 && p_plus <= 1.0)) {
    throw std::domain_error("draw_marginal_outcome: p_plus outside [0, 1]");
  }
  // u in [0,1): p_plus = 1 always fires, p_plus = 0 never does.
  return rng.next_unit() < p_plus ? MarginalOutcome::Plus : MarginalOutcome::Minus;
}

OutcomeRecord measure_joint(std::int64_t trial_index, const JointProbs& probs,
                            bool record_joint, Rng& rng) {
  const JointOutcome j = draw_joint_outcome(probs, rng);
  OutcomeRecord rec;
  rec.trial_index = trial_index;
  rec.marginal_q1 = qubit1_plus(j) ? MarginalOutcome::Plus : MarginalOutcome::Minus;
  if (record_joint) rec.joint = j;
  return rec;
}

OutcomeRecord measure_marginal_q1(std::int64_t trial_index, double p_plus, Rng& rng) {
  OutcomeRecord rec;
  rec.trial_index = trial_index;
  rec.marginal_q1 = draw_marginal_outcome(p_plus, rng);
  return rec;
}

std::string to_string(JointOutcome o) {
  switch (o) {
    case JointOutcome::PP: return "PP";
    case JointOutcome::PM: return "PM";
    case JointOutcome::MP: return "MP";
    case JointOutcome::MM: return "MM";
  }
  throw std::logic_error("to_string(JointOutcome): bad value");
}

std::string to_string(MarginalOutcome o) {
  return o == MarginalOutcome::Plus ? "P" : "M";
}

}  // namespace qchan
