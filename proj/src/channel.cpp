#include "qchan/channel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qchan {

namespace {

// sgn with sgn(0) := +1, so v keeps the sign of sin(delta) on the seam
// cos(delta) = 0.
inline double sgn(double x) noexcept { return x < 0.0 ? -1.0 : 1.0; }

// Clamp a probability that is analytically in [0,1] but may have rounded
// slightly outside.  Anything beyond kNormTol is a formula bug.
double checked_probability(double p, const char* name) {
  if (!(p >= -kNormTol && p <= 1.0 + kNormTol)) {
    throw std::logic_error(std::string("joint_probabilities: ") + name +
                           " = " + std::to_string(p) + " outside [0,1]");
  }
  return std::clamp(p, 0.0, 1.0);
}

}  // namespace

CouplingStrength coupling_from_physical(double jxy_dt_over_hbar) {
  if (!std::isfinite(jxy_dt_over_hbar)) {
    throw std::domain_error("coupling_from_physical: non-finite jxy_dt_over_hbar");
  }
  CouplingStrength c;
  c.jxy_dt_over_hbar = jxy_dt_over_hbar;
  c.delta = -jxy_dt_over_hbar;
  c.v = sgn(std::cos(c.delta)) * std::sin(c.delta);
  return c;
}

CouplingStrength coupling_from_mixing(double v) {
  if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
    throw std::domain_error("coupling_from_mixing: v must lie in [-1, 1]");
  }
  // delta = asin(v) keeps cos(delta) >= 0, so the sgn factor is +1 and the
  // derived v reproduces the request exactly (asin/sin round-trip).
  return coupling_from_physical(-std::asin(v));
}

JointProbs joint_probabilities(const PreparationPair& prep, const CouplingStrength& c) {
  const double r1 = prep.qubit1.r(), r2 = prep.qubit2.r();
  const double q1 = prep.qubit1.q(), q2 = prep.qubit2.q();
  const double v = c.v;
  const double v2 = v * v;
  const double w = std::sqrt(std::max(0.0, 1.0 - v2));  // |cos(delta)|
  const double cross =
      2.0 * r1 * r2 * q1 * q2 * w * v * std::sin(prep.delta_i());

  JointProbs p;
  p.p_pp = checked_probability(r1 * r1 * r2 * r2, "p_pp");
  p.p_pm = checked_probability(
      r1 * r1 * q2 * q2 * (1.0 - v2) + q1 * q1 * r2 * r2 * v2 - cross, "p_pm");
  p.p_mm = checked_probability(q1 * q1 * q2 * q2, "p_mm");
  p.p_mp = checked_probability(1.0 - p.p_pp - p.p_pm - p.p_mm, "p_mp");
  return p;
}

double marginal_plus_qubit1(const PreparationPair& prep, const CouplingStrength& c) {
  const double r1 = prep.qubit1.r(), r2 = prep.qubit2.r();
  const double q1 = prep.qubit1.q(), q2 = prep.qubit2.q();
  const double v2 = c.v * c.v;
  const double w = std::sqrt(std::max(0.0, 1.0 - v2));
  const double p = r1 * r1 + v2 * (r2 * r2 - r1 * r1) -
                   2.0 * r1 * r2 * q1 * q2 * w * c.v * std::sin(prep.delta_i());
  return checked_probability(p, "marginal_plus_qubit1");
}

TwoQubitAmplitudes oracle_evolve(
    const TwoQubitAmplitudes& in, const CouplingStrength& c,
    const std::optional<std::pair<double, double>>& diag_phases) {
  const double cd = std::cos(c.delta);
  const double sd = std::sin(c.delta);
  const Complex off(0.0, -sd);  // -i sin(delta)

  TwoQubitAmplitudes out;
  out.c_pp = in.c_pp;
  out.c_mm = in.c_mm;
  if (diag_phases) {
    out.c_pp *= std::polar(1.0, -diag_phases->first);
    out.c_mm *= std::polar(1.0, -diag_phases->second);
  }
  out.c_pm = cd * in.c_pm + off * in.c_mp;
  out.c_mp = off * in.c_pm + cd * in.c_mp;
  return out;
}

double blind_spot_residual(const PreparationPair& prep, const CouplingStrength& c) {
  const double r1 = prep.qubit1.r();
  return std::abs(marginal_plus_qubit1(prep, c) - r1 * r1);
}

}  // namespace qchan
