#include "qchan/qubit.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace qchan {

double reduce_angle(double a) {
  if (!std::isfinite(a)) throw std::domain_error("reduce_angle: non-finite angle");
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod can land on the seam after the correction above.
  if (r >= kTwoPi) r = 0.0;
  return r;
}

QubitPolar::QubitPolar(double r, double theta, double phi)
    : r_(r), theta_(reduce_angle(theta)), phi_(reduce_angle(phi)) {
  if (!std::isfinite(r) || r < 0.0 || r > 1.0) {
    throw std::domain_error("QubitPolar: r must lie in [0, 1], got " + std::to_string(r));
  }
}

double QubitPolar::q() const noexcept {
  return std::sqrt(1.0 - r_ * r_);
}

ComplexAmplitudePair polar_to_amplitudes(const QubitPolar& p) {
  return ComplexAmplitudePair{
      std::polar(p.r(), p.theta()),
      std::polar(p.q(), p.phi()),
  };
}

TwoQubitAmplitudes tensor_product(const ComplexAmplitudePair& a,
                                  const ComplexAmplitudePair& b) {
  return TwoQubitAmplitudes{
      a.alpha * b.alpha,
      a.alpha * b.beta,
      a.beta * b.alpha,
      a.beta * b.beta,
  };
}

ComplexAmplitudePair free_evolve(const ComplexAmplitudePair& s,
                                 const FreeEvolutionParams& p) {
  if (!std::isfinite(p.omega_plus) || !std::isfinite(p.omega_minus) || !std::isfinite(p.dt)) {
    throw std::domain_error("free_evolve: non-finite parameter");
  }
  if (p.dt < 0.0) throw std::domain_error("free_evolve: dt must be >= 0");
  if (p.dt == 0.0) return s;  // exact identity, bit for bit
  return ComplexAmplitudePair{
      s.alpha * std::polar(1.0, -p.omega_plus * p.dt),
      s.beta * std::polar(1.0, -p.omega_minus * p.dt),
  };
}

}  // namespace qchan
