#pragma once

#include <complex>

// Single- and two-qubit pure states in the exchange-coupling eigenbasis
// {|+>, |->}, with the polar parametrization
//     |psi> = r e^{i theta} |+> + q e^{i phi} |->,   q = sqrt(1 - r^2).
// Only r and the two phases are stored; q is always derived so the
// normalization constraint cannot drift.

namespace qchan {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Tolerance for normalization / probability identities maintained by
// construction.  Violations beyond this indicate a bug, not noise.
inline constexpr double kNormTol = 1e-12;

// Reduce an angle into [0, 2*pi).  Values that round to exactly 2*pi map
// to 0 so the interval stays half-open.
double reduce_angle(double a);

class QubitPolar {
 public:
  QubitPolar() = default;  // |+>
  // Throws std::domain_error if r is outside [0,1] or any input is non-finite.
  QubitPolar(double r, double theta, double phi);

  double r() const noexcept { return r_; }
  double theta() const noexcept { return theta_; }
  double phi() const noexcept { return phi_; }

  // Modulus of the |-> amplitude, derived from r.
  double q() const noexcept;

  // Relative phase phi - theta (not reduced).
  double phase_difference() const noexcept { return phi_ - theta_; }

 private:
  double r_ = 1.0;
  double theta_ = 0.0;
  double phi_ = 0.0;
};

struct ComplexAmplitudePair {
  Complex alpha{1.0, 0.0};  // coefficient of |+>
  Complex beta{0.0, 0.0};   // coefficient of |->

  double norm_sq() const noexcept { return std::norm(alpha) + std::norm(beta); }
};

// Product-basis amplitudes, index order |++>, |+->, |-+>, |-->.
struct TwoQubitAmplitudes {
  Complex c_pp{1.0, 0.0};
  Complex c_pm{0.0, 0.0};
  Complex c_mp{0.0, 0.0};
  Complex c_mm{0.0, 0.0};

  double norm_sq() const noexcept {
    return std::norm(c_pp) + std::norm(c_pm) + std::norm(c_mp) + std::norm(c_mm);
  }
};

// Phase rates for free (uncoupled) evolution of the two basis levels.
struct FreeEvolutionParams {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  double dt = 0.0;  // must be >= 0
};

// Polar form -> amplitudes.  alpha = r e^{i theta}, beta = q e^{i phi}.
ComplexAmplitudePair polar_to_amplitudes(const QubitPolar& p);

TwoQubitAmplitudes tensor_product(const ComplexAmplitudePair& a,
                                  const ComplexAmplitudePair& b);

// Phase rotation alpha *= e^{-i omega_plus dt}, beta *= e^{-i omega_minus dt}.
// Moduli are preserved (to rounding); dt = 0 is the exact identity.
// Throws std::domain_error for dt < 0 or non-finite parameters.
ComplexAmplitudePair free_evolve(const ComplexAmplitudePair& s,
                                 const FreeEvolutionParams& p);

}  // namespace qchan
