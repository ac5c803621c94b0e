#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace gqed {

using Complex = std::complex<double>;

/// Scattered-field direction relative to the incident (right-moving) photons.
enum class Direction { Transmitted, Reflected };

enum class ErrorCode {
  DegenerateParameters,
  RequiresResonance,
  DegenerateDenominator,
  DecoupledAtom,
  DivergentNormalization,
  PoleCollision,
  MaxDepthExceeded,
};

const char* to_string(ErrorCode code) noexcept;

/// Numerical-domain failure carrying a machine-checkable reason code.
class ScatteringError : public std::runtime_error {
 public:
  ScatteringError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

namespace tol {
// Pole pairs closer than this (in units of gamma) cannot be resolved by the
// closed forms, which divide by the pole separation.
inline constexpr double kPoleDegeneracy = 1e-9;
// Denominator magnitude floor, in the natural power of gamma.
inline constexpr double kDenominatorFloor = 1e-12;
// An incident frequency this close to a pole (units of gamma) is a collision.
inline constexpr double kPoleCollision = 1e-12;
// |amplitude|^2 below this counts as a vanishing g2 normalization.
inline constexpr double kNormalizationFloor = 1e-10;
// Bound-state mode amplitudes below this fraction of the total are dropped
// before dividing by their (possibly vanishing) pole separations.
inline constexpr double kNegligibleAmplitude = 1e-12;
}  // namespace tol

/// Two-level emitter coupled to the waveguide at two points.
struct TwoLevelParams {
  double omega0 = 100.0;  // transition frequency
  double gamma = 1.0;     // decay rate into the waveguide
  double theta = 0.0;     // phase accumulated between the coupling points [rad]

  void validate() const;
};

/// Lambda-type emitter with a control field on the e-s transition.
struct ThreeLevelParams {
  double omega0 = 100.0;
  double gamma = 1.0;
  double theta = 0.0;
  double omega_rabi = 0.5;  // control-field Rabi frequency
  double delta = 0.0;       // control-field detuning

  void validate() const;
  /// Parameters of the two-level model reached when the control field is off.
  TwoLevelParams reduced() const { return TwoLevelParams{omega0, gamma, theta}; }
};

/// Two incident photons with their derived total energy and half difference.
struct IncidentPair {
  double k1;
  double k2;
  double energy;     // k1 + k2
  double half_diff;  // (k1 - k2) / 2

  IncidentPair(double k1_in, double k2_in)
      : k1(k1_in), k2(k2_in), energy(k1_in + k2_in), half_diff(0.5 * (k1_in - k2_in)) {
    if (!std::isfinite(k1) || !std::isfinite(k2))
      throw std::invalid_argument("incident frequencies must be finite");
  }

  static IncidentPair degenerate(double k) { return IncidentPair(k, k); }
};

/// Two-photon wavefunction coefficients of one direction sector.
struct WavefunctionCoeffs {
  Complex rr;  // both photons transmitted
  Complex ll;  // both photons reflected
  Complex rl;  // one each way
};

/// Two-photon detection probability at zero separation minus the product of
/// independent single-photon detections, for each output field.
struct DetectionExcess {
  double transmitted;  // positive: photon-induced tunneling (bunching)
  double reflected;    // negative: photon blockade (antibunching)
};

}  // namespace gqed
