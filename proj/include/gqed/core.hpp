#pragma once

#include <vector>

#include "gqed/types.hpp"

namespace gqed {

/// Branch choice for the complex square roots entering the pole formulas.
/// All symmetric observables are branch-invariant; the labels of the two
/// poles swap between branches.
enum class SqrtBranch { Principal, Alternate };

/// Square root with Re >= 0; on the Re == 0 line the root with Im >= 0 is
/// returned.
Complex principal_sqrt(Complex z);
Complex branch_sqrt(Complex z, SqrtBranch branch);

/// Phase-dressed coupling rate gamma * (1 + e^{i theta}) shared by both atom
/// models. Its real part is the effective decay rate, its imaginary part the
/// interference-induced frequency shift.
Complex complex_decay(double gamma, double theta);
inline Complex complex_decay(const TwoLevelParams& p) { return complex_decay(p.gamma, p.theta); }
inline Complex complex_decay(const ThreeLevelParams& p) { return complex_decay(p.gamma, p.theta); }

/// gamma * (1 + cos theta): width of the single-excitation scattering pole.
inline double effective_decay(double gamma, double theta) {
  return gamma * (1.0 + std::cos(theta));
}

/// True when the two coupling points interfere destructively (theta = pi),
/// detaching the atom from the waveguide.
bool is_decoupled(double theta, double floor = tol::kDenominatorFloor);

/// Single-excitation pole of the two-level model, omega0 + gamma sin(theta)
/// - i gamma (1 + cos theta).
struct EffectivePole {
  double frequency;  // Lamb-shifted eigenfrequency
  double decay;      // effective decay rate, >= 0
};
EffectivePole effective_pole(const TwoLevelParams& p);

struct PolePair {
  Complex plus;   // carries the + branch of the square root
  Complex minus;  // carries the - branch
};

/// Poles of the three-level single-photon amplitudes (dressed-state
/// resonances) for general control detuning.
PolePair dressed_poles(const ThreeLevelParams& p, SqrtBranch branch = SqrtBranch::Principal);

/// Dressed poles at two-photon resonance (delta = 0), where the bound-state
/// decomposition is available. Throws RequiresResonance for delta != 0.
PolePair resonant_poles(const ThreeLevelParams& p, SqrtBranch branch = SqrtBranch::Principal);

enum class PoleLabel { TwoLevel, ResonantPlus, ResonantMinus, DressedPlus, DressedMinus };

struct PoleData {
  Complex location;
  PoleLabel label;
};

/// Labeled scattering poles of each model. For passive parameters away from
/// the decoupled point every location lies in the closed lower half plane.
std::vector<PoleData> system_poles(const TwoLevelParams& p);
std::vector<PoleData> system_poles(const ThreeLevelParams& p,
                                   SqrtBranch branch = SqrtBranch::Principal);

}  // namespace gqed
