#pragma once

#include <array>

#include "gqed/core.hpp"
#include "gqed/types.hpp"

namespace gqed::threelevel {

/// Single-photon amplitudes of the Lambda system; us is the metastable-state
/// amplitude, absent in the two-level model.
struct Amplitudes {
  Complex t1, t2, r1, r2, ue, us;
};

Amplitudes amplitudes(const ThreeLevelParams& p, double k);

/// Residue normalization products entering the two-excitation resolvent.
struct ResidueFactors {
  Complex f1;  // (2 l1 - E)(l1 - l1*)^2 (l1 - l2*)^2
  Complex f2;  // (E - l1 - l2)(l1 - l1*)(l2 - l2*)|l1 - l2*|^2, symmetric
};

ResidueFactors residue_factors(Complex lambda1, Complex lambda2, double E);

/// Two-excitation resolvent in the basis {|ee>, |es>, |ss>}. Symmetric and
/// invariant under exchange of the two dressed poles.
struct GreenMatrix {
  std::array<std::array<Complex, 3>, 3> m{};
  Complex operator()(int i, int j) const { return m[i][j]; }
};

GreenMatrix two_excitation_green(const ThreeLevelParams& p, double E,
                                 SqrtBranch branch = SqrtBranch::Principal);

/// Bound-state decomposition B(x) = sum_m amp_m exp(i (E/2 - pole_m) |x|),
/// available at two-photon resonance (delta = 0).
struct BoundStateModes {
  Complex amp_plus, amp_minus;    // weights of the two decaying modes
  Complex pole_plus, pole_minus;  // resonant poles, Im <= 0
  double energy;                  // total energy of the incident pair
};

BoundStateModes bound_state_modes(const ThreeLevelParams& p, const IncidentPair& in,
                                  SqrtBranch branch = SqrtBranch::Principal);

Complex bound_state(const BoundStateModes& modes, double x);
Complex bound_state(const ThreeLevelParams& p, const IncidentPair& in, double x);

/// Slowest envelope decay rate of |B(x)| among modes with non-negligible
/// weight; used to truncate improper integrals over x.
double slowest_decay_rate(const BoundStateModes& modes);

/// Two-photon coefficients with the three-level amplitudes and bound state.
WavefunctionCoeffs wavefunction_coefficients(const ThreeLevelParams& p, const IncidentPair& in,
                                             double x1, double x2);

double incoherent_spectrum(const BoundStateModes& modes, double omega);
double incoherent_spectrum(const ThreeLevelParams& p, const IncidentPair& in, double omega);

/// Frequency-integrated incoherent power at equal incident frequencies;
/// vanishes identically at the transparency point k = omega0.
double total_incoherent_flux(const BoundStateModes& modes);
double total_incoherent_flux(const ThreeLevelParams& p, double k);

/// chi indicators at equal incident frequencies (delta = 0).
DetectionExcess detection_excess(const ThreeLevelParams& p, double k);

/// Normalized second-order correlation at equal incident frequencies.
double g2(const ThreeLevelParams& p, double k, double x, Direction dir,
          SqrtBranch branch = SqrtBranch::Principal);

/// Closed form of the transmitted g2 at zero separation for a general
/// incident pair (delta = 0).
double g2_zero_transmitted(const ThreeLevelParams& p, double k1, double k2);

}  // namespace gqed::threelevel
