#pragma once

#include "gqed/core.hpp"
#include "gqed/types.hpp"

namespace gqed::twolevel {

/// Single-photon scattering amplitudes under the Markovian approximation.
/// t2/r1 are the outer transmission/reflection amplitudes, t1/r2 the
/// amplitudes between the coupling points and ue the atomic excitation.
struct Amplitudes {
  Complex t1, t2, r1, r2, ue;
};

Amplitudes amplitudes(const TwoLevelParams& p, double k);

/// Two-excitation resolvent element 1 / (E - 2 omega0 + 2i Gamma').
Complex two_excitation_green(const TwoLevelParams& p, double E);

/// Amplitude for the doubly excited atom to emit the photon pair at
/// (x1, x2), both transmitted. Evaluated for any real coordinates; the
/// closed form is derived for both detection points beyond the coupling
/// region. The reflected-sector images follow by coordinate reflection.
Complex pair_emission_green(const TwoLevelParams& p, const IncidentPair& in, double x1, double x2);

/// Exponentially localized two-photon bound state; depends on |x| only.
Complex bound_state(const TwoLevelParams& p, const IncidentPair& in, double x);

/// Full two-photon wavefunction coefficients (plane wave plus bound state),
/// with x = x2 - x1. The detector-position phase e^{iE xc} is retained.
/// The algebraic forms are evaluated for any real coordinates; they describe
/// the scattered field for detection points beyond the coupling region.
WavefunctionCoeffs wavefunction_coefficients(const TwoLevelParams& p, const IncidentPair& in,
                                             double x1, double x2);

/// Amplitude for inelastic generation of a photon pair at frequencies
/// (omega, E - omega); the incoherent spectrum is its modulus squared.
Complex pair_generation_amplitude(const TwoLevelParams& p, const IncidentPair& in, double omega);

/// Incoherent (non-delta) part of the transmitted power spectrum; the
/// reflected spectrum is identical.
double incoherent_spectrum(const TwoLevelParams& p, const IncidentPair& in, double omega);

/// Frequency-integrated incoherent power for equal incident frequencies
/// k1 = k2 = k. Peaks at the effective pole with value 4 / (pi * decay).
double total_incoherent_flux(const TwoLevelParams& p, double k);

/// chi indicators at equal incident frequencies.
DetectionExcess detection_excess(const TwoLevelParams& p, double k);

/// Normalized second-order correlation versus detector separation x for
/// equal incident frequencies. Throws DivergentNormalization where the
/// normalizing single-photon amplitude vanishes.
double g2(const TwoLevelParams& p, double k, double x, Direction dir);

}  // namespace gqed::twolevel
