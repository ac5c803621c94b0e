#pragma once

#include <functional>
#include <string>
#include <vector>

#include "gqed/quadrature.hpp"
#include "gqed/types.hpp"

namespace gqed::oracles {

using BoundFn = std::function<Complex(double)>;
using SpectrumFn = std::function<double(double)>;

/// Total incoherent power from the bound-state norm, (4/pi) int |B(x)|^2 dx.
/// decay_rate is the envelope decay of B itself; the improper integral is
/// truncated where the envelope falls below truncation_epsilon and the cutoff
/// is doubled once to confirm insensitivity. `resolution`, when positive, is
/// the largest oscillation feature of the integrand: subdivision is forced
/// down to that scale before convergence is trusted.
double flux_from_bound_norm(const BoundFn& b, double decay_rate,
                            const QuadratureSpec& spec = {}, double resolution = 0.0);

/// Incoherent spectrum from the numerical Fourier transform of the bound
/// state, (1/pi^2) |Bhat(omega - E/2)|^2.
double spectrum_from_fourier(const BoundFn& b, double total_energy, double omega,
                             double decay_rate, const QuadratureSpec& spec = {},
                             double resolution = 0.0);

/// Total incoherent power from the frequency integral of the spectrum,
/// int (S_R + S_L) domega = 2 int S domega, over a window of half-width
/// `half_window` about E/2 plus an analytic |omega|^-4 tail estimate.
/// `peak_hints` lists spectral peak positions used as panel boundaries.
double flux_from_spectrum(const SpectrumFn& s, double total_energy,
                          const QuadratureSpec& spec = {},
                          const std::vector<double>& peak_hints = {},
                          double half_window = 1e4);

struct OracleReport {
  std::string name;
  double closed_form_value = 0.0;
  double oracle_value = 0.0;
  double relative_error = 0.0;
  bool passed = false;
  double tolerance = 0.0;
};

enum class VerifyScope { TwoLevel, ThreeLevel, All };

struct VerifyOptions {
  VerifyScope scope = VerifyScope::All;
  // Self-test mode: perturbs closed-form values before comparison so that a
  // healthy suite must report failures.
  bool corrupt_closed_forms = false;
  int threads = 0;  // 0 = hardware concurrency
};

/// Runs every invariant of the two-level and three-level observables on a
/// fixed parameter grid. Checks run in parallel; reports are ordered by name.
std::vector<OracleReport> run_verification_suite(const VerifyOptions& options = {});

}  // namespace gqed::oracles
