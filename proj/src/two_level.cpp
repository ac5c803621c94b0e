#include "gqed/two_level.hpp"

#include <cmath>
#include <numbers>

namespace gqed::twolevel {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_denominator(const Complex& d, double scale, const char* where) {
  if (std::abs(d) <= tol::kDenominatorFloor * scale)
    throw ScatteringError(ErrorCode::DegenerateDenominator,
                          std::string(where) + ": denominator vanishes (decoupled point)");
}

}  // namespace

Amplitudes amplitudes(const TwoLevelParams& p, double k) {
  const Complex gp = complex_decay(p);
  const Complex denom = Complex(p.omega0 - k, 0.0) - kI * gp;
  check_denominator(denom, p.gamma, "amplitudes");

  Amplitudes a;
  a.t1 = (Complex(p.omega0 - k, 0.0) - 0.5 * kI * gp) / denom;
  a.t2 = Complex(p.omega0 - k + p.gamma * std::sin(p.theta), 0.0) / denom;
  a.r1 = Complex(0.0, effective_decay(p.gamma, p.theta)) / denom;
  a.r2 = 0.5 * kI * gp / denom;
  a.ue = Complex(-std::sqrt(p.gamma / std::numbers::pi) * std::cos(0.5 * p.theta), 0.0) / denom;
  return a;
}

Complex two_excitation_green(const TwoLevelParams& p, double E) {
  const Complex denom = Complex(E - 2.0 * p.omega0, 0.0) + 2.0 * kI * complex_decay(p);
  check_denominator(denom, p.gamma, "two_excitation_green");
  return 1.0 / denom;
}

Complex pair_emission_green(const TwoLevelParams& p, const IncidentPair& in, double x1,
                            double x2) {
  const Complex gp = complex_decay(p);
  const double E = in.energy;
  const double x = x2 - x1;
  const double xc = 0.5 * (x1 + x2);
  const Complex prefactor = -effective_decay(p.gamma, p.theta) * two_excitation_green(p, E);
  // Exponent i(E/2 - omega0)|x| - Gamma'|x| written as i*w*|x|.
  const Complex w = Complex(0.5 * E - p.omega0, 0.0) + kI * gp;
  return prefactor * std::exp(kI * E * xc) * std::exp(kI * w * std::abs(x));
}

Complex bound_state(const TwoLevelParams& p, const IncidentPair& in, double x) {
  const Complex gp = complex_decay(p);
  const Complex w = Complex(0.5 * in.energy - p.omega0, 0.0) + kI * gp;
  const Complex denom = w * w - in.half_diff * in.half_diff;
  check_denominator(denom, p.gamma * p.gamma, "bound_state");
  const double gt = effective_decay(p.gamma, p.theta);
  return gt * gt * std::exp(kI * w * std::abs(x)) / denom;
}

WavefunctionCoeffs wavefunction_coefficients(const TwoLevelParams& p, const IncidentPair& in,
                                             double x1, double x2) {
  const Amplitudes a1 = amplitudes(p, in.k1);
  const Amplitudes a2 = amplitudes(p, in.k2);
  const double x = x2 - x1;
  const double xc = 0.5 * (x1 + x2);
  const Complex b = bound_state(p, in, x);
  const Complex b_center = bound_state(p, in, xc);
  const double norm_pair = std::sqrt(2.0) * std::numbers::pi;

  WavefunctionCoeffs c;
  c.rr = std::exp(kI * in.energy * xc) / norm_pair *
         (a1.t2 * a2.t2 * std::cos(in.half_diff * x) + b);
  c.ll = std::exp(-kI * in.energy * xc) / norm_pair *
         (a1.r1 * a2.r1 * std::cos(in.half_diff * x) + b);
  c.rl = std::exp(kI * in.energy * 0.5 * x) / (2.0 * std::numbers::pi) *
         (a1.t2 * a2.r1 * std::exp(2.0 * kI * in.half_diff * xc) +
          a1.r1 * a2.t2 * std::exp(-2.0 * kI * in.half_diff * xc) + 2.0 * b_center);
  return c;
}

Complex pair_generation_amplitude(const TwoLevelParams& p, const IncidentPair& in, double omega) {
  const Complex gp = complex_decay(p);
  const double E = in.energy;
  const Complex d1 = Complex(0.5 * E - p.omega0, 0.0) + kI * gp;
  const Complex d2 = Complex(E - p.omega0 - omega, 0.0) + kI * gp;
  const Complex d3 = Complex(omega - p.omega0, 0.0) + kI * gp;
  check_denominator(d1, p.gamma, "pair_generation_amplitude");
  check_denominator(d2, p.gamma, "pair_generation_amplitude");
  check_denominator(d3, p.gamma, "pair_generation_amplitude");
  const double gt = effective_decay(p.gamma, p.theta);
  return gt * gt / (d1 * d2 * d3);
}

double incoherent_spectrum(const TwoLevelParams& p, const IncidentPair& in, double omega) {
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return 4.0 / pi2 * std::norm(pair_generation_amplitude(p, in, omega));
}

double total_incoherent_flux(const TwoLevelParams& p, double k) {
  const Complex gp = complex_decay(p);
  const Complex w = Complex(k - p.omega0, 0.0) + kI * gp;
  check_denominator(w, p.gamma, "total_incoherent_flux");
  const double gt = effective_decay(p.gamma, p.theta);
  const double m2 = std::norm(w);
  return 4.0 * gt * gt * gt / (std::numbers::pi * m2 * m2);
}

DetectionExcess detection_excess(const TwoLevelParams& p, double k) {
  const Amplitudes a = amplitudes(p, k);
  const Complex b0 = bound_state(p, IncidentPair::degenerate(k), 0.0);
  const double t2sq = std::norm(a.t2);
  const double r1sq = std::norm(a.r1);
  return {std::norm(a.t2 * a.t2 + b0) - t2sq * t2sq, std::norm(a.r1 * a.r1 + b0) - r1sq * r1sq};
}

double g2(const TwoLevelParams& p, double k, double x, Direction dir) {
  const Amplitudes a = amplitudes(p, k);
  const Complex n = dir == Direction::Transmitted ? a.t2 : a.r1;
  if (std::norm(n) < tol::kNormalizationFloor)
    throw ScatteringError(ErrorCode::DivergentNormalization,
                          dir == Direction::Transmitted
                              ? "g2: single-photon transmission vanishes at this frequency"
                              : "g2: single-photon reflection vanishes at this frequency");

  const Complex gp = complex_decay(p);
  const Complex phase = std::exp((Complex(k - p.omega0, 0.0) + kI * gp) * kI * std::abs(x));
  if (dir == Direction::Reflected) return std::norm(1.0 - phase);

  const double gt = effective_decay(p.gamma, p.theta);
  const double detune = k - p.omega0 - p.gamma * std::sin(p.theta);
  return std::norm(1.0 + gt * gt * phase / (detune * detune));
}

}  // namespace gqed::twolevel
