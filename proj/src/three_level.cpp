#include "gqed/three_level.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace gqed::threelevel {

namespace {

constexpr Complex kI{0.0, 1.0};

void check_denominator(const Complex& d, double scale, const char* where) {
  if (std::abs(d) <= tol::kDenominatorFloor * scale)
    throw ScatteringError(ErrorCode::DegenerateDenominator,
                          std::string(where) + ": denominator vanishes");
}

}  // namespace

Amplitudes amplitudes(const ThreeLevelParams& p, double k) {
  const Complex gp = complex_decay(p);
  const double a = p.omega0 - p.delta - k;  // detuning from the s level
  const double rabi_sq4 = 0.25 * p.omega_rabi * p.omega_rabi;
  const Complex denom = a * (Complex(p.omega0 - k, 0.0) - kI * gp) - rabi_sq4;
  check_denominator(denom, p.gamma * p.gamma, "amplitudes");

  const double cos_half = std::cos(0.5 * p.theta);
  Amplitudes amp;
  amp.t1 = (a * (Complex(p.omega0 - k, 0.0) - 0.5 * kI * gp) - rabi_sq4) / denom;
  amp.t2 = Complex(a * (p.omega0 - k + p.gamma * std::sin(p.theta)) - rabi_sq4, 0.0) / denom;
  amp.r1 = Complex(0.0, effective_decay(p.gamma, p.theta) * a) / denom;
  amp.r2 = 0.5 * kI * gp * a / denom;
  amp.ue = Complex(-std::sqrt(p.gamma / std::numbers::pi) * a * cos_half, 0.0) / denom;
  amp.us = Complex(0.5 * p.omega_rabi * std::sqrt(p.gamma / std::numbers::pi) * cos_half, 0.0) /
           denom;
  return amp;
}

ResidueFactors residue_factors(Complex lambda1, Complex lambda2, double E) {
  const Complex self1 = lambda1 - std::conj(lambda1);
  const Complex self2 = lambda2 - std::conj(lambda2);
  const Complex cross = lambda1 - std::conj(lambda2);
  ResidueFactors f;
  f.f1 = (2.0 * lambda1 - E) * self1 * self1 * cross * cross;
  f.f2 = (Complex(E, 0.0) - lambda1 - lambda2) * self1 * self2 * std::norm(cross);
  return f;
}

GreenMatrix two_excitation_green(const ThreeLevelParams& p, double E, SqrtBranch branch) {
  GreenMatrix g;
  // The decoupled point makes every element vanish; the raw formulas are
  // 0/0 there, so return the limit directly.
  if (is_decoupled(p.theta)) return g;

  const PolePair poles = dressed_poles(p, branch);
  const Complex l1 = poles.plus;
  const Complex l2 = poles.minus;
  const ResidueFactors fa = residue_factors(l1, l2, E);
  const ResidueFactors fb = residue_factors(l2, l1, E);
  if (std::abs(fa.f1) < 1e-300 || std::abs(fb.f1) < 1e-300 || std::abs(fa.f2) < 1e-300)
    throw ScatteringError(ErrorCode::DegenerateDenominator,
                          "two_excitation_green: residue factor vanishes");

  const double cos_half = std::cos(0.5 * p.theta);
  const double c4 = cos_half * cos_half * cos_half * cos_half;
  const double g2c4 = p.gamma * p.gamma * c4;
  const Complex split_sq = (l1 - l2) * (l1 - l2);
  const Complex e1 = l1 - p.omega0 + p.delta;
  const Complex e2 = l2 - p.omega0 + p.delta;
  const double rabi = p.omega_rabi;

  const Complex g11 = 16.0 * g2c4 / split_sq *
                      (e1 * e1 * e1 * e1 / fa.f1 + e2 * e2 * e2 * e2 / fb.f1 -
                       2.0 * e1 * e1 * e2 * e2 / fa.f2);
  const Complex g22 = 4.0 * g2c4 * rabi * rabi / split_sq *
                      (e1 * e1 / fa.f1 + e2 * e2 / fb.f1 - 0.5 * (e1 + e2) * (e1 + e2) / fa.f2);
  const Complex g33 =
      g2c4 * rabi * rabi * rabi * rabi / split_sq * (1.0 / fa.f1 + 1.0 / fb.f1 - 2.0 / fa.f2);
  const Complex g12 = 8.0 * g2c4 * rabi / split_sq *
                      (e1 * e1 * e1 / fa.f1 + e2 * e2 * e2 / fb.f1 -
                       (e1 * e1 * e2 + e2 * e2 * e1) / fa.f2);
  const Complex g13 = 4.0 * g2c4 * rabi * rabi / split_sq *
                      (e1 * e1 / fa.f1 + e2 * e2 / fb.f1 - 2.0 * e1 * e2 / fa.f2);
  const Complex g23 = 2.0 * g2c4 * rabi * rabi * rabi / split_sq *
                      (e1 / fa.f1 + e2 / fb.f1 - (e1 + e2) / fa.f2);

  g.m[0][0] = g11;
  g.m[1][1] = g22;
  g.m[2][2] = g33;
  g.m[0][1] = g.m[1][0] = g12;
  g.m[0][2] = g.m[2][0] = g13;
  g.m[1][2] = g.m[2][1] = g23;
  return g;
}

BoundStateModes bound_state_modes(const ThreeLevelParams& p, const IncidentPair& in,
                                  SqrtBranch branch) {
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "bound state decomposition requires delta = 0");

  const Complex gp = complex_decay(p);
  const Complex s = branch_sqrt(Complex(p.omega_rabi * p.omega_rabi, 0.0) - gp * gp, branch);
  if (std::abs(s) < tol::kPoleDegeneracy * p.gamma)
    throw ScatteringError(ErrorCode::DegenerateParameters,
                          "bound_state_modes: resonant poles collide");

  const Complex pole_plus = Complex(p.omega0, 0.0) - 0.5 * kI * gp + 0.5 * s;
  const Complex pole_minus = Complex(p.omega0, 0.0) - 0.5 * kI * gp - 0.5 * s;
  for (double k : {in.k1, in.k2})
    for (const Complex& pole : {pole_plus, pole_minus})
      if (std::abs(k - pole) < tol::kPoleCollision * p.gamma)
        throw ScatteringError(ErrorCode::PoleCollision,
                              "bound_state_modes: incident frequency hits a pole");

  const Complex denom = (in.k1 - pole_plus) * (in.k1 - pole_minus) * (in.k2 - pole_plus) *
                        (in.k2 - pole_minus);
  const double gt = effective_decay(p.gamma, p.theta);
  const Complex prefactor = gt * gt / (2.0 * s);
  const double sum_term = (in.energy - 2.0 * p.omega0) * 0.25 * p.omega_rabi * p.omega_rabi;
  const double product_term = (in.k1 - p.omega0) * (in.k2 - p.omega0);

  BoundStateModes modes;
  modes.amp_plus = prefactor * (sum_term + product_term * (s - kI * gp)) / denom;
  modes.amp_minus = prefactor * (-sum_term + product_term * (s + kI * gp)) / denom;
  modes.pole_plus = pole_plus;
  modes.pole_minus = pole_minus;
  modes.energy = in.energy;
  return modes;
}

Complex bound_state(const BoundStateModes& modes, double x) {
  const double ax = std::abs(x);
  const double half_e = 0.5 * modes.energy;
  return modes.amp_plus * std::exp(kI * (half_e - modes.pole_plus) * ax) +
         modes.amp_minus * std::exp(kI * (half_e - modes.pole_minus) * ax);
}

Complex bound_state(const ThreeLevelParams& p, const IncidentPair& in, double x) {
  return bound_state(bound_state_modes(p, in), x);
}

double slowest_decay_rate(const BoundStateModes& modes) {
  const double asum = std::abs(modes.amp_plus) + std::abs(modes.amp_minus);
  const double rate_plus = -modes.pole_plus.imag();
  const double rate_minus = -modes.pole_minus.imag();
  if (asum == 0.0) {
    const double fallback = std::min(std::abs(rate_plus), std::abs(rate_minus));
    return fallback > 0.0 ? fallback : 1.0;
  }
  double rate = std::numeric_limits<double>::infinity();
  if (std::abs(modes.amp_plus) > tol::kNegligibleAmplitude * asum)
    rate = std::min(rate, rate_plus);
  if (std::abs(modes.amp_minus) > tol::kNegligibleAmplitude * asum)
    rate = std::min(rate, rate_minus);
  return rate;
}

WavefunctionCoeffs wavefunction_coefficients(const ThreeLevelParams& p, const IncidentPair& in,
                                             double x1, double x2) {
  const Amplitudes a1 = amplitudes(p, in.k1);
  const Amplitudes a2 = amplitudes(p, in.k2);
  const BoundStateModes modes = bound_state_modes(p, in);
  const double x = x2 - x1;
  const double xc = 0.5 * (x1 + x2);
  const Complex b = bound_state(modes, x);
  const Complex b_center = bound_state(modes, xc);
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

double incoherent_spectrum(const BoundStateModes& modes, double omega) {
  const double asum = std::abs(modes.amp_plus) + std::abs(modes.amp_minus);
  if (asum == 0.0) return 0.0;

  const double E = modes.energy;
  Complex total = 0.0;
  const Complex amps[2] = {modes.amp_plus, modes.amp_minus};
  const Complex poles[2] = {modes.pole_plus, modes.pole_minus};
  for (int m = 0; m < 2; ++m) {
    if (std::abs(amps[m]) <= tol::kNegligibleAmplitude * asum) continue;
    const Complex denom = (E - omega - poles[m]) * (omega - poles[m]);
    if (std::abs(denom) == 0.0)
      throw ScatteringError(ErrorCode::DegenerateDenominator,
                            "incoherent_spectrum: frequency hits a real pole");
    total += amps[m] * (E - 2.0 * poles[m]) / denom;
  }
  const double pi2 = std::numbers::pi * std::numbers::pi;
  return std::norm(total) / pi2;
}

double incoherent_spectrum(const ThreeLevelParams& p, const IncidentPair& in, double omega) {
  return incoherent_spectrum(bound_state_modes(p, in), omega);
}

double total_incoherent_flux(const BoundStateModes& modes) {
  const double asum = std::abs(modes.amp_plus) + std::abs(modes.amp_minus);
  if (asum == 0.0) return 0.0;

  const Complex amps[2] = {modes.amp_plus, modes.amp_minus};
  const Complex poles[2] = {modes.pole_plus, modes.pole_minus};
  double denom_scale = 0.0;
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n)
      denom_scale = std::max(denom_scale, std::abs(std::conj(poles[m]) - poles[n]));

  Complex sum = 0.0;
  for (int m = 0; m < 2; ++m) {
    for (int n = 0; n < 2; ++n) {
      const Complex num = std::conj(amps[m]) * amps[n];
      const double negligible = tol::kNegligibleAmplitude * asum;
      if (std::abs(num) <= negligible * negligible) continue;
      const Complex denom = std::conj(poles[m]) - poles[n];
      if (std::abs(denom) < 1e-14 * denom_scale) {
        if (std::abs(num) <= 1e-20 * asum * asum) continue;
        throw ScatteringError(ErrorCode::DegenerateParameters,
                              "total_incoherent_flux: pole separation vanishes");
      }
      sum += num / denom;
    }
  }
  const Complex flux = Complex(0.0, 8.0 / std::numbers::pi) * sum;
  if (std::abs(flux.imag()) > 1e-10 * std::abs(flux.real()) + 1e-14)
    throw std::logic_error("total_incoherent_flux: non-Hermitian mode sum");
  return flux.real();
}

double total_incoherent_flux(const ThreeLevelParams& p, double k) {
  return total_incoherent_flux(bound_state_modes(p, IncidentPair::degenerate(k)));
}

DetectionExcess detection_excess(const ThreeLevelParams& p, double k) {
  const Amplitudes a = amplitudes(p, k);
  const Complex b0 = bound_state(p, IncidentPair::degenerate(k), 0.0);
  const double t2sq = std::norm(a.t2);
  const double r1sq = std::norm(a.r1);
  return {std::norm(a.t2 * a.t2 + b0) - t2sq * t2sq, std::norm(a.r1 * a.r1 + b0) - r1sq * r1sq};
}

double g2(const ThreeLevelParams& p, double k, double x, Direction dir, SqrtBranch branch) {
  const Amplitudes a = amplitudes(p, k);
  const Complex single = dir == Direction::Transmitted ? a.t2 : a.r1;
  const Complex normalization = single * single;
  if (std::abs(normalization) < tol::kNormalizationFloor)
    throw ScatteringError(ErrorCode::DivergentNormalization,
                          dir == Direction::Transmitted
                              ? "g2: single-photon transmission vanishes at this frequency"
                              : "g2: single-photon reflection vanishes at this frequency");
  const BoundStateModes modes = bound_state_modes(p, IncidentPair::degenerate(k), branch);
  return std::norm(1.0 + bound_state(modes, x) / normalization);
}

double g2_zero_transmitted(const ThreeLevelParams& p, double k1, double k2) {
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "g2_zero_transmitted requires delta = 0");
  const double gt = effective_decay(p.gamma, p.theta);
  const double shift = p.gamma * std::sin(p.theta);
  const double rabi_sq4 = 0.25 * p.omega_rabi * p.omega_rabi;
  double product = 1.0;
  for (double k : {k1, k2}) {
    const double denom = (p.omega0 - k) * (p.omega0 - k + shift) - rabi_sq4;
    if (std::abs(denom) <= tol::kDenominatorFloor * p.gamma * p.gamma)
      throw ScatteringError(ErrorCode::DivergentNormalization,
                            "g2_zero_transmitted: transmission zero at incident frequency");
    product *= (k - p.omega0) / denom;
  }
  const double value = 1.0 + gt * gt * product;
  return value * value;
}

}  // namespace gqed::threelevel
