#include "gqed/core.hpp"

#include <cmath>
#include <sstream>

namespace gqed {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateParameters: return "DegenerateParameters";
    case ErrorCode::RequiresResonance: return "RequiresResonance";
    case ErrorCode::DegenerateDenominator: return "DegenerateDenominator";
    case ErrorCode::DecoupledAtom: return "DecoupledAtom";
    case ErrorCode::DivergentNormalization: return "DivergentNormalization";
    case ErrorCode::PoleCollision: return "PoleCollision";
    case ErrorCode::MaxDepthExceeded: return "MaxDepthExceeded";
  }
  return "UnknownError";
}

void TwoLevelParams::validate() const {
  if (!std::isfinite(omega0) || !std::isfinite(gamma) || !std::isfinite(theta))
    throw std::invalid_argument("two-level parameters must be finite");
  if (gamma <= 0.0) throw std::invalid_argument("gamma must be positive");
}

void ThreeLevelParams::validate() const {
  reduced().validate();
  if (!std::isfinite(omega_rabi) || !std::isfinite(delta))
    throw std::invalid_argument("three-level parameters must be finite");
  if (omega_rabi < 0.0) throw std::invalid_argument("omega_rabi must be nonnegative");
}

Complex principal_sqrt(Complex z) {
  Complex w = std::sqrt(z);
  // std::sqrt already returns Re >= 0; normalize the Re == 0 line so the
  // result does not depend on the sign of an imaginary zero.
  if (w.real() < 0.0 || (w.real() == 0.0 && w.imag() < 0.0)) w = -w;
  return w;
}

Complex branch_sqrt(Complex z, SqrtBranch branch) {
  const Complex w = principal_sqrt(z);
  return branch == SqrtBranch::Principal ? w : -w;
}

Complex complex_decay(double gamma, double theta) {
  return gamma * Complex(1.0 + std::cos(theta), std::sin(theta));
}

bool is_decoupled(double theta, double floor) {
  return std::abs(1.0 + std::cos(theta)) <= floor;
}

EffectivePole effective_pole(const TwoLevelParams& p) {
  return {p.omega0 + p.gamma * std::sin(p.theta), effective_decay(p.gamma, p.theta)};
}

namespace {

PolePair pole_pair(Complex center, Complex half_split, double gamma) {
  if (std::abs(half_split) < 0.5 * tol::kPoleDegeneracy * gamma) {
    std::ostringstream msg;
    msg << "pole separation " << 2.0 * std::abs(half_split) << " below " << tol::kPoleDegeneracy
        << " * gamma; downstream formulas divide by it";
    throw ScatteringError(ErrorCode::DegenerateParameters, msg.str());
  }
  return {center + half_split, center - half_split};
}

}  // namespace

PolePair dressed_poles(const ThreeLevelParams& p, SqrtBranch branch) {
  const Complex gp = complex_decay(p);
  const Complex disc = (Complex(-p.delta, 0.0) + Complex(0.0, 1.0) * gp) *
                           (Complex(-p.delta, 0.0) + Complex(0.0, 1.0) * gp) +
                       p.omega_rabi * p.omega_rabi;
  const Complex s = branch_sqrt(disc, branch);
  const Complex center = 0.5 * (Complex(2.0 * p.omega0 - p.delta, 0.0) - Complex(0.0, 1.0) * gp);
  return pole_pair(center, 0.5 * s, p.gamma);
}

std::vector<PoleData> system_poles(const TwoLevelParams& p) {
  const EffectivePole pole = effective_pole(p);
  return {{Complex(pole.frequency, -pole.decay), PoleLabel::TwoLevel}};
}

std::vector<PoleData> system_poles(const ThreeLevelParams& p, SqrtBranch branch) {
  if (p.delta == 0.0) {
    const PolePair pair = resonant_poles(p, branch);
    return {{pair.plus, PoleLabel::ResonantPlus}, {pair.minus, PoleLabel::ResonantMinus}};
  }
  const PolePair pair = dressed_poles(p, branch);
  return {{pair.plus, PoleLabel::DressedPlus}, {pair.minus, PoleLabel::DressedMinus}};
}

PolePair resonant_poles(const ThreeLevelParams& p, SqrtBranch branch) {
  if (p.delta != 0.0)
    throw ScatteringError(ErrorCode::RequiresResonance,
                          "resonant poles are defined only at delta = 0");
  const Complex gp = complex_decay(p);
  const Complex s = branch_sqrt(Complex(p.omega_rabi * p.omega_rabi, 0.0) - gp * gp, branch);
  const Complex center = Complex(p.omega0, 0.0) - 0.5 * Complex(0.0, 1.0) * gp;
  return pole_pair(center, 0.5 * s, p.gamma);
}

}  // namespace gqed
