#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "gqed/two_level.hpp"

using namespace gqed;
using namespace gqed::twolevel;

namespace {
constexpr double kPi = std::numbers::pi;
const TwoLevelParams kBase{100.0, 1.0, 0.0};

TwoLevelParams with_theta(double theta) { return {100.0, 1.0, theta}; }
}  // namespace

TEST_CASE("single-photon amplitudes at reference points") {
  const auto resonant = amplitudes(kBase, 100.0);
  CHECK(std::abs(resonant.t2) < 1e-15);
  CHECK(std::abs(resonant.r1 - Complex(-1.0, 0.0)) < 1e-15);

  // Decoupled atom transmits perfectly off resonance.
  for (double detune : {-0.5, 0.25, 2.0}) {
    const auto decoupled = amplitudes(with_theta(kPi), 100.0 + detune);
    CHECK(std::abs(decoupled.t2 - Complex(1.0, 0.0)) < 1e-12);
    CHECK(std::abs(decoupled.r1) < 1e-12);
  }

  const auto quarter = amplitudes(with_theta(0.5 * kPi), 100.0);
  CHECK(std::abs(quarter.t2 - Complex(0.5, 0.5)) < 1e-14);
  CHECK(std::abs(quarter.r1 - Complex(-0.5, 0.5)) < 1e-14);
  CHECK(std::norm(quarter.t2) == doctest::Approx(0.5));
  CHECK(std::norm(quarter.r1) == doctest::Approx(0.5));
}

TEST_CASE("amplitudes diverge only at the decoupled resonance") {
  try {
    (void)amplitudes(with_theta(kPi), 100.0);
    CHECK(false);
  } catch (const ScatteringError& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("flux conservation over random parameters") {
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> theta_draw(0.0, 2.0 * kPi);
  std::uniform_real_distribution<double> k_draw(-5.0, 5.0);
  for (int i = 0; i < 1000; ++i) {
    double theta = theta_draw(rng);
    while (std::abs(1.0 + std::cos(theta)) < 1e-3) theta = theta_draw(rng);
    const auto a = amplitudes(with_theta(theta), 100.0 + k_draw(rng));
    CHECK(std::abs(std::norm(a.t2) + std::norm(a.r1) - 1.0) <= 1e-12);
  }
}

TEST_CASE("two-excitation resolvent") {
  CHECK(std::abs(two_excitation_green(kBase, 200.0) - Complex(0.0, -0.25)) < 1e-15);
  CHECK(std::abs(two_excitation_green(with_theta(0.5 * kPi), 202.0) - Complex(0.0, -0.5)) <
        1e-15);
  CHECK(std::abs(two_excitation_green(with_theta(kPi), 201.0) - Complex(1.0, 0.0)) < 1e-15);
  CHECK_THROWS_AS((void)two_excitation_green(with_theta(kPi), 200.0), ScatteringError);
}

TEST_CASE("pair emission amplitude") {
  const IncidentPair in = IncidentPair::degenerate(100.0);
  CHECK(std::abs(pair_emission_green(with_theta(kPi), IncidentPair::degenerate(100.4), 1.0,
                                     2.0)) < 1e-15);

  // Equal positions at resonance: (i/2) e^{2 i omega0 x}.
  for (double x : {0.3, 1.7}) {
    const Complex got = pair_emission_green(kBase, in, x, x);
    const Complex expected = Complex(0.0, 0.5) * std::exp(Complex(0.0, 200.0 * x));
    CHECK(std::abs(got - expected) < 1e-12);
  }

  // Magnitude decays by 1/e over the effective lifetime.
  const TwoLevelParams p = with_theta(0.5 * kPi);
  const double decay = effective_decay(p.gamma, p.theta);
  const double m0 = std::abs(pair_emission_green(p, in, 1.0, 1.0));
  const double m1 = std::abs(pair_emission_green(p, in, 1.0, 1.0 + 1.0 / decay));
  CHECK(m1 / m0 == doctest::Approx(std::exp(-1.0)).epsilon(1e-10));

  // Translation covariance: shifting both detectors only rotates the
  // center-of-mass phase; exchanging them changes nothing.
  const Complex base = pair_emission_green(p, in, 0.4, 1.1);
  const double shift = 0.37;
  const Complex shifted = pair_emission_green(p, in, 0.4 + shift, 1.1 + shift);
  CHECK(std::abs(shifted - base * std::exp(Complex(0.0, in.energy * shift))) < 1e-12);
  CHECK(std::abs(pair_emission_green(p, in, 1.1, 0.4) - base) < 1e-14);
}

TEST_CASE("bound state values and envelope") {
  const IncidentPair in = IncidentPair::degenerate(100.0);
  CHECK(std::abs(bound_state(kBase, in, 0.0) - Complex(-1.0, 0.0)) < 1e-14);
  CHECK(std::abs(bound_state(with_theta(kPi), IncidentPair::degenerate(100.5), 1.0)) < 1e-15);

  for (double frac : {0.0, 0.5, 0.75}) {
    const TwoLevelParams p = with_theta(frac * kPi);
    const double decay = effective_decay(p.gamma, p.theta);
    for (double x : {0.4, 2.0}) {
      const double ratio = std::abs(bound_state(p, in, x)) / std::abs(bound_state(p, in, 0.0));
      CHECK(ratio == doctest::Approx(std::exp(-decay * x)).epsilon(1e-12));
    }
    CHECK(std::abs(bound_state(p, in, -1.3) - bound_state(p, in, 1.3)) < 1e-15);
  }

  try {
    (void)bound_state(with_theta(kPi), in, 0.0);
    CHECK(false);
  } catch (const ScatteringError& e) {
    CHECK(e.code() == ErrorCode::DegenerateDenominator);
  }
}

TEST_CASE("wavefunction coefficients") {
  const IncidentPair in = IncidentPair::degenerate(100.0);
  const double norm_pair = std::sqrt(2.0) * kPi;

  const auto at_contact = wavefunction_coefficients(kBase, in, 0.7, 0.7);
  CHECK(std::abs(at_contact.rr) * norm_pair == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(at_contact.ll) * norm_pair < 1e-12);

  // Decoupled atom: pure plane wave with unit transmission.
  const IncidentPair detuned(100.4, 99.9);
  const auto plane = wavefunction_coefficients(with_theta(kPi), detuned, 0.2, 1.5);
  const double x = 1.5 - 0.2;
  const Complex expected = std::exp(Complex(0.0, detuned.energy * 0.5 * (0.2 + 1.5))) *
                           std::cos(detuned.half_diff * x) / norm_pair;
  CHECK(std::abs(plane.rr - expected) < 1e-12);

  // Exchange symmetry of the like-direction coefficients.
  const auto ab = wavefunction_coefficients(with_theta(0.5 * kPi), detuned, 0.3, 2.1);
  const auto ba = wavefunction_coefficients(with_theta(0.5 * kPi), detuned, 2.1, 0.3);
  CHECK(std::abs(ab.rr - ba.rr) < 1e-13);
  CHECK(std::abs(ab.ll - ba.ll) < 1e-13);
}

TEST_CASE("pair generation amplitude") {
  const IncidentPair in = IncidentPair::degenerate(100.0);
  CHECK(std::abs(pair_generation_amplitude(kBase, in, 100.0) - Complex(0.0, 0.5)) < 1e-14);
  CHECK(std::abs(pair_generation_amplitude(with_theta(kPi), IncidentPair::degenerate(100.5),
                                           100.2)) < 1e-15);

  const IncidentPair off(100.8, 99.9);
  for (double omega : {99.2, 100.1, 101.4}) {
    const Complex direct = pair_generation_amplitude(with_theta(0.75 * kPi), off, omega);
    const Complex mirrored =
        pair_generation_amplitude(with_theta(0.75 * kPi), off, off.energy - omega);
    CHECK(std::abs(direct - mirrored) <= 1e-12 * std::abs(direct));
  }
}

TEST_CASE("incoherent spectrum") {
  const IncidentPair in = IncidentPair::degenerate(100.0);
  CHECK(incoherent_spectrum(kBase, in, 100.0) == doctest::Approx(1.0 / (kPi * kPi)));
  CHECK(incoherent_spectrum(with_theta(kPi), IncidentPair::degenerate(100.5), 100.1) == 0.0);

  const TwoLevelParams p = with_theta(0.85 * kPi);
  const IncidentPair probe = IncidentPair::degenerate(100.3);
  for (int i = 1; i <= 1000; ++i) {
    const double off = 5.0 * i / 1000.0;
    const double hi = incoherent_spectrum(p, probe, 0.5 * probe.energy + off);
    const double lo = incoherent_spectrum(p, probe, 0.5 * probe.energy - off);
    CHECK(std::abs(hi - lo) <= 1e-12 * std::max(hi, lo));
  }
}

TEST_CASE("total incoherent flux and its peak law") {
  CHECK(total_incoherent_flux(kBase, 100.0) == doctest::Approx(2.0 / kPi).epsilon(1e-14));
  CHECK(total_incoherent_flux(with_theta(0.5 * kPi), 101.0) ==
        doctest::Approx(4.0 / kPi).epsilon(1e-14));

  // theta = 0 reduces to the single-point form with the interference folded in.
  for (int i = 0; i <= 20; ++i) {
    const double k = 100.0 - 3.0 + 0.3 * i;
    const double d2 = (k - 100.0) * (k - 100.0) + 4.0;
    CHECK(total_incoherent_flux(kBase, k) ==
          doctest::Approx(32.0 / (kPi * d2 * d2)).epsilon(1e-13));
  }

  // Enhancement of the peak between theta = 0.85 pi and theta = 0.
  const double ratio = (4.0 / (kPi * effective_decay(1.0, 0.85 * kPi))) / (2.0 / kPi);
  CHECK(ratio == doctest::Approx(2.0 / (1.0 + std::cos(0.85 * kPi))).epsilon(1e-14));
  CHECK(ratio > 18.0);
  CHECK(ratio < 19.0);

  CHECK(total_incoherent_flux(with_theta(kPi), 100.7) == 0.0);
  CHECK_THROWS_AS((void)total_incoherent_flux(with_theta(kPi), 100.0), ScatteringError);
}

TEST_CASE("detection excess") {
  const auto resonant = detection_excess(kBase, 100.0);
  CHECK(resonant.transmitted == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(resonant.reflected == doctest::Approx(-1.0).epsilon(1e-12));

  const auto decoupled = detection_excess(with_theta(kPi), 100.5);
  CHECK(std::abs(decoupled.transmitted) < 1e-12);
  CHECK(std::abs(decoupled.reflected) < 1e-12);

  // chi_R collapses to 1 - |t2|^4 and chi_L to -|r1|^4.
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> theta_draw(0.0, 0.95 * kPi);
  std::uniform_real_distribution<double> k_draw(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const TwoLevelParams p = with_theta(theta_draw(rng));
    const double k = 100.0 + k_draw(rng);
    const auto chi = detection_excess(p, k);
    const auto a = amplitudes(p, k);
    const double t4 = std::norm(a.t2) * std::norm(a.t2);
    const double r4 = std::norm(a.r1) * std::norm(a.r1);
    CHECK(chi.transmitted == doctest::Approx(1.0 - t4).epsilon(1e-10));
    CHECK(chi.reflected == doctest::Approx(-r4).epsilon(1e-10));
    CHECK(chi.transmitted >= -1e-12);
    CHECK(chi.reflected <= 1e-12);

    // Same value through the wavefunction-coefficient route.
    const auto coeffs = wavefunction_coefficients(p, IncidentPair::degenerate(k), 0.9, 0.9);
    CHECK(chi.transmitted == doctest::Approx(2.0 * kPi * kPi * std::norm(coeffs.rr) - t4)
                                 .epsilon(1e-9));
    CHECK(chi.reflected ==
          doctest::Approx(2.0 * kPi * kPi * std::norm(coeffs.ll) - r4).epsilon(1e-9));
  }
}

TEST_CASE("second-order correlation") {
  // Reflected photons are perfectly antibunched at contact.
  for (double frac : {0.0, 0.5, 0.85}) {
    for (double detune : {-1.0, 0.0, 2.0})
      CHECK(g2(with_theta(frac * kPi), 100.0 + detune, 0.0, Direction::Reflected) ==
            doctest::Approx(0.0).epsilon(1e-14));
  }

  CHECK(g2(kBase, 100.0, std::log(2.0) / 2.0, Direction::Reflected) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(g2(kBase, 101.0, 0.0, Direction::Transmitted) == doctest::Approx(25.0).epsilon(1e-12));

  // g2_R agrees with the bound-state route |1 + B/t2^2|^2.
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> theta_draw(0.0, 0.9 * kPi);
  std::uniform_real_distribution<double> k_draw(0.1, 3.0);
  for (int i = 0; i < 100; ++i) {
    const TwoLevelParams p = with_theta(theta_draw(rng));
    const double k = 100.0 + k_draw(rng) + p.gamma * std::sin(p.theta);
    const double x = 3.0 * k_draw(rng);
    const auto a = amplitudes(p, k);
    const Complex b = bound_state(p, IncidentPair::degenerate(k), x);
    const double via_bound = std::norm(1.0 + b / (a.t2 * a.t2));
    CHECK(g2(p, k, x, Direction::Transmitted) == doctest::Approx(via_bound).epsilon(1e-10));
  }

  // Large-separation limit.
  for (double frac : {0.0, 0.75}) {
    const TwoLevelParams p = with_theta(frac * kPi);
    const auto pole = effective_pole(p);
    const double x = 45.0 / pole.decay;
    CHECK(std::abs(g2(p, pole.frequency + 1.0, x, Direction::Transmitted) - 1.0) < 1e-6);
    CHECK(std::abs(g2(p, pole.frequency + 1.0, x, Direction::Reflected) - 1.0) < 1e-6);
  }
}

TEST_CASE("g2 divergences") {
  // Transmitted correlation diverges where single-photon transmission is zero.
  try {
    (void)g2(with_theta(0.5 * kPi), 101.0, 0.5, Direction::Transmitted);
    CHECK(false);
  } catch (const ScatteringError& e) {
    CHECK(e.code() == ErrorCode::DivergentNormalization);
  }
  // Reflected correlation diverges at the decoupled point.
  try {
    (void)g2(with_theta(kPi), 100.5, 0.5, Direction::Reflected);
    CHECK(false);
  } catch (const ScatteringError& e) {
    CHECK(e.code() == ErrorCode::DivergentNormalization);
  }
  CHECK_NOTHROW((void)g2(with_theta(kPi), 100.5, 0.5, Direction::Transmitted));
}
