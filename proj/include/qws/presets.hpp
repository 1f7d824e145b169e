#pragma once

// The three period-2 example models (one-defect, alternating two-phase,
// uniform two-phase) and the homogeneous Hadamard walk.

#include <cmath>

#include "qws/model.hpp"

namespace qws::presets {

/// One-defect period-2 model: C_1, C_2 alternate on both sides, C_0 at the origin.
/// Delta_0 = 3 pi / 4 is the value forced by the one-defect closed-form premise.
inline ModelSpec fig1() {
  const double s = 1.0 / std::sqrt(2.0);
  const Coin c0(3.0 * kPi / 4.0, 1.0, 0.0);
  const Coin c1(kPi / 2.0, s, Complex(0.0, s));
  const Coin c2(-kPi / 2.0, s, s);
  ModelSpec m;
  m.x_plus = 1;
  m.x_minus = 0;
  m.period_plus = {c1, c2};
  m.period_minus = {c1, c2};
  m.defects = {c0};
  return m;
}

/// Two-phase model with beta only on even sites.
inline ModelSpec fig2() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex beta_m = std::polar(s, kPi / 4.0);
  ModelSpec m;
  m.period_minus = {Coin(kPi / 2.0, s, beta_m), Coin(-kPi / 2.0, 1.0, 0.0)};
  m.period_plus = {Coin(kPi / 2.0, s, s), Coin(-kPi / 2.0, 1.0, 0.0)};
  return m;
}

/// Two-phase model with the same beta on both sublattices; alpha = sqrt(1 - |beta|^2).
inline ModelSpec fig3() {
  const double s = 1.0 / std::sqrt(2.0);
  const Complex beta_m = std::polar(s, kPi / 4.0);
  ModelSpec m;
  m.period_minus = {Coin(kPi / 2.0, s, beta_m), Coin(-kPi / 2.0, s, beta_m)};
  m.period_plus = {Coin(kPi / 2.0, s, s), Coin(-kPi / 2.0, s, s)};
  return m;
}

inline ModelSpec hadamard() { return homogeneous_model({hadamard_coin()}); }

/// Psi_0(0) = [1/sqrt2, 1/sqrt2], zero elsewhere.
inline StateVector origin_state() {
  const double s = 1.0 / std::sqrt(2.0);
  return StateVector::delta(0, Vec2{s, s});
}

}  // namespace qws::presets
