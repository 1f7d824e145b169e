#pragma once

// Inhomogeneous coin arrangement of a two-state walk on Z: periodic coins on
// [x_plus, inf) and (-inf, x_minus), an explicit defect window in between.

#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "qws/matrix2.hpp"

namespace qws {

using Site = std::int64_t;

inline double normalize_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Signed distance between two angles, folded into [-pi, pi).
inline double angle_distance(double a, double b) {
  double d = std::fmod(a - b + kPi, kTwoPi);
  if (d < 0.0) d += kTwoPi;
  return d - kPi;
}

inline Site floor_mod(Site a, Site n) {
  const Site r = a % n;
  return r < 0 ? r + n : r;
}

/// One coin e^{i delta} [alpha beta; -conj(beta) conj(alpha)].
struct Coin {
  double delta = 0.0;
  Complex alpha{1.0};
  Complex beta{0.0};

  Coin() = default;
  Coin(double delta_, Complex alpha_, Complex beta_)
      : delta(normalize_angle(delta_)), alpha(alpha_), beta(beta_) {}

  Matrix2 matrix() const {
    const Complex phase = std::polar(1.0, delta);
    return phase * Matrix2{alpha, beta, -std::conj(beta), std::conj(alpha)};
  }

  friend bool operator==(const Coin&, const Coin&) = default;
};

inline Coin identity_coin() { return {}; }
inline Coin hadamard_coin() {
  const double s = 1.0 / std::sqrt(2.0);
  return {0.0, s, s};
}

enum class Side { plus, minus, defect };

inline const char* to_string(Side s) {
  switch (s) {
    case Side::plus: return "plus";
    case Side::minus: return "minus";
    case Side::defect: return "defect";
  }
  return "?";
}

/// Where a site sits in the arrangement. For the periodic sides `residue` and
/// `period_index` are r_x and m_x; for the defect window `residue` is x - x_minus.
struct SiteIndex {
  Side side;
  Site residue;
  Site period_index;

  friend bool operator==(const SiteIndex&, const SiteIndex&) = default;
};

struct ModelSpec {
  Site x_plus = 0;
  Site x_minus = 0;
  std::vector<Coin> period_plus;
  std::vector<Coin> period_minus;
  std::vector<Coin> defects;  // indexed by x - x_minus

  Site n_plus() const { return static_cast<Site>(period_plus.size()); }
  Site n_minus() const { return static_cast<Site>(period_minus.size()); }

  friend bool operator==(const ModelSpec&, const ModelSpec&) = default;
};

inline SiteIndex residue_and_period_index(const ModelSpec& spec, Site x) {
  if (x >= spec.x_plus) {
    const Site n = spec.n_plus();
    const Site r = floor_mod(x - spec.x_plus, n);
    return {Side::plus, r, (x - spec.x_plus - r) / n};
  }
  if (x >= spec.x_minus) return {Side::defect, x - spec.x_minus, 0};
  const Site n = spec.n_minus();
  const Site r = floor_mod(x - spec.x_minus, n);
  const Site shifted = x - spec.x_minus - r + n;
  return {Side::minus, r, (shifted < 0 ? -shifted : shifted) / n};
}

inline const Coin& coin_at(const ModelSpec& spec, Site x) {
  const SiteIndex idx = residue_and_period_index(spec, x);
  switch (idx.side) {
    case Side::plus: return spec.period_plus[static_cast<std::size_t>(idx.residue)];
    case Side::defect: return spec.defects[static_cast<std::size_t>(idx.residue)];
    case Side::minus: break;
  }
  return spec.period_minus[static_cast<std::size_t>(idx.residue)];
}

struct Violation {
  std::string where;
  std::string what;
};

inline constexpr double kUnitarityTol = 1e-12;

namespace detail {

inline void check_coin(const Coin& c, const std::string& where, double tol, std::vector<Violation>& out) {
  if (!std::isfinite(c.delta) || !std::isfinite(c.alpha.real()) || !std::isfinite(c.alpha.imag()) ||
      !std::isfinite(c.beta.real()) || !std::isfinite(c.beta.imag())) {
    out.push_back({where, "non-finite coin parameter"});
    return;
  }
  const double n = std::norm(c.alpha) + std::norm(c.beta);
  if (std::abs(n - 1.0) > tol) {
    std::ostringstream os;
    os.precision(15);
    os << "|alpha|^2 + |beta|^2 = " << n << " (must be 1)";
    out.push_back({where, os.str()});
  }
  if (std::abs(c.alpha) <= tol) out.push_back({where, "excluded reflecting case (alpha = 0)"});
  if (!(c.delta >= 0.0 && c.delta < kTwoPi)) out.push_back({where, "delta outside [0, 2pi)"});
}

}  // namespace detail

/// Every violated invariant of `spec`; empty means valid.
inline std::vector<Violation> validate(const ModelSpec& spec, double tol = kUnitarityTol) {
  std::vector<Violation> out;
  if (spec.x_plus < 0) out.push_back({"x_plus", "must be >= 0"});
  if (spec.x_minus > 0) out.push_back({"x_minus", "must be <= 0"});
  if (spec.period_plus.empty()) out.push_back({"period_plus", "period must be >= 1"});
  if (spec.period_minus.empty()) out.push_back({"period_minus", "period must be >= 1"});
  const Site width = spec.x_plus - spec.x_minus;
  if (width >= 0 && static_cast<Site>(spec.defects.size()) != width) {
    std::ostringstream os;
    os << "length " << spec.defects.size() << " != x_plus - x_minus = " << width;
    out.push_back({"defects", os.str()});
  }
  for (std::size_t k = 0; k < spec.period_plus.size(); ++k)
    detail::check_coin(spec.period_plus[k], "period_plus[" + std::to_string(k) + "]", tol, out);
  for (std::size_t k = 0; k < spec.period_minus.size(); ++k)
    detail::check_coin(spec.period_minus[k], "period_minus[" + std::to_string(k) + "]", tol, out);
  for (std::size_t k = 0; k < spec.defects.size(); ++k) {
    const Site x = spec.x_minus + static_cast<Site>(k);
    detail::check_coin(spec.defects[k], "defects[" + std::to_string(k) + "] (x = " + std::to_string(x) + ")",
                       tol, out);
  }
  return out;
}

inline bool is_valid(const ModelSpec& spec, double tol = kUnitarityTol) { return validate(spec, tol).empty(); }

/// Same periodic coin list everywhere, no defects.
inline ModelSpec homogeneous_model(std::vector<Coin> coins) {
  ModelSpec s;
  s.period_plus = coins;
  s.period_minus = std::move(coins);
  return s;
}

/// Finitely supported state; sites outside [lo, hi] are zero.
struct StateVector {
  Site lo = 0;
  std::vector<Vec2> amplitudes;

  StateVector() = default;
  StateVector(Site lo_, std::vector<Vec2> amps) : lo(lo_), amplitudes(std::move(amps)) {}
  static StateVector zeros(Site lo, Site hi) {
    return {lo, std::vector<Vec2>(static_cast<std::size_t>(hi - lo + 1), Vec2{0.0, 0.0})};
  }
  static StateVector delta(Site x, Vec2 v) { return {x, {v}}; }

  Site hi() const { return lo + static_cast<Site>(amplitudes.size()) - 1; }
  bool empty() const { return amplitudes.empty(); }
  bool contains(Site x) const { return x >= lo && x <= hi(); }

  Vec2 at(Site x) const { return contains(x) ? amplitudes[static_cast<std::size_t>(x - lo)] : Vec2{0.0, 0.0}; }
  Vec2& operator[](Site x) { return amplitudes[static_cast<std::size_t>(x - lo)]; }

  double norm_sq() const {
    double s = 0.0;
    for (const auto& v : amplitudes) s += qws::norm_sq(v);
    return s;
  }
};

}  // namespace qws
