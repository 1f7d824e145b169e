#pragma once

// Exact light-cone evolution under U = S C:
//   (U psi)(x) = [ (C_{x+1} psi(x+1))_L ; (C_{x-1} psi(x-1))_R ].

#include <stdexcept>
#include <vector>

#include "qws/model.hpp"

namespace qws {

/// Precomputed coin matrices for repeated lookups.
class CoinField {
 public:
  explicit CoinField(const ModelSpec& spec) : spec_(&spec) {
    for (const Coin& c : spec.period_plus) plus_.push_back(c.matrix());
    for (const Coin& c : spec.period_minus) minus_.push_back(c.matrix());
    for (const Coin& c : spec.defects) defects_.push_back(c.matrix());
  }

  const Matrix2& at(Site x) const {
    const SiteIndex idx = residue_and_period_index(*spec_, x);
    const auto r = static_cast<std::size_t>(idx.residue);
    switch (idx.side) {
      case Side::plus: return plus_[r];
      case Side::defect: return defects_[r];
      case Side::minus: break;
    }
    return minus_[r];
  }

 private:
  const ModelSpec* spec_;
  std::vector<Matrix2> plus_, minus_, defects_;
};

inline StateVector step(const CoinField& coins, const StateVector& psi) {
  if (psi.empty()) return psi;
  StateVector out = StateVector::zeros(psi.lo - 1, psi.hi() + 1);
  for (std::size_t i = 0; i < psi.amplitudes.size(); ++i) {
    const Site y = psi.lo + static_cast<Site>(i);
    const Vec2 w = coins.at(y) * psi.amplitudes[i];
    out.amplitudes[i][0] += w[0];      // L component moves to y - 1
    out.amplitudes[i + 2][1] += w[1];  // R component moves to y + 1
  }
  return out;
}

inline StateVector step(const ModelSpec& spec, const StateVector& psi) { return step(CoinField(spec), psi); }

/// U^t psi0. The window grows by one site per side per step, so nothing is truncated.
inline StateVector evolve(const ModelSpec& spec, const StateVector& psi0, long long t) {
  if (t < 0) throw std::invalid_argument("evolve: t must be >= 0");
  const CoinField coins(spec);
  StateVector psi = psi0;
  for (long long s = 0; s < t; ++s) psi = step(coins, psi);
  return psi;
}

}  // namespace qws
