#pragma once

// Site distributions: instantaneous mu_t, the running Cesaro average, and the
// time-averaged limit built from the point spectrum,
//   nu_inf(x) = sum_lambda |<Psi^lambda, Psi_0>|^2 ||Psi^lambda(x)||^2.

#include <algorithm>
#include <optional>
#include <stdexcept>
#include <vector>

#include "qws/evolution.hpp"
#include "qws/model.hpp"
#include "qws/spectrum.hpp"

namespace qws {

enum class DistributionKind { instant, running_average, limit };

inline const char* to_string(DistributionKind k) {
  switch (k) {
    case DistributionKind::instant: return "instant";
    case DistributionKind::running_average: return "running_average";
    case DistributionKind::limit: return "limit";
  }
  return "?";
}

struct DistributionSeries {
  Site lo = 0;
  std::vector<double> values;
  DistributionKind kind = DistributionKind::instant;
  std::optional<long long> t_or_T;  // absent for the limit

  Site hi() const { return lo + static_cast<Site>(values.size()) - 1; }
  double at(Site x) const {
    return x >= lo && x <= hi() ? values[static_cast<std::size_t>(x - lo)] : 0.0;
  }
  double sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
};

inline DistributionSeries distribution(const StateVector& psi, std::optional<long long> t = std::nullopt) {
  DistributionSeries d;
  d.lo = psi.lo;
  d.kind = DistributionKind::instant;
  d.t_or_T = t;
  d.values.reserve(psi.amplitudes.size());
  for (const Vec2& v : psi.amplitudes) d.values.push_back(norm_sq(v));
  return d;
}

/// The same distribution on [lo, hi] (zero outside the state's support).
inline DistributionSeries restrict_to(const DistributionSeries& d, Site lo, Site hi) {
  DistributionSeries out = d;
  out.lo = lo;
  out.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  for (Site x = lo; x <= hi; ++x) out.values[static_cast<std::size_t>(x - lo)] = d.at(x);
  return out;
}

/// (1/T) sum_{t<T} mu_t on [lo, hi].
inline DistributionSeries time_average(const ModelSpec& spec, const StateVector& psi0, long long T, Site lo, Site hi) {
  if (T < 1) throw std::invalid_argument("time_average: T must be >= 1");
  if (hi < lo) throw std::invalid_argument("time_average: empty window");
  DistributionSeries d;
  d.lo = lo;
  d.kind = DistributionKind::running_average;
  d.t_or_T = T;
  d.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  const CoinField coins(spec);
  StateVector psi = psi0;
  for (long long t = 0; t < T; ++t) {
    const Site a = std::max(lo, psi.lo);
    const Site b = std::min(hi, psi.hi());
    for (Site x = a; x <= b; ++x) d.values[static_cast<std::size_t>(x - lo)] += norm_sq(psi.at(x));
    if (t + 1 < T) psi = step(coins, psi);
  }
  for (double& v : d.values) v /= static_cast<double>(T);
  return d;
}

/// <a, b> = sum_x conj(a(x)) . b(x)
inline Complex inner_product(const StateVector& a, const StateVector& b) {
  Complex s{0.0};
  const Site lo = std::max(a.lo, b.lo);
  const Site hi = std::min(a.hi(), b.hi());
  for (Site x = lo; x <= hi; ++x) s += dot(a.at(x), b.at(x));
  return s;
}

/// |<Psi^lambda, Psi_0>|^2 for each eigenpoint, with unit-normalized eigenvectors.
inline std::vector<double> spectral_weights(const ModelSpec& spec, const StateVector& psi0,
                                            const SpectrumReport& report) {
  std::vector<double> w;
  for (const EigenPoint& pt : report.eigenpoints) {
    if (psi0.empty()) {
      w.push_back(0.0);
      continue;
    }
    const StateVector ev = normalized_eigenvector(spec, pt, psi0.lo, psi0.hi());
    w.push_back(std::norm(inner_product(ev, psi0)));
  }
  return w;
}

inline DistributionSeries limit_distribution(const ModelSpec& spec, const StateVector& psi0,
                                             const SpectrumReport& report, Site lo, Site hi) {
  if (hi < lo) throw std::invalid_argument("limit_distribution: empty window");
  DistributionSeries d;
  d.lo = lo;
  d.kind = DistributionKind::limit;
  d.values.assign(static_cast<std::size_t>(hi - lo + 1), 0.0);
  const std::vector<double> weights = spectral_weights(spec, psi0, report);
  for (std::size_t k = 0; k < report.eigenpoints.size(); ++k) {
    if (weights[k] == 0.0) continue;
    const StateVector ev = normalized_eigenvector(spec, report.eigenpoints[k], lo, hi);
    for (Site x = lo; x <= hi; ++x) d.values[static_cast<std::size_t>(x - lo)] += weights[k] * norm_sq(ev.at(x));
  }
  return d;
}

}  // namespace qws
