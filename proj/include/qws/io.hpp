#pragma once

// JSON model files, report serialization and CSV emission.
//
// Model file:
//   { "x_plus": 1, "x_minus": 0,
//     "period_plus":  [coin, ...], "period_minus": [coin, ...], "defects": [coin, ...],
//     "initial_state": [[x, [Lre, Lim], [Rre, Rim]], ...] }      (optional)
// coin = { "delta": radians, "alpha": [re, im], "beta": [re, im] }

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "qws/closed_forms.hpp"
#include "qws/dynamics.hpp"
#include "qws/model.hpp"
#include "qws/spectrum.hpp"

namespace qws::io {

using nlohmann::json;

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// printf-style %.Ng; fixed formatting keeps outputs byte-stable.
inline std::string fmt(double v, int significant = 15) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", significant, v);
  return buf;
}

inline std::string fmt_angle(double v) { return fmt(v, 12); }

namespace detail {

inline Complex parse_complex(const json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number())
    return {j[0].get<double>(), j[1].get<double>()};
  throw ParseError(where + ": expected a number or [re, im]");
}

inline Coin parse_coin(const json& j, const std::string& where) {
  if (!j.is_object()) throw ParseError(where + ": coin must be an object");
  for (const char* key : {"delta", "alpha", "beta"})
    if (!j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
  if (!j["delta"].is_number()) throw ParseError(where + ".delta: expected a number");
  return Coin(j["delta"].get<double>(), parse_complex(j["alpha"], where + ".alpha"),
              parse_complex(j["beta"], where + ".beta"));
}

inline std::vector<Coin> parse_coins(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field '" + key + "'");
  const json& arr = j[key];
  if (!arr.is_array()) throw ParseError(key + ": expected an array of coins");
  std::vector<Coin> out;
  for (std::size_t i = 0; i < arr.size(); ++i) out.push_back(parse_coin(arr[i], key + "[" + std::to_string(i) + "]"));
  return out;
}

inline json complex_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json coin_json(const Coin& c) {
  return {{"delta", c.delta}, {"alpha", complex_json(c.alpha)}, {"beta", complex_json(c.beta)}};
}

}  // namespace detail

inline ModelSpec parse_model(const json& j) {
  if (!j.is_object()) throw ParseError("model: expected a JSON object");
  ModelSpec m;
  for (const char* key : {"x_plus", "x_minus"}) {
    if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
    if (!j[key].is_number_integer()) throw ParseError(std::string(key) + ": expected an integer");
  }
  m.x_plus = j["x_plus"].get<Site>();
  m.x_minus = j["x_minus"].get<Site>();
  m.period_plus = detail::parse_coins(j, "period_plus");
  m.period_minus = detail::parse_coins(j, "period_minus");
  m.defects = j.contains("defects") ? detail::parse_coins(j, "defects") : std::vector<Coin>{};
  return m;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

inline ModelSpec load_model(const std::string& path) { return parse_model(read_json_file(path)); }

inline json to_json(const ModelSpec& m) {
  json j{{"x_plus", m.x_plus}, {"x_minus", m.x_minus}};
  for (const auto& [key, coins] : {std::pair{"period_plus", &m.period_plus}, std::pair{"period_minus", &m.period_minus},
                                   std::pair{"defects", &m.defects}}) {
    json arr = json::array();
    for (const Coin& c : *coins) arr.push_back(detail::coin_json(c));
    j[key] = arr;
  }
  return j;
}

struct InitialState {
  StateVector state;
  bool renormalized = false;
  double input_norm_sq = 1.0;
};

/// [[x, L, R], ...] with L, R complex; normalized when off by more than `tol`.
inline InitialState parse_initial_state(const json& j, double tol = kUnitarityTol) {
  if (!j.is_array() || j.empty()) throw ParseError("initial_state: expected a non-empty array of [x, L, R]");
  std::vector<std::pair<Site, Vec2>> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string where = "initial_state[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer())
      throw ParseError(where + ": expected [x, L, R] with integer x");
    entries.push_back({e[0].get<Site>(), Vec2{detail::parse_complex(e[1], where + ".L"),
                                              detail::parse_complex(e[2], where + ".R")}});
  }
  Site lo = entries.front().first;
  Site hi = lo;
  for (const auto& [x, v] : entries) {
    lo = std::min(lo, x);
    hi = std::max(hi, x);
  }
  InitialState out;
  out.state = StateVector::zeros(lo, hi);
  for (const auto& [x, v] : entries) out.state[x] = out.state[x] + v;
  out.input_norm_sq = out.state.norm_sq();
  if (!(out.input_norm_sq > 0.0)) throw ParseError("initial_state: zero state");
  if (std::abs(std::sqrt(out.input_norm_sq) - 1.0) > tol) {
    const double s = 1.0 / std::sqrt(out.input_norm_sq);
    for (auto& a : out.state.amplitudes) a = scaled(a, s);
    out.renormalized = true;
  }
  return out;
}

inline json to_json(const SpectrumReport& r) {
  json eig = json::array();
  for (const EigenPoint& p : r.eigenpoints)
    eig.push_back({{"lambda", p.lambda},
                   {"residual", p.residual},
                   {"zeta_plus_lt", detail::complex_json(p.zeta_plus_lt)},
                   {"zeta_minus_gt", detail::complex_json(p.zeta_minus_gt)},
                   {"norm_sq", p.norm_sq}});
  json iv = json::array();
  for (const Interval& i : r.condition_one_intervals) iv.push_back(json::array({i.lo, i.hi}));
  return {{"grid_size", r.grid_size}, {"tolerance", r.tolerance}, {"eigenvalues", eig},
          {"condition_one_intervals", iv}};
}

inline json to_json(const ClosedFormSpectrum& c) {
  json eig = json::array();
  for (double l : c.eigen_lambdas) eig.push_back({{"lambda", l}});
  return {{"case_label", c.case_label}, {"premises_ok", c.premises_ok}, {"detail", c.detail}, {"eigenvalues", eig}};
}

inline void write_spectrum_csv(std::ostream& os, const SpectrumReport& r) {
  os << "lambda,residual,abs_zeta_plus_lt,abs_zeta_minus_gt\n";
  for (const EigenPoint& p : r.eigenpoints)
    os << fmt_angle(p.lambda) << ',' << fmt(p.residual) << ',' << fmt(std::abs(p.zeta_plus_lt)) << ','
       << fmt(std::abs(p.zeta_minus_gt)) << '\n';
}

/// One row per site of [lo, hi]: x,value,kind,t_or_T.
inline void write_distribution_csv(std::ostream& os, const DistributionSeries& d, Site lo, Site hi,
                                   bool header = true) {
  if (header) os << "x,value,kind,t_or_T\n";
  for (Site x = lo; x <= hi; ++x) {
    os << x << ',' << fmt(d.at(x)) << ',' << to_string(d.kind) << ',';
    if (d.t_or_T) os << *d.t_or_T;
    os << '\n';
  }
}

/// Side-by-side plot data: x, mu_t, nu_inf.
inline void write_plot_csv(std::ostream& os, const DistributionSeries& mu, const DistributionSeries& nu, Site lo,
                           Site hi) {
  os << "x,mu_t,nu_inf\n";
  for (Site x = lo; x <= hi; ++x) os << x << ',' << fmt(mu.at(x)) << ',' << fmt(nu.at(x)) << '\n';
}

}  // namespace qws::io
