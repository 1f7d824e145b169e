#pragma once

// Analytic spectra of the period-2 special models. These are oracles for
// scan_spectrum and share nothing with it beyond the model types.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qws/model.hpp"
#include "qws/spectrum.hpp"

namespace qws {

class PremiseViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DegenerateBetaDifference : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ClosedFormSpectrum {
  std::vector<double> eigen_lambdas;  // sorted, in [0, 2 pi)
  std::string case_label;
  bool premises_ok = true;
  std::string detail;
};

/// Equalities on the premise manifold are checked to this tolerance.
inline constexpr double kPremiseTol = 1e-10;

namespace detail {

inline ClosedFormSpectrum finish(const std::vector<Complex>& points, std::string label) {
  ClosedFormSpectrum out;
  out.case_label = std::move(label);
  for (const Complex& z : points) out.eigen_lambdas.push_back(normalize_angle(std::arg(z)));
  std::sort(out.eigen_lambdas.begin(), out.eigen_lambdas.end());
  auto last = std::unique(out.eigen_lambdas.begin(), out.eigen_lambdas.end(),
                          [](double a, double b) { return std::abs(angle_distance(a, b)) < 1e-12; });
  out.eigen_lambdas.erase(last, out.eigen_lambdas.end());
  if (out.eigen_lambdas.size() > 1 &&
      std::abs(angle_distance(out.eigen_lambdas.front(), out.eigen_lambdas.back())) < 1e-12)
    out.eigen_lambdas.pop_back();
  return out;
}

inline ClosedFormSpectrum empty_spectrum(std::string label) {
  ClosedFormSpectrum out;
  out.case_label = std::move(label);
  return out;
}

inline bool close(Complex a, Complex b) { return std::abs(a - b) <= kPremiseTol; }
inline bool close_angle(double a, double b) { return std::abs(angle_distance(a, b)) <= kPremiseTol; }
inline bool close_angle_mod_pi(double a, double b) {
  return close_angle(a, b) || close_angle(a, b + kPi);
}

inline bool same_coin(const Coin& a, const Coin& b) {
  return close_angle(a.delta, b.delta) && close(a.alpha, b.alpha) && close(a.beta, b.beta);
}

inline bool same_coins(const std::vector<Coin>& a, const std::vector<Coin>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same_coin(a[i], b[i])) return false;
  return true;
}

inline void require(bool cond, const std::string& what) {
  if (!cond) throw PremiseViolated(what);
}

/// Shared by both two-phase forms: Re(b_m conj b_p) < |b_m|^2 and < |b_p|^2.
inline bool two_phase_existence(Complex beta_m, Complex beta_p) {
  const double re = (beta_m * std::conj(beta_p)).real();
  return re < std::norm(beta_m) - kPremiseTol && re < std::norm(beta_p) - kPremiseTol;
}

inline void require_two_phase_p2(const ModelSpec& spec) {
  require(spec.x_plus == 0 && spec.x_minus == 0, "two-phase model needs x_plus = x_minus = 0");
  require(spec.n_plus() == 2 && spec.n_minus() == 2, "two-phase closed forms need period 2 on both sides");
  const auto& p = spec.period_plus;
  const auto& m = spec.period_minus;
  require(close_angle(p[0].delta, m[0].delta), "Delta_{p,0} != Delta_{m,0}");
  require(close_angle(p[1].delta, m[1].delta), "Delta_{p,1} != Delta_{m,1}");
}

}  // namespace detail

/// Homogeneous periodic arrangement: never any eigenvalue.
inline ClosedFormSpectrum homogeneous_spectrum(std::span<const Coin> coins) {
  if (coins.empty()) throw PremiseViolated("homogeneous model needs at least one coin");
  return detail::empty_spectrum("homogeneous_periodic");
}

inline ClosedFormSpectrum homogeneous_spectrum(const ModelSpec& spec) {
  detail::require(spec.x_plus == 0 && spec.x_minus == 0, "homogeneous model needs x_plus = x_minus = 0");
  detail::require(detail::same_coins(spec.period_plus, spec.period_minus),
                  "homogeneous model needs identical coin lists on both sides");
  return homogeneous_spectrum(spec.period_plus);
}

/// One-defect period-2 model with beta_0 = 0, |beta_1| = |beta_2| = |beta| and the
/// matching Delta_0. Four eigenvalues for Im(beta_1 conj beta_2) != 0, two otherwise.
inline ClosedFormSpectrum one_defect_p2_spectrum(double beta_abs, double arg_b1, double arg_b2, double delta1,
                                                 double delta2) {
  if (!(beta_abs > kPremiseTol) || !(beta_abs < 1.0 - kPremiseTol))
    throw PremiseViolated("one-defect closed form needs 0 < |beta| < 1");
  const Complex base = std::polar(1.0, 0.5 * (delta1 + delta2));
  const Complex i{0.0, 1.0};
  const double im = beta_abs * beta_abs * std::sin(arg_b1 - arg_b2);
  const double re = beta_abs * beta_abs * std::cos(arg_b1 - arg_b2);
  if (std::abs(im) <= kPremiseTol) {
    if (re > 0.0) return detail::finish({base, -base}, "arg_beta1_eq_arg_beta2");
    return detail::finish({i * base, -i * base}, "arg_beta1_eq_arg_beta2_plus_pi");
  }
  const double root = std::sqrt(std::max(0.0, beta_abs * beta_abs - im * im));
  const double b_plus = (beta_abs + root) / (2.0 * beta_abs);
  const double b_minus = (beta_abs - root) / (2.0 * beta_abs);
  const Complex e_plus = base * Complex(std::sqrt(b_plus), std::sqrt(b_minus));
  const Complex e_minus = base * Complex(-std::sqrt(b_plus), std::sqrt(b_minus));
  if (im > 0.0) return detail::finish({e_plus, -e_plus, i * e_minus, -i * e_minus}, "im_positive");
  return detail::finish({e_minus, -e_minus, i * e_plus, -i * e_plus}, "im_negative");
}

inline ClosedFormSpectrum one_defect_p2_spectrum(const ModelSpec& spec) {
  using detail::require;
  require(spec.x_plus == 1 && spec.x_minus == 0, "one-defect model needs x_plus = 1, x_minus = 0");
  require(spec.n_plus() == 2 && spec.n_minus() == 2, "one-defect closed form needs period 2");
  require(detail::same_coins(spec.period_plus, spec.period_minus),
          "one-defect model needs identical coin lists on both sides");
  const Coin& c0 = spec.defects.at(0);
  const Coin& c1 = spec.period_plus[0];
  const Coin& c2 = spec.period_plus[1];
  require(std::abs(c0.beta) <= kPremiseTol, "beta_0 != 0");
  require(std::abs(c1.beta) > kPremiseTol, "|beta| = 0");
  require(std::abs(std::abs(c1.beta) - std::abs(c2.beta)) <= kPremiseTol, "|beta_1| != |beta_2|");
  const double a1 = std::arg(c1.beta);
  const double a2 = std::arg(c2.beta);
  // Delta_0 is only meaningful mod pi here: with beta_0 = 0, flipping the sign of C_0 leaves T_0 up to sign.
  require(detail::close_angle_mod_pi(c0.delta, 0.5 * (c1.delta + c2.delta + a1 - a2 + kPi)),
          "Delta_0 != (Delta_1 + Delta_2 + arg beta_1 - arg beta_2 + pi) / 2");
  return one_defect_p2_spectrum(std::abs(c1.beta), a1, a2, c1.delta, c2.delta);
}

/// Two-phase period-2 model, beta on the even sublattice only (beta_{m,1} = beta_{p,1} = 0).
inline ClosedFormSpectrum two_phase_p2_alternating_spectrum(Complex beta_m, Complex beta_p, double delta0,
                                                            double delta1) {
  if (!detail::two_phase_existence(beta_m, beta_p)) return detail::empty_spectrum("existence_fails");
  const double d = std::abs(beta_m - beta_p);
  if (d < 1e-12) throw DegenerateBetaDifference("|beta_m - beta_p| = 0");
  const double im = (beta_m * std::conj(beta_p)).imag();
  const double root = std::sqrt(std::max(0.0, d * d - im * im));
  const double b_plus = (d + root) / (2.0 * d);
  const double b_minus = (d - root) / (2.0 * d);
  const Complex base = std::polar(1.0, 0.5 * (delta0 + delta1));
  const Complex i{0.0, 1.0};
  auto four = [&](Complex e, std::string label) { return detail::finish({e, -e, i * e, -i * e}, std::move(label)); };
  if (std::abs(im) <= kPremiseTol) {
    // Not covered by the two stated branches; both coincide in this limit.
    ClosedFormSpectrum out = four(base, "degenerate_im_zero");
    out.detail = "Im(beta_m conj beta_p) = 0 lies between the stated branches";
    return out;
  }
  if (im > 0.0) return four(base * Complex(std::sqrt(b_plus), std::sqrt(b_minus)), "im_positive");
  return four(base * Complex(std::sqrt(b_plus), -std::sqrt(b_minus)), "im_negative");
}

inline ClosedFormSpectrum two_phase_p2_alternating_spectrum(const ModelSpec& spec) {
  detail::require_two_phase_p2(spec);
  detail::require(std::abs(spec.period_minus[1].beta) <= kPremiseTol, "beta_{m,1} != 0");
  detail::require(std::abs(spec.period_plus[1].beta) <= kPremiseTol, "beta_{p,1} != 0");
  return two_phase_p2_alternating_spectrum(spec.period_minus[0].beta, spec.period_plus[0].beta,
                                           spec.period_plus[0].delta, spec.period_plus[1].delta);
}

/// Two-phase period-2 model with one beta per side on both sublattices.
inline ClosedFormSpectrum two_phase_p2_uniform_spectrum(Complex beta_m, Complex beta_p, double delta0,
                                                        double delta1) {
  if (!detail::two_phase_existence(beta_m, beta_p)) return detail::empty_spectrum("existence_fails");
  const double d = std::abs(beta_m - beta_p);
  if (d < 1e-12) throw DegenerateBetaDifference("|beta_m - beta_p| = 0");
  const double im = (beta_m * std::conj(beta_p)).imag();
  const Complex e = std::polar(1.0, 0.5 * (delta0 + delta1)) * Complex(std::sqrt(std::max(0.0, d * d - im * im)), im) / d;
  return detail::finish({e, -e}, "uniform");
}

inline ClosedFormSpectrum two_phase_p2_uniform_spectrum(const ModelSpec& spec) {
  detail::require_two_phase_p2(spec);
  detail::require(detail::close(spec.period_minus[0].beta, spec.period_minus[1].beta), "beta_{m,0} != beta_{m,1}");
  detail::require(detail::close(spec.period_plus[0].beta, spec.period_plus[1].beta), "beta_{p,0} != beta_{p,1}");
  return two_phase_p2_uniform_spectrum(spec.period_minus[0].beta, spec.period_plus[0].beta,
                                       spec.period_plus[0].delta, spec.period_plus[1].delta);
}

enum class ClosedForm { homogeneous, one_defect_p2, two_phase_p2_alternating, two_phase_p2_uniform };

inline const char* to_string(ClosedForm f) {
  switch (f) {
    case ClosedForm::homogeneous: return "homogeneous periodic";
    case ClosedForm::one_defect_p2: return "one-defect period 2";
    case ClosedForm::two_phase_p2_alternating: return "two-phase period 2 (alternating beta)";
    case ClosedForm::two_phase_p2_uniform: return "two-phase period 2 (uniform beta)";
  }
  return "?";
}

struct ClosedFormMatch {
  ClosedForm form;
  ClosedFormSpectrum spectrum;
};

/// First closed form whose premises `spec` satisfies.
inline std::optional<ClosedFormMatch> match_closed_form(const ModelSpec& spec) {
  const std::pair<ClosedForm, ClosedFormSpectrum (*)(const ModelSpec&)> forms[] = {
      {ClosedForm::homogeneous, &homogeneous_spectrum},
      {ClosedForm::one_defect_p2, &one_defect_p2_spectrum},
      {ClosedForm::two_phase_p2_alternating, &two_phase_p2_alternating_spectrum},
      {ClosedForm::two_phase_p2_uniform, &two_phase_p2_uniform_spectrum},
  };
  for (const auto& [form, fn] : forms) {
    try {
      return ClosedFormMatch{form, fn(spec)};
    } catch (const PremiseViolated&) {
    }
  }
  return std::nullopt;
}

struct SpectrumComparison {
  std::size_t matched = 0;
  std::vector<double> missing;  // closed-form angles the scan did not find
  std::vector<double> extra;    // scanned angles with no closed-form partner
  double max_error = 0.0;

  bool agree() const { return missing.empty() && extra.empty(); }
};

inline SpectrumComparison compare_spectra(const std::vector<double>& expected, const std::vector<double>& found,
                                          double tol) {
  SpectrumComparison c;
  std::vector<bool> used(found.size(), false);
  for (double e : expected) {
    std::size_t best = found.size();
    double best_err = tol;
    for (std::size_t j = 0; j < found.size(); ++j) {
      const double err = std::abs(angle_distance(e, found[j]));
      if (!used[j] && err <= best_err) {
        best = j;
        best_err = err;
      }
    }
    if (best == found.size()) {
      c.missing.push_back(e);
    } else {
      used[best] = true;
      ++c.matched;
      c.max_error = std::max(c.max_error, best_err);
    }
  }
  for (std::size_t j = 0; j < found.size(); ++j)
    if (!used[j]) c.extra.push_back(found[j]);
  return c;
}

}  // namespace qws
