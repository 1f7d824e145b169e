#pragma once

// Point spectrum of U via transfer matrices.
//
// e^{i lambda} is an eigenvalue iff (1) both period blocks have a strictly
// positive discriminant, so each has one growing and one decaying eigenvalue,
// and (2) the initial value phi = Psi~(0) can be chosen so that it lands on the
// decaying direction of the plus block (after T_+) and on the growing direction
// of the minus block (after T_-), i.e. the tail on (-inf, x_-) decays leftward.
// Condition (2) is tested as the angle between the two candidate lines for phi.

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "qws/evolution.hpp"
#include "qws/model.hpp"
#include "qws/transfer.hpp"

namespace qws {

class FullRank : public std::runtime_error {
 public:
  explicit FullRank(double rel_det)
      : std::runtime_error("kernel_direction: matrix is not rank deficient (|det|/|m|^2 = " +
                           std::to_string(rel_det) + ")") {}
};

class ConditionOneViolated : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivergentTail : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct ConditionOne {
  bool plus_ok = false;
  bool minus_ok = false;
  double disc_plus = 0.0;
  double disc_minus = 0.0;

  bool both() const { return plus_ok && minus_ok; }
};

inline ConditionOne condition_one(const ModelSpec& spec, double lambda) {
  const double a_plus = trace_invariant_A(spec.period_plus, lambda);
  const double a_minus = trace_invariant_A(spec.period_minus, lambda);
  ConditionOne c;
  c.disc_plus = a_plus * a_plus - alpha_abs_sq_product(spec.period_plus);
  c.disc_minus = a_minus * a_minus - alpha_abs_sq_product(spec.period_minus);
  // |disc| below the coincident-root threshold means |zeta^>| = |zeta^<| = 1.
  c.plus_ok = c.disc_plus > kCoincidentRootTol;
  c.minus_ok = c.disc_minus > kCoincidentRootTol;
  return c;
}

struct KernelDirection {
  Vec2 v;
  bool degenerate = false;  // m was numerically zero; v is the fallback [1, 0]
};

inline constexpr double kRankTol = 1e-8;

/// Unit vector spanning ker(m) for a rank-one m, taken from the larger adjugate
/// column with its first component made real positive.
inline KernelDirection kernel_direction(const Matrix2& m, double rank_tol = kRankTol) {
  const double fro = m.frobenius_norm();
  if (!(fro > std::numeric_limits<double>::min())) return {Vec2{1.0, 0.0}, true};
  const double rel_det = std::abs(m.det()) / (fro * fro);
  if (rel_det > rank_tol) throw FullRank(rel_det);
  const Matrix2 adj = m.adjugate();
  const Vec2 c0 = adj.column(0);
  const Vec2 c1 = adj.column(1);
  return {normalize_phase(norm_sq(c0) >= norm_sq(c1) ? c0 : c1), false};
}

/// Everything condition (2) needs at one lambda.
struct MatchingData {
  ZetaPair plus;
  ZetaPair minus;
  BoundaryProducts boundary;
  Matrix2 block_plus;
  Matrix2 block_minus;
  Vec2 phi_plus;   // spans ker((B_+ - zeta_+^<) T_+)
  Vec2 phi_minus;  // spans ker((B_- - zeta_-^>) T_-)
  double residual = 1.0;
  bool degenerate = false;
};

inline MatchingData matching_data(const ModelSpec& spec, double lambda) {
  if (!condition_one(spec, lambda).both())
    throw ConditionOneViolated("matching_residual: condition one fails at lambda = " + std::to_string(lambda));
  MatchingData d;
  d.plus = zeta_pair(spec.period_plus, lambda);
  d.minus = zeta_pair(spec.period_minus, lambda);
  d.boundary = boundary_products(spec, lambda);
  d.block_plus = period_block(spec.period_plus, lambda);
  d.block_minus = period_block(spec.period_minus, lambda);
  const KernelDirection vp = kernel_direction(d.block_plus - d.plus.zeta_lt);
  const KernelDirection vm = kernel_direction(d.block_minus - d.minus.zeta_gt);
  d.degenerate = vp.degenerate || vm.degenerate;
  d.phi_plus = normalize_phase(d.boundary.t_plus.inverse() * vp.v);
  d.phi_minus = normalize_phase(d.boundary.t_minus.inverse() * vm.v);
  d.residual = line_separation(d.phi_plus, d.phi_minus);
  return d;
}

/// |det[phi_+ phi_-]| / (|phi_+| |phi_-|) in [0, 1]; zero exactly at eigenvalues.
inline double matching_residual(const ModelSpec& spec, double lambda) { return matching_data(spec, lambda).residual; }

struct EigenPoint {
  double lambda = 0.0;
  Vec2 phi{1.0, 0.0};
  Complex zeta_plus_lt;
  Complex zeta_minus_gt;
  double residual = 0.0;
  double norm_sq = 1.0;
};

/// Arc [lo, hi] of the circle; hi may exceed 2 pi for arcs through 0.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  double length() const { return hi - lo; }
  bool contains(double lambda) const {
    const double off = normalize_angle(lambda - lo);
    return off <= length() || length() >= kTwoPi;
  }
};

struct SpectrumReport {
  std::vector<EigenPoint> eigenpoints;
  int grid_size = 0;
  double tolerance = 0.0;
  std::vector<Interval> condition_one_intervals;

  bool localizes() const { return !eigenpoints.empty(); }
  std::vector<double> lambdas() const {
    std::vector<double> out;
    for (const auto& p : eigenpoints) out.push_back(p.lambda);
    return out;
  }
};

struct ScanOptions {
  int grid = 16384;
  double tol = 1e-10;
  double boundary_margin = 1e-9;
  double refine_width = 1e-13;
  double dedup = 1e-8;
};

// ---------------------------------------------------------------------------
// Eigenvector construction

/// Psi~ = J Psi for a solved eigenpoint, evaluated with zeta powers in the tails.
class TildePsi {
 public:
  TildePsi(const ModelSpec& spec, const EigenPoint& pt) : spec_(&spec), pt_(pt) {
    const double lambda = pt.lambda;
    core_.assign(static_cast<std::size_t>(spec.x_plus - spec.x_minus + 1), Vec2{0.0, 0.0});
    core(0) = pt.phi;
    for (Site x = 0; x < spec.x_plus; ++x) core(x + 1) = transfer_matrix(coin_at(spec, x), lambda) * core(x);
    for (Site x = -1; x >= spec.x_minus; --x)
      core(x) = transfer_matrix(coin_at(spec, x), lambda).inverse() * core(x + 1);

    // Psi~(x_+ + r) = (T_{r-1}^+ ... T_0^+) T_+ phi
    plus_base_.push_back(core(spec.x_plus));
    for (Site r = 0; r + 1 < spec.n_plus(); ++r)
      plus_base_.push_back(transfer_matrix(spec.period_plus[static_cast<std::size_t>(r)], lambda) * plus_base_.back());
    // Psi~(x_- - n_- + r) = (T_{n-1}^- ... T_r^-)^{-1} T_- phi
    const auto nm = static_cast<std::size_t>(spec.n_minus());
    minus_base_.assign(nm, Vec2{0.0, 0.0});
    Vec2 w = core(spec.x_minus);
    for (std::size_t r = nm; r-- > 0;) {
      w = transfer_matrix(spec.period_minus[r], lambda).inverse() * w;
      minus_base_[r] = w;
    }
  }

  Vec2 operator()(Site x) const {
    if (x >= spec_->x_plus) {
      const SiteIndex idx = residue_and_period_index(*spec_, x);
      return scaled(plus_base_[static_cast<std::size_t>(idx.residue)], zeta_power(pt_.zeta_plus_lt, idx.period_index));
    }
    if (x >= spec_->x_minus) return core_[static_cast<std::size_t>(x - spec_->x_minus)];
    const SiteIndex idx = residue_and_period_index(*spec_, x);
    return scaled(minus_base_[static_cast<std::size_t>(idx.residue)],
                  zeta_power(1.0 / pt_.zeta_minus_gt, idx.period_index));
  }

  /// Closed-form squared l2 norm: defect window plus two geometric tails.
  double norm_sq() const {
    const double q_plus = std::norm(pt_.zeta_plus_lt);
    const double q_minus = 1.0 / std::norm(pt_.zeta_minus_gt);
    if (!(q_plus < 1.0) || !(q_minus < 1.0))
      throw DivergentTail("eigen_norm: tail ratio |zeta_+^<| or 1/|zeta_-^>| is not < 1");
    double core_sum = 0.0;
    for (Site x = spec_->x_minus; x < spec_->x_plus; ++x) core_sum += qws::norm_sq(core(x));
    double s_plus = 0.0;
    for (const Vec2& v : plus_base_) s_plus += qws::norm_sq(v);
    double s_minus = 0.0;
    for (const Vec2& v : minus_base_) s_minus += qws::norm_sq(v);
    return core_sum + s_plus / (1.0 - q_plus) + s_minus / (1.0 - q_minus);
  }

  /// Mass of sites x >= x_+ + m n_+ (plus side) for the unnormalized Psi~.
  double plus_tail_mass(Site m) const {
    double s = 0.0;
    for (const Vec2& v : plus_base_) s += qws::norm_sq(v);
    const double q = std::norm(pt_.zeta_plus_lt);
    return std::pow(q, static_cast<double>(m)) * s / (1.0 - q);
  }
  /// Mass of sites x < x_- - m n_- (minus side).
  double minus_tail_mass(Site m) const {
    double s = 0.0;
    for (const Vec2& v : minus_base_) s += qws::norm_sq(v);
    const double q = 1.0 / std::norm(pt_.zeta_minus_gt);
    return std::pow(q, static_cast<double>(m)) * s / (1.0 - q);
  }

 private:
  static Complex zeta_power(Complex z, Site m) {
    if (m == 0) return 1.0;
    const auto md = static_cast<double>(m);
    return std::polar(std::pow(std::abs(z), md), md * std::arg(z));
  }
  Vec2& core(Site x) { return core_[static_cast<std::size_t>(x - spec_->x_minus)]; }
  const Vec2& core(Site x) const { return core_[static_cast<std::size_t>(x - spec_->x_minus)]; }

  const ModelSpec* spec_;
  EigenPoint pt_;
  std::vector<Vec2> core_;  // Psi~ on [x_-, x_+]
  std::vector<Vec2> plus_base_;
  std::vector<Vec2> minus_base_;
};

/// Psi = J^{-1} Psi~ on [lo, hi]: Psi_L(x) = Psi~_L(x+1), Psi_R(x) = Psi~_R(x).
template <class TildeFn>
StateVector apply_j_inverse(const TildeFn& tilde, Site lo, Site hi) {
  StateVector out = StateVector::zeros(lo, hi);
  Vec2 next = tilde(lo);
  for (Site x = lo; x <= hi; ++x) {
    const Vec2 cur = next;
    next = tilde(x + 1);
    out[x] = Vec2{next[0], cur[1]};
  }
  return out;
}

/// Unnormalized eigenvector J^{-1} Psi~ on [lo, hi].
inline StateVector eigenvector_profile(const ModelSpec& spec, const EigenPoint& pt, Site lo, Site hi) {
  if (hi < lo) throw std::invalid_argument("eigenvector_profile: empty window");
  return apply_j_inverse(TildePsi(spec, pt), lo, hi);
}

/// ||Psi||^2 = ||Psi~||^2 in closed form (J is unitary).
inline double eigen_norm(const ModelSpec& spec, const EigenPoint& pt) { return TildePsi(spec, pt).norm_sq(); }

inline StateVector normalized_eigenvector(const ModelSpec& spec, const EigenPoint& pt, Site lo, Site hi) {
  StateVector v = eigenvector_profile(spec, pt, lo, hi);
  const double s = 1.0 / std::sqrt(pt.norm_sq);
  for (auto& a : v.amplitudes) a = scaled(a, s);
  return v;
}

/// Smallest W such that the normalized eigenvector has mass < `mass_tol` outside [-W, W].
inline Site decay_half_width(const ModelSpec& spec, const EigenPoint& pt, double mass_tol) {
  const TildePsi tilde(spec, pt);
  const double budget = 0.5 * mass_tol * pt.norm_sq;
  Site mp = 0;
  while (tilde.plus_tail_mass(mp) >= budget) ++mp;
  Site mm = 0;
  while (tilde.minus_tail_mass(mm) >= budget) ++mm;
  // one extra site for the J shift on the L component
  const Site right = spec.x_plus + mp * spec.n_plus() + 1;
  const Site left = spec.x_minus - mm * spec.n_minus() - 1;
  return std::max<Site>(right, -left);
}

/// ||U Psi - e^{i lambda} Psi|| over the interior of [-window, window] for the normalized eigenvector.
inline double eigen_check(const ModelSpec& spec, const EigenPoint& pt, Site window) {
  const StateVector psi = normalized_eigenvector(spec, pt, -window, window);
  const StateVector u_psi = step(spec, psi);
  const Complex phase = std::polar(1.0, pt.lambda);
  double s = 0.0;
  for (Site x = -window + 1; x <= window - 1; ++x) s += norm_sq(u_psi.at(x) - scaled(psi.at(x), phase));
  return std::sqrt(s);
}

/// Generalized solution J^{-1} Psi~ from full transfer products and block powers,
/// with no projection onto decaying directions and no l2 requirement.
inline StateVector stationary_measure(const ModelSpec& spec, double lambda, const Vec2& phi, Site lo, Site hi) {
  if (hi < lo) throw std::invalid_argument("stationary_measure: empty window");
  const BoundaryProducts bp = boundary_products(spec, lambda);
  const Vec2 at_plus = bp.t_plus * phi;
  const Vec2 at_minus = bp.t_minus * phi;
  const std::span<const Coin> plus(spec.period_plus);
  const std::span<const Coin> minus(spec.period_minus);
  auto tilde = [&](Site x) -> Vec2 {
    if (x > spec.x_plus) {
      const SiteIndex idx = residue_and_period_index(spec, x);
      const auto r = static_cast<std::size_t>(idx.residue);
      const Matrix2 shifted = shifted_block(plus, lambda, r);
      return power(shifted, idx.period_index) * (period_block(plus.first(r), lambda) * at_plus);
    }
    if (x > 0) {
      Vec2 v = phi;
      for (Site y = 0; y < x; ++y) v = transfer_matrix(coin_at(spec, y), lambda) * v;
      return v;
    }
    if (x == 0) return phi;
    if (x >= spec.x_minus) {
      Vec2 v = phi;
      for (Site y = -1; y >= x; --y) v = transfer_matrix(coin_at(spec, y), lambda).inverse() * v;
      return v;
    }
    const SiteIndex idx = residue_and_period_index(spec, x);
    const auto r = static_cast<std::size_t>(idx.residue);
    const Matrix2 shifted_inv = shifted_block(minus, lambda, r).inverse();
    return power(shifted_inv, idx.period_index) * (period_block(minus.subspan(r), lambda).inverse() * at_minus);
  };
  return apply_j_inverse(tilde, lo, hi);
}

// ---------------------------------------------------------------------------
// Scan

namespace detail {

template <class F>
double golden_section_min(const F& f, double a, double b, double width) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c);
  double fd = f(d);
  while (b - a > width && a < c && c < d && d < b) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return 0.5 * (a + b);
}

/// Boundary of the condition-one region between t_out (fails) and t_in (holds).
inline double bisect_condition_boundary(const ModelSpec& spec, double t_out, double t_in) {
  for (int i = 0; i < 200 && std::abs(t_in - t_out) > 1e-15; ++i) {
    const double mid = 0.5 * (t_in + t_out);
    if (mid == t_in || mid == t_out) break;
    if (condition_one(spec, mid).both())
      t_in = mid;
    else
      t_out = mid;
  }
  return t_in;
}

inline Vec2 intersection_direction(const MatchingData& d) {
  const Complex c = dot(d.phi_plus, d.phi_minus);
  const Complex align = std::abs(c) > 0.0 ? std::conj(c) / std::abs(c) : Complex{1.0};
  return normalize_phase(d.phi_plus + scaled(d.phi_minus, align));
}

}  // namespace detail

inline EigenPoint make_eigenpoint(const ModelSpec& spec, double lambda) {
  const MatchingData d = matching_data(spec, lambda);
  EigenPoint pt;
  pt.lambda = normalize_angle(lambda);
  pt.phi = detail::intersection_direction(d);
  pt.zeta_plus_lt = d.plus.zeta_lt;
  pt.zeta_minus_gt = d.minus.zeta_gt;
  pt.residual = d.residual;
  pt.norm_sq = eigen_norm(spec, pt);
  return pt;
}

inline SpectrumReport scan_spectrum(const ModelSpec& spec, const ScanOptions& opt) {
  if (opt.grid < 256) throw std::invalid_argument("scan_spectrum: grid must be >= 256");
  if (!(opt.tol > 0.0)) throw std::invalid_argument("scan_spectrum: tol must be > 0");
  SpectrumReport report;
  report.grid_size = opt.grid;
  report.tolerance = opt.tol;

  const int n = opt.grid;
  const double h = kTwoPi / n;
  std::vector<char> ok(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) ok[static_cast<std::size_t>(j)] = condition_one(spec, j * h).both();
  auto ok_at = [&](long j) { return ok[static_cast<std::size_t>(((j % n) + n) % n)] != 0; };

  // Refinement may step onto a tangential zero of a discriminant inside a run;
  // such points cannot carry an eigenvalue and score as the worst residual.
  const auto residual = [&](double t) {
    const double u = normalize_angle(t);
    return condition_one(spec, u).both() ? matching_residual(spec, u) : 1.0;
  };
  std::vector<double> candidates;

  // Local minima of the residual on a sample list, refined by golden section.
  auto search = [&](const std::vector<double>& ts, bool circular) {
    std::vector<double> fs(ts.size());
    for (std::size_t i = 0; i < ts.size(); ++i) fs[i] = residual(ts[i]);
    const std::size_t m = ts.size();
    for (std::size_t i = 0; i < m; ++i) {
      const bool has_prev = circular || i > 0;
      const bool has_next = circular || i + 1 < m;
      const std::size_t ip = (i + m - 1) % m;
      const std::size_t in = (i + 1) % m;
      if (has_prev && fs[ip] < fs[i]) continue;
      if (has_next && fs[in] < fs[i]) continue;
      double a = has_prev ? ts[ip] : ts[i];
      double b = has_next ? ts[in] : ts[i];
      if (circular && i == 0) a -= kTwoPi;
      if (circular && i + 1 == m) b += kTwoPi;
      double t = b > a ? detail::golden_section_min(residual, a, b, opt.refine_width) : a;
      // Steep minima (roots near a region boundary) need resolution below
      // refine_width; polish down to floating-point spacing.
      if (residual(t) >= opt.tol && b > a)
        t = detail::golden_section_min(residual, std::max(a, t - 4.0 * opt.refine_width),
                                       std::min(b, t + 4.0 * opt.refine_width), 0.0);
      if (residual(t) < opt.tol) candidates.push_back(normalize_angle(t));
    }
  };

  const bool all_ok = std::all_of(ok.begin(), ok.end(), [](char c) { return c != 0; });
  if (all_ok) {
    report.condition_one_intervals.push_back({0.0, kTwoPi});
    std::vector<double> ts(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) ts[static_cast<std::size_t>(j)] = j * h;
    search(ts, true);
  } else {
    long start = 0;
    while (ok_at(start)) ++start;  // a failing index exists
    for (long j = start + 1; j <= start + n; ++j) {
      if (!ok_at(j)) continue;
      const long ja = j;
      while (ok_at(j + 1)) ++j;
      const long jb = j;
      const double lo = detail::bisect_condition_boundary(spec, (ja - 1) * h, ja * h) + opt.boundary_margin;
      const double hi = detail::bisect_condition_boundary(spec, (jb + 1) * h, jb * h) - opt.boundary_margin;
      if (!(hi > lo)) continue;
      const double lo_norm = normalize_angle(lo);
      report.condition_one_intervals.push_back({lo_norm, lo_norm + (hi - lo)});
      // Grid points plus geometrically spaced samples toward each endpoint:
      // near a boundary |zeta^<| -> 1 and roots there are narrow.
      std::vector<double> ts;
      for (double off = opt.boundary_margin; off < std::min(h, 0.5 * (hi - lo)); off *= 2.0) {
        ts.push_back(lo + off);
        ts.push_back(hi - off);
      }
      ts.push_back(lo);
      ts.push_back(hi);
      for (long k = ja; k <= jb; ++k)
        if (k * h > lo && k * h < hi) ts.push_back(k * h);
      std::sort(ts.begin(), ts.end());
      ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
      search(ts, false);
    }
  }

  std::sort(candidates.begin(), candidates.end());
  std::vector<EigenPoint> pts;
  for (double t : candidates) {
    EigenPoint p = make_eigenpoint(spec, t);
    auto dup = std::find_if(pts.begin(), pts.end(),
                            [&](const EigenPoint& q) { return std::abs(angle_distance(q.lambda, p.lambda)) < opt.dedup; });
    if (dup == pts.end())
      pts.push_back(p);
    else if (p.residual < dup->residual)
      *dup = p;
  }
  std::sort(pts.begin(), pts.end(), [](const EigenPoint& a, const EigenPoint& b) { return a.lambda < b.lambda; });
  report.eigenpoints = std::move(pts);
  return report;
}

inline SpectrumReport scan_spectrum(const ModelSpec& spec, int grid = 16384, double tol = 1e-10) {
  ScanOptions opt;
  opt.grid = grid;
  opt.tol = tol;
  return scan_spectrum(spec, opt);
}

}  // namespace qws
