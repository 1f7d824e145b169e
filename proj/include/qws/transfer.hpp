#pragma once

// Transfer matrices T_x(lambda), period blocks and the tail eigenvalues
// zeta^> / zeta^< that decide whether a generalized eigenfunction can decay.

#include <cstdlib>
#include <span>
#include <stdexcept>
#include <string>

#include "qws/matrix2.hpp"
#include "qws/model.hpp"

namespace qws {

class ImaginaryResidueTooLarge : public std::runtime_error {
 public:
  explicit ImaginaryResidueTooLarge(double im)
      : std::runtime_error("trace invariant has imaginary part " + std::to_string(im)), imaginary_part(im) {}
  double imaginary_part;
};

/// (1/alpha) [e^{i(lambda-delta)}  -beta ; -conj(beta)  e^{-i(lambda-delta)}]
inline Matrix2 transfer_matrix(const Coin& coin, double lambda) {
  const Complex e = std::polar(1.0, lambda - coin.delta);
  const Complex inv_alpha = 1.0 / coin.alpha;
  return inv_alpha * Matrix2{e, -coin.beta, -std::conj(coin.beta), std::conj(e)};
}

/// ms[n-1] ... ms[1] ms[0]; identity when empty.
inline Matrix2 product(std::span<const Matrix2> ms) {
  Matrix2 acc = Matrix2::identity();
  for (const Matrix2& m : ms) acc = m * acc;
  return acc;
}

/// T_{n-1} ... T_0 over `coins`.
inline Matrix2 period_block(std::span<const Coin> coins, double lambda) {
  Matrix2 acc = Matrix2::identity();
  for (const Coin& c : coins) acc = transfer_matrix(c, lambda) * acc;
  return acc;
}

/// (T_{k-1} ... T_0)(T_{n-1} ... T_k): the block read from residue k.
inline Matrix2 shifted_block(std::span<const Coin> coins, double lambda, std::size_t k) {
  if (k >= coins.size()) throw std::out_of_range("shifted_block: k must be < period");
  return period_block(coins.first(k), lambda) * period_block(coins.subspan(k), lambda);
}

struct BoundaryProducts {
  Matrix2 t_plus;   // T_{x_+ - 1} ... T_0
  Matrix2 t_minus;  // T_{x_-}^{-1} ... T_{-1}^{-1}
};

inline BoundaryProducts boundary_products(const ModelSpec& spec, double lambda) {
  BoundaryProducts out{Matrix2::identity(), Matrix2::identity()};
  for (Site x = 0; x < spec.x_plus; ++x) out.t_plus = transfer_matrix(coin_at(spec, x), lambda) * out.t_plus;
  for (Site x = -1; x >= spec.x_minus; --x)
    out.t_minus = transfer_matrix(coin_at(spec, x), lambda).inverse() * out.t_minus;
  return out;
}

inline Complex alpha_product(std::span<const Coin> coins) {
  Complex p{1.0};
  for (const Coin& c : coins) p *= c.alpha;
  return p;
}

inline double alpha_abs_sq_product(std::span<const Coin> coins) {
  double p = 1.0;
  for (const Coin& c : coins) p *= std::norm(c.alpha);
  return p;
}

inline constexpr double kTraceImagTol = 1e-10;

/// A = (1/2) alpha_0 ... alpha_{n-1} tr(T_{n-1} ... T_0). Real for valid coins;
/// a larger imaginary part than `imag_tol` raises ImaginaryResidueTooLarge.
inline Complex trace_invariant_A_complex(std::span<const Coin> coins, double lambda) {
  return 0.5 * alpha_product(coins) * period_block(coins, lambda).trace();
}

inline double trace_invariant_A(std::span<const Coin> coins, double lambda, double imag_tol = kTraceImagTol) {
  const Complex a = trace_invariant_A_complex(coins, lambda);
  if (std::abs(a.imag()) > imag_tol) throw ImaginaryResidueTooLarge(a.imag());
  return a.real();
}

struct ZetaPair {
  Complex zeta_gt;      // |zeta_gt| >= 1
  Complex zeta_lt;      // |zeta_lt| <= 1
  double a_value;       // A
  double discriminant;  // A^2 - prod |alpha|^2
};

inline constexpr double kCoincidentRootTol = 1e-14;

inline ZetaPair zeta_pair(std::span<const Coin> coins, double lambda) {
  const double a = trace_invariant_A(coins, lambda);
  const double disc = a * a - alpha_abs_sq_product(coins);
  const Complex denom = alpha_product(coins);
  Complex root{0.0};
  if (std::abs(disc) < kCoincidentRootTol) {
    root = 0.0;
  } else if (disc > 0.0) {
    // Small root from the product A^2 - disc = prod |alpha|^2; the difference cancels.
    const double big = a + (a > 0.0 ? 1.0 : -1.0) * std::sqrt(disc);
    return {big / denom, alpha_abs_sq_product(coins) / (big * denom), a, disc};
  } else {
    // Unimodular pair. sgn(A) = 0 would collapse both roots to zero, so A = 0
    // takes the + branch; either choice yields the two block eigenvalues.
    root = Complex(0.0, (a < 0.0 ? -1.0 : 1.0) * std::sqrt(-disc));
  }
  return {(a + root) / denom, (a - root) / denom, a, disc};
}

}  // namespace qws
