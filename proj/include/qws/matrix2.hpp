#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>

namespace qws {

using Complex = std::complex<double>;
using Vec2 = std::array<Complex, 2>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// Dense 2x2 complex matrix, row-major entries a11 a12 / a21 a22.
struct Matrix2 {
  Complex a11{1.0}, a12{0.0}, a21{0.0}, a22{1.0};

  static constexpr Matrix2 identity() { return {}; }
  static constexpr Matrix2 zero() { return {0.0, 0.0, 0.0, 0.0}; }
  static Matrix2 diagonal(Complex d1, Complex d2) { return {d1, 0.0, 0.0, d2}; }

  Complex trace() const { return a11 + a22; }
  Complex det() const { return a11 * a22 - a12 * a21; }
  Matrix2 adjugate() const { return {a22, -a12, -a21, a11}; }

  // Closed-form inverse; the caller guarantees det != 0.
  Matrix2 inverse() const {
    const Complex d = det();
    return {a22 / d, -a12 / d, -a21 / d, a11 / d};
  }

  double frobenius_norm() const {
    return std::sqrt(std::norm(a11) + std::norm(a12) + std::norm(a21) + std::norm(a22));
  }

  Vec2 column(int j) const { return j == 0 ? Vec2{a11, a21} : Vec2{a12, a22}; }

  friend Matrix2 operator*(const Matrix2& x, const Matrix2& y) {
    return {x.a11 * y.a11 + x.a12 * y.a21, x.a11 * y.a12 + x.a12 * y.a22,
            x.a21 * y.a11 + x.a22 * y.a21, x.a21 * y.a12 + x.a22 * y.a22};
  }
  friend Vec2 operator*(const Matrix2& m, const Vec2& v) {
    return {m.a11 * v[0] + m.a12 * v[1], m.a21 * v[0] + m.a22 * v[1]};
  }
  friend Matrix2 operator*(Complex s, const Matrix2& m) {
    return {s * m.a11, s * m.a12, s * m.a21, s * m.a22};
  }
  friend Matrix2 operator+(const Matrix2& x, const Matrix2& y) {
    return {x.a11 + y.a11, x.a12 + y.a12, x.a21 + y.a21, x.a22 + y.a22};
  }
  friend Matrix2 operator-(const Matrix2& x, const Matrix2& y) {
    return {x.a11 - y.a11, x.a12 - y.a12, x.a21 - y.a21, x.a22 - y.a22};
  }
  // m - z*I
  friend Matrix2 operator-(const Matrix2& m, Complex z) { return {m.a11 - z, m.a12, m.a21, m.a22 - z}; }

  friend bool operator==(const Matrix2&, const Matrix2&) = default;
};

/// Largest entrywise modulus of x - y.
inline double max_abs_diff(const Matrix2& x, const Matrix2& y) {
  return std::max({std::abs(x.a11 - y.a11), std::abs(x.a12 - y.a12), std::abs(x.a21 - y.a21),
                   std::abs(x.a22 - y.a22)});
}

inline double norm_sq(const Vec2& v) { return std::norm(v[0]) + std::norm(v[1]); }
inline double norm(const Vec2& v) { return std::sqrt(norm_sq(v)); }

inline Vec2 scaled(const Vec2& v, Complex s) { return {s * v[0], s * v[1]}; }
inline Vec2 operator+(const Vec2& a, const Vec2& b) { return {a[0] + b[0], a[1] + b[1]}; }
inline Vec2 operator-(const Vec2& a, const Vec2& b) { return {a[0] - b[0], a[1] - b[1]}; }

/// <a, b>, conjugate-linear in the first argument.
inline Complex dot(const Vec2& a, const Vec2& b) { return std::conj(a[0]) * b[0] + std::conj(a[1]) * b[1]; }

/// |det[a b]| / (|a| |b|): sine of the angle between two complex lines.
inline double line_separation(const Vec2& a, const Vec2& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  return std::abs(a[0] * b[1] - a[1] * b[0]) / (na * nb);
}

/// Makes v unit length with the first non-negligible component real positive.
inline Vec2 normalize_phase(const Vec2& v) {
  const double n = norm(v);
  if (n == 0.0) return v;
  Vec2 u = scaled(v, 1.0 / n);
  const Complex lead = std::abs(u[0]) > 1e-14 ? u[0] : u[1];
  return scaled(u, std::conj(lead) / std::abs(lead));
}

/// m^p for p >= 0 by repeated squaring.
inline Matrix2 power(Matrix2 m, long long p) {
  Matrix2 acc = Matrix2::identity();
  while (p > 0) {
    if (p & 1) acc = acc * m;
    m = m * m;
    p >>= 1;
  }
  return acc;
}

}  // namespace qws
