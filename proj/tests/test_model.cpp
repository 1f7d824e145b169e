#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qws/matrix2.hpp"
#include "qws/model.hpp"
#include "qws/presets.hpp"

using namespace qws;

namespace {

bool has_violation(const ModelSpec& m, const std::string& needle) {
  for (const Violation& v : validate(m))
    if (v.what.find(needle) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST(Matrix2, InverseAndProduct) {
  const Matrix2 m{Complex(1, 2), Complex(0.5, -1), Complex(-2, 0.25), Complex(3, 1)};
  EXPECT_LT(max_abs_diff(m * m.inverse(), Matrix2::identity()), 1e-14);
  EXPECT_NEAR(std::abs(m.det() - (m.a11 * m.a22 - m.a12 * m.a21)), 0.0, 1e-15);
  EXPECT_LT(max_abs_diff(power(m, 5), m * m * m * m * m), 1e-10);
  EXPECT_LT(max_abs_diff(power(m, 0), Matrix2::identity()), 0.0 + 1e-300);
}

TEST(Matrix2, DotIsConjugateLinearInFirst) {
  const Vec2 a{Complex(0, 1), 0.0};
  const Vec2 b{1.0, 0.0};
  EXPECT_EQ(dot(a, b), Complex(0, -1));
  EXPECT_EQ(dot(scaled(a, Complex(0, 1)), b), std::conj(Complex(0, 1)) * dot(a, b));
}

TEST(Angles, NormalizeAndDistance) {
  EXPECT_DOUBLE_EQ(normalize_angle(-kPi / 2), 3 * kPi / 2);
  EXPECT_DOUBLE_EQ(normalize_angle(kTwoPi), 0.0);
  EXPECT_NEAR(angle_distance(0.1, kTwoPi - 0.1), 0.2, 1e-15);
  EXPECT_NEAR(angle_distance(kTwoPi - 0.1, 0.1), -0.2, 1e-15);
}

TEST(Coin, MatrixIsUnitaryForRandomDraws) {
  oracle::Gen g(11);
  for (int i = 0; i < 200; ++i) {
    const Coin c = g.coin(1e-3, 1.0);
    const Matrix2 m = c.matrix();
    const Matrix2 mh{std::conj(m.a11), std::conj(m.a21), std::conj(m.a12), std::conj(m.a22)};
    EXPECT_LT(max_abs_diff(m * mh, Matrix2::identity()), 1e-14);
    const auto e = oracle::coin_entries(c);
    EXPECT_LT(std::abs(e[0] - m.a11) + std::abs(e[1] - m.a12) + std::abs(e[2] - m.a21) + std::abs(e[3] - m.a22),
              1e-15);
  }
}

TEST(Validate, BundledPresetsAreValid) {
  EXPECT_TRUE(is_valid(presets::fig1()));
  EXPECT_TRUE(is_valid(presets::fig2()));
  EXPECT_TRUE(is_valid(presets::fig3()));
  EXPECT_TRUE(is_valid(presets::hadamard()));
}

TEST(Validate, RejectsAlphaZero) {
  ModelSpec m = presets::fig1();
  m.period_plus[1] = Coin(0.0, 0.0, 1.0);
  EXPECT_TRUE(has_violation(m, "excluded reflecting case"));
}

TEST(Validate, RejectsNonUnitaryCoin) {
  ModelSpec m = presets::hadamard();
  m.period_minus[0].alpha *= 1.01;
  EXPECT_TRUE(has_violation(m, "must be 1"));
}

TEST(Validate, RejectsShapeErrors) {
  ModelSpec m = presets::fig1();
  m.defects.clear();
  EXPECT_TRUE(has_violation(m, "x_plus - x_minus"));
  m = presets::fig1();
  m.x_plus = -1;
  EXPECT_TRUE(has_violation(m, ">= 0"));
  m = presets::fig1();
  m.period_plus.clear();
  EXPECT_TRUE(has_violation(m, "period must be >= 1"));
  m = presets::fig1();
  m.x_minus = 1;
  EXPECT_FALSE(is_valid(m));
}

TEST(Validate, NonFiniteParameters) {
  ModelSpec m = presets::hadamard();
  m.period_plus[0].beta = Complex(std::nan(""), 0.0);
  EXPECT_TRUE(has_violation(m, "non-finite"));
}

TEST(SiteIndex, CoinLookupMatchesIndependentArrangement) {
  oracle::Gen g(5);
  for (int trial = 0; trial < 30; ++trial) {
    const ModelSpec m = g.model(g.integer(1, 4), g.integer(1, 4), g.integer(0, 3), -g.integer(0, 3));
    for (Site x = -40; x <= 40; ++x) EXPECT_EQ(coin_at(m, x), oracle::site_coin(m, x)) << "x = " << x;
  }
}

TEST(SiteIndex, PeriodIndexReconstructsSite) {
  ModelSpec m = oracle::Gen(9).model(3, 2, 2, -1);
  for (Site x = -50; x <= 50; ++x) {
    const SiteIndex idx = residue_and_period_index(m, x);
    switch (idx.side) {
      case Side::plus:
        EXPECT_EQ(x, m.x_plus + idx.period_index * m.n_plus() + idx.residue);
        EXPECT_GE(idx.period_index, 0);
        break;
      case Side::minus:
        EXPECT_EQ(x, m.x_minus - (idx.period_index + 1) * m.n_minus() + idx.residue);
        EXPECT_GE(idx.period_index, 0);
        break;
      case Side::defect:
        EXPECT_EQ(x, m.x_minus + idx.residue);
        break;
    }
    EXPECT_GE(idx.residue, 0);
  }
}

TEST(StateVector, DeltaAndNorm) {
  const StateVector s = presets::origin_state();
  EXPECT_EQ(s.lo, 0);
  EXPECT_EQ(s.hi(), 0);
  EXPECT_NEAR(s.norm_sq(), 1.0, 1e-15);
  EXPECT_EQ(s.at(5)[0], Complex(0.0));
}
