#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qws/presets.hpp"
#include "qws/transfer.hpp"

using namespace qws;

TEST(Transfer, MatchesEigenEquationSolution) {
  oracle::Gen g(21);
  for (int i = 0; i < 300; ++i) {
    const Coin c = g.coin();
    const double l = g.angle();
    const Matrix2 t = transfer_matrix(c, l);
    const auto o = oracle::transfer_from_eigen_equation(c, l);
    EXPECT_LT(std::abs(t.a11 - o[0]) + std::abs(t.a12 - o[1]) + std::abs(t.a21 - o[2]) + std::abs(t.a22 - o[3]),
              1e-12);
  }
}

TEST(Transfer, DeterminantIsUnimodular) {
  // det T = (1 - |beta|^2) / alpha^2 = conj(alpha) / alpha
  oracle::Gen g(22);
  for (int i = 0; i < 200; ++i) {
    const Coin c = g.coin();
    const Complex d = transfer_matrix(c, g.angle()).det();
    EXPECT_NEAR(std::abs(d), 1.0, 1e-12);
    EXPECT_LT(std::abs(d - std::conj(c.alpha) / c.alpha), 1e-12);
  }
}

TEST(Transfer, ProductIsRightToLeft) {
  oracle::Gen g(23);
  const auto coins = g.coins(3);
  const double l = 0.7;
  const Matrix2 b = period_block(coins, l);
  const Matrix2 expect = transfer_matrix(coins[2], l) * transfer_matrix(coins[1], l) * transfer_matrix(coins[0], l);
  EXPECT_LT(max_abs_diff(b, expect), 1e-14);
}

TEST(Transfer, ShiftedBlocksShareTrace) {
  oracle::Gen g(24);
  for (int trial = 0; trial < 100; ++trial) {
    const auto coins = g.coins(g.integer(1, 5));
    const double l = g.angle();
    const Complex tr = period_block(coins, l).trace();
    for (std::size_t k = 0; k < coins.size(); ++k) EXPECT_LT(std::abs(shifted_block(coins, l, k).trace() - tr), 1e-10);
    EXPECT_LT(max_abs_diff(shifted_block(coins, l, 0), period_block(coins, l)), 1e-14);
  }
  EXPECT_THROW(shifted_block(g.coins(2), 0.1, 3), std::out_of_range);
}

TEST(Transfer, BoundaryProductsForOneSiteDefect) {
  const ModelSpec m = presets::fig1();
  const double l = 1.1;
  const BoundaryProducts bp = boundary_products(m, l);
  EXPECT_LT(max_abs_diff(bp.t_plus, transfer_matrix(m.defects[0], l)), 1e-15);
  EXPECT_LT(max_abs_diff(bp.t_minus, Matrix2::identity()), 1e-15);

  ModelSpec w = oracle::Gen(3).model(2, 2, 2, -2);
  const BoundaryProducts b2 = boundary_products(w, l);
  const Matrix2 tp = transfer_matrix(oracle::site_coin(w, 1), l) * transfer_matrix(oracle::site_coin(w, 0), l);
  const Matrix2 tm =
      transfer_matrix(oracle::site_coin(w, -2), l).inverse() * transfer_matrix(oracle::site_coin(w, -1), l).inverse();
  EXPECT_LT(max_abs_diff(b2.t_plus, tp), 1e-13);
  EXPECT_LT(max_abs_diff(b2.t_minus, tm), 1e-13);
}

TEST(Transfer, TraceInvariantIsReal) {
  oracle::Gen g(25);
  for (int i = 0; i < 500; ++i) {
    const auto coins = g.coins(g.integer(1, 6));
    const Complex a = trace_invariant_A_complex(coins, g.angle());
    EXPECT_LE(std::abs(a.imag()), 1e-10);
  }
}

TEST(Transfer, HadamardDiscriminant) {
  // One Hadamard coin: A = cos(lambda), so disc = cos^2(lambda) - 1/2.
  const std::vector<Coin> h{hadamard_coin()};
  for (int k = 0; k < 1000; ++k) {
    const double l = kTwoPi * k / 1000.0;
    EXPECT_NEAR(zeta_pair(h, l).a_value, std::cos(l), 1e-14);
    EXPECT_NEAR(zeta_pair(h, l).discriminant, std::cos(l) * std::cos(l) - 0.5, 1e-14);
  }
}

TEST(Transfer, ZetaPairIsBlockSpectrum) {
  oracle::Gen g(26);
  int positive = 0;
  for (int i = 0; i < 500; ++i) {
    const auto coins = g.coins(g.integer(1, 4));
    const double l = g.angle();
    const ZetaPair z = zeta_pair(coins, l);
    const Matrix2 b = period_block(coins, l);
    EXPECT_LT(std::abs((b - z.zeta_gt).det()), 1e-9 * (1.0 + b.frobenius_norm() * b.frobenius_norm()));
    EXPECT_LT(std::abs((b - z.zeta_lt).det()), 1e-9 * (1.0 + b.frobenius_norm() * b.frobenius_norm()));
    EXPECT_NEAR(std::abs(z.zeta_gt * z.zeta_lt), 1.0, 1e-10);
    if (z.discriminant > 0.0) {
      ++positive;
      EXPECT_GE(std::abs(z.zeta_gt), 1.0 - 1e-12);
      EXPECT_LE(std::abs(z.zeta_lt), 1.0 + 1e-12);
    }
  }
  EXPECT_GT(positive, 20);
}
