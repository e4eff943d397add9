// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"

using namespace cpdiag;

namespace {

constexpr double kTol = 1e-10;

const Matrix2 kHalfIdentity = Matrix2::identity() * complex{0.5};

}  // namespace

TEST(Singlet, PureWithNegativeCorrelators) {
  const auto s = singlet();
  EXPECT_NEAR(purity(s), 1.0, kTol);
  const auto r = to_pauli(s);
  EXPECT_NEAR(r[0][0], 1.0, kTol);
  for (int i = 1; i < 4; ++i) EXPECT_NEAR(r[i][i], -1.0, kTol);
  EXPECT_LE(distance(partial_trace(s, Subsystem::A), kHalfIdentity), kTol);
}

TEST(Singlet, MatchesPauliExpansion) {
  Matrix4 expected = Matrix4::identity();
  for (int k = 1; k < 4; ++k) expected -= kron(pauli::sigma(k), pauli::sigma(k));
  expected *= 0.25;
  EXPECT_LE(distance(singlet().matrix(), expected), 1e-15);
}

TEST(BellBasis, OrthonormalMaximallyEntangledTetrahedronVertices) {
  const auto b = bell_basis();
  const std::array<Vec3, 4> vertices{{{-1, -1, -1}, {-1, 1, 1}, {1, -1, 1}, {1, 1, -1}}};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j)
      EXPECT_NEAR(trace(b[i].matrix() * b[j].matrix()).real(), i == j ? 1.0 : 0.0, kTol);
    EXPECT_NEAR(purity(b[i]), 1.0, kTol);
    EXPECT_NEAR(concurrence(b[i]), 1.0, 1e-9);
    const auto r = to_pauli(b[i]);
    for (int k = 0; k < 3; ++k) EXPECT_NEAR(r[k + 1][k + 1], vertices[i][k], kTol);
  }
}

TEST(Werner, EndpointsAndPurity) {
  EXPECT_LE(distance(werner(1).matrix(), singlet().matrix()), 1e-15);
  EXPECT_NEAR(purity(werner(0)), 0.25, kTol);
  EXPECT_NEAR(purity(werner(0.5)), 7.0 / 16.0, kTol);
  EXPECT_THROW(werner(1.01), std::invalid_argument);
  EXPECT_THROW(werner(-0.34), std::invalid_argument);
}

TEST(Werner, PurityClosedFormOnGrid) {
  for (int k = 0; k <= 100; ++k) {
    const double q = -1.0 / 3.0 + (4.0 / 3.0) * k / 100.0;
    const auto w = werner(std::min(q, 1.0));
    EXPECT_TRUE(is_valid(w));
    EXPECT_NEAR(purity(w), 0.25 * (1 + 3 * q * q), kTol);
  }
}

TEST(Mems, BranchesAndValues) {
  EXPECT_LE(distance(mems(1).matrix(), phi_plus().matrix()), 1e-15);
  EXPECT_NEAR(purity(mems(1)), 1.0, kTol);
  EXPECT_NEAR(concurrence(mems(1)), 1.0, 1e-9);

  // Both branch formulas at p = 2/3.
  const double p = 2.0 / 3.0;
  Matrix4 upper = phi_plus().matrix() * complex{p};
  upper(1, 1) += 1 - p;
  Matrix4 lower = phi_plus().matrix() * complex{p};
  lower(1, 1) += 1.0 / 3.0;
  lower(0, 0) += 1.0 / 3.0 - p / 2;
  lower(3, 3) += 1.0 / 3.0 - p / 2;
  EXPECT_LE(distance(upper, lower), 1e-15);

  // Frozen from a 40-digit eigen solve of rho rho~ (numpy/mpmath).
  EXPECT_NEAR(purity(mems(0.8)), 0.68, kTol);
  EXPECT_NEAR(concurrence(mems(0.8)), 0.8, 1e-9);
  EXPECT_NEAR(purity(mems(p)), 5.0 / 9.0, kTol);
  EXPECT_NEAR(concurrence(mems(p)), p, 1e-9);

  for (double q : {0.0, 0.1, 0.5, 0.7, 0.99}) EXPECT_TRUE(is_valid(mems(q)));
  EXPECT_THROW(mems(-0.1), std::invalid_argument);
  EXPECT_THROW(mems(1.1), std::invalid_argument);
}

TEST(PartialTrace, Cases) {
  EXPECT_GT(distance(partial_trace(mems(0.5), Subsystem::A), kHalfIdentity), kTol);

  Matrix2 zero;
  zero(0, 0) = 1.0;
  const TwoQubitState product(kron(zero, kHalfIdentity));
  EXPECT_LE(distance(partial_trace(product, Subsystem::A), kHalfIdentity), 1e-15);
  EXPECT_LE(distance(partial_trace(product, Subsystem::B), zero), 1e-15);
}

TEST(LinearEntropy, PureStates) {
  EXPECT_NEAR(linear_entropy_pure(singlet()), 1.0, kTol);
  EXPECT_NEAR(linear_entropy_pure(pure_state({1, 0, 0, 0})), 0.0, kTol);

  const double th = std::numbers::pi / 8;
  const auto s = pure_state({std::cos(th), 0, 0, std::sin(th)});
  const double expected = 2 * (1 - (std::pow(std::cos(th), 4) + std::pow(std::sin(th), 4)));
  EXPECT_NEAR(linear_entropy_pure(s), expected, kTol);
  // equals the tangle sin^2(2 theta)
  EXPECT_NEAR(linear_entropy_pure(s), std::pow(std::sin(2 * th), 2), kTol);
  EXPECT_NEAR(tangle(s), expected, 1e-9);

  EXPECT_THROW(linear_entropy_pure(werner(0.5)), NumericError);
}

TEST(Validate, NamesTheViolatedPredicate) {
  EXPECT_FALSE(validate(singlet()).has_value());

  Matrix4 m = Matrix4::identity() * complex{0.25};
  m(0, 1) = 0.1;
  EXPECT_EQ(validate(TwoQubitState(m))->kind, StateDefect::Kind::NonHermitian);

  EXPECT_EQ(validate(TwoQubitState(Matrix4::identity()))->kind, StateDefect::Kind::TraceNotOne);

  EXPECT_EQ(validate(TwoQubitState(Matrix4::diagonal({0.6, 0.6, 0.1, -0.3})))->kind,
            StateDefect::Kind::NotPositive);
}

TEST(StateProperties, RandomStates) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 500; ++trial) {
    const auto s = random_state(rng);
    ASSERT_TRUE(is_valid(s));
    const double p = purity(s);
    EXPECT_GE(p, 0.25 - kTol);
    EXPECT_LE(p, 1.0 + kTol);
    const auto e = hermitian_eigen(s.matrix());
    EXPECT_NEAR(e.values[0] + e.values[1] + e.values[2] + e.values[3], 1.0, kTol);
    // Pauli round trip
    EXPECT_LE(distance(from_pauli(to_pauli(s)).matrix(), s.matrix()), kTol);
  }
}
