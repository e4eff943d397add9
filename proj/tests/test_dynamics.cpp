// SPDX-License-Identifier: Apache-2.0

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "oracles.hpp"

using namespace cpdiag;

namespace {

constexpr double kTol = 1e-10;

double max_diff(const AffineChannel& a, const AffineChannel& b) {
  double d = 0;
  for (int i = 0; i < 3; ++i) {
    d = std::max(d, std::abs(a.t[i] - b.t[i]));
    for (int j = 0; j < 3; ++j) d = std::max(d, std::abs(a.T[i][j] - b.T[i][j]));
  }
  return d;
}

// Closed forms for (P, C) along each process.
struct Closed {
  double P, C;
};

Closed closed_form(const SemigroupProcess& p, double t) {
  switch (p.kind) {
    case ProcessKind::Decoherence:
      return {0.5 * (1 + std::exp(-2 * t / p.T)), std::exp(-t / p.T)};
    case ProcessKind::Depolarization: {
      const double q = std::exp(-t / p.T);
      return {0.25 * (1 + 3 * q * q), std::max(0.0, (3 * q - 1) / 2)};
    }
    case ProcessKind::Homogenization: {
      const double e1 = std::exp(-t / p.T1), e2 = std::exp(-t / p.T2);
      const double P = 0.25 * (1 + 2 * e2 * e2 + e1 * e1 + p.w * p.w * (1 - e1) * (1 - e1));
      const double C = std::max(0.0, e2 - 0.5 * (1 - e1) * std::sqrt(1 - p.w * p.w));
      return {P, C};
    }
  }
  return {};
}

}  // namespace

TEST(ChannelAt, IdentityAtZero) {
  for (const auto& p : {SemigroupProcess::decoherence(1, 0.3), SemigroupProcess::depolarization(2),
                        SemigroupProcess::homogenization(1, 2, 0.7, 1.1)})
    EXPECT_LE(max_diff(channel_at(p, 0), AffineChannel::identity()), 0.0);
}

TEST(ChannelAt, Limits) {
  const auto dep = channel_at(SemigroupProcess::depolarization(1), 800);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(dep.T[i][i], 0.0);

  const double w = 0.6;
  const auto hom = channel_at(SemigroupProcess::homogenization(1, 2, w, 0.5), 2000);
  // every Bloch vector lands on (0, 0, w)
  for (const Vec3& r : {Vec3{1, 0, 0}, Vec3{0, -1, 0}, Vec3{0, 0, 1}, Vec3{0.3, 0.3, -0.5}}) {
    const Vec3 out = matvec(hom.T, r);
    EXPECT_NEAR(out[0] + hom.t[0], 0.0, 1e-15);
    EXPECT_NEAR(out[1] + hom.t[1], 0.0, 1e-15);
    EXPECT_NEAR(out[2] + hom.t[2], w, 1e-15);
  }
}

TEST(ChannelAt, Errors) {
  EXPECT_THROW(channel_at(SemigroupProcess::depolarization(1), -0.1), std::invalid_argument);
  EXPECT_THROW(channel_at(SemigroupProcess::depolarization(0), 1), std::invalid_argument);
  EXPECT_THROW(channel_at(SemigroupProcess::homogenization(1, 1, 1.5), 1), std::invalid_argument);
}

TEST(Trajectory, DecoherenceAtUnitTime) {
  const auto tr = trajectory(SemigroupProcess::decoherence(1), {1.0});
  ASSERT_EQ(tr.points.size(), 1u);
  EXPECT_NEAR(tr.points[0].purity, (1 + std::exp(-2.0)) / 2, 1e-12);
  EXPECT_NEAR(tr.points[0].concurrence, std::exp(-1.0), 1e-12);
  EXPECT_NEAR(tr.points[0].purity, 0.5676676416183064, 1e-12);
  EXPECT_NEAR(tr.points[0].concurrence, 0.36787944117144233, 1e-12);
}

TEST(Trajectory, DecoherenceLine) {
  const auto tr = trajectory(SemigroupProcess::decoherence(1.3, 0.4), log_grid(1e-3, 13, 120));
  for (const auto& pt : tr.points) EXPECT_NEAR(pt.purity, 0.5 * (1 + pt.concurrence * pt.concurrence), 1e-9);
}

TEST(Trajectory, HomogenizationSpecialLines) {
  const auto pure = trajectory(SemigroupProcess::homogenization(1, 2, 1), log_grid(1e-3, 10, 120));
  for (const auto& pt : pure.points)
    EXPECT_NEAR(pt.concurrence, std::pow(2 * pt.purity - 1, 0.25), 1e-9);

  const auto mixed = trajectory(SemigroupProcess::homogenization(1, 1, 0), log_grid(1e-3, 10, 120));
  for (const auto& pt : mixed.points) EXPECT_NEAR(pt.concurrence, c_max_unital(pt.purity), 1e-9);
}

TEST(Trajectory, ClosedFormsAcrossParameters) {
  const std::vector<SemigroupProcess> processes{
      SemigroupProcess::decoherence(0.5, 2.0),     SemigroupProcess::depolarization(3.0),
      SemigroupProcess::homogenization(1, 2, 1),   SemigroupProcess::homogenization(1, 1.5, 0),
      SemigroupProcess::homogenization(2, 3, 0.4, 0.8), SemigroupProcess::homogenization(1, 0.3, 0.9)};
  for (const auto& p : processes) {
    const auto tr = trajectory(p, log_grid(1e-3 * p.time_scale(), 10 * p.time_scale(), 150));
    for (const auto& pt : tr.points) {
      const auto ref = closed_form(p, pt.t);
      EXPECT_NEAR(pt.purity, ref.P, 1e-9) << to_string(p.kind) << " t=" << pt.t;
      EXPECT_NEAR(pt.concurrence, ref.C, 1e-9) << to_string(p.kind) << " t=" << pt.t;
    }
  }
}

TEST(Trajectory, MonotoneConcurrenceAndPurityRiseForDecay) {
  // P = (1 + e1^2 + e2^2 - e1)/2 rises at late times only when T1/T2 > 1/2.
  const auto tr = trajectory(SemigroupProcess::homogenization(2, 1, 1), linear_grid(0.01, 10, 400));
  bool purity_rises_while_c_falls = false;
  for (std::size_t k = 1; k < tr.points.size(); ++k) {
    EXPECT_LE(tr.points[k].concurrence, tr.points[k - 1].concurrence + 1e-12);
    if (tr.points[k].purity > tr.points[k - 1].purity &&
        tr.points[k].concurrence < tr.points[k - 1].concurrence)
      purity_rises_while_c_falls = true;
  }
  EXPECT_TRUE(purity_rises_while_c_falls);
}

TEST(Trajectory, OmegaDoesNotMatter) {
  const auto grid = log_grid(1e-2, 5, 60);
  for (auto make : {+[](double om) { return SemigroupProcess::decoherence(1, om); },
                    +[](double om) { return SemigroupProcess::homogenization(1, 1.7, 0.6, om); }}) {
    const auto base = trajectory(make(0), grid);
    for (double om : {1.0, 5.0}) {
      const auto tr = trajectory(make(om), grid);
      for (std::size_t k = 0; k < grid.size(); ++k) {
        EXPECT_NEAR(tr.points[k].purity, base.points[k].purity, 1e-12);
        EXPECT_NEAR(tr.points[k].concurrence, base.points[k].concurrence, 1e-9);
      }
    }
  }
}

TEST(Trajectory, InvalidInputs) {
  EXPECT_THROW(trajectory(SemigroupProcess::decoherence(1), {0.5, 0.2}), std::invalid_argument);
  EXPECT_THROW(trajectory(SemigroupProcess::decoherence(1), {-1.0}), std::invalid_argument);
  // T2 > 2 T1 is not completely positive
  EXPECT_THROW(trajectory(SemigroupProcess::homogenization(1, 3, 1), {0.5}), NumericError);
}

TEST(BreakingTime, Depolarization) {
  for (double T : {1.0, 0.25, 4.0})
    EXPECT_NEAR(entanglement_breaking_time(SemigroupProcess::depolarization(T)), T * std::log(3.0), 1e-6 * T);
}

TEST(BreakingTime, InfiniteCases) {
  EXPECT_TRUE(std::isinf(entanglement_breaking_time(SemigroupProcess::decoherence(1))));
  EXPECT_TRUE(std::isinf(entanglement_breaking_time(SemigroupProcess::decoherence(2.5, 1.0))));
  EXPECT_TRUE(std::isinf(entanglement_breaking_time(SemigroupProcess::homogenization(1, 1, 1))));
  EXPECT_TRUE(std::isinf(entanglement_breaking_time(SemigroupProcess::homogenization(1, 2, 1))));
}

TEST(BreakingTime, FiniteForPartiallyMixedFixedPoint) {
  // Root of exp(-t/T2) - (1 - exp(-t/T1)) sqrt(1 - w^2)/2; w = 0, T1 = T2 = 1
  // reduces to the Werner case.
  EXPECT_NEAR(entanglement_breaking_time(SemigroupProcess::homogenization(1, 1, 0)), std::log(3.0), 1e-6);
  const auto p = SemigroupProcess::homogenization(1, 2, 0.5);
  const double t = entanglement_breaking_time(p);
  ASSERT_TRUE(std::isfinite(t));
  EXPECT_NEAR(std::exp(-t / 2) - 0.5 * (1 - std::exp(-t)) * std::sqrt(0.75), 0.0, 1e-9);
}

TEST(Semigroup, Examples) {
  EXPECT_TRUE(verify_semigroup(SemigroupProcess::decoherence(1, 0.7), 0.3, 1.1));
  EXPECT_TRUE(verify_semigroup(SemigroupProcess::depolarization(2), 0.4, 3.3));
  EXPECT_TRUE(verify_semigroup(SemigroupProcess::homogenization(1, 2, 0.5, 1), 0.5, 0.5));
  EXPECT_THROW(verify_semigroup(SemigroupProcess::depolarization(1), -1, 1), std::invalid_argument);
}

TEST(Semigroup, DetectsNonSemigroup) {
  // A family that is not closed under composition must fail the check.
  const auto p = SemigroupProcess::homogenization(1, 2, 0.5, 1);
  const AffineChannel lhs = compose(channel_at(p, 0.5), channel_at(p, 0.5));
  AffineChannel wrong = channel_at(p, 1.0);
  wrong.t[2] += 1e-6;
  EXPECT_GT(max_diff(lhs, wrong), 1e-7);
  EXPECT_LE(max_diff(lhs, channel_at(p, 1.0)), kTol);
}
