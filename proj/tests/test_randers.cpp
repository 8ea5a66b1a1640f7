#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>
#include <gtest/gtest.h>

#include "oracles.hpp"
#include "zermelo/randers.hpp"
#include "zermelo/spray.hpp"

using namespace zermelo;

namespace {

NavigationData curved_quartic() {
  NavigationData d = oracle::quartic();
  d.h.h11 = Expression::parse("1.2 + 0.1*sin(x)");
  d.h.h12 = Expression::parse("0.2*cos(x + y)");
  d.h.h22 = Expression::parse("0.9 + 0.1*y^2");
  return d;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST(ResultantSpeed, QuarticAxisExamples) {
  const NavigationData q = oracle::quartic();
  EXPECT_NEAR(resultant_speed(q, Point2::Zero(), 0.0), 1.8, 1e-15);
  EXPECT_NEAR(resultant_speed(q, Point2::Zero(), std::numbers::pi), 0.2, 1e-15);
}

TEST(ResultantSpeed, NoWindGivesShipSpeed) {
  const NavigationData c = oracle::conformal();
  for (double theta : {0.0, 1.0, 2.5, 4.0}) EXPECT_NEAR(resultant_speed(c, Point2(0, 0.7), theta), std::cos(0.7), 1e-15);
}

TEST(ResultantSpeed, ConvexityViolationThrows) {
  EXPECT_THROW(resultant_speed(oracle::quartic(1.4), Point2(0, 1.35), 0.0), ConvexityError);
}

TEST(EvaluateF, Examples) {
  EXPECT_NEAR(evaluate_F(RandersMetric(oracle::uniform(0, 0, 1)), Point2::Zero(), Tangent2(3, 4)), 5.0, 1e-15);
  const RandersMetric q(oracle::quartic());
  EXPECT_NEAR(evaluate_F(q, Point2::Zero(), Tangent2(1.8, 0)), 1.0, 1e-15);
  EXPECT_NEAR(evaluate_F(q, Point2(0, 1), Tangent2(1, 0)), 1.0 / std::cos(1.0), 1e-14);
  EXPECT_EQ(evaluate_F(q, Point2(0.3, 0.4), Tangent2::Zero()), 0.0);
}

TEST(EvaluateF, MatchesDirectFormula) {
  const NavigationData d = curved_quartic();
  const RandersMetric m(d);
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.25, 1.25), V(-3, 3);
  for (int k = 0; k < 1000; ++k) {
    const Point2 p(X(rng), Y(rng));
    const Tangent2 t(V(rng), V(rng));
    EXPECT_LT(rel(evaluate_F(m, p, t), oracle::randers(d, p, t)), 1e-12);
  }
}

TEST(EvaluateF, PositivelyHomogeneous) {
  const RandersMetric m(curved_quartic());
  std::mt19937_64 rng(19);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.25, 1.25), V(-3, 3);
  for (int k = 0; k < 1000; ++k) {
    const Point2 p(X(rng), Y(rng));
    const Tangent2 t(V(rng), V(rng));
    const double F = evaluate_F(m, p, t);
    EXPECT_GT(F, 0.0);
    for (double c : {0.5, 2.0, 10.0}) EXPECT_LT(rel(evaluate_F(m, p, c * t), c * F), 1e-12);
  }
}

TEST(EvaluateF, NonReversibleAgainstTheCurrent) {
  const RandersMetric q(oracle::quartic());
  // Downstream is cheaper than upstream at the same h-length.
  EXPECT_LT(evaluate_F(q, Point2::Zero(), Tangent2(1, 0)), evaluate_F(q, Point2::Zero(), Tangent2(-1, 0)));
}

TEST(EvaluateF, UnitResultantOnHeadings) {
  for (const NavigationData& d : {oracle::quartic(), curved_quartic()}) {
    const RandersMetric m(d);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> X(-10, 10), Y(-1.25, 1.25);
    for (int k = 0; k < 50; ++k) {
      const Point2 p(X(rng), Y(rng));
      for (int i = 0; i < 64; ++i) {
        const double phi = 2 * std::numbers::pi * i / 64;
        EXPECT_NEAR(evaluate_F(m, p, initial_velocity(d, p, phi)), 1.0, 1e-10);
      }
    }
  }
}

TEST(EvaluateF, ClassicalReductionMatchesUnitSpeedFormula) {
  std::mt19937_64 rng(29);
  std::uniform_real_distribution<double> A(0, 2 * std::numbers::pi), R(0, 0.95), V(-3, 3);
  for (int k = 0; k < 1000; ++k) {
    const double r = R(rng), a = A(rng);
    const Eigen::Vector2d W(r * std::cos(a), r * std::sin(a));
    const Tangent2 t(V(rng), V(rng));
    const RandersMetric m(oracle::uniform(W.x(), W.y(), 1.0));
    EXPECT_LT(rel(evaluate_F(m, Point2::Zero(), t), oracle::classical_randers(W, t)), 1e-12);
  }
}

TEST(EvaluateF, DecreasesWithShipSpeed) {
  const Tangent2 t(0.3, 1.1);
  double prev = std::numeric_limits<double>::infinity();
  for (double s : {0.85, 0.9, 1.0}) {
    const double F = evaluate_F(RandersMetric(oracle::uniform(0.8, 0.0, s)), Point2::Zero(), t);
    EXPECT_LT(F, prev);
    prev = F;
  }
  EXPECT_EQ(prev, evaluate_F(RandersMetric(oracle::uniform(0.8, 0.0, 1.0)), Point2::Zero(), t));
  EXPECT_NEAR(prev, oracle::classical_randers(Eigen::Vector2d(0.8, 0.0), t), 1e-14);
}

TEST(EvaluateF, ConvexityViolationsThrow) {
  const RandersMetric strong(oracle::uniform(1.0, 0.0, 1.0));
  EXPECT_THROW(evaluate_F(strong, Point2::Zero(), Tangent2(1, 0)), ConvexityError);
  const RandersMetric stopped(oracle::uniform(0.0, 0.0, 0.0));
  EXPECT_THROW(evaluate_F(stopped, Point2::Zero(), Tangent2(1, 0)), ConvexityError);
}

TEST(Decompose, NoWindUnitSpeedIsBackground) {
  const RandersDecomposition r = decompose(RandersMetric(oracle::uniform(0, 0, 1)), Point2(1, 2));
  EXPECT_TRUE(r.a_tilde.isApprox(Eigen::Matrix2d::Identity(), 1e-15));
  EXPECT_EQ(r.b_tilde.norm(), 0.0);
  EXPECT_DOUBLE_EQ(r.lambda_tilde, 1.0);
}

TEST(Decompose, NoWindVariableSpeedIsConformal) {
  const double y = 0.6;
  const RandersDecomposition r = decompose(RandersMetric(oracle::conformal()), Point2(0, y));
  EXPECT_TRUE(r.a_tilde.isApprox(Eigen::Matrix2d::Identity() / std::pow(std::cos(y), 2), 1e-14));
  EXPECT_EQ(r.b_tilde.norm(), 0.0);
}

TEST(Decompose, QuarticAtOrigin) {
  const RandersDecomposition r = decompose(RandersMetric(oracle::quartic()), Point2::Zero());
  EXPECT_NEAR(r.lambda_tilde, 0.36, 1e-15);
  EXPECT_NEAR(r.b_tilde.x(), -0.8 / 0.36, 1e-14);
  EXPECT_EQ(r.b_tilde.y(), 0.0);
  EXPECT_NEAR(r.a_tilde(0, 0), 1 / 0.36 + 0.64 / (0.36 * 0.36), 1e-13);
  EXPECT_NEAR(r.a_tilde(1, 1), 1 / 0.36, 1e-14);
  EXPECT_EQ(r.a_tilde(0, 1), 0.0);
}

TEST(Decompose, AlphaPlusBetaIsF) {
  const NavigationData d = curved_quartic();
  const RandersMetric m(d);
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.25, 1.25), V(-3, 3);
  for (int k = 0; k < 1000; ++k) {
    const Point2 p(X(rng), Y(rng));
    const Tangent2 t(V(rng), V(rng));
    const RandersDecomposition r = decompose(m, p);
    EXPECT_LT(rel(r.alpha(t) + r.beta(t), evaluate_F(m, p, t)), 1e-12);
    EXPECT_GT(r.a_tilde(0, 0), 0.0);
    EXPECT_GT(r.a_tilde.determinant(), 0.0);
    EXPECT_LT(r.b_norm(), 1.0);
  }
}

TEST(EffectiveWind, Examples) {
  const EffectiveWind a = effective_wind(RandersMetric(oracle::uniform(0.8, 0, 1)), Point2::Zero());
  EXPECT_EQ(a.w, Eigen::Vector2d(0.8, 0));
  EXPECT_TRUE(a.mild());
  const EffectiveWind b = effective_wind(RandersMetric(oracle::uniform(0.8, 0, 0.5)), Point2::Zero());
  EXPECT_EQ(b.w, Eigen::Vector2d(1.6, 0));
  EXPECT_NEAR(b.h_norm, 1.6, 1e-15);
  EXPECT_FALSE(b.mild());
  const EffectiveWind c = effective_wind(RandersMetric(oracle::conformal()), Point2(0, 0.4));
  EXPECT_EQ(c.w.norm(), 0.0);
  EXPECT_THROW(effective_wind(RandersMetric(oracle::uniform(0, 0, 0)), Point2::Zero()), DomainError);
}

TEST(EffectiveWind, RescaledUnitSpeedProblemHasSameNorm) {
  // F~ with (W, s) equals (1/s) times the unit-speed metric of W/s.
  const NavigationData q = oracle::quartic();
  const RandersMetric m(q);
  const Point2 p(0.4, 0.9);
  const double s = q.speed(p);
  const EffectiveWind w = effective_wind(m, p);
  const RandersMetric unit(oracle::uniform(w.w.x(), w.w.y(), 1.0));
  for (const Tangent2& t : {Tangent2(1, 0), Tangent2(-0.3, 0.7), Tangent2(0.2, -2)})
    EXPECT_LT(rel(evaluate_F(m, p, t), evaluate_F(unit, Point2::Zero(), t) / s), 1e-13);
}

TEST(Jet, FlatQuadraticForm) {
  const SecondOrderJet j = jet(RandersMetric(oracle::uniform(0, 0, 1)), Point2(1, 1), Tangent2(0.3, -0.4));
  EXPECT_NEAR(j.L, 0.125, 1e-15);
  EXPECT_NEAR(j.L_u, 0.3, 1e-15);
  EXPECT_NEAR(j.L_v, -0.4, 1e-15);
  EXPECT_NEAR(j.L_uu, 1.0, 1e-14);
  EXPECT_NEAR(j.L_vv, 1.0, 1e-14);
  EXPECT_NEAR(j.L_uv, 0.0, 1e-14);
  for (double d : {j.L_x, j.L_y, j.L_xu, j.L_xv, j.L_yu, j.L_yv}) EXPECT_EQ(d, 0.0);
}

TEST(Jet, ConformalPositionDerivative) {
  const double y = 0.7, u = 0.4, v = -1.1;
  const SecondOrderJet j = jet(RandersMetric(oracle::conformal()), Point2(2.0, y), Tangent2(u, v));
  const double c2 = std::cos(y) * std::cos(y);
  EXPECT_NEAR(j.L, (u * u + v * v) / (2 * c2), 1e-14);
  EXPECT_NEAR(j.L_y, (u * u + v * v) * std::tan(y) / c2, 1e-13);
  EXPECT_NEAR(j.L_x, 0.0, 1e-15);
  EXPECT_NEAR(j.L_uu, 1 / c2, 1e-13);
}

TEST(Jet, MatchesFiniteDifferenceOracle) {
  const NavigationData d = curved_quartic();
  const RandersMetric m(d);
  std::mt19937_64 rng(37);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.2, 1.2), V(-2, 2);
  auto check = [&](const Point2& p, const Tangent2& t) {
    const SecondOrderJet a = jet(m, p, t);
    const SecondOrderJet b = oracle::fd_jet(d, p, t);
    const double s1 = std::max({std::abs(b.L_x), std::abs(b.L_y), std::abs(b.L_u), std::abs(b.L_v)});
    const double s2 = std::max({std::abs(b.L_uu), std::abs(b.L_uv), std::abs(b.L_vv), std::abs(b.L_xu),
                                std::abs(b.L_xv), std::abs(b.L_yu), std::abs(b.L_yv)});
    EXPECT_LT(rel(a.L, b.L), 1e-12);
    for (auto [x, y] : {std::pair{a.L_x, b.L_x}, {a.L_y, b.L_y}, {a.L_u, b.L_u}, {a.L_v, b.L_v}})
      EXPECT_NEAR(x, y, 1e-5 * s1);
    for (auto [x, y] : {std::pair{a.L_uu, b.L_uu}, {a.L_uv, b.L_uv}, {a.L_vv, b.L_vv}, {a.L_xu, b.L_xu},
                        {a.L_xv, b.L_xv}, {a.L_yu, b.L_yu}, {a.L_yv, b.L_yv}})
      EXPECT_NEAR(x, y, 1e-5 * s2);
  };
  check(Point2::Zero(), Tangent2(1, 0));
  for (int k = 0; k < 200; ++k) check(Point2(X(rng), Y(rng)), Tangent2(V(rng), V(rng)));
}

TEST(Jet, FundamentalFormPositive) {
  const RandersMetric m(curved_quartic());
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.25, 1.25), V(-2, 2);
  for (int k = 0; k < 1000; ++k) {
    const SecondOrderJet j = jet(m, Point2(X(rng), Y(rng)), Tangent2(V(rng), V(rng)));
    EXPECT_GT(j.L_uu, 0.0);
    EXPECT_GT(j.fundamental_det(), 0.0);
  }
}

TEST(Jet, ZeroVectorRejected) {
  EXPECT_THROW(jet(RandersMetric(oracle::quartic()), Point2::Zero(), Tangent2::Zero()), DegenerateVectorError);
}

TEST(Reconstruct, IdentityRoundTrip) {
  const auto r = reconstruct_navigation(decompose(RandersMetric(oracle::uniform(0, 0, 1)), Point2::Zero()), 1.0);
  EXPECT_TRUE(r.h.isApprox(Eigen::Matrix2d::Identity(), 1e-15));
  EXPECT_LT(r.wind.norm(), 1e-15);
}

TEST(Reconstruct, QuarticAtOrigin) {
  const auto r = reconstruct_navigation(decompose(RandersMetric(oracle::quartic()), Point2::Zero()), 1.0);
  EXPECT_TRUE(r.h.isApprox(Eigen::Matrix2d::Identity(), 1e-12));
  EXPECT_NEAR(r.wind.x(), 0.8, 1e-12);
  EXPECT_NEAR(r.wind.y(), 0.0, 1e-15);
}

TEST(Reconstruct, ConformalNeedsTheSpeed) {
  const Point2 p(0, 1);
  const auto r = reconstruct_navigation(decompose(RandersMetric(oracle::conformal()), p), std::cos(1.0));
  EXPECT_TRUE(r.h.isApprox(Eigen::Matrix2d::Identity(), 1e-12));
  EXPECT_LT(r.wind.norm(), 1e-15);
  // Another speed picks another member of the family: h scales with s^2.
  const auto r2 = reconstruct_navigation(decompose(RandersMetric(oracle::conformal()), p), 0.5 * std::cos(1.0));
  EXPECT_TRUE(r2.h.isApprox(0.25 * Eigen::Matrix2d::Identity(), 1e-12));
}

TEST(Reconstruct, RandomRoundTrips) {
  const NavigationData d = curved_quartic();
  const RandersMetric m(d);
  std::mt19937_64 rng(43);
  std::uniform_real_distribution<double> X(-5, 5), Y(-1.25, 1.25);
  for (int k = 0; k < 500; ++k) {
    const Point2 p(X(rng), Y(rng));
    const auto s = d.sample(p);
    const auto r = reconstruct_navigation(decompose(m, p), s.speed);
    EXPECT_LT((r.h - s.h).norm() / s.h.norm(), 1e-10);
    EXPECT_LT((r.wind - s.wind).norm(), 1e-10 * std::max(1.0, s.wind.norm()));
  }
}

TEST(Reconstruct, InconsistentInputsThrow) {
  const RandersDecomposition good = decompose(RandersMetric(oracle::quartic()), Point2::Zero());
  EXPECT_THROW(reconstruct_navigation(good, 1.2), ReconstructionError);
  EXPECT_THROW(reconstruct_navigation(good, 0.0), ReconstructionError);
  RandersDecomposition bad = good;
  bad.b_tilde *= 10.0;  // ||b~|| > 1
  EXPECT_THROW(reconstruct_navigation(bad, 1.0), ReconstructionError);
  RandersDecomposition indefinite = good;
  indefinite.a_tilde(1, 1) = -1.0;
  EXPECT_THROW(reconstruct_navigation(indefinite, 1.0), ReconstructionError);
}
