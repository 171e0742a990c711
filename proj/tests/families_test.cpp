#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcycle/families.hpp"

namespace {

using lcycle::BumpParams;

TEST(Bump, PresetValues) {
  const auto p = lcycle::figure2_params();
  const auto sys = lcycle::build_bump_system(p);
  EXPECT_EQ(sys.psi(1)(0.0), 1.0);
  EXPECT_EQ(sys.psi(2)(0.0), -1.0);
  EXPECT_EQ(p.r(), 1.0);
  EXPECT_NEAR(sys.psi(1)(10.0), p.e1, 1e-20);
  EXPECT_EQ(sys.domain().a, -lcycle::kInf);
  EXPECT_EQ(sys.phi()(0.3), 0.3);
}

TEST(Bump, RejectsNonPositive) {
  BumpParams p;
  p.d2 = 0.0;
  EXPECT_THROW(lcycle::build_bump_system(p), lcycle::NonPositiveParam);
  p = BumpParams{};
  p.e1 = -0.1;
  EXPECT_THROW(lcycle::build_bump_system(p), lcycle::NonPositiveParam);
  EXPECT_THROW(lcycle::build_constant_curves(0.0), lcycle::NonPositiveParam);
}

TEST(Constraints, PresetParams) {
  const auto rep = lcycle::check_constraints(lcycle::figure2_params());
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.r, 1.0);
  EXPECT_EQ(rep.equal_radius_residual, 0.0);
  EXPECT_EQ(rep.slope_bound[0], 0.25);
  EXPECT_EQ(rep.slope_bound[1], 0.25);
  EXPECT_EQ(rep.slope_margin[0], 0.25);
  EXPECT_EQ(rep.slope_margin[1], 0.25);
}

TEST(Constraints, SteepBumpBreaksSlopeCondition) {
  BumpParams p;
  p.c1 = 2.0;
  p.d1 = 2.0;
  p.e1 = 0.1;
  const auto rep = lcycle::check_constraints(p);
  EXPECT_FALSE(rep.slope_ok);
  EXPECT_NEAR(rep.slope_bound[0], 4.0 * 2.1 * 2.1, 1e-12);
}

TEST(Constraints, PerturbedRadius) {
  auto p = lcycle::figure2_params();
  p.c2 = 0.26;
  const auto rep = lcycle::check_constraints(p);
  EXPECT_FALSE(rep.equal_radius);
  EXPECT_NEAR(rep.equal_radius_residual, -0.01, 1e-15);
  EXPECT_FALSE(rep.pass());
}

TEST(TangentCircle, Bump) {
  const auto p = lcycle::figure2_params();
  const auto rep = lcycle::check_tangent_circle(lcycle::build_bump_system(p), p);
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.samples, 10000);
  EXPECT_GT(rep.min_margin_right, 0.0);
  EXPECT_GT(rep.min_margin_left, 0.0);
  EXPECT_FALSE(rep.witness_angle.has_value());
}

TEST(TangentCircle, ViolatingParams) {
  const BumpParams p{2.0, 2.0, 0.1, 0.1, 0.1, 2.0};
  const auto sys = lcycle::build_bump_system(p);
  ASSERT_FALSE(lcycle::check_constraints(p).slope_ok);
  const auto rep = lcycle::check_tangent_circle(sys, p);
  EXPECT_TRUE(rep.tangency);
  EXPECT_FALSE(rep.containment);
  ASSERT_TRUE(rep.witness_angle.has_value());
  const double th = *rep.witness_angle;
  const double x = p.r() * std::cos(th);
  const double y = p.r() * std::sin(th);
  EXPECT_TRUE(x > 0.0 ? x >= sys.psi(1)(y) : x <= sys.psi(2)(y));
}

TEST(ConstantCurves, CubicExpansion) {
  const auto sys = lcycle::build_constant_curves(std::sqrt(3.0));
  for (double x : {-2.0, -0.4, 0.0, 1.1, 2.5}) {
    for (double y : {-1.0, 0.7}) EXPECT_NEAR(sys.F()(x, y), x * x * x - 3 * x, 1e-12);
  }
}

TEST(Presets, Names) {
  for (const auto& name : lcycle::preset_names()) {
    const auto p = lcycle::make_preset(name);
    EXPECT_EQ(p.name, name);
    EXPECT_NO_THROW(p.window.validate(p.system));
  }
  EXPECT_THROW(lcycle::make_preset("lorenz"), lcycle::InvalidArgument);
}

TEST(FamilyProperty, ConstrainedDrawsPassEveryHypothesis) {
  std::mt19937_64 rng(31337);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  int accepted = 0;
  int tries = 0;
  while (accepted < 12 && tries < 200000) {
    ++tries;
    BumpParams p{1.0 - u(rng), 1.0 - u(rng), 1.0 - u(rng), 1.0 - u(rng), 1.0 - u(rng), 0.0};
    // condition (1) fixes e2; reject when it is not positive
    p.e2 = p.c1 + p.e1 - p.c2;
    if (!(p.e2 > 0.0) || p.e2 > 1.0) continue;
    if (!lcycle::check_constraints(p).pass()) continue;
    ++accepted;
    const double r = p.r();
    const auto sys = lcycle::build_bump_system(p);
    EXPECT_EQ(sys.psi(1)(0.0), r);
    EXPECT_EQ(sys.psi(2)(0.0), -(p.c2 + p.e2));
    const auto rep = lcycle::full_report(sys, lcycle::AnalysisWindow{-2 * r, 2 * r, -2 * r, 2 * r});
    for (const auto& e : rep.entries) EXPECT_EQ(e.verdict, lcycle::Verdict::pass) << e.key << " draw " << accepted;
    EXPECT_TRUE(lcycle::check_tangent_circle(sys, p, 2000).pass());
  }
  EXPECT_GE(accepted, 10);
}

}  // namespace
