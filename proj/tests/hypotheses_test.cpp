#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "lcycle/families.hpp"
#include "lcycle/hypotheses.hpp"

namespace {

using FD = lcycle::FunctionDescriptor;
using BD = lcycle::BivariateDescriptor;
using lcycle::AnalysisWindow;
using lcycle::RegionTag;
using lcycle::Verdict;

const lcycle::PlanarSystem& fig2() {
  static const auto sys = lcycle::build_bump_system(lcycle::figure2_params());
  return sys;
}

const lcycle::HypothesisEntry& entry(const std::vector<lcycle::HypothesisEntry>& es, const std::string& key) {
  const auto it = std::find_if(es.begin(), es.end(), [&](const auto& e) { return e.key == key; });
  if (it == es.end()) throw std::runtime_error("missing " + key);
  return *it;
}

// psi = +-1 declared on an F that carries no curves of its own
lcycle::PlanarSystem with_unit_curves(BD F) {
  return lcycle::PlanarSystem(FD::identity(), FD::identity(), std::move(F), {}, FD::constant(1.0),
                              FD::constant(-1.0));
}

TEST(Classify, BumpPoints) {
  EXPECT_EQ(lcycle::classify_region(fig2(), 0.5, 0.0), RegionTag::D1_lt);
  EXPECT_EQ(lcycle::classify_region(fig2(), 1.5, 0.0), RegionTag::D1_gt);
  EXPECT_EQ(lcycle::classify_region(fig2(), -0.5, 0.3), RegionTag::D2_gt);
  EXPECT_EQ(lcycle::classify_region(fig2(), -1.5, 0.3), RegionTag::D2_lt);
  EXPECT_EQ(lcycle::classify_region(fig2(), 0.0, 0.7), RegionTag::off_strip);
  const double y = 0.37;
  EXPECT_EQ(lcycle::classify_region(fig2(), fig2().psi(1)(y), y), RegionTag::off_strip);
  EXPECT_EQ(lcycle::classify_region(fig2(), fig2().psi(2)(y), y), RegionTag::off_strip);
}

TEST(Classify, NeedsCurves) {
  const lcycle::PlanarSystem bare(FD::identity(), FD::identity(), BD::lienard(FD::constant(0.0)));
  EXPECT_THROW(lcycle::classify_region(bare, 1.0, 0.0), lcycle::MissingCurves);
}

TEST(ClassifyProperty, PartitionConsistentWithOrdering) {
  const AnalysisWindow w;
  for (int i = 0; i < w.nx; ++i) {
    for (int k = 0; k < w.ny; ++k) {
      const double x = w.x_at(i);
      const double y = w.y_at(k);
      const auto tag = lcycle::classify_region(fig2(), x, y);
      const double p1 = fig2().psi(1)(y);
      const double p2 = fig2().psi(2)(y);
      ASSERT_LT(p2, 0.0);
      ASSERT_GT(p1, 0.0);
      switch (tag) {
        case RegionTag::D1_gt: ASSERT_GT(x, p1); break;
        case RegionTag::D1_lt: ASSERT_TRUE(0.0 < x && x < p1); break;
        case RegionTag::D2_gt: ASSERT_TRUE(p2 < x && x < 0.0); break;
        case RegionTag::D2_lt: ASSERT_LT(x, p2); break;
        case RegionTag::off_strip: ASSERT_TRUE(x == 0.0 || x == p1 || x == p2); break;
      }
    }
  }
}

TEST(CheckB, BumpPasses) {
  const auto es = lcycle::check_B(fig2(), AnalysisWindow{});
  ASSERT_EQ(es.size(), 4u);
  for (const auto& e : es) EXPECT_EQ(e.verdict, Verdict::pass) << e.key;
  EXPECT_EQ(entry(es, "B3").violations, 0);
}

TEST(CheckB, NegativeBumpFailsAtOrigin) {
  const auto sys = lcycle::PlanarSystem(
      FD::identity(), FD::identity(),
      BD::special_form(FD::gauss_bump(-1.0, 1.0, 0.5), FD::negated(FD::gauss_bump(0.25, 1.0, 0.75))));
  const auto es = lcycle::check_B(sys, AnalysisWindow{});
  const auto& b1 = entry(es, "B1");
  EXPECT_EQ(b1.verdict, Verdict::fail);
  const bool at_origin = std::any_of(b1.witnesses.begin(), b1.witnesses.end(),
                                     [](const auto& w) { return w.y == 0.0 && w.value < 0.0; });
  EXPECT_TRUE(at_origin);
  EXPECT_EQ(entry(es, "B2").verdict, Verdict::pass);
}

TEST(CheckB, SpecialFormResidualExactlyZero) {
  const auto& sys = fig2();
  for (double y : {-1.7, -0.2, 0.0, 0.9}) {
    EXPECT_EQ(sys.F()(sys.psi(1)(y), y), 0.0);
    EXPECT_EQ(sys.F()(sys.psi(2)(y), y), 0.0);
  }
}

TEST(CheckC, IdentityPassesC1) {
  const auto es = lcycle::check_C(fig2(), AnalysisWindow{});
  EXPECT_EQ(entry(es, "C1").verdict, Verdict::pass);
  EXPECT_EQ(entry(es, "C2").verdict, Verdict::pass);
}

TEST(CheckC, ZeroFFailsStrictAndWeakened) {
  const auto h = lcycle::build_harmonic();
  EXPECT_EQ(entry(lcycle::check_C(h, AnalysisWindow{}), "C2").verdict, Verdict::fail);
  EXPECT_EQ(entry(lcycle::check_C(h, AnalysisWindow{}, true), "C2'").verdict, Verdict::fail);
}

TEST(CheckC, WeakenedAcceptsBump) {
  EXPECT_EQ(entry(lcycle::check_C(fig2(), AnalysisWindow{}, true), "C2'").verdict, Verdict::pass);
}

TEST(CheckC, C1FailsForOddSignPhi) {
  const lcycle::PlanarSystem sys(FD::negated(FD::identity()), FD::identity(), BD::lienard(FD::constant(0.0)));
  EXPECT_EQ(entry(lcycle::check_C(sys, AnalysisWindow{}), "C1").verdict, Verdict::fail);
}

TEST(CheckD, BumpPasses) {
  const auto es = lcycle::check_D(fig2(), AnalysisWindow{});
  EXPECT_EQ(entry(es, "D1").verdict, Verdict::pass);
  EXPECT_EQ(entry(es, "D2").verdict, Verdict::pass);
  EXPECT_GT(entry(es, "D1").samples, 0);
}

TEST(CheckD, ConstantLienardFailsWithGenuineWitness) {
  const auto sys = with_unit_curves(BD::lienard(FD::constant(0.1)));
  const AnalysisWindow w;
  const auto& d1 = entry(lcycle::check_D(sys, w), "D1");
  ASSERT_EQ(d1.verdict, Verdict::fail);
  ASSERT_FALSE(d1.witnesses.empty());
  // the ratio 0.1/y at y=1 and y=2 decreases
  EXPECT_LT(0.1 / 2.0, 0.1 / 1.0);
  const double step = (w.y1 - w.y0) / (w.ny - 1);
  for (const auto& wit : d1.witnesses) {
    const double now = sys.F()(wit.x, wit.y) / sys.phi()(wit.y);
    const double before = sys.F()(wit.x, wit.y - step) / sys.phi()(wit.y - step);
    EXPECT_LE(now - before, 1e-10);
    EXPECT_EQ(lcycle::classify_region(sys, wit.x, wit.y), RegionTag::D1_lt);
  }
}

TEST(CheckD, ColumnsOutsideRegionContributeNothing) {
  // every column lies at x > psi1 = 1
  const auto sys = with_unit_curves(BD::lienard(FD::constant(0.1)));
  const AnalysisWindow w{1.5, 2.0, -2.0, 2.0, 16, 16};
  const auto es = lcycle::check_D(sys, w);
  EXPECT_EQ(entry(es, "D1").samples, 0);
  EXPECT_EQ(entry(es, "D1").verdict, Verdict::pass);
}

TEST(CheckE, BumpPasses) { EXPECT_EQ(lcycle::check_E(fig2(), AnalysisWindow{}).verdict, Verdict::pass); }

TEST(CheckE, ConstantCurvesPositiveAtTwo) {
  const auto sys = lcycle::build_constant_curves(std::sqrt(3.0));
  EXPECT_EQ(lcycle::classify_region(sys, 2.0, 0.0), RegionTag::D1_gt);
  EXPECT_NEAR(sys.F()(2.0, 0.0), 2.0, 1e-14);
}

TEST(CheckE, NegatedFormFailsInD1gt) {
  const auto& sf = *fig2().F().as_special_form();
  const lcycle::PlanarSystem sys(FD::identity(), FD::identity(), BD::scaled(fig2().F(), -1.0), {}, sf.psi1, sf.psi2);
  const auto e = lcycle::check_E(sys, AnalysisWindow{});
  ASSERT_EQ(e.verdict, Verdict::fail);
  const bool in_d1gt = std::any_of(e.witnesses.begin(), e.witnesses.end(), [&](const auto& w) {
    return lcycle::classify_region(sys, w.x, w.y) == RegionTag::D1_gt && sys.F()(w.x, w.y) < 0.0;
  });
  EXPECT_TRUE(in_d1gt);
}

TEST(Aj, VanishesAtOrigin) {
  EXPECT_EQ(lcycle::A_j(fig2(), 1, 0.0), 0.0);
  EXPECT_EQ(lcycle::A_j(fig2(), 2, 0.0), 0.0);
}

TEST(Aj, BumpAtOne) {
  // 30-digit reference of psi1 (psi1 - psi2)(phi + g(psi1) psi1') at y = 1
  const double ref = 0.99962494002905126;
  EXPECT_NEAR(lcycle::A_j(fig2(), 1, 1.0), ref, 1e-12);
  EXPECT_GT(lcycle::A_j(fig2(), 1, 1.0), 0.0);
}

TEST(Aj, ConstantCurvesClosedForm) {
  const auto sys = lcycle::build_constant_curves(std::sqrt(3.0));
  for (double y : {-2.0, -0.5, 0.25, 1.0, 3.0}) {
    // y * sqrt3 * (2 sqrt3) = 6y, since dF/dy = 0
    EXPECT_NEAR(lcycle::A_j(sys, 1, y), y * std::sqrt(3.0) * (2.0 * std::sqrt(3.0)), 1e-12);
  }
}

TEST(Aj, NeedsCurves) {
  const lcycle::PlanarSystem bare(FD::identity(), FD::identity(), BD::lienard(FD::constant(0.0)));
  EXPECT_THROW(lcycle::A_j(bare, 1, 0.5), lcycle::MissingCurves);
}

TEST(CheckF, BumpAndConstantsPass) {
  EXPECT_EQ(lcycle::check_F(fig2(), AnalysisWindow{}).verdict, Verdict::pass);
  EXPECT_EQ(lcycle::check_F(lcycle::build_constant_curves(std::sqrt(3.0)), AnalysisWindow{}).verdict, Verdict::pass);
  EXPECT_EQ(lcycle::check_Fprime(fig2(), AnalysisWindow{}).verdict, Verdict::pass);
  EXPECT_EQ(lcycle::check_Fprime(lcycle::build_constant_curves(2.0), AnalysisWindow{}).verdict, Verdict::pass);
}

TEST(CheckF, SteepBumpFails) {
  lcycle::BumpParams p;
  p.c1 = 2.0;
  p.d1 = 2.0;
  p.e1 = 0.1;
  const auto sys = lcycle::build_bump_system(p);
  const auto e = lcycle::check_F(sys, AnalysisWindow{});
  ASSERT_EQ(e.verdict, Verdict::fail);
  for (const auto& w : e.witnesses) {
    const int j = w.x > 0.0 ? 1 : 2;
    EXPECT_LE(lcycle::A_j(sys, j, w.y) * w.y, 1e-12 * std::abs(w.y));
  }
  EXPECT_EQ(lcycle::check_Fprime(sys, AnalysisWindow{}).verdict, Verdict::fail);
}

TEST(CheckF, FprimeNeedsSpecialForm) {
  EXPECT_THROW(lcycle::check_Fprime(lcycle::build_harmonic(), AnalysisWindow{}), lcycle::NotSpecialForm);
}

TEST(CheckFProperty, AgreesWithFprimeAndClosedForm) {
  std::mt19937_64 rng(424242);
  std::uniform_real_distribution<double> cd(0.05, 2.5);
  std::uniform_real_distribution<double> ed(0.05, 1.0);
  std::uniform_real_distribution<double> yd(-3.0, 3.0);
  int passes = 0;
  int fails = 0;
  for (int draw = 0; draw < 20; ++draw) {
    const lcycle::BumpParams p{cd(rng), cd(rng), ed(rng), cd(rng), cd(rng), ed(rng)};
    const auto sys = lcycle::build_bump_system(p);
    const AnalysisWindow w{-3, 3, -3, 3, 64, 256};
    for (const auto& e : lcycle::check_B(sys, w)) ASSERT_EQ(e.verdict, Verdict::pass);
    const auto vf = lcycle::check_F(sys, w).verdict;
    const auto vfp = lcycle::check_Fprime(sys, w).verdict;
    ASSERT_EQ(vf, vfp) << "draw " << draw;
    (vf == Verdict::pass ? passes : fails)++;
    for (int s = 0; s < 100; ++s) {
      const double y = yd(rng);
      const double a = lcycle::A_j(sys, 1, y);
      const double p1 = sys.psi(1)(y);
      const double closed = p1 * (p1 - sys.psi(2)(y)) * lcycle::fprime_rate(sys, 1, y);
      ASSERT_LE(std::abs(a - closed), 1e-9 * (1 + std::abs(a)));
    }
  }
  // the draws exercise both verdicts
  EXPECT_GT(passes, 0);
  EXPECT_GT(fails, 0);
}

TEST(Zeta, BumpSigns) {
  EXPECT_LT(std::abs(lcycle::solve_zeta(fig2(), 1e-4, 4.0)), 0.05);
  EXPECT_LT(lcycle::solve_zeta(fig2(), 0.5, 4.0), 0.0);
  EXPECT_GT(lcycle::solve_zeta(fig2(), -0.5, 4.0), 0.0);
}

TEST(Zeta, ResidualAndUniqueness) {
  const auto& sys = fig2();
  for (double x : {-0.95, -0.6, -0.2, -0.01, 0.01, 0.3, 0.7, 0.99}) {
    const double z = lcycle::solve_zeta(sys, x, 4.0);
    EXPECT_LE(std::abs(sys.phi()(z) - sys.F()(x, z)), 1e-10) << x;
    // dense scan oracle over the inner region of the column
    int changes = 0;
    bool have = false;
    double prev = 0.0;
    for (int k = 0; k < 10000; ++k) {
      const double y = -8.0 + 16.0 * k / 9999.0;
      if (lcycle::classify_region(sys, x, y) != (x > 0 ? RegionTag::D1_lt : RegionTag::D2_gt)) {
        have = false;
        continue;
      }
      const double h = sys.phi()(y) - sys.F()(x, y);
      if (have && ((prev < 0) != (h < 0))) ++changes;
      prev = h;
      have = true;
    }
    EXPECT_EQ(changes, 1) << x;
  }
}

TEST(Zeta, Preconditions) {
  EXPECT_THROW(lcycle::solve_zeta(fig2(), 1.5, 4.0), lcycle::InvalidArgument);
  EXPECT_THROW(lcycle::solve_zeta(fig2(), 0.0, 4.0), lcycle::InvalidArgument);
  EXPECT_THROW(lcycle::solve_zeta(lcycle::PlanarSystem(FD::identity(), FD::identity(), BD::lienard(FD{})), 0.5, 4.0),
               lcycle::MissingCurves);
}

TEST(Zeta, NoBracketCarriesRange) {
  // F = 0 and phi = y + 10: the only root, y = -10, lies beyond the widened range [-2, 2]
  const lcycle::PlanarSystem sys(FD::polynomial({10.0, 1.0}), FD::identity(), BD::lienard(FD{}), {},
                                 FD::constant(1.0), FD::constant(-1.0));
  try {
    lcycle::solve_zeta(sys, 0.5, 1.0);
    FAIL() << "expected NoBracket";
  } catch (const lcycle::NoBracket& e) {
    EXPECT_EQ(e.lo(), -2.0);
    EXPECT_EQ(e.hi(), 2.0);
  }
}

TEST(Zeta, SignReportBump) {
  const auto rep = lcycle::check_zeta_signs(fig2(), 25, 4.0);
  EXPECT_EQ(rep.entry.verdict, Verdict::pass);
  EXPECT_EQ(rep.left.size(), 25u);
  EXPECT_EQ(rep.boundary.size(), 4u);
  for (const auto& b : rep.boundary) EXPECT_LE(std::abs(b.zeta), 1e-3);
}

TEST(Report, BumpAllPass) {
  const auto rep = lcycle::full_report(fig2(), AnalysisWindow{});
  EXPECT_TRUE(rep.pass());
  EXPECT_EQ(rep.entries.size(), 11u);  // C2' only with the weakened option
  for (const auto& e : rep.entries) EXPECT_EQ(e.verdict, Verdict::pass) << e.key;
  for (std::size_t i = 1; i < rep.entries.size(); ++i) {
    EXPECT_LT(lcycle::hypothesis_rank(rep.entries[i - 1].key), lcycle::hypothesis_rank(rep.entries[i].key));
  }
}

TEST(Report, HarmonicFailsOnC2) {
  const auto rep = lcycle::full_report(lcycle::build_harmonic(), AnalysisWindow{});
  EXPECT_FALSE(rep.pass());
  EXPECT_EQ(rep.verdict("C2"), Verdict::fail);
  EXPECT_EQ(rep.verdict("F'"), Verdict::skipped);
}

TEST(Report, RaisedD1Fails) {
  auto p = lcycle::figure2_params();
  p.d1 = 2.0;
  EXPECT_FALSE(lcycle::check_constraints(p).pass());
  const auto rep = lcycle::full_report(lcycle::build_bump_system(p), AnalysisWindow{});
  EXPECT_FALSE(rep.pass());
  const bool any = rep.verdict("D1") == Verdict::fail || rep.verdict("D2") == Verdict::fail ||
                   rep.verdict("F") == Verdict::fail || rep.verdict("F'") == Verdict::fail;
  EXPECT_TRUE(any);
}

TEST(Report, JsonShape) {
  const auto j = lcycle::to_json(lcycle::full_report(lcycle::build_harmonic(), AnalysisWindow{}));
  EXPECT_EQ(j["overall"], "fail");
  ASSERT_TRUE(j["entries"].is_array());
  const auto& c2 = *std::find_if(j["entries"].begin(), j["entries"].end(),
                                 [](const auto& e) { return e["hypothesis"] == "C2"; });
  EXPECT_EQ(c2["verdict"], "fail");
  EXPECT_TRUE(c2["samples"].get<long>() > 0);
  EXPECT_FALSE(c2["witnesses"].empty());
  EXPECT_TRUE(c2["witnesses"][0].contains("value"));
}

TEST(Report, WindowValidation) {
  EXPECT_THROW(lcycle::full_report(fig2(), AnalysisWindow{1, -1, -2, 2}), lcycle::InvalidArgument);
  const lcycle::PlanarSystem narrow(FD::identity(), FD::identity(), BD::lienard(FD{}), lcycle::Domain{-1, 1});
  EXPECT_THROW(lcycle::full_report(narrow, AnalysisWindow{}), lcycle::InvalidArgument);
}

}  // namespace
