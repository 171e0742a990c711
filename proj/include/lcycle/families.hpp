#ifndef LCYCLE_FAMILIES_HPP
#define LCYCLE_FAMILIES_HPP

/// \file
/// Example families: Gaussian-bump zero curves with phi = g = id, the
/// constant-curve cubic, and named presets.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "lcycle/error.hpp"
#include "lcycle/hypotheses.hpp"
#include "lcycle/system.hpp"

namespace lcycle {

/// psi1(y) = c1 exp(-d1 y^2) + e1,  psi2(y) = -(c2 exp(-d2 y^2) + e2).
struct BumpParams {
  double c1 = 0.5, d1 = 0.5, e1 = 0.5;
  double c2 = 0.25, d2 = 1.0, e2 = 0.75;

  double r() const { return c1 + e1; }
};

inline BumpParams figure2_params() { return {}; }

inline PlanarSystem build_bump_system(const BumpParams& p) {
  for (double v : {p.c1, p.d1, p.e1, p.c2, p.d2, p.e2}) {
    if (!(v > 0.0)) throw NonPositiveParam("bump parameters must all be positive");
  }
  auto psi1 = FunctionDescriptor::gauss_bump(p.c1, p.d1, p.e1);
  auto psi2 = FunctionDescriptor::negated(FunctionDescriptor::gauss_bump(p.c2, p.d2, p.e2));
  return PlanarSystem(FunctionDescriptor::identity(), FunctionDescriptor::identity(),
                      BivariateDescriptor::special_form(std::move(psi1), std::move(psi2)));
}

struct ConstraintReport {
  double r = 0.0;
  double equal_radius_residual = 0.0;  ///< (c1 + e1) - (c2 + e2)
  bool equal_radius = false;
  double slope_bound[2] = {0.0, 0.0};  ///< c_j d_j max{r, r^2}
  double slope_margin[2] = {0.0, 0.0};  ///< 1/2 - slope_bound[j]
  bool slope_ok = false;

  bool pass() const { return equal_radius && slope_ok; }
};

inline constexpr double kConstraintTol = 1e-12;

/// (1) c1 + e1 = c2 + e2 and (2) c_j d_j max{r, r^2} < 1/2 with r = c1 + e1.
inline ConstraintReport check_constraints(const BumpParams& p) {
  ConstraintReport rep;
  rep.r = p.r();
  rep.equal_radius_residual = (p.c1 + p.e1) - (p.c2 + p.e2);
  rep.equal_radius = std::abs(rep.equal_radius_residual) <= kConstraintTol;
  const double m = std::max(rep.r, rep.r * rep.r);
  rep.slope_bound[0] = p.c1 * p.d1 * m;
  rep.slope_bound[1] = p.c2 * p.d2 * m;
  for (int j = 0; j < 2; ++j) rep.slope_margin[j] = 0.5 - rep.slope_bound[j];
  rep.slope_ok = rep.slope_margin[0] > kConstraintTol && rep.slope_margin[1] > kConstraintTol;
  return rep;
}

struct TangentCircleReport {
  bool tangency = false;     ///< psi1(0) = r and psi2(0) = -r
  bool containment = false;  ///< circle inside D1_lt u D2_gt away from the tangency points
  double min_margin_right = 0.0;  ///< min psi1(y) - x over x > 0
  double min_margin_left = 0.0;   ///< min x - psi2(y) over x < 0
  std::optional<double> witness_angle;
  int samples = 0;

  bool pass() const { return tangency && containment; }
};

inline constexpr int kCircleSamples = 10000;

/// The circle x^2 + y^2 = r^2 touches psi1 at (r,0), psi2 at (-r,0) and
/// otherwise stays strictly between the curves.
inline TangentCircleReport check_tangent_circle(const PlanarSystem& sys, const BumpParams& p,
                                                int samples = kCircleSamples) {
  TangentCircleReport rep;
  const double r = p.r();
  rep.tangency = std::abs(sys.psi(1)(0.0) - r) <= kConstraintTol && std::abs(sys.psi(2)(0.0) + r) <= kConstraintTol;
  rep.min_margin_right = kInf;
  rep.min_margin_left = kInf;
  double worst = kInf;
  rep.samples = samples;
  for (int k = 0; k < samples; ++k) {
    if (k == 0 || 2 * k == samples) continue;  // tangency points
    const double theta = 2.0 * std::numbers::pi * k / samples;
    const double x = r * std::cos(theta);
    const double y = r * std::sin(theta);
    double margin = 0.0;
    if (x > 0.0) {
      margin = sys.psi(1)(y) - x;
      rep.min_margin_right = std::min(rep.min_margin_right, margin);
    } else if (x < 0.0) {
      margin = x - sys.psi(2)(y);
      rep.min_margin_left = std::min(rep.min_margin_left, margin);
    } else {
      continue;
    }
    if (margin < worst) {
      worst = margin;
      if (margin <= 0.0) rep.witness_angle = theta;
    }
  }
  rep.containment = worst > 0.0;
  return rep;
}

/// psi1 = p, psi2 = -p, so F(x,y) = x (x^2 - p^2).
inline PlanarSystem build_constant_curves(double p) {
  if (!(p > 0.0)) throw NonPositiveParam("constant curve level must be positive");
  return PlanarSystem(FunctionDescriptor::identity(), FunctionDescriptor::identity(),
                      BivariateDescriptor::special_form(FunctionDescriptor::constant(p),
                                                        FunctionDescriptor::constant(-p)));
}

/// F = 0 with phi = g = id. Declares psi = +-1 so region-based checks apply.
inline PlanarSystem build_harmonic() {
  return PlanarSystem(FunctionDescriptor::identity(), FunctionDescriptor::identity(),
                      BivariateDescriptor::lienard(FunctionDescriptor::constant(0.0)), Domain{},
                      FunctionDescriptor::constant(1.0), FunctionDescriptor::constant(-1.0));
}

struct Preset {
  std::string name;
  PlanarSystem system;
  AnalysisWindow window;
  double scan_lo = 0.05;
  double scan_hi = 2.0;
  int scan_n = 64;
};

inline std::vector<std::string> preset_names() { return {"figure2", "vdp-cubic", "harmonic"}; }

inline Preset make_preset(const std::string& name) {
  if (name == "figure2") {
    return {name, build_bump_system(figure2_params()), AnalysisWindow{-2, 2, -2, 2}, 0.05, 2.0, 64};
  }
  if (name == "vdp-cubic") {
    const double r = std::sqrt(3.0);
    return {name, build_constant_curves(r), AnalysisWindow{-2 * r, 2 * r, -2 * r, 2 * r}, 0.05, 2 * r, 64};
  }
  if (name == "harmonic") {
    return {name, build_harmonic(), AnalysisWindow{-2, 2, -2, 2}, 0.05, 2.0, 64};
  }
  throw InvalidArgument("unknown preset \"" + name + "\"");
}

}  // namespace lcycle

#endif  // LCYCLE_FAMILIES_HPP
