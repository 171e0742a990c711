#ifndef LCYCLE_CYCLES_HPP
#define LCYCLE_CYCLES_HPP

/// \file
/// Limit cycles as fixed points of the return map on the positive x-axis.
///
/// scan_displacement samples d(x) = P(x) - x and brackets its sign changes;
/// refine_cycle narrows a bracket to a fixed point and integrates one period
/// to build a CycleCertificate (period, the integral of g F over the orbit,
/// curve crossings per quadrant, return-map slope). uniqueness_verdict counts
/// the cycles that meet both zero curves psi1 and psi2.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcycle/error.hpp"
#include "lcycle/hypotheses.hpp"
#include "lcycle/integrator.hpp"
#include "lcycle/system.hpp"

namespace lcycle {

struct Bracket {
  double lo = 0.0;
  double hi = 0.0;
  double d_lo = 0.0;
  double d_hi = 0.0;
};

struct DisplacementSample {
  double x = 0.0;
  double d = 0.0;
};

struct DisplacementScan {
  std::vector<DisplacementSample> grid;
  std::vector<Bracket> sign_changes;
  std::vector<double> failures;  ///< abscissas where the return map failed
};

/// |d| at or below this is treated as zero (no strict sign) when bracketing.
inline double displacement_zero_tol(double x) { return 1e-8 * (1.0 + std::abs(x)); }

inline DisplacementScan scan_displacement(const PlanarSystem& sys, double x_lo, double x_hi, int n,
                                          const IntegratorConfig& config) {
  if (!(0.0 < x_lo && x_lo < x_hi && x_hi < sys.domain().b) || n < 2) {
    throw InvalidArgument("scan needs 0 < x_lo < x_hi < b and n >= 2");
  }
  DisplacementScan scan;
  DisplacementSample prev;
  bool have_prev = false;
  for (int i = 0; i < n; ++i) {
    const double x = x_lo + (x_hi - x_lo) * static_cast<double>(i) / (n - 1);
    double d = 0.0;
    try {
      d = first_return(sys, x, config).x1 - x;
    } catch (const Error&) {
      scan.failures.push_back(x);
      have_prev = false;
      continue;
    }
    scan.grid.push_back({x, d});
    const bool strict = std::abs(d) > displacement_zero_tol(x);
    if (strict && have_prev && (prev.d < 0.0) != (d < 0.0)) {
      scan.sign_changes.push_back({prev.x, x, prev.d, d});
    }
    prev = {x, d};
    have_prev = strict;
  }
  return scan;
}

/// Crossings of x = psi_j(y) per quadrant; index 0..3 = quadrants I..IV.
struct CrossingCounts {
  std::array<int, 4> psi1{};
  std::array<int, 4> psi2{};

  int total(int j) const {
    const auto& a = j == 1 ? psi1 : psi2;
    return a[0] + a[1] + a[2] + a[3];
  }
  int total() const { return total(1) + total(2); }
};

inline int quadrant_index(double x, double y) {
  if (y >= 0.0) return x >= 0.0 ? 0 : 1;
  return x < 0.0 ? 2 : 3;
}

/// Sign changes of x - psi_j(y) along consecutive polyline vertices,
/// attributed to the quadrant of the linearly interpolated crossing point.
/// Tangential contacts without a sign change count as zero.
inline CrossingCounts crossing_count(const PlanarSystem& sys, std::span<const Sample> polyline) {
  CrossingCounts out;
  for (int j = 1; j <= 2; ++j) {
    const auto& psi = sys.psi(j);
    auto& bins = j == 1 ? out.psi1 : out.psi2;
    for (std::size_t i = 1; i < polyline.size(); ++i) {
      const auto& a = polyline[i - 1];
      const auto& b = polyline[i];
      const double ea = a.x - psi(a.y);
      const double eb = b.x - psi(b.y);
      if (!detail::sign_change(ea, eb)) continue;
      const double s = ea / (ea - eb);
      ++bins[quadrant_index(a.x + s * (b.x - a.x), a.y + s * (b.y - a.y))];
    }
  }
  return out;
}

/// Crossing count over a trajectory, using its dense output refined to
/// eight sub-intervals per step.
inline CrossingCounts crossing_count(const PlanarSystem& sys, const Trajectory& traj) {
  std::vector<Sample> poly;
  poly.reserve(traj.segments.size() * 8 + 1);
  poly.push_back(traj.front());
  for (const auto& seg : traj.segments) {
    const double end = std::min(seg.t1(), traj.t_end());
    for (int k = 1; k <= 8; ++k) {
      const double t = seg.t0 + (end - seg.t0) * k / 8.0;
      if (t <= poly.back().t) continue;
      const Vec2 s = seg(t);
      poly.push_back({t, s.x, s.y});
    }
  }
  poly.back() = traj.back();
  return crossing_count(sys, std::span<const Sample>(poly));
}

inline constexpr double kClosureTol = 1e-8;

/// Integral of g(x) F(x,y) over a closed orbit (zero on any periodic orbit).
inline double cycle_integral(const PlanarSystem& sys, const Trajectory& orbit) {
  const double gap = std::hypot(orbit.back().x - orbit.front().x, orbit.back().y - orbit.front().y);
  if (gap > kClosureTol) throw NotClosed(gap);
  return trajectory_integral_gF(sys, orbit, orbit.t_begin(), orbit.t_end());
}

struct CycleCertificate {
  double section_x = 0.0;
  double period = 0.0;
  double displacement_residual = 0.0;
  double I_gamma = 0.0;
  CrossingCounts crossings;
  double stability_multiplier = 0.0;
  std::vector<Sample> curve;
  Trajectory orbit;

  bool crosses_both_curves() const { return crossings.total(1) > 0 && crossings.total(2) > 0; }
};

struct RefineOptions {
  double d_tol = 1e-10;
  /// Residual above which the refined point is rejected as noise.
  double accept_tol = 1e-7;
  int max_iterations = 200;
};

inline CycleCertificate refine_cycle(const PlanarSystem& sys, const Bracket& bracket,
                                     const IntegratorConfig& config, const RefineOptions& opt = {}) {
  auto d = [&](double x) { return first_return(sys, x, config).x1 - x; };
  double lo = bracket.lo;
  double hi = bracket.hi;
  double dlo = d(lo);
  double dhi = d(hi);
  if (!(dlo != 0.0 && dhi != 0.0 && (dlo < 0.0) != (dhi < 0.0))) {
    throw LostBracket("displacement does not change sign on [" + std::to_string(lo) + ", " +
                      std::to_string(hi) + "] at the refinement tolerances");
  }
  double best_x = std::abs(dlo) < std::abs(dhi) ? lo : hi;
  double best_d = std::min(std::abs(dlo), std::abs(dhi));
  for (int it = 0; it < opt.max_iterations && best_d > opt.d_tol; ++it) {
    const double width = hi - lo;
    if (width <= 1e-14 * (1.0 + std::abs(lo))) break;
    double x = lo - dlo * width / (dhi - dlo);
    // secant when it lands well inside, bisection otherwise and every third step
    if (!(x > lo + 0.05 * width && x < hi - 0.05 * width) || it % 3 == 2) x = 0.5 * (lo + hi);
    const double dx = d(x);
    if (std::abs(dx) < best_d) {
      best_d = std::abs(dx);
      best_x = x;
    }
    if (dx == 0.0) break;
    if ((dx < 0.0) == (dlo < 0.0)) {
      lo = x;
      dlo = dx;
    } else {
      hi = x;
      dhi = dx;
    }
  }
  if (best_d > opt.accept_tol) {
    throw LostBracket("return map too noisy to refine (|d| = " + std::to_string(best_d) +
                      "); tighten the integrator tolerances");
  }

  std::vector<EventKind> events;
  if (sys.has_curves()) events = {EventKind::psi1_cross, EventKind::psi2_cross};
  auto ret = first_return(sys, best_x, config, events);

  CycleCertificate cert;
  cert.section_x = best_x;
  cert.period = ret.period;
  cert.displacement_residual = ret.x1 - best_x;
  cert.orbit = std::move(ret.trajectory);
  cert.curve = cert.orbit.samples;
  cert.I_gamma = cycle_integral(sys, cert.orbit);
  if (sys.has_curves()) cert.crossings = crossing_count(sys, cert.orbit);
  const double h = 1e-6 * (1.0 + std::abs(best_x));
  const double p_plus = first_return(sys, best_x + h, config).x1;
  const double p_minus = first_return(sys, best_x - h, config).x1;
  cert.stability_multiplier = (p_plus - p_minus) / (2.0 * h);
  return cert;
}

/// The orbit cut at its four curve crossings:
/// A = psi1 (y > 0), B = psi1 (y < 0), C = psi2 (y < 0), D = psi2 (y > 0).
/// D->A and B->C are the horizontal arcs, A->B and C->D the vertical ones.
struct ArcDecomposition {
  Event A, B, C, D;
  double I_DA = 0.0;
  double I_AB = 0.0;
  double I_BC = 0.0;
  double I_CD = 0.0;
  bool top_has_negative_gF = false;     ///< D->A meets g F < 0
  bool bottom_has_negative_gF = false;  ///< B->C meets g F < 0
  bool right_in_D1_gt = false;          ///< A->B interior lies in D1_gt
  bool left_in_D2_lt = false;           ///< C->D interior lies in D2_lt

  double total() const { return I_DA + I_AB + I_BC + I_CD; }
};

inline ArcDecomposition arc_split(const PlanarSystem& sys, const CycleCertificate& cert) {
  const auto& orbit = cert.orbit;
  std::optional<Event> A, B, C, D;
  int n = 0;
  for (const auto& e : orbit.events) {
    if (e.kind != EventKind::psi1_cross && e.kind != EventKind::psi2_cross) continue;
    ++n;
    auto& slot = e.kind == EventKind::psi1_cross ? (e.y > 0.0 ? A : B) : (e.y < 0.0 ? C : D);
    if (slot) throw WrongCrossingCount("two crossings of the same curve in one half-plane");
    slot = e;
  }
  if (n != 4 || !A || !B || !C || !D) {
    throw WrongCrossingCount("expected 4 curve crossings, found " + std::to_string(n));
  }
  ArcDecomposition arcs{*A, *B, *C, *D};
  const double T = orbit.t_end();
  const double t0 = orbit.t_begin();
  auto integral = [&](double a, double b) { return trajectory_integral_gF(sys, orbit, a, b); };
  if (!(B->t < C->t && C->t < D->t && D->t < A->t)) {
    throw WrongCrossingCount("crossings are not ordered B, C, D, A along the orbit");
  }
  arcs.I_DA = integral(D->t, A->t);
  arcs.I_AB = integral(A->t, T) + integral(t0, B->t);
  arcs.I_BC = integral(B->t, C->t);
  arcs.I_CD = integral(C->t, D->t);

  constexpr int kProbe = 400;
  auto probe = [&](double a, double b, auto&& pred) {
    bool all = true;
    bool any = false;
    for (int k = 1; k < kProbe; ++k) {
      const double t = a + (b - a) * k / kProbe;
      const Vec2 s = orbit.state_at(t);
      const bool v = pred(s);
      all = all && v;
      any = any || v;
    }
    return std::pair{all, any};
  };
  auto negative_gF = [&](Vec2 s) { return sys.g()(s.x) * sys.F()(s.x, s.y) < 0.0; };
  arcs.top_has_negative_gF = probe(D->t, A->t, negative_gF).second;
  arcs.bottom_has_negative_gF = probe(B->t, C->t, negative_gF).second;
  auto in_tag = [&](RegionTag tag) { return [&, tag](Vec2 s) { return classify_region(sys, s.x, s.y) == tag; }; };
  arcs.right_in_D1_gt = probe(A->t, T, in_tag(RegionTag::D1_gt)).first &&
                        probe(t0, B->t, in_tag(RegionTag::D1_gt)).first;
  arcs.left_in_D2_lt = probe(C->t, D->t, in_tag(RegionTag::D2_lt)).first;
  return arcs;
}

enum class UniquenessVerdict { consistent, theorem_violation_witness };

inline const char* to_string(UniquenessVerdict v) {
  return v == UniquenessVerdict::consistent ? "consistent" : "theorem-violation witness";
}

struct UniquenessRecord {
  UniquenessVerdict verdict = UniquenessVerdict::consistent;
  std::vector<std::size_t> both_curve_cycles;  ///< indices into the certificates
  std::vector<std::size_t> other_cycles;
  std::size_t brackets = 0;
};

/// Consistent iff at most one refined cycle crosses both curves. Cycles
/// missing one of the curves are listed but not counted.
inline UniquenessRecord uniqueness_verdict(const DisplacementScan& scan,
                                           std::span<const CycleCertificate> certificates) {
  UniquenessRecord rec;
  rec.brackets = scan.sign_changes.size();
  for (std::size_t i = 0; i < certificates.size(); ++i) {
    (certificates[i].crosses_both_curves() ? rec.both_curve_cycles : rec.other_cycles).push_back(i);
  }
  rec.verdict = rec.both_curve_cycles.size() <= 1 ? UniquenessVerdict::consistent
                                                  : UniquenessVerdict::theorem_violation_witness;
  return rec;
}

struct CycleAnalysis {
  DisplacementScan scan;
  std::vector<CycleCertificate> certificates;
  std::vector<std::string> refine_failures;
  UniquenessRecord verdict;
};

/// Scan with `config`, refine every bracket with tightened(config).
inline CycleAnalysis analyze_cycles(const PlanarSystem& sys, double x_lo, double x_hi, int n,
                                    const IntegratorConfig& config, const RefineOptions& opt = {}) {
  CycleAnalysis out;
  out.scan = scan_displacement(sys, x_lo, x_hi, n, config);
  const auto fine = tightened(config);
  for (const auto& b : out.scan.sign_changes) {
    try {
      out.certificates.push_back(refine_cycle(sys, b, fine, opt));
    } catch (const Error& e) {
      out.refine_failures.push_back(e.what());
    }
  }
  out.verdict = uniqueness_verdict(out.scan, out.certificates);
  return out;
}

inline nlohmann::json to_json(const CycleCertificate& c) {
  return {{"section_x", c.section_x},
          {"period", c.period},
          {"displacement_residual", c.displacement_residual},
          {"I_gamma", c.I_gamma},
          {"stability", c.stability_multiplier},
          {"crossings", {{"psi1", c.crossings.psi1}, {"psi2", c.crossings.psi2}}}};
}

}  // namespace lcycle

#endif  // LCYCLE_CYCLES_HPP
