#ifndef LCYCLE_HYPOTHESES_HPP
#define LCYCLE_HYPOTHESES_HPP

/// \file
/// Sampled audit of the uniqueness hypotheses on a finite analysis window.
///
/// Each check evaluates its condition on a rectangular grid and returns a
/// HypothesisEntry with a pass/fail/skipped verdict, the number of samples
/// taken and the points where the condition was violated. Strict
/// inequalities are tested with explicit margins (tol_sign on signs,
/// tol_mono on monotone differences), so a pass means "holds with margin on
/// every sample", never a proof.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "lcycle/error.hpp"
#include "lcycle/system.hpp"

namespace lcycle {

/// Finite proxy for the strip (a,b) x R.
struct AnalysisWindow {
  double x0 = -2.0;
  double x1 = 2.0;
  double y0 = -2.0;
  double y1 = 2.0;
  int nx = 256;
  int ny = 256;

  double x_at(int i) const { return x0 + (x1 - x0) * static_cast<double>(i) / (nx - 1); }
  double y_at(int k) const { return y0 + (y1 - y0) * static_cast<double>(k) / (ny - 1); }
  double height() const { return y1 - y0; }

  void validate(const PlanarSystem& sys) const {
    if (!(x0 < x1 && y0 < y1)) throw InvalidArgument("analysis window must have x0 < x1 and y0 < y1");
    if (!(sys.domain().a < x0 && x1 < sys.domain().b)) {
      throw InvalidArgument("analysis window x-range must lie inside the domain (a,b)");
    }
    if (nx < 16 || ny < 16) throw InvalidArgument("analysis grid needs at least 16 points per axis");
  }
};

struct HypothesisTolerances {
  double tol_zero = 1e-12;  ///< |F| on curves that must be zero sets
  double tol_sign = 1e-12;  ///< margin on strict sign conditions
  double tol_mono = 1e-10;  ///< margin on strict monotone differences
};

enum class Verdict { pass, fail, skipped };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::skipped: return "skipped";
  }
  return "?";
}

struct Witness {
  double x = 0.0;
  double y = 0.0;
  double value = 0.0;
  long index = 0;  ///< flattened sample index; orders witnesses
};

struct HypothesisEntry {
  std::string key;
  Verdict verdict = Verdict::skipped;
  long samples = 0;
  long violations = 0;
  double tolerance = 0.0;
  std::vector<Witness> witnesses;
};

enum class RegionTag { D1_gt, D1_lt, D2_gt, D2_lt, off_strip };

inline const char* to_string(RegionTag r) {
  switch (r) {
    case RegionTag::D1_gt: return "D1_gt";
    case RegionTag::D1_lt: return "D1_lt";
    case RegionTag::D2_gt: return "D2_gt";
    case RegionTag::D2_lt: return "D2_lt";
    case RegionTag::off_strip: return "off_strip";
  }
  return "?";
}

/// The four open regions cut out by x = 0, x = psi1(y), x = psi2(y).
/// Points on any of the three curves, or outside (a,b), are off_strip.
inline RegionTag classify_region(const PlanarSystem& sys, double x, double y) {
  const double p1 = sys.psi(1)(y);
  const double p2 = sys.psi(2)(y);
  if (!sys.domain().contains(x) || x == 0.0) return RegionTag::off_strip;
  if (x > 0.0) {
    if (x > p1) return RegionTag::D1_gt;
    if (x < p1) return RegionTag::D1_lt;
    return RegionTag::off_strip;
  }
  if (x < p2) return RegionTag::D2_lt;
  if (x > p2) return RegionTag::D2_gt;
  return RegionTag::off_strip;
}

namespace detail {

inline constexpr std::size_t kMaxWitnesses = 64;

/// Accumulates samples of one hypothesis. Keeps the first witnesses by
/// index plus the worst one.
class EntryBuilder {
 public:
  EntryBuilder(std::string key, double tolerance, std::size_t max_witnesses = kMaxWitnesses)
      : max_witnesses_(max_witnesses) {
    entry_.key = std::move(key);
    entry_.tolerance = tolerance;
  }

  /// severity: how far past the margin the violation is (larger = worse).
  void sample(bool ok, const Witness& w, double severity = 0.0) {
    ++entry_.samples;
    if (ok) return;
    ++entry_.violations;
    if (!has_worst_ || severity > worst_severity_) {
      worst_ = w;
      worst_severity_ = severity;
      has_worst_ = true;
    }
    if (entry_.witnesses.size() + 1 < max_witnesses_) entry_.witnesses.push_back(w);
  }

  HypothesisEntry finish() && {
    if (has_worst_) {
      const bool present = std::any_of(entry_.witnesses.begin(), entry_.witnesses.end(),
                                       [&](const Witness& w) { return w.index == worst_.index; });
      if (!present) entry_.witnesses.push_back(worst_);
      std::sort(entry_.witnesses.begin(), entry_.witnesses.end(),
                [](const Witness& a, const Witness& b) { return a.index < b.index; });
    }
    entry_.verdict = entry_.violations > 0 ? Verdict::fail : Verdict::pass;
    return std::move(entry_);
  }

 private:
  HypothesisEntry entry_;
  std::size_t max_witnesses_;
  Witness worst_;
  double worst_severity_ = 0.0;
  bool has_worst_ = false;
};

inline HypothesisEntry skipped(std::string key, double tol = 0.0) {
  HypothesisEntry e;
  e.key = std::move(key);
  e.verdict = Verdict::skipped;
  e.tolerance = tol;
  return e;
}

/// Grid ordinates plus y = 0 when the window contains it.
inline std::vector<double> curve_ordinates(const AnalysisWindow& w) {
  std::vector<double> ys;
  ys.reserve(w.ny + 1);
  for (int k = 0; k < w.ny; ++k) ys.push_back(w.y_at(k));
  if (w.y0 <= 0.0 && 0.0 <= w.y1) ys.push_back(0.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

}  // namespace detail

/// B0 (F(0,y) = 0), B1/B2 (sign, monotonicity and bounds of psi1/psi2),
/// B3 (F vanishes on both curves).
inline std::vector<HypothesisEntry> check_B(const PlanarSystem& sys, const AnalysisWindow& w,
                                            const HypothesisTolerances& tol = {}) {
  const auto ys = detail::curve_ordinates(w);
  detail::EntryBuilder b0("B0", tol.tol_zero);
  for (std::size_t k = 0; k < ys.size(); ++k) {
    const double v = sys.F()(0.0, ys[k]);
    b0.sample(std::abs(v) <= tol.tol_zero, {0.0, ys[k], v, static_cast<long>(k)}, std::abs(v));
  }
  std::vector<HypothesisEntry> out;
  out.push_back(std::move(b0).finish());
  if (!sys.has_curves()) {
    out.push_back(detail::skipped("B1", tol.tol_sign));
    out.push_back(detail::skipped("B2", tol.tol_sign));
    out.push_back(detail::skipped("B3", tol.tol_zero));
    return out;
  }

  for (int j = 1; j <= 2; ++j) {
    const double sgn = j == 1 ? 1.0 : -1.0;  // psi1 > 0 peaks at 0; psi2 < 0 dips at 0
    const auto& psi = sys.psi(j);
    const auto& dpsi = sys.dpsi(j);
    // one-dimensional scans keep every witness
    detail::EntryBuilder e(j == 1 ? "B1" : "B2", tol.tol_sign, 4 * ys.size());
    long idx = 0;
    for (double y : ys) {
      const double p = psi(y);
      e.sample(sgn * p > tol.tol_sign, {p, y, p, idx++}, tol.tol_sign - sgn * p);
      // psi1: increasing for y < 0, decreasing for y > 0; psi2 mirrored
      const double dp = dpsi(y);
      double slope = 0.0;
      if (y < 0.0) slope = sgn * dp;
      if (y > 0.0) slope = -sgn * dp;
      e.sample(slope >= -tol.tol_sign, {p, y, dp, idx++}, -slope);
    }
    const double p0 = psi(0.0);
    const bool bounded = j == 1 ? p0 < sys.domain().b : p0 > sys.domain().a;
    e.sample(bounded, {p0, 0.0, p0, idx++}, 1.0);
    out.push_back(std::move(e).finish());
  }

  detail::EntryBuilder b3("B3", tol.tol_zero);
  long idx = 0;
  for (int j = 1; j <= 2; ++j) {
    for (double y : ys) {
      const double p = sys.psi(j)(y);
      const double v = sys.F()(p, y);
      b3.sample(std::abs(v) <= tol.tol_zero, {p, y, v, idx++}, std::abs(v));
    }
  }
  out.push_back(std::move(b3).finish());
  return out;
}

/// C1 (y phi(y) > 0, x g(x) > 0 off the axes) and C2, or C2' when weakened.
inline std::vector<HypothesisEntry> check_C(const PlanarSystem& sys, const AnalysisWindow& w,
                                            bool weakened = false,
                                            const HypothesisTolerances& tol = {}) {
  std::vector<HypothesisEntry> out;
  detail::EntryBuilder c1("C1", tol.tol_sign);
  long idx = 0;
  for (int k = 0; k < w.ny; ++k) {
    const double y = w.y_at(k);
    if (y == 0.0) continue;
    const double v = y * sys.phi()(y);
    c1.sample(v > tol.tol_sign, {0.0, y, v, idx++}, tol.tol_sign - v);
  }
  for (int i = 0; i < w.nx; ++i) {
    const double x = w.x_at(i);
    if (x == 0.0) continue;
    const double v = x * sys.g()(x);
    c1.sample(v > tol.tol_sign, {x, 0.0, v, idx++}, tol.tol_sign - v);
  }
  out.push_back(std::move(c1).finish());

  const char* key = weakened ? "C2'" : "C2";
  if (!sys.has_curves()) {
    out.push_back(detail::skipped(key, tol.tol_sign));
    return out;
  }
  detail::EntryBuilder c2(key, tol.tol_sign);
  long strict = 0;
  for (int i = 0; i < w.nx; ++i) {
    const double x = w.x_at(i);
    for (int k = 0; k < w.ny; ++k) {
      const double y = w.y_at(k);
      const auto r = classify_region(sys, x, y);
      if (r != RegionTag::D1_lt && r != RegionTag::D2_gt) continue;
      const double v = sys.g()(x) * sys.F()(x, y);
      const Witness wit{x, y, v, static_cast<long>(i) * w.ny + k};
      if (weakened) {
        c2.sample(v <= tol.tol_sign, wit, v);
        if (v < -tol.tol_sign) ++strict;
      } else {
        c2.sample(v < -tol.tol_sign, wit, v + tol.tol_sign);
      }
    }
  }
  auto entry = std::move(c2).finish();
  if (weakened && entry.verdict == Verdict::pass && strict == 0) {
    // nowhere strictly negative: the weakened condition still fails
    entry.verdict = Verdict::fail;
    entry.violations = 1;
  }
  out.push_back(std::move(entry));
  return out;
}

/// D1: y -> F(x,y)/phi(y) strictly increasing on D1_lt; D2: strictly
/// decreasing on D2_gt. Compared between vertically adjacent grid points in
/// the same region and on the same side of y = 0 (the ratio has a pole there).
inline std::vector<HypothesisEntry> check_D(const PlanarSystem& sys, const AnalysisWindow& w,
                                            const HypothesisTolerances& tol = {}) {
  if (!sys.has_curves()) return {detail::skipped("D1", tol.tol_mono), detail::skipped("D2", tol.tol_mono)};
  detail::EntryBuilder d1("D1", tol.tol_mono);
  detail::EntryBuilder d2("D2", tol.tol_mono);
  for (int i = 0; i < w.nx; ++i) {
    const double x = w.x_at(i);
    if (x == 0.0) continue;
    const RegionTag want = x > 0.0 ? RegionTag::D1_lt : RegionTag::D2_gt;
    auto& builder = x > 0.0 ? d1 : d2;
    const double dir = x > 0.0 ? 1.0 : -1.0;
    bool have_prev = false;
    double prev_ratio = 0.0;
    double prev_y = 0.0;
    for (int k = 0; k < w.ny; ++k) {
      const double y = w.y_at(k);
      const double ph = sys.phi()(y);
      if (y == 0.0 || ph == 0.0 || classify_region(sys, x, y) != want) {
        have_prev = false;
        continue;
      }
      const double ratio = sys.F()(x, y) / ph;
      if (have_prev && (prev_y > 0.0) == (y > 0.0)) {
        const double diff = dir * (ratio - prev_ratio);
        builder.sample(diff > tol.tol_mono, {x, y, ratio - prev_ratio, static_cast<long>(i) * w.ny + k},
                       tol.tol_mono - diff);
      }
      have_prev = true;
      prev_ratio = ratio;
      prev_y = y;
    }
  }
  return {std::move(d1).finish(), std::move(d2).finish()};
}

/// E: F > 0 on D1_gt, F < 0 on D2_lt, and x -> F(x,y) strictly increasing
/// between horizontally adjacent grid points of the same region.
inline HypothesisEntry check_E(const PlanarSystem& sys, const AnalysisWindow& w,
                               const HypothesisTolerances& tol = {}) {
  if (!sys.has_curves()) return detail::skipped("E", tol.tol_sign);
  detail::EntryBuilder e("E", tol.tol_sign);
  for (int k = 0; k < w.ny; ++k) {
    const double y = w.y_at(k);
    RegionTag prev_tag = RegionTag::off_strip;
    double prev_F = 0.0;
    for (int i = 0; i < w.nx; ++i) {
      const double x = w.x_at(i);
      const auto tag = classify_region(sys, x, y);
      if (tag != RegionTag::D1_gt && tag != RegionTag::D2_lt) {
        prev_tag = RegionTag::off_strip;
        continue;
      }
      const double f = sys.F()(x, y);
      const long idx = static_cast<long>(i) * w.ny + k;
      const double signed_f = tag == RegionTag::D1_gt ? f : -f;
      e.sample(signed_f > tol.tol_sign, {x, y, f, idx}, tol.tol_sign - signed_f);
      if (prev_tag == tag) {
        const double diff = f - prev_F;
        e.sample(diff > tol.tol_mono, {x, y, diff, idx}, tol.tol_mono - diff);
      }
      prev_tag = tag;
      prev_F = f;
    }
  }
  return std::move(e).finish();
}

/// A_j(y) = phi(y) dF/dx - g(x) dF/dy at x = psi_j(y).
inline double A_j(const PlanarSystem& sys, int j, double y) {
  const double x = sys.psi(j)(y);
  const auto p = sys.F().partials(x, y);
  return sys.phi()(y) * p.dx - sys.g()(x) * p.dy;
}

/// F: A_j(y) y > tol_sign |y| for every grid y != 0 and j = 1, 2.
inline HypothesisEntry check_F(const PlanarSystem& sys, const AnalysisWindow& w,
                               const HypothesisTolerances& tol = {}) {
  if (!sys.has_curves()) throw MissingCurves();
  detail::EntryBuilder e("F", tol.tol_sign);
  long idx = 0;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 0; k < w.ny; ++k) {
      const double y = w.y_at(k);
      if (y == 0.0) continue;
      const double a = A_j(sys, j, y);
      e.sample(a * y > tol.tol_sign * std::abs(y), {sys.psi(j)(y), y, a, idx++},
               tol.tol_sign * std::abs(y) - a * y);
    }
  }
  return std::move(e).finish();
}

/// d/dy [Phi(y) + G(psi_j(y))] = phi(y) + g(psi_j(y)) psi_j'(y).
inline double fprime_rate(const PlanarSystem& sys, int j, double y) {
  return sys.phi()(y) + sys.g()(sys.psi(j)(y)) * sys.dpsi(j)(y);
}

/// F' (special form only): y -> Phi(y) + G(psi_j(y)) strictly increasing for
/// y > 0 and strictly decreasing for y < 0, via the sign of its derivative.
inline HypothesisEntry check_Fprime(const PlanarSystem& sys, const AnalysisWindow& w,
                                    const HypothesisTolerances& tol = {}) {
  if (sys.F().as_special_form() == nullptr) throw NotSpecialForm();
  detail::EntryBuilder e("F'", tol.tol_sign);
  long idx = 0;
  for (int j = 1; j <= 2; ++j) {
    for (int k = 0; k < w.ny; ++k) {
      const double y = w.y_at(k);
      if (y == 0.0) continue;
      const double r = fprime_rate(sys, j, y);
      e.sample(r * y > tol.tol_sign * std::abs(y), {sys.psi(j)(y), y, r, idx++},
               tol.tol_sign * std::abs(y) - r * y);
    }
  }
  return std::move(e).finish();
}

namespace detail {

inline bool in_inner_region(const PlanarSystem& sys, double x, double y) {
  const auto r = classify_region(sys, x, y);
  return x > 0.0 ? r == RegionTag::D1_lt : r == RegionTag::D2_gt;
}

inline std::vector<double> zeta_ordinates(double half_height) {
  std::vector<double> ys;
  constexpr int kUniform = 2001;
  for (int k = 0; k < kUniform; ++k) ys.push_back(-half_height + 2.0 * half_height * k / (kUniform - 1));
  // geometric refinement toward y = 0 catches roots in very thin regions
  for (int k = 1; k <= 60; ++k) {
    const double v = half_height * std::ldexp(1.0, -k);
    ys.push_back(v);
    ys.push_back(-v);
  }
  ys.push_back(0.0);
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());
  return ys;
}

inline std::optional<double> zeta_search(const PlanarSystem& sys, double x, double half_height) {
  auto h = [&](double y) { return sys.phi()(y) - sys.F()(x, y); };
  const auto ys = zeta_ordinates(half_height);
  bool have_prev = false;
  double ya = 0.0;
  double ha = 0.0;
  for (double y : ys) {
    if (!in_inner_region(sys, x, y)) {
      have_prev = false;
      continue;
    }
    const double hy = h(y);
    if (hy == 0.0) return y;
    if (have_prev && (ha < 0.0) != (hy < 0.0)) {
      double lo = ya;
      double hi = y;
      double hlo = ha;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double hm = h(mid);
        if (hm == 0.0) return mid;
        if ((hm < 0.0) == (hlo < 0.0)) {
          lo = mid;
          hlo = hm;
        } else {
          hi = mid;
        }
        if (std::abs(hm) <= 1e-14 && hi - lo <= 1e-15 * (1.0 + std::abs(mid))) break;
      }
      const double hl = std::abs(h(lo));
      const double hh = std::abs(h(hi));
      return hl <= hh ? lo : hi;
    }
    have_prev = true;
    ya = y;
    ha = hy;
  }
  return std::nullopt;
}

}  // namespace detail

/// The unique y with phi(y) = F(x,y) and (x,y) in D1_lt u D2_gt.
/// Searches y in [-half_height, half_height], widening once by 2.
inline double solve_zeta(const PlanarSystem& sys, double x, double half_height) {
  if (!sys.has_curves()) throw MissingCurves();
  const double p1 = sys.psi(1)(0.0);
  const double p2 = sys.psi(2)(0.0);
  if (!((p2 < x && x < 0.0) || (0.0 < x && x < p1))) {
    throw InvalidArgument("solve_zeta needs x in (psi2(0), 0) u (0, psi1(0))");
  }
  if (auto y = detail::zeta_search(sys, x, half_height)) return *y;
  if (auto y = detail::zeta_search(sys, x, 2.0 * half_height)) return *y;
  throw NoBracket(x, -2.0 * half_height, 2.0 * half_height);
}

struct ZetaPoint {
  double x = 0.0;
  double zeta = 0.0;
};

struct ZetaReport {
  HypothesisEntry entry;
  std::vector<ZetaPoint> left;   ///< x in (psi2(0), 0), expect zeta > 0
  std::vector<ZetaPoint> right;  ///< x in (0, psi1(0)), expect zeta < 0
  std::vector<ZetaPoint> boundary;
};

inline constexpr double kZetaBoundaryOffset = 1e-4;
inline constexpr double kZetaBoundaryTol = 1e-3;

/// Sign pattern of zeta: positive on (psi2(0), 0), negative on (0, psi1(0)),
/// near zero just inside psi2(0), 0 (both sides) and psi1(0).
inline ZetaReport check_zeta_signs(const PlanarSystem& sys, int n, double half_height) {
  if (n < 1) throw InvalidArgument("check_zeta_signs needs n >= 1");
  ZetaReport rep;
  detail::EntryBuilder e("zeta", kZetaBoundaryTol);
  const double p1 = sys.psi(1)(0.0);
  const double p2 = sys.psi(2)(0.0);
  long idx = 0;
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k + 1) / (n + 1);
    const double xl = p2 * (1.0 - s);
    const double zl = solve_zeta(sys, xl, half_height);
    rep.left.push_back({xl, zl});
    e.sample(zl > 0.0, {xl, zl, zl, idx++}, -zl);
  }
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k + 1) / (n + 1);
    const double xr = p1 * s;
    const double zr = solve_zeta(sys, xr, half_height);
    rep.right.push_back({xr, zr});
    e.sample(zr < 0.0, {xr, zr, zr, idx++}, zr);
  }
  const double d = kZetaBoundaryOffset;
  for (double xb : {p2 + d, -d, d, p1 - d}) {
    const double zb = solve_zeta(sys, xb, half_height);
    rep.boundary.push_back({xb, zb});
    e.sample(std::abs(zb) <= kZetaBoundaryTol, {xb, zb, zb, idx++}, std::abs(zb));
  }
  rep.entry = std::move(e).finish();
  return rep;
}

struct ReportOptions {
  bool weakened_C2 = false;
  HypothesisTolerances tol;
};

class HypothesisReport {
 public:
  std::vector<HypothesisEntry> entries;

  /// Pass iff every non-skipped entry passes.
  bool pass() const {
    return std::all_of(entries.begin(), entries.end(),
                       [](const HypothesisEntry& e) { return e.verdict != Verdict::fail; });
  }

  const HypothesisEntry* find(const std::string& key) const {
    for (const auto& e : entries)
      if (e.key == key) return &e;
    return nullptr;
  }

  Verdict verdict(const std::string& key) const {
    const auto* e = find(key);
    if (e == nullptr) throw InvalidArgument("no entry " + key);
    return e->verdict;
  }
};

inline int hypothesis_rank(const std::string& key) {
  static const std::array<const char*, 12> order = {"B0", "B1", "B2", "B3", "C1", "C2",
                                                     "C2'", "D1", "D2", "E", "F", "F'"};
  for (std::size_t i = 0; i < order.size(); ++i)
    if (key == order[i]) return static_cast<int>(i);
  return static_cast<int>(order.size());
}

inline HypothesisReport full_report(const PlanarSystem& sys, const AnalysisWindow& w,
                                    const ReportOptions& opt = {}) {
  w.validate(sys);
  HypothesisReport rep;
  auto append = [&](std::vector<HypothesisEntry> es) {
    for (auto& e : es) rep.entries.push_back(std::move(e));
  };
  append(check_B(sys, w, opt.tol));
  append(check_C(sys, w, opt.weakened_C2, opt.tol));
  append(check_D(sys, w, opt.tol));
  rep.entries.push_back(check_E(sys, w, opt.tol));
  if (sys.has_curves()) {
    rep.entries.push_back(check_F(sys, w, opt.tol));
  } else {
    rep.entries.push_back(detail::skipped("F", opt.tol.tol_sign));
  }
  if (sys.has_curves() && sys.F().as_special_form() != nullptr) {
    rep.entries.push_back(check_Fprime(sys, w, opt.tol));
  } else {
    rep.entries.push_back(detail::skipped("F'", opt.tol.tol_sign));
  }
  std::stable_sort(rep.entries.begin(), rep.entries.end(), [](const auto& a, const auto& b) {
    return hypothesis_rank(a.key) < hypothesis_rank(b.key);
  });
  return rep;
}

inline nlohmann::json to_json(const HypothesisEntry& e) {
  nlohmann::json wit = nlohmann::json::array();
  for (const auto& w : e.witnesses) wit.push_back({{"x", w.x}, {"y", w.y}, {"value", w.value}});
  return {{"hypothesis", e.key},
          {"verdict", to_string(e.verdict)},
          {"samples", e.samples},
          {"tolerance", e.tolerance},
          {"witnesses", wit}};
}

inline nlohmann::json to_json(const HypothesisReport& r) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : r.entries) entries.push_back(to_json(e));
  return {{"overall", r.pass() ? "pass" : "fail"}, {"entries", entries}};
}

}  // namespace lcycle

#endif  // LCYCLE_HYPOTHESES_HPP
