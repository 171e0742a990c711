#ifndef LCYCLE_INTEGRATOR_HPP
#define LCYCLE_INTEGRATOR_HPP

/// \file
/// Adaptive Dormand-Prince 5(4) integration of the planar system with the
/// free 4th-order dense output, plus location of section and curve crossings.
///
/// Events are detected by a sign change of the event function across an
/// accepted step, bracketed by bisection on the dense interpolant down to
/// 1e-12 in time, then polished by Newton iterations on a fresh RK sub-step
/// from the start of the step so that the reported state lies on the event
/// manifold to round-off.

#include <algorithm>
#include <array>
#include <cmath>
#include <iomanip>
#include <limits>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "lcycle/error.hpp"
#include "lcycle/system.hpp"

namespace lcycle {

struct IntegratorConfig {
  double rel_tol = 1e-9;
  double abs_tol = 1e-11;
  double max_step = 0.1;
  double max_time = 500.0;
  long max_steps = 1'000'000;
};

/// Integrator settings used for cycle refinement, certificates and long conservation runs: tolerances are
/// tightened to at least rel 1e-12 / abs 1e-14.
inline IntegratorConfig tightened(IntegratorConfig c) {
  c.rel_tol = std::min(c.rel_tol, 1e-12);
  c.abs_tol = std::min(c.abs_tol, 1e-14);
  c.max_step = std::min(c.max_step, 0.05);
  return c;
}

enum class EventKind {
  pos_x_axis_down,  ///< y = 0, x > 0, y' < 0
  neg_x_axis_up,    ///< y = 0, x < 0, y' > 0
  psi1_cross,       ///< x = psi1(y)
  psi2_cross,       ///< x = psi2(y)
  x_axis_any,       ///< y = 0, either direction
};

inline std::string_view to_string(EventKind k) {
  switch (k) {
    case EventKind::pos_x_axis_down: return "pos_x_axis_down";
    case EventKind::neg_x_axis_up: return "neg_x_axis_up";
    case EventKind::psi1_cross: return "psi1_cross";
    case EventKind::psi2_cross: return "psi2_cross";
    case EventKind::x_axis_any: return "x_axis_any";
  }
  return "unknown";
}

struct Sample {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
};

struct Event {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  EventKind kind = EventKind::x_axis_any;
};

/// A tangential contact with an event manifold; not reported as an event.
struct GrazingWarning {
  Event at;
  double rate = 0.0;
};

struct EventRequest {
  std::vector<EventKind> kinds;
  /// Stop at the terminal_count-th occurrence of this kind.
  std::optional<EventKind> terminal;
  int terminal_count = 1;
};

/// Dense interpolant over one accepted step.
struct DenseSegment {
  double t0 = 0.0;
  double h = 0.0;
  std::array<Vec2, 5> r{};

  double t1() const noexcept { return t0 + h; }

  Vec2 operator()(double t) const noexcept {
    const double th = (t - t0) / h;
    const double th1 = 1.0 - th;
    auto comp = [&](double Vec2::*m) {
      return r[0].*m + th * (r[1].*m + th1 * (r[2].*m + th * (r[3].*m + th1 * r[4].*m)));
    };
    return {comp(&Vec2::x), comp(&Vec2::y)};
  }
};

enum class StopReason { max_time, terminal_event };

class Trajectory {
 public:
  std::vector<Sample> samples;
  std::vector<DenseSegment> segments;
  std::vector<Event> events;
  std::vector<GrazingWarning> grazing;
  StopReason stop = StopReason::max_time;

  double t_begin() const { return samples.front().t; }
  double t_end() const { return samples.back().t; }
  const Sample& front() const { return samples.front(); }
  const Sample& back() const { return samples.back(); }

  /// Dense-output state at time t in [t_begin, t_end].
  Vec2 state_at(double t) const {
    if (t <= t_begin()) return {front().x, front().y};
    if (t >= t_end()) return {back().x, back().y};
    auto it = std::upper_bound(segments.begin(), segments.end(), t,
                               [](double v, const DenseSegment& s) { return v < s.t0; });
    if (it != segments.begin()) --it;
    return (*it)(t);
  }

  std::vector<Event> events_of(EventKind k) const {
    std::vector<Event> out;
    for (const auto& e : events)
      if (e.kind == k) out.push_back(e);
    return out;
  }
};

namespace detail {

// Dormand-Prince 5(4) tableau.
struct Dopri5 {
  static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static constexpr double a21 = 1.0 / 5;
  static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                          a54 = -212.0 / 729;
  static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                          a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  static constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192,
                          a75 = -2187.0 / 6784, a76 = 11.0 / 84;
  static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                          e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  static constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                          d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                          d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;
};

struct StepResult {
  Vec2 y1;
  Vec2 k7;
  Vec2 err;
  DenseSegment dense;
};

inline Vec2 axpy(Vec2 y, double h, std::initializer_list<std::pair<double, Vec2>> terms) {
  Vec2 acc{0.0, 0.0};
  for (const auto& [c, k] : terms) {
    acc.x += c * k.x;
    acc.y += c * k.y;
  }
  return {y.x + h * acc.x, y.y + h * acc.y};
}

/// One Dopri5 step. Returns nullopt when a stage leaves the domain.
inline std::optional<StepResult> dopri_step(const PlanarSystem& sys, double t, Vec2 y, Vec2 k1,
                                            double h) {
  using T = Dopri5;
  const auto& dom = sys.domain();
  auto f = [&](Vec2 s) -> std::optional<Vec2> {
    if (!dom.contains(s.x) || !std::isfinite(s.y)) return std::nullopt;
    return sys.field_unchecked(s.x, s.y);
  };
  auto k2 = f(axpy(y, h, {{T::a21, k1}}));
  if (!k2) return std::nullopt;
  auto k3 = f(axpy(y, h, {{T::a31, k1}, {T::a32, *k2}}));
  if (!k3) return std::nullopt;
  auto k4 = f(axpy(y, h, {{T::a41, k1}, {T::a42, *k2}, {T::a43, *k3}}));
  if (!k4) return std::nullopt;
  auto k5 = f(axpy(y, h, {{T::a51, k1}, {T::a52, *k2}, {T::a53, *k3}, {T::a54, *k4}}));
  if (!k5) return std::nullopt;
  auto k6 = f(axpy(y, h, {{T::a61, k1}, {T::a62, *k2}, {T::a63, *k3}, {T::a64, *k4}, {T::a65, *k5}}));
  if (!k6) return std::nullopt;
  const Vec2 y1 = axpy(y, h, {{T::a71, k1}, {T::a73, *k3}, {T::a74, *k4}, {T::a75, *k5}, {T::a76, *k6}});
  auto k7 = f(y1);
  if (!k7) return std::nullopt;

  StepResult r;
  r.y1 = y1;
  r.k7 = *k7;
  const Vec2 zero{0.0, 0.0};
  r.err = axpy(zero, h, {{T::e1, k1}, {T::e3, *k3}, {T::e4, *k4}, {T::e5, *k5}, {T::e6, *k6}, {T::e7, *k7}});
  const Vec2 diff{y1.x - y.x, y1.y - y.y};
  const Vec2 bspl{h * k1.x - diff.x, h * k1.y - diff.y};
  r.dense.t0 = t;
  r.dense.h = h;
  r.dense.r[0] = y;
  r.dense.r[1] = diff;
  r.dense.r[2] = bspl;
  r.dense.r[3] = {diff.x - h * k7->x - bspl.x, diff.y - h * k7->y - bspl.y};
  r.dense.r[4] = axpy(zero, h, {{T::d1, k1}, {T::d3, *k3}, {T::d4, *k4}, {T::d5, *k5}, {T::d6, *k6}, {T::d7, *k7}});
  return r;
}

inline bool is_axis_kind(EventKind k) {
  return k == EventKind::pos_x_axis_down || k == EventKind::neg_x_axis_up || k == EventKind::x_axis_any;
}

inline double event_value(const PlanarSystem& sys, EventKind k, Vec2 s) {
  switch (k) {
    case EventKind::psi1_cross: return s.x - sys.psi(1)(s.y);
    case EventKind::psi2_cross: return s.x - sys.psi(2)(s.y);
    default: return s.y;
  }
}

/// Time derivative of the event function along the flow.
inline double event_rate(const PlanarSystem& sys, EventKind k, Vec2 s) {
  const Vec2 v = sys.field_unchecked(s.x, s.y);
  switch (k) {
    case EventKind::psi1_cross: return v.x - sys.dpsi(1)(s.y) * v.y;
    case EventKind::psi2_cross: return v.x - sys.dpsi(2)(s.y) * v.y;
    default: return v.y;
  }
}

inline bool sign_change(double e0, double e1) {
  return (e0 < 0.0 && e1 >= 0.0) || (e0 > 0.0 && e1 <= 0.0);
}

inline constexpr double kEventTimeTol = 1e-12;
inline constexpr double kGrazingRate = 1e-12;

struct Located {
  double t;
  Vec2 s;
};

/// Bisection on the interpolant, then Newton polish on exact sub-steps.
inline Located locate_event(const PlanarSystem& sys, EventKind k, const DenseSegment& seg, Vec2 y0,
                            Vec2 k1, double e0) {
  double lo = seg.t0;
  double hi = seg.t1();
  double elo = e0;
  while (hi - lo > kEventTimeTol) {
    const double mid = 0.5 * (lo + hi);
    const double em = event_value(sys, k, seg(mid));
    if (sign_change(elo, em)) {
      hi = mid;
    } else {
      lo = mid;
      elo = em;
    }
  }
  double te = 0.5 * (lo + hi);
  auto exact = [&](double t) -> Vec2 {
    const double h = t - seg.t0;
    if (h <= 0.0) return y0;
    auto st = dopri_step(sys, seg.t0, y0, k1, h);
    return st ? st->y1 : seg(t);
  };
  Vec2 s = exact(te);
  for (int it = 0; it < 4; ++it) {
    const double e = event_value(sys, k, s);
    const double rate = event_rate(sys, k, s);
    if (e == 0.0 || std::abs(rate) < kGrazingRate) break;
    const double dt = -e / rate;
    if (std::abs(dt) > 1e-3 * seg.h) break;
    te += dt;
    s = exact(te);
    if (std::abs(dt) < 1e-16 * (1.0 + std::abs(te))) break;
  }
  return {te, s};
}

inline bool direction_ok(EventKind k, Vec2 s, double rate) {
  switch (k) {
    case EventKind::pos_x_axis_down: return s.x > 0.0 && rate < 0.0;
    case EventKind::neg_x_axis_up: return s.x < 0.0 && rate > 0.0;
    default: return true;
  }
}

}  // namespace detail

/// Integrates from start until config.max_time or the requested terminal event.
inline Trajectory integrate(const PlanarSystem& sys, Vec2 start, const IntegratorConfig& config,
                            const EventRequest& request = {}) {
  sys.require_in_domain(start.x);
  if (start.x == 0.0 && start.y == 0.0) throw InvalidArgument("integration cannot start at the origin");
  if (!(config.rel_tol > 0.0 && config.abs_tol > 0.0) || config.max_steps < 1) {
    throw InvalidArgument("integrator tolerances must be positive and max_steps >= 1");
  }
  for (auto k : request.kinds) {
    if (!detail::is_axis_kind(k) && !sys.has_curves()) throw MissingCurves();
  }

  Trajectory traj;
  double t = 0.0;
  Vec2 y = start;
  Vec2 k1 = sys.field_unchecked(y.x, y.y);
  traj.samples.push_back({t, y.x, y.y});

  std::vector<double> evals(request.kinds.size());
  for (std::size_t i = 0; i < request.kinds.size(); ++i) evals[i] = detail::event_value(sys, request.kinds[i], y);
  int terminal_hits = 0;

  const double norm_y = std::max(std::hypot(y.x, y.y), 1e-5);
  const double norm_f = std::max(std::hypot(k1.x, k1.y), 1e-5);
  double h = std::min({config.max_step, 0.01 * norm_y / norm_f, config.max_time});
  long steps = 0;
  bool last_rejected = false;

  while (t < config.max_time) {
    if (++steps > config.max_steps) throw BudgetExceeded(config.max_steps);
    h = std::min({h, config.max_step, config.max_time - t});
    if (h < 1e-14) throw StepUnderflow(t);

    auto step = detail::dopri_step(sys, t, y, k1, h);
    if (!step) {
      // A stage left the domain; retry smaller and give up near the boundary.
      h *= 0.5;
      if (h < 1e-14) throw DomainExceeded(y.x, sys.domain().a, sys.domain().b);
      last_rejected = true;
      continue;
    }
    const double sx = config.abs_tol + config.rel_tol * std::max(std::abs(y.x), std::abs(step->y1.x));
    const double sy = config.abs_tol + config.rel_tol * std::max(std::abs(y.y), std::abs(step->y1.y));
    const double err = std::sqrt(0.5 * (std::pow(step->err.x / sx, 2) + std::pow(step->err.y / sy, 2)));
    if (!std::isfinite(err)) {
      h *= 0.2;
      last_rejected = true;
      continue;
    }
    if (err > 1.0) {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
      last_rejected = true;
      continue;
    }

    // accepted
    const double t1 = t + h;
    std::vector<std::pair<std::size_t, detail::Located>> found;
    std::vector<double> evals1(request.kinds.size());
    for (std::size_t i = 0; i < request.kinds.size(); ++i) {
      const auto k = request.kinds[i];
      evals1[i] = detail::event_value(sys, k, step->y1);
      if (!detail::sign_change(evals[i], evals1[i])) continue;
      auto loc = detail::locate_event(sys, k, step->dense, y, k1, evals[i]);
      const double rate = detail::event_rate(sys, k, loc.s);
      if (std::abs(rate) < detail::kGrazingRate) {
        traj.grazing.push_back({{loc.t, loc.s.x, loc.s.y, k}, rate});
        continue;
      }
      if (!detail::direction_ok(k, loc.s, rate)) continue;
      found.push_back({i, loc});
    }
    std::sort(found.begin(), found.end(), [](const auto& a, const auto& b) { return a.second.t < b.second.t; });

    std::optional<detail::Located> stop_at;
    for (const auto& [i, loc] : found) {
      const auto k = request.kinds[i];
      traj.events.push_back({loc.t, loc.s.x, loc.s.y, k});
      if (request.terminal && *request.terminal == k && ++terminal_hits >= request.terminal_count) {
        stop_at = loc;
        break;
      }
    }

    traj.segments.push_back(step->dense);
    if (stop_at) {
      traj.samples.push_back({stop_at->t, stop_at->s.x, stop_at->s.y});
      traj.stop = StopReason::terminal_event;
      return traj;
    }

    t = t1;
    y = step->y1;
    k1 = step->k7;
    evals = std::move(evals1);
    traj.samples.push_back({t, y.x, y.y});

    double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
    if (last_rejected) fac = std::min(fac, 1.0);
    h *= fac;
    last_rejected = false;
  }
  traj.stop = StopReason::max_time;
  return traj;
}

/// int_{ta}^{tb} fn(x(t), y(t)) dt over the dense output, by adaptive
/// Gauss-Kronrod quadrature on each step.
template <class Fn>
double trajectory_integral(const Trajectory& traj, Fn&& fn, double ta, double tb) {
  using boost::math::quadrature::gauss_kronrod;
  if (tb < ta) return -trajectory_integral(traj, fn, tb, ta);
  ta = std::max(ta, traj.t_begin());
  tb = std::min(tb, traj.t_end());
  double total = 0.0;
  for (const auto& seg : traj.segments) {
    const double lo = std::max(ta, seg.t0);
    const double hi = std::min(tb, seg.t1());
    if (!(hi > lo)) continue;
    auto integrand = [&](double t) {
      const Vec2 s = seg(t);
      return fn(s.x, s.y);
    };
    total += gauss_kronrod<double, 15>::integrate(integrand, lo, hi, 6, 1e-13);
  }
  return total;
}

inline double trajectory_integral_gF(const PlanarSystem& sys, const Trajectory& traj, double ta, double tb) {
  return trajectory_integral(
      traj, [&](double x, double y) { return sys.g()(x) * sys.F()(x, y); }, ta, tb);
}

/// Writes `t,x,y,event` rows (samples and events merged by time) at 17
/// significant digits.
inline void write_csv(std::ostream& os, const Trajectory& traj) {
  struct Row {
    double t, x, y;
    std::string_view tag;
  };
  std::vector<Row> rows;
  rows.reserve(traj.samples.size() + traj.events.size());
  for (const auto& s : traj.samples) rows.push_back({s.t, s.x, s.y, {}});
  for (const auto& e : traj.events) rows.push_back({e.t, e.x, e.y, to_string(e.kind)});
  std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.t < b.t; });
  os << "t,x,y,event\n" << std::setprecision(17);
  for (const auto& r : rows) os << r.t << ',' << r.x << ',' << r.y << ',' << r.tag << '\n';
}

struct ReturnResult {
  double x1 = 0.0;
  double period = 0.0;
  Trajectory trajectory;
};

/// Poincare return to the positive x-axis, crossing downward.
inline ReturnResult first_return(const PlanarSystem& sys, double x0, const IntegratorConfig& config,
                                 std::vector<EventKind> extra_events = {}) {
  if (!(x0 > 0.0) || !sys.domain().contains(x0)) throw InvalidArgument("first_return needs x0 in (0, b)");
  EventRequest req;
  req.kinds = {EventKind::pos_x_axis_down};
  for (auto k : extra_events)
    if (k != EventKind::pos_x_axis_down) req.kinds.push_back(k);
  req.terminal = EventKind::pos_x_axis_down;
  Trajectory traj;
  try {
    traj = integrate(sys, {x0, 0.0}, config, req);
  } catch (const BudgetExceeded& e) {
    throw NoReturn(e.what());
  } catch (const StepUnderflow& e) {
    throw NoReturn(e.what());
  } catch (const DomainExceeded& e) {
    throw NoReturn(e.what());
  }
  if (traj.stop != StopReason::terminal_event) throw NoReturn("max_time reached");
  const auto& last = traj.back();
  return {last.x, last.t, std::move(traj)};
}

}  // namespace lcycle

#endif  // LCYCLE_INTEGRATOR_HPP
