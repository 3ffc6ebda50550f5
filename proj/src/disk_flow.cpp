#include <cmath>

#include "flow_engine.hpp"

namespace wavedisk {

double phi_sign_value(ChartId chart, const Vec2& p) {
  switch (chart) {
    case ChartId::Finite: return p.x;
    case ChartId::U1: return 1.0;
    case ChartId::V1: return -1.0;
    case ChartId::U2: return p.y;
    case ChartId::V2: return -p.y;
  }
  return p.x;
}

double psi_sign_value(ChartId chart, const Vec2& p) {
  switch (chart) {
    case ChartId::Finite: return p.y;
    case ChartId::U1: return p.y;
    case ChartId::V1: return -p.y;
    case ChartId::U2: return 1.0;
    case ChartId::V2: return -1.0;
  }
  return p.y;
}

Trajectory track_on_disk(const PlanarSystem& poly_sys, ChartId chart, const Vec2& init, IntegrationDirection dir,
                         const std::vector<EventSpec>& events, const DiskOptions& opts) {
  if (!(opts.horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (!std::isfinite(init.x) || !std::isfinite(init.y)) throw std::invalid_argument("initial point must be finite");
  if (chart != ChartId::Finite && init.x < 0) throw ChartError("wrong chart");
  const double sign = dir == IntegrationDirection::forward ? 1.0 : -1.0;
  std::array<FastField, 5> fields;
  std::array<bool, 5> built{};
  auto field_for = [&](ChartId c) -> const FastField& {
    const auto k = static_cast<std::size_t>(c);
    if (!built[k]) {
      const ChartSystem cs = chart_system(poly_sys, c);
      fields[k] = FastField{FastPoly(cs.rhs_lambda1), FastPoly(cs.rhs_lambda2), sign};
      built[k] = true;
    }
    return fields[k];
  };

  const double R = opts.R_switch;
  auto should_switch = [R](ChartId c, const Vec2& p) {
    if (c == ChartId::Finite) return std::max(std::abs(p.x), std::abs(p.y)) > R;
    return p.x > 2.0 / R || std::abs(p.y) > 2.0;
  };
  auto next_chart = [R](ChartId c, const Vec2& p) {
    if (c == ChartId::Finite) return preferred_chart(disk_embed(p));
    if (p.x > 2.0 / R) return ChartId::Finite;
    const DiskPoint d = disk_from_chart(c, p);
    const ChartId to = preferred_chart(d);
    return to == ChartId::Finite ? ChartId::Finite : to;
  };

  Trajectory traj;
  traj.specs = events;
  traj.direction = dir;
  traj.time_frame = TimeFrame::s_tilde;
  detail::EventState st;
  ChartId cur = chart;
  Vec2 p = init;
  // Start in the chart the hysteresis rules would pick.
  if (should_switch(cur, p)) {
    ChartId to = next_chart(cur, p);
    if (to != cur) {
      p = transition(cur, p, to);
      cur = to;
    }
  }
  double t = 0.0, dt = opts.initial_step;
  for (int switches = 0;; ++switches) {
    const FastField& ff = field_for(cur);
    detail::VecField field = [&ff](const Vec2& q) { return ff(q); };
    if (opts.rescale_near_axis && (cur == ChartId::U2 || cur == ChartId::V2))
      field = [&ff](const Vec2& q) {
        const Vec2 v = ff(q);
        const double rho = std::hypot(q.x, q.y);
        return rho > 0 ? Vec2{v.x / rho, v.y / rho} : v;
      };
    const detail::SegmentResult r =
        detail::run_segment(field, cur, p, t, opts.horizon, dt, opts, should_switch, traj, st);
    if (r.end != detail::SegmentEnd::switch_chart) break;
    const ChartId to = next_chart(cur, r.p);
    t = r.t;
    dt = r.last_dt;
    if (to == cur) {
      p = r.p;
      continue;
    }
    p = transition(cur, r.p, to);
    cur = to;
    if (switches > 1'000'000) {
      traj.reason = StopReason::max_steps;
      traj.failure = "chart switching did not settle";
      break;
    }
  }
  detail::settle_terminal(traj);
  return traj;
}

OrbitFate orbit_fate(const Trajectory& t, const Vec2& e0_center, double e0_radius,
                     const std::vector<Equilibrium>& boundary_eqs) {
  if (t.frames.empty()) return {FateTag::hit_horizon, ""};
  const Frame& f = t.last();
  if (f.chart == ChartId::Finite && std::hypot(f.p.x - e0_center.x, f.p.y - e0_center.y) <= e0_radius * (1 + 1e-9))
    return {FateTag::reached_E0_ball, ""};
  if (t.terminal.tag == FateTag::reached_E0_ball) return t.terminal;
  const bool near_infinity = f.chart != ChartId::Finite || t.terminal.tag == FateTag::escaped_R_max;
  if (near_infinity && f.chart != ChartId::Finite) {
    const DiskPoint d = disk_from_chart(f.chart, f.p);
    for (const auto& e : boundary_eqs) {
      const DiskPoint de = disk_from_chart(e.chart, e.coords);
      if (angular_distance(d, de) > 1e-3) continue;
      // Locally contracting: the boundary field pushes lambda2 toward the root from the current side.
      const Vec2 q = transition(f.chart, f.p, e.chart);
      const double along = e.jacobian[1][1];
      const double toward = (q.y - e.coords.y) * along;
      const bool forward = t.direction == IntegrationDirection::forward;
      if ((forward && toward <= 0) || (!forward && toward >= 0) || std::abs(q.y - e.coords.y) < 1e-9)
        return {FateTag::reached_boundary_equilibrium, e.label};
    }
  }
  return t.terminal;
}

}  // namespace wavedisk
