#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "flow_engine.hpp"

namespace wavedisk {

namespace odeint = boost::numeric::odeint;

FastPoly::FastPoly(const BivariatePolynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    if (e.first < 0 || e.second < 0) throw std::invalid_argument("FastPoly: negative exponent");
    terms_.push_back({e.first, e.second, c.get_d()});
    max_i_ = std::max(max_i_, e.first);
    max_j_ = std::max(max_j_, e.second);
  }
}

FastPoly::FastPoly(const RealPolynomial& p) {
  for (const auto& [e, c] : p.terms()) {
    if (e.first < 0 || e.second < 0) throw std::invalid_argument("FastPoly: negative exponent");
    terms_.push_back({e.first, e.second, c});
    max_i_ = std::max(max_i_, e.first);
    max_j_ = std::max(max_j_, e.second);
  }
}

double FastPoly::operator()(double x, double y) const {
  constexpr int kMax = 16;
  double px[kMax], py[kMax];
  const int ni = std::min(max_i_, kMax - 1), nj = std::min(max_j_, kMax - 1);
  px[0] = py[0] = 1.0;
  for (int k = 1; k <= ni; ++k) px[k] = px[k - 1] * x;
  for (int k = 1; k <= nj; ++k) py[k] = py[k - 1] * y;
  double acc = 0.0;
  for (const auto& t : terms_) {
    const double xi = t.i <= ni ? px[t.i] : std::pow(x, t.i);
    const double yj = t.j <= nj ? py[t.j] : std::pow(y, t.j);
    acc += t.c * xi * yj;
  }
  return acc;
}

std::string to_string(EventKind k) {
  switch (k) {
    case EventKind::phi_zero_crossing: return "phi_zero_crossing";
    case EventKind::psi_zero_crossing: return "psi_zero_crossing";
    case EventKind::enter_ball: return "enter_ball";
    case EventKind::exit_radius: return "exit_radius";
    case EventKind::lambda1_zero: return "lambda1_zero";
  }
  return "?";
}

std::string to_string(FateTag f) {
  switch (f) {
    case FateTag::reached_E0_ball: return "reached_E0_ball";
    case FateTag::escaped_R_max: return "escaped_R_max";
    case FateTag::hit_horizon: return "hit_horizon";
    case FateTag::reached_boundary_equilibrium: return "reached_boundary_equilibrium";
    case FateTag::stopped_on_event: return "stopped_on_event";
  }
  return "?";
}

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::horizon: return "horizon";
    case StopReason::event: return "event";
    case StopReason::predicate: return "predicate";
    case StopReason::step_underflow: return "step_underflow";
    case StopReason::nonfinite: return "nonfinite";
    case StopReason::max_steps: return "max_steps";
  }
  return "?";
}

std::size_t Trajectory::count(EventKind k) const {
  std::size_t n = 0;
  for (const auto& e : events)
    if (e.kind == k) ++n;
  return n;
}

namespace detail {

namespace {

using State = std::array<double, 2>;

bool crossed(const EventSpec& e, double prev, double now) {
  if (!(prev * now < 0.0 || (now == 0.0 && prev != 0.0))) return false;
  switch (e.direction) {
    case EventDirection::any: return true;
    case EventDirection::up: return prev < 0.0;
    case EventDirection::down: return prev > 0.0;
  }
  return true;
}

bool finite(const Vec2& p) { return std::isfinite(p.x) && std::isfinite(p.y); }

}  // namespace

double event_value(const EventSpec& e, ChartId chart, const Vec2& p) {
  switch (e.kind) {
    case EventKind::phi_zero_crossing: return phi_sign_value(chart, p);
    case EventKind::psi_zero_crossing: return psi_sign_value(chart, p);
    case EventKind::enter_ball: {
      if (chart == ChartId::Finite) return std::hypot(p.x - e.center.x, p.y - e.center.y) - e.radius;
      if (p.x <= 0.0) return std::numeric_limits<double>::max();
      const Vec2 q = plane_from_chart(chart, p);
      return std::hypot(q.x - e.center.x, q.y - e.center.y) - e.radius;
    }
    case EventKind::exit_radius:
      if (chart == ChartId::Finite) return std::hypot(p.x, p.y) - e.radius;
      return std::sqrt(1.0 + p.y * p.y) - e.radius * p.x;
    case EventKind::lambda1_zero: return chart == ChartId::Finite ? 1.0 : p.x;
  }
  return 1.0;
}

void push_frame(Trajectory& traj, const Frame& f, std::size_t max_frames) {
  auto& fr = traj.frames;
  if (!fr.empty() && f.t <= fr.back().t && f.chart == fr.back().chart) return;
  fr.push_back(f);
  if (max_frames > 0 && fr.size() >= 2 * max_frames) {
    // Keep the first and last frame, drop every other one in between.
    std::vector<Frame> kept;
    kept.reserve(fr.size() / 2 + 2);
    for (std::size_t i = 0; i + 1 < fr.size(); i += 2) kept.push_back(fr[i]);
    kept.push_back(fr.back());
    fr.swap(kept);
  }
}

SegmentResult run_segment(const VecField& field, ChartId chart, const Vec2& init, double t0, double t_end,
                          double dt0, const IntegrateOptions& opts, const SwitchCheck& should_switch,
                          Trajectory& traj, EventState& st) {
  const auto& specs = traj.specs;
  if (st.prev.size() != specs.size()) {
    st.prev.assign(specs.size(), 0.0);
    st.valid.assign(specs.size(), false);
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    st.prev[i] = event_value(specs[i], chart, init);
    st.valid[i] = true;
  }

  auto rhs = [&field](const State& x, State& dxdt, double) {
    const Vec2 v = field({x[0], x[1]});
    dxdt[0] = v.x;
    dxdt[1] = v.y;
  };
  const double max_dt = opts.max_step > 0 ? opts.max_step : 0.0;
  auto stepper = odeint::make_dense_output(opts.atol, opts.rtol, max_dt, odeint::runge_kutta_dopri5<State>());
  const double dt_start = std::min(dt0 > 0 ? dt0 : opts.initial_step, std::max(t_end - t0, opts.min_step));
  stepper.initialize(State{init.x, init.y}, t0, dt_start);

  SegmentResult res;
  res.t = t0;
  res.p = init;
  push_frame(traj, {t0, chart, init}, opts.max_frames);
  if (t_end <= t0) return res;

  State tmp;
  std::vector<std::pair<double, std::size_t>> hits;
  while (true) {
    if (traj.steps >= opts.max_steps) {
      traj.reason = StopReason::max_steps;
      res.end = SegmentEnd::failed;
      return res;
    }
    std::pair<double, double> span;
    try {
      span = stepper.do_step(rhs);
    } catch (const std::exception& ex) {
      traj.reason = StopReason::step_underflow;
      traj.failure = std::string("step underflow: ") + ex.what();
      res.end = SegmentEnd::failed;
      return res;
    }
    ++traj.steps;
    const double t_old = span.first;
    double t_new = span.second;
    bool at_horizon = false;
    if (t_new >= t_end) {
      t_new = t_end;
      at_horizon = true;
    }
    if (!at_horizon) {
      const State& cur = stepper.current_state();
      tmp = cur;
    } else {
      stepper.calc_state(t_new, tmp);
    }
    Vec2 p{tmp[0], tmp[1]};
    if (!finite(p)) {
      traj.reason = StopReason::nonfinite;
      traj.failure = "nonfinite state";
      res.end = SegmentEnd::failed;
      return res;
    }

    // Earliest event inside (t_old, t_new].
    hits.clear();
    for (std::size_t i = 0; i < specs.size(); ++i) {
      const double g_new = event_value(specs[i], chart, p);
      if (st.valid[i] && crossed(specs[i], st.prev[i], g_new)) {
        double a = t_old, b = t_new, ga = st.prev[i];
        for (int it = 0; it < 200 && b - a > 1e-10; ++it) {
          const double m = 0.5 * (a + b);
          stepper.calc_state(m, tmp);
          const double gm = event_value(specs[i], chart, {tmp[0], tmp[1]});
          if ((ga < 0.0 && gm < 0.0) || (ga > 0.0 && gm > 0.0)) {
            a = m;
            ga = gm;
          } else {
            b = m;
          }
        }
        hits.push_back({b, i});
      }
      st.prev[i] = g_new;
    }
    std::sort(hits.begin(), hits.end());
    for (const auto& [th, idx] : hits) {
      stepper.calc_state(th, tmp);
      const Vec2 q{tmp[0], tmp[1]};
      traj.events.push_back({th, idx, specs[idx].kind, chart, q});
      if (specs[idx].stop) {
        push_frame(traj, {th, chart, q}, opts.max_frames);
        traj.reason = StopReason::event;
        res.end = SegmentEnd::stopped;
        res.t = th;
        res.p = q;
        return res;
      }
    }

    push_frame(traj, {t_new, chart, p}, opts.max_frames);
    res.t = t_new;
    res.p = p;
    res.last_dt = stepper.current_time_step();
    if (opts.stop_predicate && opts.stop_predicate(traj, chart, t_new, p)) {
      traj.reason = StopReason::predicate;
      res.end = SegmentEnd::stopped;
      return res;
    }
    if (at_horizon) {
      traj.reason = StopReason::horizon;
      res.end = SegmentEnd::horizon;
      return res;
    }
    if (stepper.current_time_step() < opts.min_step) {
      traj.reason = StopReason::step_underflow;
      traj.failure = "step underflow";
      res.end = SegmentEnd::failed;
      return res;
    }
    if (should_switch && should_switch(chart, p)) {
      res.end = SegmentEnd::switch_chart;
      return res;
    }
  }
}

void settle_terminal(Trajectory& traj) {
  traj.terminal = {};
  if (traj.reason == StopReason::event && !traj.events.empty()) {
    const EventKind k = traj.events.back().kind;
    if (k == EventKind::enter_ball) traj.terminal = {FateTag::reached_E0_ball, ""};
    else if (k == EventKind::exit_radius) traj.terminal = {FateTag::escaped_R_max, ""};
    else traj.terminal = {FateTag::stopped_on_event, to_string(k)};
  } else if (traj.reason == StopReason::predicate) {
    traj.terminal = {FateTag::stopped_on_event, "predicate"};
  } else {
    traj.terminal = {FateTag::hit_horizon, ""};
  }
}

}  // namespace detail

Trajectory integrate_field(const BivariatePolynomial& f, const BivariatePolynomial& g, ChartId chart, const Vec2& init,
                           IntegrationDirection dir, const std::vector<EventSpec>& events,
                           const IntegrateOptions& opts) {
  if (!(opts.horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (!std::isfinite(init.x) || !std::isfinite(init.y)) throw std::invalid_argument("initial point must be finite");
  Trajectory traj;
  traj.specs = events;
  traj.direction = dir;
  FastField ff{FastPoly(f), FastPoly(g), dir == IntegrationDirection::forward ? 1.0 : -1.0};
  detail::VecField field = [&ff](const Vec2& p) { return ff(p); };
  detail::EventState st;
  detail::run_segment(field, chart, init, 0.0, opts.horizon, opts.initial_step, opts, {}, traj, st);
  detail::settle_terminal(traj);
  return traj;
}

Trajectory integrate(const PlanarSystem& sys, const Vec2& init, IntegrationDirection dir,
                     const std::vector<EventSpec>& events, const IntegrateOptions& opts) {
  if (sys.is_polynomial()) {
    Trajectory t = integrate_field(sys.rhs_phi.num, sys.rhs_psi.num, ChartId::Finite, init, dir, events, opts);
    t.time_frame = sys.time_frame;
    return t;
  }
  if (!(opts.horizon > 0)) throw std::invalid_argument("horizon must be positive");
  if (!std::isfinite(init.x) || !std::isfinite(init.y)) throw std::invalid_argument("initial point must be finite");
  Trajectory traj;
  traj.specs = events;
  traj.direction = dir;
  traj.time_frame = sys.time_frame;
  const FastPoly n1(sys.rhs_phi.num), n2(sys.rhs_psi.num), d1(sys.rhs_phi.den), d2(sys.rhs_psi.den);
  const double sign = dir == IntegrationDirection::forward ? 1.0 : -1.0;
  detail::VecField field = [&, sign](const Vec2& p) {
    const double a = d1(p.x, p.y), b = d2(p.x, p.y);
    if (a == 0.0 || b == 0.0) throw PoleError();
    return Vec2{sign * n1(p.x, p.y) / a, sign * n2(p.x, p.y) / b};
  };
  detail::EventState st;
  detail::run_segment(field, ChartId::Finite, init, 0.0, opts.horizon, opts.initial_step, opts, {}, traj, st);
  detail::settle_terminal(traj);
  return traj;
}

}  // namespace wavedisk
