#pragma once

#include <functional>

#include "wavedisk/flow.hpp"

namespace wavedisk::detail {

/// Event bookkeeping that survives chart switches.
struct EventState {
  std::vector<double> prev;
  std::vector<bool> valid;
};

double event_value(const EventSpec& e, ChartId chart, const Vec2& p);

enum class SegmentEnd { horizon, stopped, switch_chart, failed };

struct SegmentResult {
  SegmentEnd end = SegmentEnd::horizon;
  double t = 0.0;
  Vec2 p{};
  double last_dt = 0.0;
};

using VecField = std::function<Vec2(const Vec2&)>;
using SwitchCheck = std::function<bool(ChartId, const Vec2&)>;

/// Integrates one chart field from (t0, init) up to t_end, appending frames and
/// events to traj. Returns early when a stop event or predicate fires, when
/// should_switch reports true after an accepted step, or on failure.
SegmentResult run_segment(const VecField& field, ChartId chart, const Vec2& init, double t0, double t_end,
                          double dt0, const IntegrateOptions& opts, const SwitchCheck& should_switch,
                          Trajectory& traj, EventState& state);

void push_frame(Trajectory& traj, const Frame& f, std::size_t max_frames);

/// Sets traj.terminal from traj.reason and the last event.
void settle_terminal(Trajectory& traj);

}  // namespace wavedisk::detail
