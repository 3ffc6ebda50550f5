#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "wavedisk/equilibria.hpp"

namespace wavedisk {

/// Polynomial with double coefficients laid out for fast repeated evaluation.
class FastPoly {
 public:
  FastPoly() = default;
  explicit FastPoly(const BivariatePolynomial& p);
  explicit FastPoly(const RealPolynomial& p);

  double operator()(double x, double y) const;

 private:
  struct Term {
    int i, j;
    double c;
  };
  std::vector<Term> terms_;
  int max_i_ = 0, max_j_ = 0;
};

/// Vector field on one chart, (x, y) -> (f, g); `sign` = -1 reverses time.
struct FastField {
  FastPoly f, g;
  double sign = 1.0;

  Vec2 operator()(const Vec2& p) const { return {sign * f(p.x, p.y), sign * g(p.x, p.y)}; }
};

enum class IntegrationDirection { forward, backward };

enum class EventKind { phi_zero_crossing, psi_zero_crossing, enter_ball, exit_radius, lambda1_zero };
enum class EventDirection { any, up, down };
std::string to_string(EventKind k);

struct EventSpec {
  EventKind kind = EventKind::phi_zero_crossing;
  EventDirection direction = EventDirection::any;
  Vec2 center{};       ///< enter_ball, finite coordinates
  double radius = 0;   ///< enter_ball radius or exit_radius R_max
  bool stop = false;   ///< member of the stop-on subset

  static EventSpec phi_zero(bool stop = false, EventDirection d = EventDirection::any) {
    return {EventKind::phi_zero_crossing, d, {}, 0, stop};
  }
  static EventSpec psi_zero(bool stop = false, EventDirection d = EventDirection::any) {
    return {EventKind::psi_zero_crossing, d, {}, 0, stop};
  }
  static EventSpec ball(Vec2 c, double r, bool stop = true) { return {EventKind::enter_ball, EventDirection::down, c, r, stop}; }
  static EventSpec exit(double R, bool stop = true) { return {EventKind::exit_radius, EventDirection::up, {}, R, stop}; }
};

struct Frame {
  double t;
  ChartId chart;
  Vec2 p;
};

struct EventRecord {
  double t;
  std::size_t index;  ///< position in the EventSpec list
  EventKind kind;
  ChartId chart;
  Vec2 p;
};

enum class FateTag { reached_E0_ball, escaped_R_max, hit_horizon, reached_boundary_equilibrium, stopped_on_event };
std::string to_string(FateTag f);

struct OrbitFate {
  FateTag tag = FateTag::hit_horizon;
  std::string label;  ///< boundary equilibrium label, or the event name for stopped_on_event
};

enum class StopReason { horizon, event, predicate, step_underflow, nonfinite, max_steps };
std::string to_string(StopReason r);

struct Trajectory {
  std::vector<Frame> frames;
  std::vector<EventRecord> events;
  std::vector<EventSpec> specs;
  OrbitFate terminal;
  StopReason reason = StopReason::horizon;
  TimeFrame time_frame = TimeFrame::s_tilde;
  IntegrationDirection direction = IntegrationDirection::forward;
  std::size_t steps = 0;
  std::string failure;  ///< set for step_underflow / nonfinite

  const Frame& last() const { return frames.back(); }
  std::size_t count(EventKind k) const;
};

/// Returns true to stop the integration after an accepted step.
using StopPredicate = std::function<bool(const Trajectory&, ChartId, double t, const Vec2&)>;

struct IntegrateOptions {
  double horizon = 1e3;
  double rtol = 1e-10;
  double atol = 1e-12;
  double initial_step = 1e-3;
  double min_step = 1e-14;
  double max_step = 0;  ///< 0: unlimited
  std::size_t max_frames = 10000;
  std::size_t max_steps = 50'000'000;
  StopPredicate stop_predicate;
};

/// Adaptive Dormand-Prince 5(4) integration of a planar system in its own
/// time frame, with events located by bisection on the dense output.
/// Backward runs integrate the negated field; recorded times are elapsed time.
Trajectory integrate(const PlanarSystem& sys, const Vec2& init, IntegrationDirection dir,
                     const std::vector<EventSpec>& events, const IntegrateOptions& opts = {});

/// Same on a single chart field given directly.
Trajectory integrate_field(const BivariatePolynomial& f, const BivariatePolynomial& g, ChartId chart, const Vec2& init,
                           IntegrationDirection dir, const std::vector<EventSpec>& events,
                           const IntegrateOptions& opts = {});

struct DiskOptions : IntegrateOptions {
  double R_switch = 10.0;
  /// Divide the U2/V2 fields by the distance to the chart origin (the phi = 0
  /// direction at infinity). Orbits are unchanged; times in those charts are not.
  bool rescale_near_axis = false;
};

/// Integrates the desingularized system over the closed disk, moving between the
/// finite chart and U1/V1/U2/V2 as the orbit grows or returns. Event quantities
/// (phi, psi signs, radii) are evaluated in whichever chart is active.
Trajectory track_on_disk(const PlanarSystem& poly_sys, ChartId chart, const Vec2& init, IntegrationDirection dir,
                         const std::vector<EventSpec>& events, const DiskOptions& opts = {});

/// Final classification of a finished trajectory.
OrbitFate orbit_fate(const Trajectory& t, const Vec2& e0_center, double e0_radius,
                     const std::vector<Equilibrium>& boundary_eqs);

/// Sign-carrying value of phi and psi in any chart.
double phi_sign_value(ChartId chart, const Vec2& p);
double psi_sign_value(ChartId chart, const Vec2& p);

}  // namespace wavedisk
