#include "wavedisk/waves.hpp"

#include <array>
#include <cmath>
#include <limits>

#include <boost/numeric/odeint.hpp>

#include "wavedisk/roots.hpp"

namespace wavedisk {

namespace odeint = boost::numeric::odeint;

std::string to_string(SeedLabel l) {
  switch (l) {
    case SeedLabel::E1: return "E1";
    case SeedLabel::E2: return "E2";
    case SeedLabel::E3_center: return "E3_center";
    case SeedLabel::far_field: return "far_field";
  }
  return "?";
}

std::string to_string(SeedBranch b) {
  switch (b) {
    case SeedBranch::radial: return "radial";
    case SeedBranch::upper: return "upper";
    case SeedBranch::lower: return "lower";
  }
  return "?";
}

SeedLabel seed_label_from_string(const std::string& s) {
  if (s == "E1") return SeedLabel::E1;
  if (s == "E2") return SeedLabel::E2;
  if (s == "E3" || s == "E3_center") return SeedLabel::E3_center;
  if (s == "far_field") return SeedLabel::far_field;
  throw ModelError("unknown seed label: " + s);
}

SeedBranch seed_branch_from_string(const std::string& s) {
  if (s == "radial") return SeedBranch::radial;
  if (s == "upper") return SeedBranch::upper;
  if (s == "lower") return SeedBranch::lower;
  throw ModelError("unknown seed branch: " + s);
}

std::string to_string(OrbitClass k) {
  switch (k) {
    case OrbitClass::positive_monotone_to_E0: return "positive_monotone_to_E0";
    case OrbitClass::sign_changing_single_dip: return "sign_changing_single_dip";
    case OrbitClass::oscillatory_unbounded: return "oscillatory_unbounded";
    case OrbitClass::other: return "other";
  }
  return "?";
}

namespace {

PlanarSystem saturating_poly(double s, double c) {
  return desingularize(make_tw_system(saturating_cubic(to_rational(s)), to_rational(c)));
}

void check_sc(double s, double c) {
  if (!(s > 0) || !std::isfinite(s)) throw ModelError("s must be positive");
  if (!(c > 0) || !std::isfinite(c)) throw ModelError("c must be positive");
}

double branch_offset(SeedBranch b, double eps) {
  switch (b) {
    case SeedBranch::radial: return 0.0;
    case SeedBranch::upper: return eps;
    case SeedBranch::lower: return -kLowerBranchOffset;
  }
  return 0.0;
}

WaveSeed make_seed(SeedLabel label, SeedBranch branch, double eps, double M) {
  if (!(eps > 0) || eps > 0.1) throw ModelError("seed offset eps must lie in (0, 0.1]");
  WaveSeed w;
  w.label = label;
  w.branch = branch;
  w.eps = eps;
  w.chart_point = {eps, M + branch_offset(branch, eps)};
  w.plane = plane_from_chart(ChartId::U1, w.chart_point);
  return w;
}

double poly_eval(const std::vector<double>& a, double u) { return eval_univariate(a, u); }

/// Position on the center-manifold graph in original coordinates.
Vec2 graph_point(const CenterManifold& cm, double u) {
  const double w = poly_eval(cm.series, u);
  return {cm.base.coords.x + cm.P[0][0] * u + cm.P[0][1] * w, cm.base.coords.y + cm.P[1][0] * u + cm.P[1][1] * w};
}

/// (u, w) eigen-coordinates of a point.
Vec2 eigen_coords(const CenterManifold& cm, const Vec2& p) {
  const double X = p.x - cm.base.coords.x, Y = p.y - cm.base.coords.y;
  return {cm.P_inv[0][0] * X + cm.P_inv[0][1] * Y, cm.P_inv[1][0] * X + cm.P_inv[1][1] * Y};
}

bool in_tube(const CenterManifold& cm, const Vec2& p) {
  const Vec2 uw = eigen_coords(cm, p);
  const double h = poly_eval(cm.series, uw.x);
  return h != 0.0 && std::abs(uw.y - h) <= 0.5 * std::abs(h);
}

struct TailSample {
  double t;
  double u;
};

/// Integrates u' = rate(u) * r(u) until |graph_point(u)| <= radius or t > t_max.
template <typename Rate>
std::vector<TailSample> integrate_tail(const CenterManifold& cm, double u0, double radius, double t_max, Rate rate) {
  using State = std::array<double, 1>;
  std::vector<TailSample> out{{0.0, u0}};
  auto rhs = [&](const State& x, State& dx, double) { dx[0] = rate(x[0]) * poly_eval(cm.reduced, x[0]); };
  auto stepper = odeint::make_dense_output(1e-12, 1e-10, odeint::runge_kutta_dopri5<State>());
  stepper.initialize(State{u0}, 0.0, 1e-3);
  auto norm_at = [&](double u) {
    const Vec2 q = graph_point(cm, u);
    return std::hypot(q.x - cm.base.coords.x, q.y - cm.base.coords.y);
  };
  for (int it = 0; it < 1'000'000; ++it) {
    auto [t0, t1] = stepper.do_step(rhs);
    double u = stepper.current_state()[0];
    if (!std::isfinite(u)) throw NumericalError("reduced flow diverged");
    if (norm_at(u) <= radius) {
      double a = t0, b = t1;
      State tmp;
      for (int k = 0; k < 200 && b - a > 1e-10 * std::max(1.0, b); ++k) {
        const double m = 0.5 * (a + b);
        stepper.calc_state(m, tmp);
        (norm_at(tmp[0]) <= radius ? b : a) = m;
      }
      stepper.calc_state(b, tmp);
      out.push_back({b, tmp[0]});
      return out;
    }
    if (t1 >= t_max) {
      out.push_back({t1, u});
      return out;
    }
    out.push_back({t1, u});
  }
  return out;
}

int sign_of(double v) { return v > 0 ? 1 : (v < 0 ? -1 : 0); }

double plane_phi(ChartId chart, const Vec2& p) {
  if (chart == ChartId::Finite) return p.x;
  if (p.x > 0) return plane_from_chart(chart, p).x;
  return phi_sign_value(chart, p) * std::numeric_limits<double>::infinity();
}

}  // namespace

WaveSeed seed_at_infinity(double s, double c, SeedLabel which, double eps, SeedBranch branch) {
  check_sc(s, c);
  const Regime r = regime_of(s, c);
  switch (which) {
    case SeedLabel::E1:
    case SeedLabel::E2: {
      if (r.tag != RegimeTag::supercritical) throw ModelError("equilibrium absent in this regime");
      const double sq = std::sqrt(r.discriminant);
      const double M = which == SeedLabel::E1 ? (-c * s - sq) / (2 * s) : (-c * s + sq) / (2 * s);
      return make_seed(which, branch, eps, M);
    }
    case SeedLabel::E3_center:
      if (r.tag != RegimeTag::critical) throw ModelError("equilibrium absent in this regime");
      return make_seed(which, branch, eps, -1.0 / std::sqrt(s));
    case SeedLabel::far_field: break;
  }
  throw ModelError("far-field seeds take an explicit slope");
}

WaveSeed seed_far_field(double slope, double eps) {
  return make_seed(SeedLabel::far_field, SeedBranch::radial, eps, slope);
}

Vec2 seed_near_origin(double s, double c, double delta) {
  check_sc(s, c);
  if (!(delta >= 0) || delta > 0.1) throw ModelError("delta must lie in [0, 0.1]");
  return {delta, -delta * delta * delta / c};
}

CenterManifold origin_center_manifold(double s, double c, int order) {
  check_sc(s, c);
  const PlanarSystem sys = saturating_poly(s, c);
  Equilibrium e0;
  e0.coords = {0.0, 0.0};
  e0.exact_coords = ExactVec2{Rational(0), Rational(0)};
  fill_linearization(e0, sys.rhs_phi.num, sys.rhs_psi.num);
  e0.label = "E0";
  return center_manifold(sys, e0, order);
}

WaveReport classify_wave(double s, double c, const WaveSeed& seed, const WaveOptions& opts) {
  check_sc(s, c);
  WaveReport rep;
  rep.s = s;
  rep.c = c;
  rep.regime = regime_of(s, c);
  rep.seed = seed;
  const PlanarSystem poly = saturating_poly(s, c);

  auto tally = [&rep](const Trajectory& tr) {
    for (const auto& e : tr.events) {
      if (e.kind == EventKind::phi_zero_crossing) ++rep.phi_zero_crossings;
      if (e.kind == EventKind::psi_zero_crossing) {
        ++rep.psi_zero_crossings;
        rep.phi_at_psi_crossings.push_back(plane_phi(e.chart, e.p));
      }
    }
  };

  // Stage 1: from the boundary seed over the disk to the handoff ball.
  DiskOptions d;
  d.horizon = opts.horizon;
  d.rtol = opts.rtol;
  d.atol = opts.atol;
  const int osc = opts.oscillation_crossings;
  d.stop_predicate = [osc](const Trajectory& tr, ChartId, double, const Vec2&) {
    return static_cast<int>(tr.count(EventKind::phi_zero_crossing)) >= osc;
  };
  const std::vector<EventSpec> ev{EventSpec::phi_zero(), EventSpec::psi_zero(), EventSpec::ball({0, 0}, opts.handoff_radius),
                                  EventSpec::exit(opts.R_max)};
  const Trajectory t1 = track_on_disk(poly, ChartId::U1, seed.chart_point, IntegrationDirection::forward, ev, d);
  tally(t1);
  rep.fate = t1.terminal;

  if (rep.phi_zero_crossings >= osc) {
    rep.orbit_class = OrbitClass::oscillatory_unbounded;
    return rep;
  }
  if (t1.terminal.tag != FateTag::reached_E0_ball) {
    std::vector<Equilibrium> beqs;
    for (auto ch : {ChartId::U1, ChartId::V1, ChartId::U2, ChartId::V2}) {
      auto b = boundary_equilibria(chart_system(poly, ch));
      label_boundary_equilibria(b, ch);
      beqs.insert(beqs.end(), b.begin(), b.end());
    }
    rep.fate = orbit_fate(t1, {0, 0}, opts.handoff_radius, beqs);
    rep.orbit_class = OrbitClass::other;
    return rep;
  }

  // Stage 2: settle onto the center-manifold tube.
  const CenterManifold cm = origin_center_manifold(s, c);
  IntegrateOptions o2;
  o2.horizon = opts.horizon;
  o2.rtol = opts.rtol;
  o2.atol = opts.atol;
  o2.stop_predicate = [&cm](const Trajectory&, ChartId, double, const Vec2& p) { return in_tube(cm, p); };
  const Trajectory t2 = integrate(poly, t1.last().p, IntegrationDirection::forward,
                                  {EventSpec::phi_zero(), EventSpec::psi_zero(), EventSpec::ball({0, 0}, opts.final_radius)},
                                  o2);
  tally(t2);
  if (rep.phi_zero_crossings >= osc) {
    rep.orbit_class = OrbitClass::oscillatory_unbounded;
    return rep;
  }

  bool reached = t2.terminal.tag == FateTag::reached_E0_ball;
  if (!reached && t2.reason == StopReason::predicate) {
    // Stage 3: reduced flow on the manifold.
    const double u0 = eigen_coords(cm, t2.last().p).x;
    const auto tail = integrate_tail(cm, u0, opts.final_radius, std::numeric_limits<double>::max(), [](double) { return 1.0; });
    const Vec2 a = graph_point(cm, u0), b = graph_point(cm, tail.back().u);
    reached = std::hypot(b.x, b.y) <= opts.final_radius * (1 + 1e-6);
    if (sign_of(a.x) * sign_of(b.x) < 0) ++rep.phi_zero_crossings;
    if (sign_of(a.y) * sign_of(b.y) < 0) {
      ++rep.psi_zero_crossings;
      rep.phi_at_psi_crossings.push_back(b.x);
    }
  }
  if (!reached) {
    rep.fate = t2.terminal;
    rep.orbit_class = OrbitClass::other;
    return rep;
  }
  rep.fate = {FateTag::reached_E0_ball, ""};
  if (rep.phi_zero_crossings == 0 && rep.psi_zero_crossings == 0) rep.orbit_class = OrbitClass::positive_monotone_to_E0;
  else if (rep.phi_zero_crossings == 1 && rep.psi_zero_crossings == 1) rep.orbit_class = OrbitClass::sign_changing_single_dip;
  else rep.orbit_class = OrbitClass::other;
  return rep;
}

WaveReport classify_wave_robust(double s, double c, SeedLabel which, SeedBranch branch, const WaveOptions& opts) {
  WaveReport main = classify_wave(s, c, seed_at_infinity(s, c, which, 1e-4, branch), opts);
  bool same = true;
  for (double eps : {1e-3, 1e-5}) {
    const WaveReport r = classify_wave(s, c, seed_at_infinity(s, c, which, eps, branch), opts);
    same = same && r.orbit_class == main.orbit_class;
  }
  main.eps_robust = same;
  return main;
}

double minimal_speed_spectral(const ReactionTerm& f) {
  auto boundary = [&f](int c) {
    const PlanarSystem p = desingularize(make_tw_system(f, Rational(c)));
    return chart_system(p, ChartId::U1).rhs_lambda2.univariate_at_zero(1);
  };
  std::vector<Rational> b1 = boundary(1), b2 = boundary(2);
  const std::size_t n = std::max(b1.size(), b2.size());
  b1.resize(n, Rational(0));
  b2.resize(n, Rational(0));
  if (n != 3) throw ModelError("spectral minimal speed needs a quadratic boundary polynomial");
  // Coefficients are affine in c: b(c) = b1 + (c - 1) (b2 - b1).
  std::vector<Rational> slope(n), icpt(n);
  for (std::size_t k = 0; k < n; ++k) {
    slope[k] = b2[k] - b1[k];
    icpt[k] = b1[k] - slope[k];
  }
  if (sgn(slope[0]) != 0 || sgn(slope[2]) != 0 || sgn(slope[1]) == 0)
    throw ModelError("spectral minimal speed needs c in the linear coefficient only");
  const Rational ad = icpt[2] * icpt[0];
  if (sgn(ad) < 0) return 0.0;  // real roots for every c
  // (icpt1 + c slope1)^2 = 4 a d.
  const double r = 2.0 * std::sqrt(ad.get_d());
  const double s1 = slope[1].get_d(), i1 = icpt[1].get_d();
  const double ca = (-i1 - r) / s1, cb = (-i1 + r) / s1;
  return std::max({ca, cb, 0.0});
}

double minimal_speed_spectral(double s) {
  if (!(s > 0) || !std::isfinite(s)) throw ModelError("s must be positive");
  return minimal_speed_spectral(saturating_cubic(to_rational(s)));
}

OracleVerdict shooting_oracle(double s, double c, const ShootingOptions& opts) {
  check_sc(s, c);
  const PlanarSystem poly = saturating_poly(s, c);
  std::array<FastField, 5> fields;
  for (auto ch : {ChartId::U1, ChartId::V1, ChartId::U2, ChartId::V2}) {
    const ChartSystem cs = chart_system(poly, ch);
    fields[static_cast<std::size_t>(ch)] = FastField{FastPoly(cs.rhs_lambda1), FastPoly(cs.rhs_lambda2), 1.0};
  }
  const double lam_max = 1.0 / opts.R_max, tol = opts.settle_tol;
  DiskOptions d;
  d.horizon = opts.horizon;
  d.rescale_near_axis = true;
  d.rtol = opts.rtol;
  d.atol = opts.atol;
  d.stop_predicate = [&](const Trajectory&, ChartId ch, double, const Vec2& p) {
    if (ch == ChartId::Finite || p.x >= lam_max) return false;
    // No verdict near the phi = 0 direction at infinity.
    if ((ch == ChartId::U2 || ch == ChartId::V2) && std::abs(p.y) < 1e-2) return false;
    const Vec2 v = fields[static_cast<std::size_t>(ch)](p);
    return std::hypot(v.x, v.y) <= tol;
  };
  const Trajectory tr = track_on_disk(poly, ChartId::Finite, seed_near_origin(s, c, opts.delta),
                                      IntegrationDirection::backward, {EventSpec::phi_zero(true)}, d);
  OracleVerdict v;
  v.elapsed = tr.frames.empty() ? 0.0 : tr.last().t;
  v.steps = tr.steps;
  if (tr.reason == StopReason::predicate) v.at_or_above = true;
  else if (tr.reason == StopReason::event) v.at_or_above = false;
  else throw NumericalError("shooting oracle undecided at c = " + std::to_string(c) + " (" + to_string(tr.reason) + ")");
  return v;
}

namespace {

template <typename Oracle>
ShootingResult bisect(Oracle oracle, double lo, double hi, double tol) {
  if (!(tol >= 1e-4)) throw ModelError("bisection tolerance must be at least 1e-4");
  if (oracle(lo) || !oracle(hi)) throw NumericalError("bracket failure");
  ShootingResult r;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (oracle(mid) ? hi : lo) = mid;
    ++r.iterations;
  }
  r.lo = lo;
  r.hi = hi;
  r.c_star = 0.5 * (lo + hi);
  return r;
}

}  // namespace

ShootingResult minimal_speed_shooting(double s, double tol, const ShootingOptions& opts) {
  if (!(s > 0) || !std::isfinite(s)) throw ModelError("s must be positive");
  const double hi = opts.c_hi > 0 ? opts.c_hi : 10.0 / std::sqrt(s);
  return bisect([&](double c) { return shooting_oracle(s, c, opts).at_or_above; }, opts.c_lo, hi, tol);
}

namespace {

double linear_growth(const ReactionTerm& f) {
  const double a = f.numerator().coeff(1, 0).get_d() / f.denominator().coeff(0, 0).get_d();
  if (!(a > 0)) throw ModelError("monostable mode needs f'(0) > 0");
  return a;
}

double first_positive_zero(const ReactionTerm& f) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& r : real_roots(f.numerator().univariate_at_zero(0)))
    if (r.value > 1e-12) best = std::min(best, r.value);
  if (!std::isfinite(best)) throw ModelError("monostable mode needs a positive zero of f");
  return best;
}

}  // namespace

OracleVerdict kpp_oracle(const ReactionTerm& f, double c, double delta) {
  if (!(c > 0)) throw ModelError("c must be positive");
  const double a = linear_growth(f);
  const double K = first_positive_zero(f);
  const PlanarSystem sys = make_tw_system(f, to_rational(c));
  const double disc = c * c - 4 * a;
  Vec2 seed{delta, 0.0};
  if (disc >= 0) {
    const double slow = (-c + std::sqrt(disc)) / 2;
    seed = {delta, delta * slow};
  }
  IntegrateOptions o;
  o.horizon = 1e4;
  o.stop_predicate = [K](const Trajectory&, ChartId, double, const Vec2& p) { return p.x >= 0.9 * K; };
  const Trajectory tr = integrate(sys, seed, IntegrationDirection::backward, {EventSpec::phi_zero(true)}, o);
  OracleVerdict v;
  v.elapsed = tr.frames.empty() ? 0.0 : tr.last().t;
  v.steps = tr.steps;
  if (tr.reason == StopReason::predicate) v.at_or_above = true;
  else if (tr.reason == StopReason::event) v.at_or_above = false;
  else throw NumericalError("monostable oracle undecided at c = " + std::to_string(c));
  return v;
}

ShootingResult minimal_speed_shooting_kpp(const ReactionTerm& f, double tol) {
  const double a = linear_growth(f);
  return bisect([&](double c) { return kpp_oracle(f, c).at_or_above; }, 1e-3, 10.0 * std::sqrt(a), tol);
}

ProfileSamples reconstruct_profile(double s, double c, const Vec2& seed, double xi_span, bool anchor_at_zero_crossing,
                                   double max_xi_step) {
  check_sc(s, c);
  if (!(xi_span > 0)) throw ModelError("xi span must be positive");
  ProfileSamples out;
  if (seed.x == 0.0 && seed.y == 0.0) {
    for (int k = 0; k <= 100; ++k) {
      out.xi.push_back(xi_span * k / 100.0);
      out.phi.push_back(0.0);
      out.psi.push_back(0.0);
    }
    return out;
  }
  const PlanarSystem sys = make_tw_system(saturating_cubic(to_rational(s)), to_rational(c));
  const CenterManifold cm = origin_center_manifold(s, c);
  const double handoff = 1e-1, final_radius = 1e-5;
  IntegrateOptions o;
  o.horizon = xi_span;
  o.max_step = max_xi_step;
  o.max_frames = 0;
  o.stop_predicate = [&](const Trajectory&, ChartId, double, const Vec2& p) {
    return std::hypot(p.x, p.y) <= handoff && in_tube(cm, p);
  };
  const Trajectory head = integrate(sys, seed, IntegrationDirection::forward,
                                    {EventSpec::phi_zero(), EventSpec::psi_zero(), EventSpec::ball({0, 0}, final_radius)}, o);
  if (!head.failure.empty()) throw NumericalError(head.failure);
  for (const auto& f : head.frames) {
    out.xi.push_back(f.t);
    out.phi.push_back(f.p.x);
    out.psi.push_back(f.p.y);
  }
  if (head.reason == StopReason::predicate) {
    // Tail on the manifold in xi time: d xi = (1 + s phi^2) d s_tilde.
    const double xi0 = head.last().t;
    const double u0 = eigen_coords(cm, head.last().p).x;
    auto tail = integrate_tail(cm, u0, final_radius, xi_span - xi0, [&](double u) {
      const double ph = graph_point(cm, u).x;
      return 1.0 / (1.0 + s * ph * ph);
    });
    for (std::size_t k = 1; k < tail.size(); ++k) {
      const Vec2 q = graph_point(cm, tail[k].u);
      out.xi.push_back(xi0 + tail[k].t);
      out.phi.push_back(q.x);
      out.psi.push_back(q.y);
    }
  }

  // Anchor the translation-invariant profile.
  std::optional<double> xi_anchor;
  if (anchor_at_zero_crossing) {
    for (const auto& e : head.events)
      if (e.kind == EventKind::phi_zero_crossing) {
        xi_anchor = e.t;
        break;
      }
  } else {
    for (std::size_t k = 1; k < out.size(); ++k)
      if (out.phi[k - 1] > 1.0 && out.phi[k] <= 1.0) {
        const double w = (out.phi[k - 1] - 1.0) / (out.phi[k - 1] - out.phi[k]);
        xi_anchor = out.xi[k - 1] + w * (out.xi[k] - out.xi[k - 1]);
        break;
      }
  }
  if (xi_anchor)
    for (auto& x : out.xi) x -= *xi_anchor;

  int last = 0;
  for (double v : out.psi) {
    const int sg = sign_of(v);
    if (sg != 0 && sg != last) {
      out.monotone_segments.push_back(sg);
      last = sg;
    }
  }
  return out;
}

double asymptotic_rate(const ProfileSamples& p, double phi_threshold) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int n = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if (!(p.phi[k] >= phi_threshold) || p.phi[k] <= 0) continue;
    const double x = p.xi[k], y = std::log(p.phi[k]);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++n;
  }
  if (n < 10) throw std::domain_error("insufficient tail");
  const double den = n * sxx - sx * sx;
  if (den == 0.0) throw std::domain_error("insufficient tail");
  return (n * sxy - sx * sy) / den;
}

int count_zero_crossings(const ProfileSamples& p, ProfileColumn target) {
  const auto& col = target == ProfileColumn::phi ? p.phi : p.psi;
  int last = 0, count = 0;
  for (double v : col) {
    if (std::abs(v) < 1e-12) continue;
    const int sg = v > 0 ? 1 : -1;
    if (last != 0 && sg != last) ++count;
    last = sg;
  }
  return count;
}

}  // namespace wavedisk
