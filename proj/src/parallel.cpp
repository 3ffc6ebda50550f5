#include "wavedisk/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <numbers>

namespace wavedisk {

namespace {

template <typename Fn>
void run_indexed(std::size_t n, bool parallel, Fn&& fn) {
  std::vector<std::exception_ptr> errors(n);
  const long count = static_cast<long>(n);
#pragma omp parallel for schedule(dynamic, 1) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      fn(static_cast<std::size_t>(i));
    } catch (...) {
      errors[static_cast<std::size_t>(i)] = std::current_exception();
    }
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
}

std::vector<SweepCell> sweep_impl(const std::vector<double>& s_list, const std::vector<double>& c_list,
                                  const SweepOptions& opts, bool parallel) {
  std::vector<double> distinct;
  for (double s : s_list)
    if (std::find(distinct.begin(), distinct.end(), s) == distinct.end()) distinct.push_back(s);
  std::vector<double> shooting(distinct.size());
  run_indexed(distinct.size(), parallel,
              [&](std::size_t i) { shooting[i] = minimal_speed_shooting(distinct[i], opts.tol, opts.shooting).c_star; });
  std::map<double, double> by_s;
  for (std::size_t i = 0; i < distinct.size(); ++i) by_s[distinct[i]] = shooting[i];

  std::vector<SweepCell> cells(s_list.size() * c_list.size());
  run_indexed(cells.size(), parallel, [&](std::size_t k) {
    SweepCell& cell = cells[k];
    cell.s = s_list[k / c_list.size()];
    cell.c = c_list[k % c_list.size()];
    cell.regime = regime_of(cell.s, cell.c);
    cell.c_spectral = minimal_speed_spectral(cell.s);
    cell.c_shooting = by_s.at(cell.s);
    cell.gap = std::abs(cell.c_shooting - cell.c_spectral);
    cell.families = family_runs(cell.s, cell.c, opts.waves);
  });
  return cells;
}

std::vector<OracleVerdict> oracle_impl(double s, const std::vector<double>& c_list, const ShootingOptions& opts,
                                       bool parallel) {
  std::vector<OracleVerdict> out(c_list.size());
  run_indexed(c_list.size(), parallel, [&](std::size_t i) { out[i] = shooting_oracle(s, c_list[i], opts); });
  return out;
}

std::vector<Trajectory> fan_impl(const PlanarSystem& poly_sys, const std::vector<FanSeed>& seeds,
                                 const DiskOptions& opts, bool parallel) {
  std::vector<Trajectory> out(seeds.size());
  run_indexed(seeds.size(), parallel, [&](std::size_t i) {
    const FanSeed& f = seeds[i];
    out[i] = track_on_disk(poly_sys, f.chart, f.point, f.direction, {EventSpec::exit(1e6), EventSpec::ball({0, 0}, 1e-3)}, opts);
  });
  return out;
}

}  // namespace

std::vector<std::pair<std::string, WaveSeed>> family_seeds(double s, double c) {
  std::vector<std::pair<std::string, WaveSeed>> out;
  switch (regime_of(s, c).tag) {
    case RegimeTag::supercritical:
      out.emplace_back("E1", seed_at_infinity(s, c, SeedLabel::E1));
      out.emplace_back("E2", seed_at_infinity(s, c, SeedLabel::E2));
      out.emplace_back("sign_changing", seed_at_infinity(s, c, SeedLabel::E1, 1e-4, SeedBranch::lower));
      break;
    case RegimeTag::critical:
      out.emplace_back("E3", seed_at_infinity(s, c, SeedLabel::E3_center));
      out.emplace_back("sign_changing", seed_at_infinity(s, c, SeedLabel::E3_center, 1e-4, SeedBranch::lower));
      break;
    case RegimeTag::subcritical:
      out.emplace_back("far_field", seed_far_field(-c / 2));
      break;
  }
  return out;
}

std::vector<FamilyRun> family_runs(double s, double c, const WaveOptions& opts) {
  std::vector<FamilyRun> runs;
  for (const auto& [name, seed] : family_seeds(s, c)) runs.push_back({name, classify_wave(s, c, seed, opts)});
  return runs;
}

int SweepCell::count(OrbitClass k) const {
  int n = 0;
  for (const auto& f : families) n += f.report.orbit_class == k;
  return n;
}

const FamilyRun* SweepCell::family(const std::string& name) const {
  for (const auto& f : families)
    if (f.name == name) return &f;
  return nullptr;
}

std::vector<SweepCell> sweep(const std::vector<double>& s_list, const std::vector<double>& c_list,
                             const SweepOptions& opts) {
  return sweep_impl(s_list, c_list, opts, true);
}

std::vector<SweepCell> sweep_serial(const std::vector<double>& s_list, const std::vector<double>& c_list,
                                    const SweepOptions& opts) {
  return sweep_impl(s_list, c_list, opts, false);
}

std::vector<OracleVerdict> oracle_sweep(double s, const std::vector<double>& c_list, const ShootingOptions& opts) {
  return oracle_impl(s, c_list, opts, true);
}

std::vector<OracleVerdict> oracle_sweep_serial(double s, const std::vector<double>& c_list,
                                               const ShootingOptions& opts) {
  return oracle_impl(s, c_list, opts, false);
}

std::vector<FanSeed> ring_seeds(int n, double radius) {
  if (n < 1) throw ModelError("the seed ring needs at least one seed");
  std::vector<FanSeed> out;
  for (int k = 0; k < n; ++k) {
    const double a = 2 * std::numbers::pi * (k + 0.5) / n;
    const Vec2 p{radius * std::cos(a), radius * std::sin(a)};
    out.push_back({ChartId::Finite, p, IntegrationDirection::forward, "ring"});
    out.push_back({ChartId::Finite, p, IntegrationDirection::backward, "ring"});
  }
  return out;
}

std::vector<FanSeed> manifold_seeds(double s, double c) {
  std::vector<FanSeed> out;
  for (const auto& [name, seed] : family_seeds(s, c)) {
    out.push_back({ChartId::U1, seed.chart_point, IntegrationDirection::forward, name});
    out.push_back({ChartId::V1, seed.chart_point, IntegrationDirection::forward, name + "_mirror"});
  }
  for (double sign : {1.0, -1.0}) {
    const Vec2 p = seed_near_origin(s, c, 1e-3);
    out.push_back({ChartId::Finite, {sign * p.x, sign * p.y}, IntegrationDirection::backward, "center_manifold"});
  }
  return out;
}

std::vector<Trajectory> portrait_fan(const PlanarSystem& poly_sys, const std::vector<FanSeed>& seeds,
                                     const DiskOptions& opts) {
  return fan_impl(poly_sys, seeds, opts, true);
}

std::vector<Trajectory> portrait_fan_serial(const PlanarSystem& poly_sys, const std::vector<FanSeed>& seeds,
                                            const DiskOptions& opts) {
  return fan_impl(poly_sys, seeds, opts, false);
}

}  // namespace wavedisk
