#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wavedisk/waves.hpp"

namespace wavedisk {

/// One seeded wave family run at a fixed (s, c).
struct FamilyRun {
  std::string name;  ///< E1, E2, E3, sign_changing, far_field
  WaveReport report;
};

/// Families that exist in the regime of (s, c): E1, E2 and the E1 lower branch
/// above the minimal speed; E3 and its lower branch at it; a far-field seed below.
std::vector<std::pair<std::string, WaveSeed>> family_seeds(double s, double c);
std::vector<FamilyRun> family_runs(double s, double c, const WaveOptions& opts = {});

struct SweepCell {
  double s = 0, c = 0;
  Regime regime;
  double c_spectral = 0;
  double c_shooting = 0;
  double gap = 0;
  std::vector<FamilyRun> families;

  int count(OrbitClass k) const;
  const FamilyRun* family(const std::string& name) const;
};

struct SweepOptions {
  double tol = 1e-3;  ///< bisection width for the shooting speed
  ShootingOptions shooting;
  WaveOptions waves;
};

/// Cells in row-major (s outer, c inner) order. Each distinct s is bisected once.
std::vector<SweepCell> sweep(const std::vector<double>& s_list, const std::vector<double>& c_list,
                             const SweepOptions& opts = {});
std::vector<SweepCell> sweep_serial(const std::vector<double>& s_list, const std::vector<double>& c_list,
                                    const SweepOptions& opts = {});

/// Shooting-oracle verdict at each c.
std::vector<OracleVerdict> oracle_sweep(double s, const std::vector<double>& c_list, const ShootingOptions& opts = {});
std::vector<OracleVerdict> oracle_sweep_serial(double s, const std::vector<double>& c_list,
                                               const ShootingOptions& opts = {});

struct FanSeed {
  ChartId chart = ChartId::Finite;
  Vec2 point;
  IntegrationDirection direction = IntegrationDirection::forward;
  std::string tag;
};

/// n points on the circle |p| = radius, each integrated forward and backward.
std::vector<FanSeed> ring_seeds(int n, double radius);

/// Seeds on the invariant manifolds of (s, c): boundary-equilibrium seeds of
/// every family present, and the center-manifold seed of E0 run backward.
std::vector<FanSeed> manifold_seeds(double s, double c);

std::vector<Trajectory> portrait_fan(const PlanarSystem& poly_sys, const std::vector<FanSeed>& seeds,
                                     const DiskOptions& opts = {});
std::vector<Trajectory> portrait_fan_serial(const PlanarSystem& poly_sys, const std::vector<FanSeed>& seeds,
                                            const DiskOptions& opts = {});

}  // namespace wavedisk
