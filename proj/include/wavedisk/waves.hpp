#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavedisk/degenerate.hpp"
#include "wavedisk/flow.hpp"

namespace wavedisk {

/// Raised when the integrator cannot reach a verdict (horizon, underflow).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SeedLabel { E1, E2, E3_center, far_field };
enum class SeedBranch { radial, upper, lower };
std::string to_string(SeedLabel l);
std::string to_string(SeedBranch b);
SeedLabel seed_label_from_string(const std::string& s);
SeedBranch seed_branch_from_string(const std::string& s);

/// Starting point near the circle at infinity in chart U1.
struct WaveSeed {
  SeedLabel label = SeedLabel::E2;
  SeedBranch branch = SeedBranch::radial;
  double eps = 1e-4;
  Vec2 chart_point;  ///< (lambda1, lambda2) in U1
  Vec2 plane;        ///< (phi, psi) = (1/lambda1, lambda2/lambda1)
};

/// Distance below the boundary root used by the lower branch. Orbits leaving
/// along the boundary toward the psi-axis pass to phi < 0 before reaching E0.
inline constexpr double kLowerBranchOffset = 0.3;

/// (lambda1, lambda2) = (eps, M), (eps, M + eps), (eps, M - kLowerBranchOffset) for
/// radial, upper, lower. E1 sits at M-, E2 at M+, E3_center at -1/sqrt(s).
WaveSeed seed_at_infinity(double s, double c, SeedLabel which, double eps = 1e-4,
                          SeedBranch branch = SeedBranch::radial);
/// Seed (eps, slope) in U1, for regimes without boundary equilibria.
WaveSeed seed_far_field(double slope, double eps = 1e-4);

/// (delta, -delta^3 / c) on the leading-order center manifold of E0.
Vec2 seed_near_origin(double s, double c, double delta);

enum class OrbitClass { positive_monotone_to_E0, sign_changing_single_dip, oscillatory_unbounded, other };
std::string to_string(OrbitClass k);

struct ProfileSamples {
  std::vector<double> xi, phi, psi;
  std::vector<int> monotone_segments;  ///< sign of phi' on consecutive runs

  std::size_t size() const { return xi.size(); }
};

struct WaveReport {
  double s = 1, c = 1;
  Regime regime;
  OrbitClass orbit_class = OrbitClass::other;
  WaveSeed seed;
  int phi_zero_crossings = 0;
  int psi_zero_crossings = 0;
  std::vector<double> phi_at_psi_crossings;
  OrbitFate fate;
  std::optional<double> asymptotic_rate;
  std::optional<ProfileSamples> profile;
  std::optional<bool> eps_robust;
};

struct WaveOptions {
  double R_max = 1e6;
  double horizon = 1e5;
  double handoff_radius = 1e-2;  ///< E0 ball where the center-manifold tail takes over
  double final_radius = 1e-5;    ///< E0 ball that ends the classification
  int oscillation_crossings = 3;
  double rate_threshold = 1e3;
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Center manifold of E0 for the saturating-cubic system at (s, c).
CenterManifold origin_center_manifold(double s, double c, int order = 5);

/// Forward run from a seed: disk tracking to the handoff ball, finite-chart
/// integration until the orbit sits on the center-manifold tube, then the
/// one-dimensional reduced flow down to the final ball.
WaveReport classify_wave(double s, double c, const WaveSeed& seed, const WaveOptions& opts = {});

/// classify_wave at eps in {1e-3, 1e-4, 1e-5}; eps_robust records agreement of the class.
WaveReport classify_wave_robust(double s, double c, SeedLabel which, SeedBranch branch, const WaveOptions& opts = {});

/// Smallest c >= 0 at which the U1 boundary polynomial of the reaction gains a real root.
double minimal_speed_spectral(const ReactionTerm& f);
double minimal_speed_spectral(double s);

struct OracleVerdict {
  bool at_or_above = false;  ///< true: c >= c*
  double elapsed = 0;        ///< integration time used
  std::size_t steps = 0;
};

struct ShootingOptions {
  double delta = 1e-3;
  double R_max = 1e6;
  double horizon = 1e5;
  double settle_tol = 1e-8;
  double c_lo = 1e-3;
  double c_hi = 0;  ///< 0 means 10 / sqrt(s)
  double rtol = 1e-10;
  double atol = 1e-12;
};

/// Backward run from seed_near_origin: yes when the orbit settles on the
/// boundary beyond R_max without crossing phi = 0, no on the first crossing.
OracleVerdict shooting_oracle(double s, double c, const ShootingOptions& opts = {});

struct ShootingResult {
  double c_star = 0;
  double lo = 0, hi = 0;
  int iterations = 0;
};

ShootingResult minimal_speed_shooting(double s, double tol, const ShootingOptions& opts = {});

/// Monostable variant: f(0) = 0, f'(0) > 0. Backward from the slow stable
/// direction of (0, 0) (or (delta, 0) for a focus); yes when phi reaches 0.9 K,
/// K the first positive zero of f, before phi < 0.
OracleVerdict kpp_oracle(const ReactionTerm& f, double c, double delta = 1e-3);
ShootingResult minimal_speed_shooting_kpp(const ReactionTerm& f, double tol);

/// Integrates the xi-frame system from a finite seed, handing the E0 approach
/// to the reduced center-manifold flow. Rows follow accepted steps, at most
/// max_xi_step apart on the head of the profile.
ProfileSamples reconstruct_profile(double s, double c, const Vec2& seed, double xi_span, bool anchor_at_zero_crossing,
                                   double max_xi_step = 0.02);

/// Least-squares slope of log phi against xi over rows with phi >= threshold.
double asymptotic_rate(const ProfileSamples& p, double phi_threshold);

enum class ProfileColumn { phi, psi };
int count_zero_crossings(const ProfileSamples& p, ProfileColumn target);

}  // namespace wavedisk
