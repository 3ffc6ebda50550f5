#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wavedisk/parallel.hpp"

namespace wavedisk {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

/// "%.17g"; non-finite values become "nan", "inf" or "-inf".
std::string format_number(double v);

/// Serializes with every floating-point value printed to 17 significant
/// digits; NaN and infinities become null.
std::string dump_json(const Json& j);

Json to_json(const Regime& r);
Json to_json(const Equilibrium& e);
Json to_json(const CenterManifold& cm);
Json to_json(const BlowupReport& b);
Json to_json(const WaveReport& w);

struct AnalyzeOptions {
  Box box{-10, 10, -10, 10};
  int cm_order = 5;
  bool parallel = true;
};

/// Full local picture at speed c: regime, finite and boundary equilibria,
/// center manifolds of every one-zero equilibrium, blow-ups of nilpotent
/// boundary points, and the odd-symmetry check. `s` marks the saturating
/// cubic, whose boundary points receive the labels E1..E7.
Json analyze_report(const ReactionTerm& f, const Rational& c, const std::optional<Rational>& s,
                    const AnalyzeOptions& opts = {});

/// Header "xi,phi,psi", one row per sample.
std::string profile_csv(const ProfileSamples& p);

/// One row per cell with the class of each family present at (s, c).
std::string sweep_csv(const std::vector<SweepCell>& cells);
Json to_json(const SweepCell& cell);

struct PortraitMarker {
  std::string label;
  std::string stability;
  DiskPoint point;
  bool at_infinity = false;
};

struct PortraitPolyline {
  std::string tag;
  std::vector<DiskPoint> points;
};

struct PortraitDocument {
  double s = 0, c = 0;
  std::string regime;
  std::vector<PortraitMarker> markers;
  std::vector<PortraitPolyline> lines;

  /// Largest (y1, y2) norm over all markers and polyline points.
  double max_radius() const;
};

struct PortraitOptions {
  int n_seeds = 16;
  double ring_radius = 5.0;
  std::size_t max_points = 400;  ///< per polyline, after thinning
  double horizon = 200.0;
  bool parallel = true;
};

/// Seed ring plus manifold seeds of the saturating cubic at (s, c), tracked over the disk.
PortraitDocument build_portrait(const Rational& s, const Rational& c, const PortraitOptions& opts = {});

Json to_json(const PortraitDocument& d);

/// Disk drawing from paths, circles and text only.
std::string portrait_svg(const PortraitDocument& d);

}  // namespace wavedisk
