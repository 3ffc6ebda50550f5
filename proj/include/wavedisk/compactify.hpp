#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>

#include "wavedisk/polyfield.hpp"

namespace wavedisk {

enum class ChartId { Finite, U1, V1, U2, V2 };
std::string to_string(ChartId c);
ChartId chart_from_string(const std::string& s);

/// Raised for chart-membership failures ("wrong chart", "outside overlap").
class ChartError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Polynomial vector field on one local chart, in coordinates (lambda1, lambda2).
///
/// lambda1 is always the coordinate that vanishes on the circle at infinity.
/// The field is the substituted planar field multiplied by lambda1^k, i.e.
/// time runs as d tau / d s = lambda1^(-k).
struct ChartSystem {
  ChartId chart = ChartId::U1;
  BivariatePolynomial rhs_lambda1;
  BivariatePolynomial rhs_lambda2;
  int rescale_degree = 0;
  Params source_params;

  Vec2 eval(const Vec2& p) const {
    return {rhs_lambda1.eval<double>(p.x, p.y), rhs_lambda2.eval<double>(p.x, p.y)};
  }
};

/// Point on the closed upper hemisphere; y3 == 0 is the circle at infinity.
struct DiskPoint {
  std::array<double, 3> y{0.0, 0.0, 1.0};

  bool at_infinity() const { return y[2] == 0.0; }
};

/// Chart field of a polynomial (desingularized) planar system. Chart Finite
/// returns the system itself with k = 0.
ChartSystem chart_system(const PlanarSystem& poly_sys, ChartId chart);

DiskPoint disk_embed(const Vec2& p);
/// Boundary point reached along phi -> +/-inf with psi = slope * phi.
DiskPoint disk_direction(double dx, double dy);

/// Chart coordinates of a disk point. Throws ChartError("wrong chart") when the
/// point is outside the chart's open half (tolerance 1e-12).
Vec2 chart_coords(const DiskPoint& d, ChartId chart);

/// Inverse of chart_coords; valid on the boundary (lambda1 = 0) as well.
DiskPoint disk_from_chart(ChartId chart, const Vec2& lambda);

/// Finite plane coordinates of a chart point with lambda1 != 0.
Vec2 plane_from_chart(ChartId chart, const Vec2& lambda);
Vec2 chart_from_plane(ChartId chart, const Vec2& p);

/// Coordinate change between charts through the disk. Throws ChartError("outside overlap").
Vec2 transition(ChartId from, const Vec2& coords, ChartId to);

/// Chart whose defining coordinate has the largest magnitude (ties: U1, V1, U2, V2, Finite).
ChartId preferred_chart(const DiskPoint& d);

/// Angle between two boundary/disk points projected on the (y1, y2) plane.
double angular_distance(const DiskPoint& a, const DiskPoint& b);

}  // namespace wavedisk
