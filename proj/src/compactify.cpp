#include "wavedisk/compactify.hpp"

#include <algorithm>
#include <cmath>

namespace wavedisk {

namespace {

constexpr double kChartTol = 1e-12;

int chart_sign(ChartId c) { return (c == ChartId::V1 || c == ChartId::V2) ? -1 : 1; }
bool phi_defines(ChartId c) { return c == ChartId::U1 || c == ChartId::V1; }

DiskPoint normalized(double a, double b, double c) {
  double n = std::sqrt(a * a + b * b + c * c);
  return DiskPoint{{a / n, b / n, c / n}};
}

}  // namespace

std::string to_string(ChartId c) {
  switch (c) {
    case ChartId::Finite: return "FINITE";
    case ChartId::U1: return "U1";
    case ChartId::V1: return "V1";
    case ChartId::U2: return "U2";
    case ChartId::V2: return "V2";
  }
  return "?";
}

ChartId chart_from_string(const std::string& s) {
  if (s == "FINITE") return ChartId::Finite;
  if (s == "U1") return ChartId::U1;
  if (s == "V1") return ChartId::V1;
  if (s == "U2") return ChartId::U2;
  if (s == "V2") return ChartId::V2;
  throw std::invalid_argument("unknown chart: " + s);
}

ChartSystem chart_system(const PlanarSystem& poly_sys, ChartId chart) {
  if (!poly_sys.is_polynomial()) throw std::invalid_argument("not desingularizable: rational input field");
  const BivariatePolynomial& F = poly_sys.rhs_phi.num;
  const BivariatePolynomial& G = poly_sys.rhs_psi.num;
  if (F.has_negative_exponents() || G.has_negative_exponents())
    throw std::invalid_argument("not desingularizable: Laurent input field");

  ChartSystem out;
  out.chart = chart;
  out.source_params = poly_sys.params;
  if (chart == ChartId::Finite) {
    out.rhs_lambda1 = F;
    out.rhs_lambda2 = G;
    return out;
  }

  const int sigma = chart_sign(chart);
  const bool by_phi = phi_defines(chart);
  // phi^i psi^j -> sigma^(i+j) lambda1^-(i+j) lambda2^(j or i)
  auto substitute = [&](const BivariatePolynomial& p) {
    BivariatePolynomial out;
    for (const auto& [e, c] : p.terms()) {
      int deg = e.first + e.second;
      Rational coef = (deg % 2 != 0 && sigma < 0) ? Rational(-c) : c;
      out.add_term(-deg, by_phi ? e.second : e.first, coef);
    }
    return out;
  };
  const BivariatePolynomial Fh = substitute(F);
  const BivariatePolynomial Gh = substitute(G);
  const BivariatePolynomial l1 = BivariatePolynomial::x();
  const BivariatePolynomial l2 = BivariatePolynomial::y();
  const Rational sg(sigma);

  // Defining variable D = sigma/lambda1, other variable O = sigma*lambda2/lambda1.
  const BivariatePolynomial& Dh = by_phi ? Fh : Gh;
  const BivariatePolynomial& Oh = by_phi ? Gh : Fh;
  BivariatePolynomial r1 = (l1 * l1 * Dh) * Rational(-sg);
  BivariatePolynomial r2 = (l1 * Oh - l1 * l2 * Dh) * sg;

  int k = std::max({0, -r1.min_exponent(0), -r2.min_exponent(0)});
  out.rhs_lambda1 = r1.shifted(k, 0);
  out.rhs_lambda2 = r2.shifted(k, 0);
  out.rescale_degree = k;
  if (out.rhs_lambda1.has_negative_exponents() || out.rhs_lambda2.has_negative_exponents())
    throw std::invalid_argument("not desingularizable");
  return out;
}

DiskPoint disk_embed(const Vec2& p) { return normalized(p.x, p.y, 1.0); }

DiskPoint disk_direction(double dx, double dy) { return normalized(dx, dy, 0.0); }

Vec2 chart_coords(const DiskPoint& d, ChartId chart) {
  const auto& y = d.y;
  switch (chart) {
    case ChartId::Finite:
      if (y[2] <= kChartTol) throw ChartError("wrong chart");
      return {y[0] / y[2], y[1] / y[2]};
    case ChartId::U1:
      if (y[0] <= kChartTol) throw ChartError("wrong chart");
      return {y[2] / y[0], y[1] / y[0]};
    case ChartId::V1:
      if (y[0] >= -kChartTol) throw ChartError("wrong chart");
      return {-y[2] / y[0], y[1] / y[0]};
    case ChartId::U2:
      if (y[1] <= kChartTol) throw ChartError("wrong chart");
      return {y[2] / y[1], y[0] / y[1]};
    case ChartId::V2:
      if (y[1] >= -kChartTol) throw ChartError("wrong chart");
      return {-y[2] / y[1], y[0] / y[1]};
  }
  throw ChartError("wrong chart");
}

DiskPoint disk_from_chart(ChartId chart, const Vec2& l) {
  switch (chart) {
    case ChartId::Finite: return normalized(l.x, l.y, 1.0);
    case ChartId::U1: return normalized(1.0, l.y, l.x);
    case ChartId::V1: return normalized(-1.0, -l.y, l.x);
    case ChartId::U2: return normalized(l.y, 1.0, l.x);
    case ChartId::V2: return normalized(-l.y, -1.0, l.x);
  }
  return {};
}

Vec2 plane_from_chart(ChartId chart, const Vec2& l) {
  switch (chart) {
    case ChartId::Finite: return l;
    case ChartId::U1: return {1.0 / l.x, l.y / l.x};
    case ChartId::V1: return {-1.0 / l.x, -l.y / l.x};
    case ChartId::U2: return {l.y / l.x, 1.0 / l.x};
    case ChartId::V2: return {-l.y / l.x, -1.0 / l.x};
  }
  return l;
}

Vec2 chart_from_plane(ChartId chart, const Vec2& p) {
  switch (chart) {
    case ChartId::Finite: return p;
    case ChartId::U1: return {1.0 / p.x, p.y / p.x};
    case ChartId::V1: return {-1.0 / p.x, p.y / p.x};
    case ChartId::U2: return {1.0 / p.y, p.x / p.y};
    case ChartId::V2: return {-1.0 / p.y, p.x / p.y};
  }
  return p;
}

Vec2 transition(ChartId from, const Vec2& coords, ChartId to) {
  if (from == to) return coords;
  DiskPoint d = disk_from_chart(from, coords);
  try {
    return chart_coords(d, to);
  } catch (const ChartError&) {
    throw ChartError("outside overlap");
  }
}

ChartId preferred_chart(const DiskPoint& d) {
  const double a1 = std::abs(d.y[0]), a2 = std::abs(d.y[1]), a3 = std::abs(d.y[2]);
  if (a1 >= a2 && a1 >= a3) return d.y[0] > 0 ? ChartId::U1 : ChartId::V1;
  if (a2 >= a3) return d.y[1] > 0 ? ChartId::U2 : ChartId::V2;
  return ChartId::Finite;
}

double angular_distance(const DiskPoint& a, const DiskPoint& b) {
  double na = std::hypot(a.y[0], a.y[1]), nb = std::hypot(b.y[0], b.y[1]);
  if (na == 0.0 || nb == 0.0) return M_PI;
  double cosv = (a.y[0] * b.y[0] + a.y[1] * b.y[1]) / (na * nb);
  return std::acos(std::clamp(cosv, -1.0, 1.0));
}

}  // namespace wavedisk
