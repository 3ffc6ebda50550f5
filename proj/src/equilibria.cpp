#include "wavedisk/equilibria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wavedisk/roots.hpp"

namespace wavedisk {

std::string to_string(StabilityClass s) {
  switch (s) {
    case StabilityClass::source: return "source";
    case StabilityClass::sink: return "sink";
    case StabilityClass::saddle: return "saddle";
    case StabilityClass::nonhyperbolic_one_zero: return "nonhyperbolic_one_zero";
    case StabilityClass::nonhyperbolic_double_zero: return "nonhyperbolic_double_zero";
    case StabilityClass::center_like: return "center_like";
  }
  return "?";
}

std::string to_string(RegimeTag r) {
  switch (r) {
    case RegimeTag::subcritical: return "subcritical";
    case RegimeTag::critical: return "critical";
    case RegimeTag::supercritical: return "supercritical";
  }
  return "?";
}

Eigenpair eigenvalues(const Mat2& m) {
  const double tr = m[0][0] + m[1][1];
  const double det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (tr >= 0 ? -(tr + sq) : -(tr - sq));
    double l1, l2;
    if (q == 0.0) {
      l1 = l2 = 0.0;
    } else {
      l1 = q;
      l2 = det / q;
    }
    if (l1 > l2) std::swap(l1, l2);
    return {std::complex<double>(l1, 0.0), std::complex<double>(l2, 0.0)};
  }
  const double im = 0.5 * std::sqrt(-disc);
  return {std::complex<double>(0.5 * tr, -im), std::complex<double>(0.5 * tr, im)};
}

StabilityClass classify(const Eigenpair& ev) {
  auto is_zero = [](const std::complex<double>& z) {
    return std::abs(z.real()) <= kZeroEigenTol && std::abs(z.imag()) <= kZeroEigenTol;
  };
  const int zeros = static_cast<int>(is_zero(ev[0])) + static_cast<int>(is_zero(ev[1]));
  if (zeros == 2) return StabilityClass::nonhyperbolic_double_zero;
  if (zeros == 1) return StabilityClass::nonhyperbolic_one_zero;
  const double r0 = ev[0].real(), r1 = ev[1].real();
  if (std::abs(r0) <= kZeroEigenTol || std::abs(r1) <= kZeroEigenTol) return StabilityClass::center_like;
  if (r0 > 0 && r1 > 0) return StabilityClass::source;
  if (r0 < 0 && r1 < 0) return StabilityClass::sink;
  return StabilityClass::saddle;
}

void fill_linearization(Equilibrium& e, const BivariatePolynomial& f, const BivariatePolynomial& g) {
  e.jacobian = jacobian_of(f, g, e.coords.x, e.coords.y);
  e.eigenvalues = eigenvalues(e.jacobian);
  e.stability = classify(e.eigenvalues);
}

namespace {

RegimeTag tag_of(double disc) {
  if (std::abs(disc) <= 1e-12) return RegimeTag::critical;
  return disc > 0 ? RegimeTag::supercritical : RegimeTag::subcritical;
}

}  // namespace

Regime regime_of(double s, double c) {
  if (!(s > 0) || !(c > 0)) throw ModelError("regime requires s > 0 and c > 0");
  const double disc = c * c * s * s - 4.0 * s;
  return {tag_of(disc), disc};
}

Regime regime_of(const Rational& s, const Rational& c) {
  if (sgn(s) <= 0 || sgn(c) <= 0) throw ModelError("regime requires s > 0 and c > 0");
  const Rational disc = c * c * s * s - 4 * s;
  if (sgn(disc) == 0) return {RegimeTag::critical, 0.0};
  return {tag_of(disc.get_d()), disc.get_d()};
}

namespace {

constexpr int kGrid = 50;
constexpr int kMaxIter = 100;
constexpr double kDedup = 1e-8;
constexpr double kResidualTol = 1e-10;

/// Best rational approximation with denominator <= 1e4 by continued fractions.
std::optional<Rational> snap(double x) {
  if (!std::isfinite(x) || std::abs(x) > 1e12) return std::nullopt;
  if (std::abs(x) < 1e-9) return Rational(0);
  long long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(r);
    long long ai = static_cast<long long>(a);
    long long h2 = ai * h1 + h0, k2 = ai * k1 + k0;
    if (k2 > 10000) break;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (std::abs(static_cast<double>(h1) / static_cast<double>(k1) - x) <= 1e-12 * (1.0 + std::abs(x))) break;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return std::nullopt;
  Rational q(static_cast<long>(h1), static_cast<long>(k1));
  q.canonicalize();
  return q;
}

struct Field {
  BivariatePolynomial f, g;
  BivariatePolynomial fx, fy, gx, gy;
};

Field make_field(const PlanarSystem& sys) {
  PlanarSystem p = sys.is_polynomial() ? sys : desingularize(sys);
  Field fd{p.rhs_phi.num, p.rhs_psi.num, {}, {}, {}, {}};
  fd.fx = fd.f.derivative(0);
  fd.fy = fd.f.derivative(1);
  fd.gx = fd.g.derivative(0);
  fd.gy = fd.g.derivative(1);
  return fd;
}

double residual(const Field& fd, double x, double y) {
  return std::hypot(fd.f.eval<double>(x, y), fd.g.eval<double>(x, y));
}

std::optional<Equilibrium> newton_from(const Field& fd, const Box& box, double x, double y) {
  double res = residual(fd, x, y);
  for (int it = 0; it < kMaxIter && res > 1e-15; ++it) {
    const double a = fd.fx.eval<double>(x, y), b = fd.fy.eval<double>(x, y);
    const double c = fd.gx.eval<double>(x, y), d = fd.gy.eval<double>(x, y);
    const double det = a * d - b * c;
    if (det == 0.0 || !std::isfinite(det)) break;
    const double F = fd.f.eval<double>(x, y), G = fd.g.eval<double>(x, y);
    double dx = (d * F - b * G) / det, dy = (a * G - c * F) / det;
    double step = 1.0, nx = x - dx, ny = y - dy, nres = residual(fd, nx, ny);
    for (int h = 0; h < 30 && !(nres <= res); ++h) {
      step *= 0.5;
      nx = x - step * dx;
      ny = y - step * dy;
      nres = residual(fd, nx, ny);
    }
    if (!(nres <= res)) break;
    const bool stalled = std::abs(nx - x) + std::abs(ny - y) <= 1e-16 * (1.0 + std::abs(x) + std::abs(y));
    x = nx;
    y = ny;
    res = nres;
    if (stalled) break;
  }
  Equilibrium e;
  e.chart = ChartId::Finite;
  auto sx = snap(x), sy = snap(y);
  if (sx && sy && fd.f.eval<Rational>(*sx, *sy) == 0 && fd.g.eval<Rational>(*sx, *sy) == 0) {
    e.exact_coords = ExactVec2{*sx, *sy};
    e.coords = {sx->get_d(), sy->get_d()};
  } else {
    if (!(res <= kResidualTol)) return std::nullopt;
    e.coords = {x, y};
  }
  if (e.coords.x < box.xmin || e.coords.x > box.xmax || e.coords.y < box.ymin || e.coords.y > box.ymax)
    return std::nullopt;
  fill_linearization(e, fd.f, fd.g);
  return e;
}

double grid_coord(double lo, double hi, int i) { return lo + (hi - lo) * (i + 0.5) / kGrid; }

std::vector<Equilibrium> merge(std::vector<std::optional<Equilibrium>> found) {
  std::vector<Equilibrium> all;
  for (auto& f : found)
    if (f) all.push_back(std::move(*f));
  std::sort(all.begin(), all.end(), [](const Equilibrium& a, const Equilibrium& b) {
    return a.coords.x != b.coords.x ? a.coords.x < b.coords.x : a.coords.y < b.coords.y;
  });
  std::vector<Equilibrium> out;
  for (auto& e : all) {
    bool dup = false;
    for (const auto& o : out)
      if (std::hypot(o.coords.x - e.coords.x, o.coords.y - e.coords.y) <= kDedup) {
        dup = true;
        break;
      }
    if (!dup) out.push_back(std::move(e));
  }
  return out;
}

void check_box(const Box& box) {
  if (!(box.xmin <= box.xmax) || !(box.ymin <= box.ymax)) throw std::invalid_argument("empty box");
}

}  // namespace

std::vector<Equilibrium> finite_equilibria_serial(const PlanarSystem& sys, const Box& box) {
  check_box(box);
  const Field fd = make_field(sys);
  std::vector<std::optional<Equilibrium>> found(kGrid * kGrid);
  for (int k = 0; k < kGrid * kGrid; ++k)
    found[k] = newton_from(fd, box, grid_coord(box.xmin, box.xmax, k / kGrid), grid_coord(box.ymin, box.ymax, k % kGrid));
  return merge(std::move(found));
}

std::vector<Equilibrium> finite_equilibria(const PlanarSystem& sys, const Box& box) {
  check_box(box);
  const Field fd = make_field(sys);
  std::vector<std::optional<Equilibrium>> found(kGrid * kGrid);
#pragma omp parallel for schedule(dynamic, 16)
  for (int k = 0; k < kGrid * kGrid; ++k)
    found[k] = newton_from(fd, box, grid_coord(box.xmin, box.xmax, k / kGrid), grid_coord(box.ymin, box.ymax, k % kGrid));
  return merge(std::move(found));
}

std::vector<Equilibrium> boundary_equilibria(const ChartSystem& cs) {
  std::vector<Equilibrium> out;
  const std::vector<Rational> bp = cs.rhs_lambda2.univariate_at_zero(1);
  if (bp.empty()) throw std::domain_error("boundary polynomial vanishes identically");
  for (const RealRoot& r : real_roots(bp)) {
    if (std::abs(cs.rhs_lambda1.eval<double>(0.0, r.value)) > kResidualTol) continue;
    Equilibrium e;
    e.chart = cs.chart;
    e.coords = {0.0, r.value};
    if (r.exact) e.exact_coords = ExactVec2{Rational(0), *r.exact};
    fill_linearization(e, cs.rhs_lambda1, cs.rhs_lambda2);
    out.push_back(std::move(e));
  }
  return out;
}

void label_boundary_equilibria(std::vector<Equilibrium>& eqs, ChartId chart) {
  std::sort(eqs.begin(), eqs.end(), [](const Equilibrium& a, const Equilibrium& b) { return a.coords.y < b.coords.y; });
  if (chart == ChartId::U1 || chart == ChartId::V1) {
    if (eqs.size() == 2) {
      eqs[0].label = "E1";
      eqs[1].label = "E2";
    } else if (eqs.size() == 1) {
      eqs[0].label = "E3";
    }
  } else if (chart == ChartId::U2 || chart == ChartId::V2) {
    std::vector<Equilibrium*> nonzero;
    for (auto& e : eqs) {
      if (std::abs(e.coords.y) <= 1e-12) e.label = "E6";
      else nonzero.push_back(&e);
    }
    if (nonzero.size() == 2) {
      nonzero[0]->label = "E4";
      nonzero[1]->label = "E5";
    } else if (nonzero.size() == 1) {
      nonzero[0]->label = "E7";
    }
  }
}

}  // namespace wavedisk
