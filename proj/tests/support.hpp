#pragma once

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>
#include <random>

#include "wavedisk/polyfield.hpp"

namespace testing_support {

using namespace wavedisk;

inline PlanarSystem first_order(const Rational& s, const Rational& c) { return make_tw_system(saturating_cubic(s), c); }
inline PlanarSystem desingularized(const Rational& s, const Rational& c) { return desingularize(first_order(s, c)); }
inline PlanarSystem desingularized(double s, double c) { return desingularized(to_rational(s), to_rational(c)); }

/// Random positive rational p/q with small numerator and denominator.
inline Rational random_positive(std::mt19937& rng, int max_num = 40, int max_den = 12) {
  std::uniform_int_distribution<int> num(1, max_num), den(1, max_den);
  Rational q(num(rng), den(rng));
  q.canonicalize();
  return q;
}

inline BivariatePolynomial term(const Rational& k, int i, int j) { return BivariatePolynomial::monomial(i, j, k); }

inline double max_abs_diff(const Vec2& a, const Vec2& b) { return std::max(std::abs(a.x - b.x), std::abs(a.y - b.y)); }

// Chart fields written out by hand from phi = 1/l1, psi = l2/l1 (U1) and
// phi = l2/l1, psi = 1/l1 (U2), both multiplied by l1^2.
inline std::pair<BivariatePolynomial, BivariatePolynomial> u1_reference(const Rational& s, const Rational& c) {
  BivariatePolynomial f = term(Rational(-1), 3, 1) + term(-s, 1, 1);
  BivariatePolynomial g = term(-c, 2, 1) + term(Rational(-c * s), 0, 1) + term(Rational(-1), 0, 0) +
                          term(Rational(-1), 2, 2) + term(-s, 0, 2);
  return {f, g};
}

inline std::pair<BivariatePolynomial, BivariatePolynomial> u2_reference(const Rational& s, const Rational& c) {
  BivariatePolynomial f = term(c, 3, 0) + term(Rational(c * s), 1, 2) + term(Rational(1), 1, 3);
  BivariatePolynomial g = term(Rational(1), 2, 0) + term(s, 0, 2) + term(c, 2, 1) + term(Rational(c * s), 0, 3) +
                          term(Rational(1), 0, 4);
  return {f, g};
}

/// Largest deviation of the analytic Jacobian from central differences, relative to max(1, |J|).
inline double jacobian_fd_error(const PlanarSystem& sys, const Vec2& p) {
  const Mat2 J = jacobian(sys, p);
  double err = 0, scale = 1;
  for (int k = 0; k < 2; ++k) {
    const double h = 1e-5 * std::max(1.0, std::abs(k == 0 ? p.x : p.y));
    Vec2 a = p, b = p;
    (k == 0 ? a.x : a.y) += h;
    (k == 0 ? b.x : b.y) -= h;
    const Vec2 fa = eval_field(sys, a), fb = eval_field(sys, b);
    const double d0 = (fa.x - fb.x) / (2 * h), d1 = (fa.y - fb.y) / (2 * h);
    err = std::max({err, std::abs(d0 - J[0][k]), std::abs(d1 - J[1][k])});
    scale = std::max({scale, std::abs(J[0][k]), std::abs(J[1][k])});
  }
  return err / scale;
}

/// Distance from q to the polyline through pts.
inline double polyline_distance(const std::vector<Vec2>& pts, const Vec2& q) {
  double best = INFINITY;
  for (std::size_t k = 1; k < pts.size(); ++k) {
    const Vec2 a = pts[k - 1], b = pts[k];
    const double dx = b.x - a.x, dy = b.y - a.y, L = dx * dx + dy * dy;
    double t = L > 0 ? ((q.x - a.x) * dx + (q.y - a.y) * dy) / L : 0;
    t = std::clamp(t, 0.0, 1.0);
    best = std::min(best, std::hypot(a.x + t * dx - q.x, a.y + t * dy - q.y));
  }
  return best;
}

}  // namespace testing_support
