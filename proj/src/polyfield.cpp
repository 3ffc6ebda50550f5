#include "wavedisk/polyfield.hpp"

namespace wavedisk {

std::string to_string(TimeFrame f) {
  switch (f) {
    case TimeFrame::xi: return "xi";
    case TimeFrame::s_tilde: return "s_tilde";
    case TimeFrame::tau: return "tau";
    case TimeFrame::eta: return "eta";
  }
  return "?";
}

PlanarSystem make_tw_system(const ReactionTerm& f, const Rational& c) {
  if (sgn(c) <= 0) throw ModelError("wave speed c must be positive");
  const BivariatePolynomial psi = BivariatePolynomial::y();
  const BivariatePolynomial& P = f.numerator();
  const BivariatePolynomial& Q = f.denominator();

  PlanarSystem sys;
  sys.rhs_phi = {psi, BivariatePolynomial(Rational(1))};
  sys.rhs_psi = {-(psi * Q) * c - P, Q};
  sys.wave_speed = c;
  sys.time_frame = TimeFrame::xi;
  sys.params = f.params();
  sys.params["c"] = c;
  return sys;
}

BivariatePolynomial desingularizing_multiplier(const PlanarSystem& sys) {
  const auto& d1 = sys.rhs_phi.den;
  const auto& d2 = sys.rhs_psi.den;
  if (d1 == d2) return d1;
  return d1 * d2;
}

PlanarSystem desingularize(const PlanarSystem& sys) {
  PlanarSystem out = sys;
  const auto& d1 = sys.rhs_phi.den;
  const auto& d2 = sys.rhs_psi.den;
  if (d1 == d2) {
    out.rhs_phi = {sys.rhs_phi.num, BivariatePolynomial(Rational(1))};
    out.rhs_psi = {sys.rhs_psi.num, BivariatePolynomial(Rational(1))};
  } else {
    out.rhs_phi = {sys.rhs_phi.num * d2, BivariatePolynomial(Rational(1))};
    out.rhs_psi = {sys.rhs_psi.num * d1, BivariatePolynomial(Rational(1))};
  }
  out.time_frame = TimeFrame::s_tilde;
  return out;
}

namespace {

template <typename T>
T eval_rational(const RationalFunction& r, const T& x, const T& y) {
  T d = r.den.eval<T>(x, y);
  if (d == 0) throw PoleError();
  return r.num.eval<T>(x, y) / d;
}

template <typename T>
T partial(const RationalFunction& r, int var, const T& x, const T& y) {
  T n = r.num.eval<T>(x, y);
  T d = r.den.eval<T>(x, y);
  if (d == 0) throw PoleError();
  T dn = r.num.derivative(var).eval<T>(x, y);
  T dd = r.den.derivative(var).eval<T>(x, y);
  return (dn * d - n * dd) / (d * d);
}

}  // namespace

ExactVec2 eval_field(const PlanarSystem& sys, const ExactVec2& p) {
  return {eval_rational<Rational>(sys.rhs_phi, p.x, p.y), eval_rational<Rational>(sys.rhs_psi, p.x, p.y)};
}

Vec2 eval_field(const PlanarSystem& sys, const Vec2& p) {
  return {eval_rational<double>(sys.rhs_phi, p.x, p.y), eval_rational<double>(sys.rhs_psi, p.x, p.y)};
}

Mat2 jacobian(const PlanarSystem& sys, const Vec2& p) {
  return {{{partial<double>(sys.rhs_phi, 0, p.x, p.y), partial<double>(sys.rhs_phi, 1, p.x, p.y)},
           {partial<double>(sys.rhs_psi, 0, p.x, p.y), partial<double>(sys.rhs_psi, 1, p.x, p.y)}}};
}

ExactMat2 jacobian(const PlanarSystem& sys, const ExactVec2& p) {
  return {{{partial<Rational>(sys.rhs_phi, 0, p.x, p.y), partial<Rational>(sys.rhs_phi, 1, p.x, p.y)},
           {partial<Rational>(sys.rhs_psi, 0, p.x, p.y), partial<Rational>(sys.rhs_psi, 1, p.x, p.y)}}};
}

bool is_odd_polynomial(const BivariatePolynomial& p) {
  for (const auto& [e, c] : p.terms())
    if ((e.first + e.second) % 2 == 0) return false;
  return true;
}

bool is_odd_symmetric(const PlanarSystem& sys) {
  if (!sys.is_polynomial()) throw std::invalid_argument("is_odd_symmetric: polynomial components required");
  return is_odd_polynomial(sys.rhs_phi.num) && is_odd_polynomial(sys.rhs_psi.num);
}

}  // namespace wavedisk
