#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>

#include "wavedisk/polynomial.hpp"

namespace wavedisk {

using Params = std::map<std::string, Rational>;

template <typename T>
struct Vec2T {
  T x{}, y{};
  friend bool operator==(const Vec2T&, const Vec2T&) = default;
};
using Vec2 = Vec2T<double>;
using ExactVec2 = Vec2T<Rational>;

/// Row-major 2x2 matrix.
using Mat2 = std::array<std::array<double, 2>, 2>;
using ExactMat2 = std::array<std::array<Rational, 2>, 2>;

/// Thrown when a rational field is evaluated on a zero of its denominator.
class PoleError : public std::domain_error {
 public:
  PoleError() : std::domain_error("pole at evaluation point") {}
};

/// Rejected model input (bad parameters, malformed reaction term).
class ModelError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerator/denominator pair of bivariate polynomials.
struct RationalFunction {
  BivariatePolynomial num;
  BivariatePolynomial den{Rational(1)};

  bool is_polynomial() const { return den == BivariatePolynomial(Rational(1)); }
};

/// Reaction term f(u) = P(u) / Q(u) with Q normalized to Q(0) = 1.
///
/// P and Q are univariate, stored as bivariate polynomials in the first
/// variable only.
class ReactionTerm {
 public:
  ReactionTerm(BivariatePolynomial numerator, BivariatePolynomial denominator, Params params = {},
               std::string source = {});

  const BivariatePolynomial& numerator() const { return p_; }
  const BivariatePolynomial& denominator() const { return q_; }
  const Params& params() const { return params_; }
  const std::string& source() const { return source_; }

  double operator()(double u) const;

 private:
  BivariatePolynomial p_, q_;
  Params params_;
  std::string source_;
};

/// Parses "P(u) / Q(u)" forms such as "u^3 / (1 + s*u^2)" or "a*u*(1 - u/K)".
/// Identifiers other than the variable must be bound in params.
ReactionTerm parse_reaction(std::string_view text, const Params& params, std::string_view variable = "u");

/// u^3 / (1 + s u^2).
ReactionTerm saturating_cubic(const Rational& s);
/// a u (1 - u / K).
ReactionTerm logistic(const Rational& a, const Rational& K);

enum class TimeFrame { xi, s_tilde, tau, eta };
std::string to_string(TimeFrame f);

/// Planar vector field (phi', psi') with rational components.
struct PlanarSystem {
  RationalFunction rhs_phi;
  RationalFunction rhs_psi;
  Rational wave_speed;
  TimeFrame time_frame = TimeFrame::xi;
  Params params;  ///< model constants, plus "c"

  bool is_polynomial() const { return rhs_phi.is_polynomial() && rhs_psi.is_polynomial(); }
};

/// phi' = psi, psi' = -c psi - P(phi)/Q(phi).
PlanarSystem make_tw_system(const ReactionTerm& f, const Rational& c);

/// Multiplies the field by its common denominator; result is polynomial in s_tilde time.
PlanarSystem desingularize(const PlanarSystem& sys);

/// Positive factor D(phi) with desingularize(sys) = D * sys.
BivariatePolynomial desingularizing_multiplier(const PlanarSystem& sys);

ExactVec2 eval_field(const PlanarSystem& sys, const ExactVec2& p);
Vec2 eval_field(const PlanarSystem& sys, const Vec2& p);

Mat2 jacobian(const PlanarSystem& sys, const Vec2& p);
ExactMat2 jacobian(const PlanarSystem& sys, const ExactVec2& p);

/// Polynomial pair Jacobian, shared with chart and blow-up fields.
template <typename T>
std::array<std::array<T, 2>, 2> jacobian_of(const Poly<T>& f, const Poly<T>& g, const T& x, const T& y) {
  return {{{f.derivative(0).eval(x, y), f.derivative(1).eval(x, y)},
           {g.derivative(0).eval(x, y), g.derivative(1).eval(x, y)}}};
}
inline Mat2 jacobian_of(const BivariatePolynomial& f, const BivariatePolynomial& g, double x, double y) {
  return {{{f.derivative(0).eval<double>(x, y), f.derivative(1).eval<double>(x, y)},
           {g.derivative(0).eval<double>(x, y), g.derivative(1).eval<double>(x, y)}}};
}

/// True iff F(-x) = -F(x) holds coefficient-wise: every stored monomial has odd total degree.
bool is_odd_symmetric(const PlanarSystem& sys);
bool is_odd_polynomial(const BivariatePolynomial& p);

}  // namespace wavedisk
