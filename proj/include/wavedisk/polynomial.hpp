#pragma once

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "wavedisk/rational.hpp"

namespace wavedisk {

/// Exponent pair (i, j) of the monomial x^i y^j.
using Exponent = std::pair<int, int>;

/// Polynomial in two variables stored as an exponent -> coefficient map.
///
/// Exponents are signed so that chart substitutions can pass through a
/// Laurent stage before the clearing power is multiplied in; every public
/// system type rejects negative exponents at its own boundary. Zero
/// coefficients are never stored.
template <typename T>
class Poly {
 public:
  using Terms = std::map<Exponent, T>;

  Poly() = default;
  explicit Poly(const T& constant) { add_term(0, 0, constant); }

  static Poly monomial(int i, int j, const T& coef = T(1)) {
    Poly p;
    p.add_term(i, j, coef);
    return p;
  }
  static Poly x() { return monomial(1, 0); }
  static Poly y() { return monomial(0, 1); }

  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  T coeff(int i, int j) const {
    auto it = terms_.find({i, j});
    return it == terms_.end() ? T(0) : it->second;
  }

  void add_term(int i, int j, const T& coef) {
    if (coef == 0) return;
    auto [it, inserted] = terms_.try_emplace(Exponent{i, j}, coef);
    if (!inserted) {
      it->second += coef;
      if (it->second == 0) terms_.erase(it);
    }
  }

  /// Total degree max(i + j); -1 for the zero polynomial.
  int degree() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first + e.second);
    return d;
  }
  int degree_in_x() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.first);
    return d;
  }
  int degree_in_y() const {
    int d = -1;
    for (const auto& [e, c] : terms_) d = std::max(d, e.second);
    return d;
  }

  /// Smallest exponent of x (variable 0) or y (variable 1); 0 for the zero polynomial.
  int min_exponent(int var) const {
    if (terms_.empty()) return 0;
    int m = var == 0 ? terms_.begin()->first.first : terms_.begin()->first.second;
    for (const auto& [e, c] : terms_) m = std::min(m, var == 0 ? e.first : e.second);
    return m;
  }

  bool has_negative_exponents() const {
    return std::any_of(terms_.begin(), terms_.end(),
                       [](const auto& t) { return t.first.first < 0 || t.first.second < 0; });
  }

  /// Multiplies by x^dx y^dy.
  Poly shifted(int dx, int dy) const {
    Poly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(Exponent{e.first + dx, e.second + dy}, c);
    return out;
  }

  Poly operator-() const {
    Poly out;
    for (const auto& [e, c] : terms_) out.terms_.emplace(e, -c);
    return out;
  }
  Poly& operator+=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, c);
    return *this;
  }
  Poly& operator-=(const Poly& o) {
    for (const auto& [e, c] : o.terms_) add_term(e.first, e.second, T(-c));
    return *this;
  }
  Poly& operator*=(const T& k) {
    if (k == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [e, c] : terms_) c *= k;
    return *this;
  }
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const T& k) { return a *= k; }
  friend Poly operator*(const T& k, Poly a) { return a *= k; }
  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        out.add_term(ea.first + eb.first, ea.second + eb.second, T(ca * cb));
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) { return a.terms_ == b.terms_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(int n) const {
    if (n < 0) throw std::invalid_argument("Poly::pow: negative power");
    Poly result(T(1)), base = *this;
    while (n > 0) {
      if (n & 1) result *= base;
      n >>= 1;
      if (n > 0) base = base * base;
    }
    return result;
  }

  /// Partial derivative with respect to x (var 0) or y (var 1).
  Poly derivative(int var) const {
    Poly out;
    for (const auto& [e, c] : terms_) {
      int k = var == 0 ? e.first : e.second;
      if (k == 0) continue;
      Exponent ne = var == 0 ? Exponent{e.first - 1, e.second} : Exponent{e.first, e.second - 1};
      out.add_term(ne.first, ne.second, T(c * T(k)));
    }
    return out;
  }

  /// Evaluates with scalar type U (coefficients are converted per term).
  template <typename U = T>
  U eval(const U& x, const U& y) const {
    U acc(0);
    for (const auto& [e, c] : terms_) acc += convert<U>(c) * ipow(x, e.first) * ipow(y, e.second);
    return acc;
  }

  /// Substitutes x -> X, y -> Y (X, Y polynomials in new variables).
  Poly compose(const Poly& X, const Poly& Y) const {
    if (has_negative_exponents()) throw std::domain_error("Poly::compose: Laurent input");
    std::vector<Poly> xp{Poly(T(1))}, yp{Poly(T(1))};
    for (int k = 1; k <= degree_in_x(); ++k) xp.push_back(xp.back() * X);
    for (int k = 1; k <= degree_in_y(); ++k) yp.push_back(yp.back() * Y);
    Poly out;
    for (const auto& [e, c] : terms_) out += (xp[e.first] * yp[e.second]) * c;
    return out;
  }

  /// Coefficients of the univariate polynomial p(x, y0) in x (y0 = 0 picks j = 0 terms).
  std::vector<T> univariate_at_zero(int var) const {
    int d = var == 0 ? degree_in_x() : degree_in_y();
    std::vector<T> out(static_cast<std::size_t>(std::max(d + 1, 0)), T(0));
    for (const auto& [e, c] : terms_) {
      int other = var == 0 ? e.second : e.first;
      int k = var == 0 ? e.first : e.second;
      if (other == 0 && k >= 0) out[static_cast<std::size_t>(k)] += c;
    }
    while (!out.empty() && out.back() == 0) out.pop_back();
    return out;
  }

  template <typename U, typename F>
  Poly<U> map_coeffs(F&& f) const {
    Poly<U> out;
    for (const auto& [e, c] : terms_) out.add_term(e.first, e.second, f(c));
    return out;
  }

  template <typename U>
  static U convert(const T& c) {
    if constexpr (std::is_same_v<U, T>) {
      return c;
    } else if constexpr (std::is_same_v<U, double> && std::is_same_v<T, Rational>) {
      return c.get_d();
    } else {
      return U(c);
    }
  }

 private:
  template <typename U>
  static U ipow(const U& b, int n) {
    if (n < 0) return U(1) / ipow(b, -n);
    U r(1), base = b;
    while (n > 0) {
      if (n & 1) r *= base;
      n >>= 1;
      if (n > 0) base *= base;
    }
    return r;
  }

  Terms terms_;
};

using BivariatePolynomial = Poly<Rational>;
using RealPolynomial = Poly<double>;

inline RealPolynomial to_real(const BivariatePolynomial& p) {
  return p.map_coeffs<double>([](const Rational& c) { return c.get_d(); });
}
inline BivariatePolynomial to_exact(const RealPolynomial& p) {
  return p.map_coeffs<Rational>([](double c) { return to_rational(c); });
}

/// Human-readable form using the given variable names, e.g. "-x^3*y - 2*x".
std::string to_string(const BivariatePolynomial& p, const std::string& x = "x", const std::string& y = "y");
std::string to_string(const RealPolynomial& p, const std::string& x = "x", const std::string& y = "y");

/// Univariate helpers on ascending coefficient vectors.
template <typename T>
T eval_univariate(const std::vector<T>& coeffs, const T& x) {
  T acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

/// Coefficients of p(t + shift) given those of p(t).
template <typename T>
std::vector<T> taylor_shift(std::vector<T> coeffs, const T& shift) {
  const std::size_t n = coeffs.size();
  for (std::size_t i = 0; i + 1 < n; ++i)
    for (std::size_t j = n - 1; j > i; --j) coeffs[j - 1] += shift * coeffs[j];
  return coeffs;
}

}  // namespace wavedisk
