#include <cctype>
#include <cmath>
#include <utility>

#include "wavedisk/polyfield.hpp"

namespace wavedisk {

namespace {

bool is_univariate_in_x(const BivariatePolynomial& p) {
  for (const auto& [e, c] : p.terms())
    if (e.second != 0 || e.first < 0) return false;
  return true;
}

/// Q must stay positive on the real line so that multiplying by it is a time rescale.
void require_no_real_root(const BivariatePolynomial& q) {
  std::vector<Rational> a = q.univariate_at_zero(0);
  const int deg = static_cast<int>(a.size()) - 1;
  if (deg <= 0) return;
  if (deg == 1) throw ModelError("reaction denominator has a real root");
  if (deg == 2) {
    Rational disc = a[1] * a[1] - 4 * a[2] * a[0];
    if (sgn(disc) >= 0) throw ModelError("reaction denominator has a real root");
    return;
  }
  if (deg % 2 == 1) throw ModelError("reaction denominator of odd degree has a real root");
  if (sgn(a.back()) != sgn(a.front())) throw ModelError("reaction denominator changes sign at infinity");
  std::vector<double> ad;
  for (const auto& c : a) ad.push_back(c.get_d());
  const int sign0 = sgn(a.front());
  // Linear samples near zero, geometric samples out to 1e6 on both sides.
  auto check = [&](double u) {
    double v = eval_univariate(ad, u);
    if (v == 0.0 || (v > 0) != (sign0 > 0)) throw ModelError("reaction denominator has a real root");
  };
  for (int k = -2000; k <= 2000; ++k) check(k * 1e-3);
  for (double u = 2.0; u <= 1e6; u *= 1.01) {
    check(u);
    check(-u);
  }
}

// ---- expression parser -------------------------------------------------

struct Value {
  BivariatePolynomial num;
  BivariatePolynomial den{Rational(1)};
};

std::optional<Rational> as_constant(const BivariatePolynomial& p) {
  if (p.is_zero()) return Rational(0);
  if (p.size() == 1 && p.terms().begin()->first == Exponent{0, 0}) return p.terms().begin()->second;
  return std::nullopt;
}

Value divide(const Value& a, const Value& b) {
  if (b.num.is_zero()) throw ModelError("division by zero in reaction term");
  auto kn = as_constant(b.num);
  auto kd = as_constant(b.den);
  if (kn && kd) return {a.num * Rational(*kd / *kn), a.den};
  return {a.num * b.den, a.den * b.num};
}

Value add(const Value& a, const Value& b, bool subtract) {
  BivariatePolynomial rhs = subtract ? -b.num : b.num;
  if (a.den == b.den) return {a.num + rhs, a.den};
  return {a.num * b.den + rhs * a.den, a.den * b.den};
}

Value multiply(const Value& a, const Value& b) { return {a.num * b.num, a.den * b.den}; }

class Parser {
 public:
  Parser(std::string_view text, const Params& params, std::string_view var)
      : text_(text), params_(params), var_(var) {}

  Value parse() {
    Value v = expr();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return v;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw ModelError("reaction term: " + msg + " at offset " + std::to_string(pos_) + " in \"" +
                     std::string(text_) + "\"");
  }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Value expr() {
    Value v = term();
    for (;;) {
      if (accept('+')) v = add(v, term(), false);
      else if (accept('-')) v = add(v, term(), true);
      else return v;
    }
  }
  Value term() {
    Value v = unary();
    for (;;) {
      if (accept('*')) v = multiply(v, unary());
      else if (accept('/')) v = divide(v, unary());
      else return v;
    }
  }
  Value unary() {
    if (accept('-')) {
      Value v = unary();
      return {-v.num, v.den};
    }
    if (accept('+')) return unary();
    return power();
  }
  Value power() {
    Value base = primary();
    if (!accept('^')) return base;
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected a nonnegative integer exponent");
    int n = std::stoi(std::string(text_.substr(start, pos_ - start)));
    if (n > 64) fail("exponent too large");
    return {base.num.pow(n), base.den.pow(n)};
  }
  Value primary() {
    skip_ws();
    if (pos_ >= text_.size()) fail("unexpected end of input");
    char ch = text_[pos_];
    if (ch == '(') {
      ++pos_;
      Value v = expr();
      if (!accept(')')) fail("expected ')'");
      return v;
    }
    if (std::isdigit(static_cast<unsigned char>(ch)) || ch == '.') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
        ++pos_;
      if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
        std::size_t save = pos_++;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
        if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
          while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        } else {
          pos_ = save;
        }
      }
      try {
        return {BivariatePolynomial(parse_rational(text_.substr(start, pos_ - start)))};
      } catch (const std::invalid_argument& e) {
        fail(e.what());
      }
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      std::string name(text_.substr(start, pos_ - start));
      if (name == var_) return {BivariatePolynomial::x()};
      auto it = params_.find(name);
      if (it == params_.end()) fail("unbound parameter '" + name + "'");
      return {BivariatePolynomial(it->second)};
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const Params& params_;
  std::string_view var_;
  std::size_t pos_ = 0;
};

}  // namespace

ReactionTerm::ReactionTerm(BivariatePolynomial numerator, BivariatePolynomial denominator, Params params,
                           std::string source)
    : p_(std::move(numerator)), q_(std::move(denominator)), params_(std::move(params)), source_(std::move(source)) {
  if (!is_univariate_in_x(p_) || !is_univariate_in_x(q_))
    throw ModelError("reaction term must be a univariate polynomial ratio");
  if (q_.is_zero()) throw ModelError("reaction denominator is zero");
  Rational q0 = q_.coeff(0, 0);
  if (q0 == 0) throw ModelError("reaction denominator vanishes at u = 0");
  if (p_.coeff(0, 0) != 0) throw ModelError("reaction term must vanish at u = 0");
  Rational inv = 1 / q0;
  p_ *= inv;
  q_ *= inv;
  require_no_real_root(q_);
}

double ReactionTerm::operator()(double u) const {
  return p_.eval<double>(u, 0.0) / q_.eval<double>(u, 0.0);
}

ReactionTerm parse_reaction(std::string_view text, const Params& params, std::string_view variable) {
  Value v = Parser(text, params, variable).parse();
  return ReactionTerm(v.num, v.den, params, std::string(text));
}

ReactionTerm saturating_cubic(const Rational& s) {
  if (sgn(s) <= 0) throw ModelError("saturation parameter s must be positive");
  BivariatePolynomial u = BivariatePolynomial::x();
  return ReactionTerm(u.pow(3), BivariatePolynomial(Rational(1)) + u.pow(2) * s, {{"s", s}},
                      "u^3 / (1 + s*u^2)");
}

ReactionTerm logistic(const Rational& a, const Rational& K) {
  if (sgn(K) == 0) throw ModelError("carrying capacity K must be nonzero");
  BivariatePolynomial u = BivariatePolynomial::x();
  Rational inv_k = 1 / K;
  return ReactionTerm(u * a - u.pow(2) * Rational(a * inv_k), BivariatePolynomial(Rational(1)),
                      {{"a", a}, {"K", K}}, "a*u*(1 - u/K)");
}

}  // namespace wavedisk
