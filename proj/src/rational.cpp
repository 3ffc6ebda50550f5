#include "wavedisk/rational.hpp"

#include <cctype>
#include <cmath>
#include <stdexcept>

namespace wavedisk {

Rational to_rational(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(x);
}

namespace {

Rational pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rational(mpz_class(1), p) : Rational(p);
}

Rational parse_decimal(std::string_view t) {
  std::size_t i = 0;
  bool neg = false;
  if (i < t.size() && (t[i] == '+' || t[i] == '-')) neg = t[i++] == '-';
  mpz_class mant = 0;
  long scale = 0;
  bool digits = false;
  for (; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i) {
    mant = mant * 10 + (t[i] - '0');
    digits = true;
  }
  if (i < t.size() && t[i] == '.') {
    for (++i; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i) {
      mant = mant * 10 + (t[i] - '0');
      --scale;
      digits = true;
    }
  }
  if (!digits) throw std::invalid_argument("malformed number: " + std::string(t));
  if (i < t.size() && (t[i] == 'e' || t[i] == 'E')) {
    ++i;
    bool eneg = false;
    if (i < t.size() && (t[i] == '+' || t[i] == '-')) eneg = t[i++] == '-';
    long e = 0;
    bool edigits = false;
    for (; i < t.size() && std::isdigit(static_cast<unsigned char>(t[i])); ++i) {
      e = e * 10 + (t[i] - '0');
      edigits = true;
      if (e > 4000) throw std::invalid_argument("exponent out of range: " + std::string(t));
    }
    if (!edigits) throw std::invalid_argument("malformed exponent: " + std::string(t));
    scale += eneg ? -e : e;
  }
  if (i != t.size()) throw std::invalid_argument("trailing characters in number: " + std::string(t));
  Rational q(mant);
  q *= pow10(scale);
  q.canonicalize();
  return neg ? Rational(-q) : q;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  text = trim(text);
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_decimal(trim(text.substr(0, slash)));
    Rational den = parse_decimal(trim(text.substr(slash + 1)));
    if (den == 0) throw std::invalid_argument("zero denominator: " + std::string(text));
    Rational q = num / den;
    q.canonicalize();
    return q;
  }
  return parse_decimal(text);
}

std::optional<Rational> exact_sqrt(const Rational& q) {
  if (sgn(q) < 0) return std::nullopt;
  const mpz_class& n = q.get_num();
  const mpz_class& d = q.get_den();
  if (!mpz_perfect_square_p(n.get_mpz_t()) || !mpz_perfect_square_p(d.get_mpz_t())) return std::nullopt;
  mpz_class rn, rd;
  mpz_sqrt(rn.get_mpz_t(), n.get_mpz_t());
  mpz_sqrt(rd.get_mpz_t(), d.get_mpz_t());
  return Rational(rn, rd);
}

std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace wavedisk
