#include "wavedisk/polynomial.hpp"

#include <cstdio>
#include <sstream>

namespace wavedisk {

namespace {

std::string coeff_text(const Rational& c) { return c.get_str(); }
std::string coeff_text(double c) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", c);
  return buf;
}

template <typename T>
std::string render(const Poly<T>& p, const std::string& xn, const std::string& yn) {
  if (p.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first, then by x power.
  std::vector<std::pair<Exponent, T>> terms(p.terms().begin(), p.terms().end());
  std::stable_sort(terms.begin(), terms.end(), [](const auto& a, const auto& b) {
    int da = a.first.first + a.first.second, db = b.first.first + b.first.second;
    if (da != db) return da > db;
    return a.first.first > b.first.first;
  });
  for (const auto& [e, c] : terms) {
    bool neg = c < 0;
    T mag = neg ? T(-c) : c;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> factors;
    bool has_var = e.first != 0 || e.second != 0;
    if (!(mag == T(1)) || !has_var) factors.push_back(coeff_text(mag));
    auto var = [&](const std::string& n, int k) {
      if (k == 0) return;
      factors.push_back(k == 1 ? n : n + "^" + std::to_string(k));
    };
    var(xn, e.first);
    var(yn, e.second);
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k];
  }
  return os.str();
}

}  // namespace

std::string to_string(const BivariatePolynomial& p, const std::string& x, const std::string& y) {
  return render(p, x, y);
}
std::string to_string(const RealPolynomial& p, const std::string& x, const std::string& y) {
  return render(p, x, y);
}

}  // namespace wavedisk
