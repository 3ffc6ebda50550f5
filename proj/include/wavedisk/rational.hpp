#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace wavedisk {

/// Exact rational scalar used for every stored coefficient.
using Rational = mpq_class;

/// Exact conversion: every finite double is a dyadic rational.
Rational to_rational(double x);

/// Parses "3", "-1.25", "1e-3", "2.5E+2" or "7/3" without rounding.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& q) { return q.get_d(); }

/// Exact square root when both numerator and denominator are perfect squares.
std::optional<Rational> exact_sqrt(const Rational& q);

std::string to_string(const Rational& q);

}  // namespace wavedisk
