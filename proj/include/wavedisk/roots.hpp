#pragma once

#include <optional>
#include <vector>

#include "wavedisk/rational.hpp"

namespace wavedisk {

/// One real root of a univariate polynomial; `exact` is set when the root is rational.
struct RealRoot {
  double value = 0.0;
  int multiplicity = 1;
  std::optional<Rational> exact;
};

/// Real roots of sum_k coeffs[k] t^k, ascending.
///
/// Zero roots are split off exactly; a remaining factor of degree <= 2 is
/// solved in closed form (a discriminant with |disc| <= double_root_tol counts
/// as a double root), higher degrees go through companion-matrix eigenvalues
/// polished by Newton. Roots closer than 1e-8 are merged.
std::vector<RealRoot> real_roots(const std::vector<Rational>& coeffs, double double_root_tol = 1e-12);
std::vector<RealRoot> real_roots(const std::vector<double>& coeffs, double double_root_tol = 1e-12);

}  // namespace wavedisk
