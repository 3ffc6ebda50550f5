#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wavedisk/equilibria.hpp"

namespace wavedisk {

/// Local center manifold w = h(u) of an equilibrium with one zero eigenvalue.
///
/// Eigen-coordinates: (x, y) - base = P (u, w), columns of P are the kernel
/// vector and the eigenvector of the nonzero eigenvalue mu, each scaled so the
/// first nonzero component is 1. In these coordinates the field reads
/// u' = N1(u, w), w' = mu w + N2(u, w).
struct CenterManifold {
  Equilibrium base;
  int order = 5;
  double mu = 0.0;
  Mat2 P{}, P_inv{};
  RealPolynomial N1, N2;
  std::vector<double> series;   ///< a_0..a_order, a_0 = a_1 = 0
  std::vector<double> reduced;  ///< u' = sum r_k u^k, k = 0..order

  /// Exact counterparts, present when the base point and Jacobian are rational.
  std::optional<Rational> mu_exact;
  std::optional<ExactMat2> P_exact, P_inv_exact;
  std::optional<BivariatePolynomial> N1_exact, N2_exact;
  std::optional<std::vector<Rational>> series_exact;
  std::optional<std::vector<Rational>> reduced_exact;
  std::optional<std::vector<Rational>> defect_exact;  ///< invariance defect through degree `order`

  /// Reduced flow written in the original coordinate along the center direction,
  /// available when P only permutes the coordinate axes (index center_axis).
  std::optional<int> center_axis;
  std::optional<std::vector<double>> reduced_original;
  std::optional<std::vector<Rational>> reduced_original_exact;
};

/// Raised when the eigenvalue pattern is not one zero plus one nonzero real eigenvalue.
class NotOneZeroError : public std::invalid_argument {
 public:
  NotOneZeroError() : std::invalid_argument("not a one-zero equilibrium") {}
};

CenterManifold center_manifold(const BivariatePolynomial& f, const BivariatePolynomial& g, const Equilibrium& e,
                               int order = 5);
CenterManifold center_manifold(const PlanarSystem& sys, const Equilibrium& e, int order = 5);
CenterManifold center_manifold(const ChartSystem& cs, const Equilibrium& e, int order = 5);

/// One coefficient of the eigen-form that differs from a reference table.
struct CoefficientMismatch {
  int component;  ///< 0 for u', 1 for w'
  int i, j;       ///< monomial u^i w^j
  Rational computed, reference;
};

/// Compares the exact eigen-form (u', w') with a reference pair, term by term.
/// Requires the exact form; throws std::logic_error otherwise.
std::vector<CoefficientMismatch> compare_eigen_form(const CenterManifold& cm, const BivariatePolynomial& ref_u,
                                                    const BivariatePolynomial& ref_w);

/// Tabulated eigen-form at the origin of the saturating-cubic system, as
/// commonly quoted: u' = -(u+w)^3/c and
/// w' = -c w + u^3/c + (1/c - 2cs) w^3 + (3/c - cs) u^2 w + (3/c - cs) u w^2.
std::pair<BivariatePolynomial, BivariatePolynomial> tabulated_origin_eigen_form(const Rational& s, const Rational& c);

enum class BlowupDirection { lam1_pos, lam2_pos, lam2_neg };
std::string to_string(BlowupDirection d);

/// Directional blow-up field in coordinates (r, bar), bar being the rescaled
/// other coordinate; the field has been divided by r^rescale_power.
struct BlowupChart {
  BlowupDirection direction = BlowupDirection::lam1_pos;
  ChartSystem field;
  int rescale_power = 1;
  std::vector<Equilibrium> equilibria;  ///< on {r = 0}, restricted to lambda1 >= 0
};

struct BlowupReport {
  Equilibrium parent;
  std::vector<BlowupChart> charts;

  /// "none" when a direction has no equilibrium on {r = 0}, else the class names joined by "+".
  std::vector<std::string> summary() const;
};

class NotNilpotentError : public std::invalid_argument {
 public:
  NotNilpotentError() : std::invalid_argument("not nilpotent") {}
};

/// (lambda1, lambda2) - base = (r, r b) for lam1_pos, (r a, +/- r) for lam2_pos / lam2_neg.
BlowupChart blowup_chart(const ChartSystem& cs, const Equilibrium& e, BlowupDirection direction);

BlowupReport nilpotent_sector_report(const ChartSystem& cs, const Equilibrium& e);

}  // namespace wavedisk
