#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "wavedisk/compactify.hpp"

namespace wavedisk {

enum class StabilityClass { source, sink, saddle, nonhyperbolic_one_zero, nonhyperbolic_double_zero, center_like };
std::string to_string(StabilityClass s);

using Eigenpair = std::array<std::complex<double>, 2>;

/// Eigenvalues of a real 2x2 matrix from trace and determinant.
Eigenpair eigenvalues(const Mat2& m);

/// Equilibrium of a planar or chart field.
struct Equilibrium {
  ChartId chart = ChartId::Finite;
  Vec2 coords;
  std::optional<ExactVec2> exact_coords;  ///< set when the location is rational
  Mat2 jacobian{};
  Eigenpair eigenvalues{};
  StabilityClass stability = StabilityClass::center_like;
  std::string label;
};

/// Eigenvalue magnitude below which an eigenvalue counts as zero.
inline constexpr double kZeroEigenTol = 1e-9;

StabilityClass classify(const Eigenpair& ev);
inline StabilityClass classify(const Equilibrium& e) { return classify(e.eigenvalues); }

/// Fills jacobian, eigenvalues and stability for a polynomial pair at e.coords.
void fill_linearization(Equilibrium& e, const BivariatePolynomial& f, const BivariatePolynomial& g);

enum class RegimeTag { subcritical, critical, supercritical };
std::string to_string(RegimeTag r);

struct Regime {
  RegimeTag tag = RegimeTag::subcritical;
  double discriminant = 0.0;  ///< c^2 s^2 - 4 s
};

/// Sign of c^2 s^2 - 4 s; |disc| <= 1e-12 is critical.
Regime regime_of(double s, double c);
Regime regime_of(const Rational& s, const Rational& c);

struct Box {
  double xmin, xmax, ymin, ymax;
};

/// Roots of a polynomial field inside a box by damped Newton from a 50 x 50 grid.
/// Uses OpenMP across starts; results are sorted lexicographically.
std::vector<Equilibrium> finite_equilibria(const PlanarSystem& sys, const Box& box);
/// Single-threaded reference for finite_equilibria.
std::vector<Equilibrium> finite_equilibria_serial(const PlanarSystem& sys, const Box& box);

/// Equilibria of a chart field on the circle at infinity {lambda1 = 0}.
std::vector<Equilibrium> boundary_equilibria(const ChartSystem& cs);

/// Attaches the conventional labels E1..E7 to boundary equilibria of the
/// saturating-cubic chart fields (U1/V1: E1, E2 or E3; U2/V2: E4, E5, E6, E7).
void label_boundary_equilibria(std::vector<Equilibrium>& eqs, ChartId chart);

}  // namespace wavedisk
