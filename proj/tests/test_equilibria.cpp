#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "wavedisk/equilibria.hpp"

using namespace wavedisk;
using namespace testing_support;

namespace {

std::vector<Equilibrium> u1_equilibria(const Rational& s, const Rational& c) {
  auto eqs = boundary_equilibria(chart_system(desingularized(s, c), ChartId::U1));
  label_boundary_equilibria(eqs, ChartId::U1);
  return eqs;
}

double m_root(double s, double c, int sign) {
  return (-c * s + sign * std::sqrt(c * c * s * s - 4 * s)) / (2 * s);
}

}  // namespace

TEST_CASE("finite equilibria") {
  const auto e = finite_equilibria(desingularized(Rational(1), Rational(1)), {-10, 10, -10, 10});
  REQUIRE(e.size() == 1);
  CHECK(std::abs(e[0].coords.x) < 1e-12);
  CHECK(std::abs(e[0].coords.y) < 1e-12);
  CHECK(e[0].stability == StabilityClass::nonhyperbolic_one_zero);

  const PlanarSystem kpp = desingularize(make_tw_system(logistic(Rational(1), Rational(1)), Rational(2)));
  const auto k = finite_equilibria(kpp, {-10, 10, -10, 10});
  REQUIRE(k.size() == 2);
  CHECK(k[0].coords.x == doctest::Approx(0.0));
  CHECK(k[1].coords.x == doctest::Approx(1.0));
  CHECK(k[1].coords.y == doctest::Approx(0.0));
  CHECK(k[1].stability == StabilityClass::saddle);

  CHECK(finite_equilibria(desingularized(Rational(1), Rational(1)), {1, 2, 1, 2}).empty());
}

TEST_CASE("finite equilibria: parallel and serial agree") {
  const PlanarSystem kpp = desingularize(make_tw_system(logistic(Rational(3), Rational(2)), Rational(1)));
  const auto a = finite_equilibria(kpp, {-5, 5, -5, 5});
  const auto b = finite_equilibria_serial(kpp, {-5, 5, -5, 5});
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].coords == b[i].coords);
}

TEST_CASE("regime map") {
  const Regime a = regime_of(1.0, 3.0);
  CHECK(a.tag == RegimeTag::supercritical);
  CHECK(a.discriminant == doctest::Approx(5.0));
  const Regime b = regime_of(Rational(1), Rational(2));
  CHECK(b.tag == RegimeTag::critical);
  CHECK(b.discriminant == 0.0);
  const Regime c = regime_of(4.0, 0.5);
  CHECK(c.tag == RegimeTag::subcritical);
  CHECK(c.discriminant == doctest::Approx(-12.0));
  CHECK(regime_of(4.0, 1.0).tag == RegimeTag::critical);
}

TEST_CASE("boundary equilibria, supercritical") {
  const auto eqs = u1_equilibria(Rational(1), Rational(3));
  REQUIRE(eqs.size() == 2);
  const double lo = (-3 - std::sqrt(5.0)) / 2, hi = (-3 + std::sqrt(5.0)) / 2;
  CHECK(std::abs(eqs[0].coords.y - lo) < 1e-10);
  CHECK(std::abs(eqs[1].coords.y - hi) < 1e-10);
  CHECK(eqs[0].coords.x == 0.0);
  CHECK(eqs[0].label == "E1");
  CHECK(eqs[1].label == "E2");
  CHECK(eqs[0].stability == StabilityClass::source);
  CHECK(eqs[1].stability == StabilityClass::saddle);
  // J1 = diag(-M-, sqrt(disc)), J2 = diag(-M+, -sqrt(disc)) at s = 1.
  CHECK(eqs[0].jacobian[0][0] == doctest::Approx(-lo));
  CHECK(eqs[0].jacobian[1][1] == doctest::Approx(std::sqrt(5.0)));
  CHECK(eqs[1].jacobian[0][0] == doctest::Approx(-hi));
  CHECK(eqs[1].jacobian[1][1] == doctest::Approx(-std::sqrt(5.0)));
}

TEST_CASE("boundary Jacobian scales with s") {
  // d/dl1 of -l1^3 l2 - s l1 l2 at (0, M) is -s M.
  for (auto [s, c] : {std::pair{2.0, 3.0}, std::pair{0.5, 4.0}}) {
    const auto eqs = u1_equilibria(to_rational(s), to_rational(c));
    REQUIRE(eqs.size() == 2);
    for (int k = 0; k < 2; ++k) {
      const double M = m_root(s, c, k == 0 ? -1 : 1);
      CHECK(eqs[k].coords.y == doctest::Approx(M).epsilon(1e-12));
      CHECK(eqs[k].jacobian[0][0] == doctest::Approx(-s * M));
      CHECK(eqs[k].jacobian[1][1] == doctest::Approx((k == 0 ? 1 : -1) * std::sqrt(c * c * s * s - 4 * s)));
    }
  }
}

TEST_CASE("boundary equilibria, critical and subcritical") {
  const auto eqs = u1_equilibria(Rational(1), Rational(2));
  REQUIRE(eqs.size() == 1);
  CHECK(std::abs(eqs[0].coords.y + 1) < 1e-10);
  CHECK(eqs[0].label == "E3");
  CHECK(eqs[0].stability == StabilityClass::nonhyperbolic_one_zero);
  const double hi = std::max(eqs[0].eigenvalues[0].real(), eqs[0].eigenvalues[1].real());
  const double lo = std::min(eqs[0].eigenvalues[0].real(), eqs[0].eigenvalues[1].real());
  CHECK(std::abs(hi - 1) < 1e-9);
  CHECK(std::abs(lo) < 1e-9);
  CHECK(eqs[0].exact_coords.has_value());
  CHECK(eqs[0].exact_coords->y == Rational(-1));

  const auto e4 = u1_equilibria(Rational(4), Rational(1));
  REQUIRE(e4.size() == 1);
  CHECK(e4[0].coords.y == doctest::Approx(-0.5));
  CHECK(std::max(e4[0].eigenvalues[0].real(), e4[0].eigenvalues[1].real()) == doctest::Approx(2.0));

  CHECK(u1_equilibria(Rational(1), Rational(1)).empty());
}

TEST_CASE("U2 boundary equilibria") {
  auto eqs = boundary_equilibria(chart_system(desingularized(Rational(1), Rational(2)), ChartId::U2));
  label_boundary_equilibria(eqs, ChartId::U2);
  bool e6 = false, e7 = false;
  for (const auto& e : eqs) {
    if (e.label == "E6") {
      e6 = true;
      CHECK(e.coords.y == 0.0);
      CHECK(e.stability == StabilityClass::nonhyperbolic_double_zero);
    }
    if (e.label == "E7") {
      e7 = true;
      CHECK(e.coords.y == doctest::Approx(-1.0));
    }
  }
  CHECK(e6);
  CHECK(e7);
}

TEST_CASE("stability classes") {
  CHECK(classify(eigenvalues(Mat2{{{1, 0}, {0, 2}}})) == StabilityClass::source);
  CHECK(classify(eigenvalues(Mat2{{{-1, 0}, {0, -2}}})) == StabilityClass::sink);
  CHECK(classify(eigenvalues(Mat2{{{1, 0}, {0, -2}}})) == StabilityClass::saddle);
  CHECK(classify(eigenvalues(Mat2{{{0, 1}, {0, -2}}})) == StabilityClass::nonhyperbolic_one_zero);
  CHECK(classify(eigenvalues(Mat2{{{0, 1}, {0, 0}}})) == StabilityClass::nonhyperbolic_double_zero);
  CHECK(classify(eigenvalues(Mat2{{{0, 1}, {-1, 0}}})) == StabilityClass::center_like);
  const auto ev = eigenvalues(Mat2{{{-1, 2}, {-2, -1}}});
  CHECK(std::abs(ev[0].imag()) == doctest::Approx(2.0));
  CHECK(classify(ev) == StabilityClass::sink);
}

TEST_CASE("supercritical grid: one source below one saddle") {
  int cells = 0;
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j) {
      const Rational s(i + 1, 4);
      // c above 2 / sqrt(s): c^2 s > 4.
      const Rational c = Rational(5, 1) / s + Rational(j, 3);
      CAPTURE(to_string(s));
      CAPTURE(to_string(c));
      REQUIRE(regime_of(s, c).tag == RegimeTag::supercritical);
      const auto eqs = u1_equilibria(s, c);
      REQUIRE(eqs.size() == 2);
      CHECK(eqs[0].coords.y < eqs[1].coords.y);
      CHECK(eqs[1].coords.y < 0);
      CHECK(eqs[0].stability == StabilityClass::source);
      CHECK(eqs[1].stability == StabilityClass::saddle);
      ++cells;
    }
  CHECK(cells == 100);
}
