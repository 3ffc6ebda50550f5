#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "support.hpp"
#include "wavedisk/degenerate.hpp"

using namespace wavedisk;
using namespace testing_support;

namespace {

Equilibrium origin_of(const BivariatePolynomial& f, const BivariatePolynomial& g) {
  Equilibrium e;
  e.coords = {0, 0};
  e.exact_coords = ExactVec2{Rational(0), Rational(0)};
  fill_linearization(e, f, g);
  return e;
}

CenterManifold origin_manifold(const Rational& s, const Rational& c, int order = 5) {
  const PlanarSystem d = desingularized(s, c);
  return center_manifold(d, origin_of(d.rhs_phi.num, d.rhs_psi.num), order);
}

Equilibrium labelled(const ChartSystem& cs, const std::string& label) {
  auto eqs = boundary_equilibria(cs);
  label_boundary_equilibria(eqs, cs.chart);
  for (const auto& e : eqs)
    if (e.label == label) return e;
  throw std::runtime_error("missing " + label);
}

double eig_max(const Equilibrium& e) { return std::max(e.eigenvalues[0].real(), e.eigenvalues[1].real()); }
double eig_min(const Equilibrium& e) { return std::min(e.eigenvalues[0].real(), e.eigenvalues[1].real()); }

}  // namespace

TEST_CASE("origin center manifold: exact leading coefficients") {
  for (int c : {1, 2, 3}) {
    for (const Rational& s : {Rational(1), Rational(1, 4), Rational(7, 2)}) {
      const CenterManifold cm = origin_manifold(s, Rational(c));
      REQUIRE(cm.series_exact.has_value());
      REQUIRE(cm.reduced_exact.has_value());
      const auto& a = *cm.series_exact;
      const auto& r = *cm.reduced_exact;
      CHECK(a[0] == 0);
      CHECK(a[1] == 0);
      CHECK(a[2] == 0);
      CHECK(a[3] == Rational(1, c * c));
      CHECK(r[0] == 0);
      CHECK(r[1] == 0);
      CHECK(r[2] == 0);
      CHECK(r[3] == Rational(-1, c));
      CHECK(cm.mu_exact.value() == Rational(-c));
    }
  }
  const CenterManifold cm = origin_manifold(Rational(5), Rational(2), 3);
  CHECK(cm.series[3] == doctest::Approx(0.25));
  CHECK(cm.reduced[3] == doctest::Approx(-0.5));
}

TEST_CASE("origin center manifold: higher orders at s = 1, c = 2") {
  const CenterManifold cm = origin_manifold(Rational(1), Rational(2));
  const std::vector<Rational> a{0, 0, 0, Rational(1, 4), 0, Rational(1, 8)};
  const std::vector<Rational> r{0, 0, 0, Rational(-1, 2), 0, Rational(-3, 8)};
  CHECK(*cm.series_exact == a);
  CHECK(*cm.reduced_exact == r);
  for (const auto& d : cm.defect_exact.value()) CHECK(d == 0);
}

TEST_CASE("invariance residual shrinks at the truncation order") {
  // Independent check in the original coordinates: along the graph the field
  // must be tangent, so w' - h'(u) u' = O(u^(order + 1)).
  const Rational s(3, 2), c(5, 2);
  const PlanarSystem d = desingularized(s, c);
  const CenterManifold cm = origin_manifold(s, c, 5);
  auto residual = [&](double u) {
    double h = 0, dh = 0;
    for (std::size_t k = 0; k < cm.series.size(); ++k) {
      h += cm.series[k] * std::pow(u, k);
      if (k > 0) dh += k * cm.series[k] * std::pow(u, k - 1);
    }
    const Vec2 p{cm.P[0][0] * u + cm.P[0][1] * h, cm.P[1][0] * u + cm.P[1][1] * h};
    const Vec2 F = eval_field(d, p);
    const double ud = cm.P_inv[0][0] * F.x + cm.P_inv[0][1] * F.y;
    const double wd = cm.P_inv[1][0] * F.x + cm.P_inv[1][1] * F.y;
    return std::abs(wd - dh * ud);
  };
  const double r1 = residual(2e-2), r2 = residual(1e-2);
  CHECK(r1 > 0);
  CHECK(r1 / r2 >= std::pow(2.0, 5.5));
  CHECK(residual(1e-2) < 1e-11);
}

TEST_CASE("origin eigen-form against a hand derivation") {
  // phi = u + w, psi = -c w gives u' = -(u+w)^3 / c and
  // w' = -c w + (u+w)^3 / c - c s w (u+w)^2.
  std::mt19937 rng(3);
  for (int n = 0; n < 5; ++n) {
    const Rational s = random_positive(rng), c = random_positive(rng);
    const CenterManifold cm = origin_manifold(s, c);
    const BivariatePolynomial u = BivariatePolynomial::x(), w = BivariatePolynomial::y();
    const BivariatePolynomial cube = (u + w).pow(3);
    const BivariatePolynomial n1 = cube * Rational(-1 / c);
    const BivariatePolynomial n2 = cube * Rational(1 / c) - w * (u + w).pow(2) * Rational(c * s);
    CHECK(cm.N1_exact.value() == n1);
    CHECK(cm.N2_exact.value() == n2);

    // The commonly quoted table swaps the cs and 2cs weights on u w^2 and w^3.
    const auto [ref_u, ref_w] = tabulated_origin_eigen_form(s, c);
    const auto mism = compare_eigen_form(cm, ref_u, ref_w);
    REQUIRE(mism.size() == 2);
    for (const auto& m : mism) {
      CHECK(m.component == 1);
      const bool uw2 = m.i == 1 && m.j == 2, w3 = m.i == 0 && m.j == 3;
      CHECK((uw2 || w3));
      if (uw2) CHECK(m.computed == Rational(3 / c - 2 * c * s));
      if (w3) CHECK(m.computed == Rational(1 / c - c * s));
    }
  }
}

TEST_CASE("center manifold of E3") {
  const ChartSystem u1 = chart_system(desingularized(Rational(1), Rational(2)), ChartId::U1);
  const CenterManifold cm = center_manifold(u1, labelled(u1, "E3"));
  for (const auto& a : cm.series_exact.value()) CHECK(a == 0);
  REQUIRE(cm.reduced_original_exact.has_value());
  const std::vector<Rational> want{-1, -2, -1};
  auto got = *cm.reduced_original_exact;
  while (!got.empty() && got.back() == 0) got.pop_back();
  CHECK(got == want);

  // Other s on the critical curve: -s l2^2 - c s l2 - 1 at c = 2 / sqrt(s).
  const ChartSystem u4 = chart_system(desingularized(Rational(4), Rational(1)), ChartId::U1);
  const CenterManifold c4 = center_manifold(u4, labelled(u4, "E3"));
  auto g4 = *c4.reduced_original_exact;
  while (!g4.empty() && g4.back() == 0) g4.pop_back();
  CHECK(g4 == std::vector<Rational>{-1, -4, -4});
}

TEST_CASE("center manifold of a linear system is flat") {
  const BivariatePolynomial f, g = term(Rational(-1), 0, 1);
  const CenterManifold cm = center_manifold(f, g, origin_of(f, g));
  for (const auto& a : cm.series_exact.value()) CHECK(a == 0);
  for (const auto& r : cm.reduced_exact.value()) CHECK(r == 0);
  const BivariatePolynomial h = term(Rational(-1), 1, 0);
  CHECK_THROWS_AS(center_manifold(h, g, origin_of(h, g)), NotOneZeroError);
}

TEST_CASE("blow-up along lam1 at s = c = 1") {
  const ChartSystem u2 = chart_system(desingularized(Rational(1), Rational(1)), ChartId::U2);
  const BlowupChart b = blowup_chart(u2, labelled(u2, "E6"), BlowupDirection::lam1_pos);
  const BivariatePolynomial r_dot = term(Rational(1), 2, 0) + term(Rational(1), 2, 2) + term(Rational(1), 3, 3);
  const BivariatePolynomial b_dot = term(Rational(1), 0, 0) + term(Rational(1), 0, 2);
  CHECK(b.field.rhs_lambda1 == r_dot);
  CHECK(b.field.rhs_lambda2 == b_dot);
  CHECK(b.equilibria.empty());
}

TEST_CASE("blow-up fields against the hand derivation at random (s, c)") {
  // (l1, l2) = (r, r b): r' = c r^2 + c s r^2 b^2 + r^3 b^3, b' = 1 + s b^2.
  // (l1, l2) = (r a, r): r' = s r + r a^2 + c s r^2 + c r^2 a^2 + r^3, a' = -s a - a^3.
  std::mt19937 rng(17);
  for (int n = 0; n < 5; ++n) {
    const Rational s = random_positive(rng), c = random_positive(rng);
    const ChartSystem u2 = chart_system(desingularized(s, c), ChartId::U2);
    const Equilibrium e6 = labelled(u2, "E6");
    const BlowupChart b1 = blowup_chart(u2, e6, BlowupDirection::lam1_pos);
    CHECK(b1.field.rhs_lambda1 == term(c, 2, 0) + term(Rational(c * s), 2, 2) + term(Rational(1), 3, 3));
    CHECK(b1.field.rhs_lambda2 == term(Rational(1), 0, 0) + term(s, 0, 2));
    const BlowupChart b2 = blowup_chart(u2, e6, BlowupDirection::lam2_pos);
    CHECK(b2.field.rhs_lambda1 == term(s, 1, 0) + term(Rational(1), 1, 2) + term(Rational(c * s), 2, 0) +
                                      term(c, 2, 2) + term(Rational(1), 3, 0));
    CHECK(b2.field.rhs_lambda2 == term(-s, 0, 1) + term(Rational(-1), 0, 3));
  }
}

TEST_CASE("E6 sector report") {
  for (auto [s, c] : {std::pair{1, 1}, std::pair{3, 5}, std::pair{1, 2}, std::pair{3, 1}}) {
    const ChartSystem u2 = chart_system(desingularized(Rational(s), Rational(c)), ChartId::U2);
    const BlowupReport rep = nilpotent_sector_report(u2, labelled(u2, "E6"));
    CHECK(rep.summary() == std::vector<std::string>{"none", "saddle", "saddle"});
    for (std::size_t k = 1; k < 3; ++k) {
      REQUIRE(rep.charts[k].equilibria.size() == 1);
      const Equilibrium& o = rep.charts[k].equilibria[0];
      CHECK(std::abs(eig_max(o) - s) < 1e-10);
      CHECK(std::abs(eig_min(o) + s) < 1e-10);
    }
  }
  const PlanarSystem d = desingularized(Rational(2), Rational(1));
  const ChartSystem u2 = chart_system(d, ChartId::U2);
  const BlowupChart neg = blowup_chart(u2, labelled(u2, "E6"), BlowupDirection::lam2_neg);
  REQUIRE(neg.equilibria.size() == 1);
  CHECK(eig_max(neg.equilibria[0]) == doctest::Approx(2.0));
  CHECK(eig_min(neg.equilibria[0]) == doctest::Approx(-2.0));

  const ChartSystem fin = chart_system(d, ChartId::Finite);
  CHECK_THROWS_AS(nilpotent_sector_report(fin, origin_of(d.rhs_phi.num, d.rhs_psi.num)), NotNilpotentError);
}
