#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "support.hpp"

using namespace wavedisk;
using namespace testing_support;

TEST_CASE("first-order system values") {
  const PlanarSystem sys = first_order(Rational(1), Rational(1));
  const Vec2 a = eval_field(sys, Vec2{1, 0});
  CHECK(a.x == doctest::Approx(0.0));
  CHECK(a.y == doctest::Approx(-0.5));
  const Vec2 b = eval_field(sys, Vec2{2, 0});
  CHECK(b.y == doctest::Approx(-1.6));
  const ExactVec2 e = eval_field(sys, ExactVec2{Rational(2), Rational(0)});
  CHECK(e.y == Rational(-8, 5));
  const Vec2 o = eval_field(sys, Vec2{0, 0});
  CHECK(o.x == 0.0);
  CHECK(o.y == 0.0);

  const PlanarSystem kpp = make_tw_system(logistic(Rational(1), Rational(1)), Rational(2));
  const Vec2 k = eval_field(kpp, Vec2{1, 0});
  CHECK(k.x == 0.0);
  CHECK(k.y == doctest::Approx(0.0));
}

TEST_CASE("desingularized field values") {
  const PlanarSystem d = desingularized(Rational(1), Rational(1));
  CHECK(d.is_polynomial());
  CHECK(d.time_frame == TimeFrame::s_tilde);
  CHECK(max_abs_diff(eval_field(d, Vec2{1, 0}), {0, -1}) < 1e-15);
  CHECK(max_abs_diff(eval_field(d, Vec2{0, 1}), {1, -1}) < 1e-15);
  CHECK(max_abs_diff(eval_field(d, Vec2{1, 1}), {2, -3}) < 1e-15);
  CHECK(max_abs_diff(eval_field(desingularized(Rational(2), Rational(3)), Vec2{0, 0}), {0, 0}) == 0.0);
  CHECK(max_abs_diff(eval_field(PlanarSystem{}, Vec2{3, -2}), {0, 0}) == 0.0);
}

TEST_CASE("desingularized field has the expected monomials") {
  const Rational s(3, 7), c(5, 2);
  const PlanarSystem d = desingularized(s, c);
  BivariatePolynomial f = term(Rational(1), 0, 1) + term(s, 2, 1);
  BivariatePolynomial g = term(-c, 0, 1) + term(Rational(-c * s), 2, 1) + term(Rational(-1), 3, 0);
  CHECK(d.rhs_phi.num == f);
  CHECK(d.rhs_psi.num == g);
  CHECK(desingularizing_multiplier(first_order(s, c)) == BivariatePolynomial(Rational(1)) + term(s, 2, 0));
}

TEST_CASE("analytic Jacobian examples") {
  for (double c : {1.0, 2.5}) {
    const Mat2 j0 = jacobian(desingularized(1.7, c), Vec2{0, 0});
    CHECK(j0[0][0] == 0.0);
    CHECK(j0[0][1] == 1.0);
    CHECK(j0[1][0] == 0.0);
    CHECK(j0[1][1] == doctest::Approx(-c));
  }
  const Mat2 j = jacobian(desingularized(1.0, 1.0), Vec2{1, 0});
  CHECK(j[0][0] == 0.0);
  CHECK(j[0][1] == 2.0);
  CHECK(j[1][0] == -3.0);
  CHECK(j[1][1] == -2.0);
  const Mat2 z = jacobian(PlanarSystem{}, Vec2{1, 2});
  for (auto& row : z)
    for (double v : row) CHECK(v == 0.0);
}

TEST_CASE("Jacobian agrees with central finite differences at 100 random points") {
  std::mt19937 rng(20240611);
  std::uniform_real_distribution<double> coord(-3, 3), par(0.1, 5);
  double worst = 0;
  for (int n = 0; n < 100; ++n) {
    const double s = par(rng), c = par(rng);
    const Vec2 p{coord(rng), coord(rng)};
    worst = std::max(worst, jacobian_fd_error(desingularized(s, c), p));
    worst = std::max(worst, jacobian_fd_error(first_order(to_rational(s), to_rational(c)), p));
  }
  CHECK(worst <= 1e-6);
}

TEST_CASE("odd symmetry") {
  CHECK(is_odd_symmetric(desingularized(Rational(1), Rational(1))));
  CHECK(is_odd_symmetric(desingularized(Rational(7, 3), Rational(1, 9))));
  CHECK_FALSE(is_odd_symmetric(desingularize(make_tw_system(logistic(Rational(1), Rational(1)), Rational(2)))));
  CHECK(is_odd_symmetric(PlanarSystem{}));

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> coord(-4, 4);
  const PlanarSystem sys = first_order(Rational(3, 2), Rational(5, 4));
  for (int n = 0; n < 50; ++n) {
    const Vec2 p{coord(rng), coord(rng)};
    const Vec2 a = eval_field(sys, p), b = eval_field(sys, Vec2{-p.x, -p.y});
    CHECK(a.x == -b.x);
    CHECK(a.y == -b.y);
  }
}

TEST_CASE("reaction parsing") {
  const ReactionTerm f = parse_reaction("u^3 / (1 + s*u^2)", {{"s", Rational(2)}});
  const ReactionTerm g = saturating_cubic(Rational(2));
  CHECK(f.numerator() == g.numerator());
  CHECK(f.denominator() == g.denominator());
  CHECK(f(2.0) == doctest::Approx(8.0 / 9.0));
  const ReactionTerm k = parse_reaction("a*u*(1 - u/K)", {{"a", Rational(2)}, {"K", Rational(4)}});
  CHECK(k(2.0) == doctest::Approx(2.0));
  CHECK_THROWS_AS(parse_reaction("u^3/(1+s*u^2)", {}), ModelError);
  CHECK_THROWS_AS(parse_reaction("u^3/(", {}), ModelError);
  CHECK_THROWS_AS(saturating_cubic(Rational(-1)), ModelError);
  CHECK_THROWS_AS(parse_reaction("u/(1 - u)", {}), ModelError);
  PlanarSystem pole;
  pole.rhs_phi = {BivariatePolynomial(Rational(1)), BivariatePolynomial::x()};
  CHECK_THROWS_AS(eval_field(pole, Vec2{0, 1}), PoleError);
}
