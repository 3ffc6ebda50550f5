#include "wavedisk/degenerate.hpp"

#include <cmath>
#include <stdexcept>

namespace wavedisk {

namespace {

template <typename T>
bool is_zero_scalar(const T& v, double tol) {
  if constexpr (std::is_same_v<T, Rational>) {
    (void)tol;
    return sgn(v) == 0;
  } else {
    return std::abs(v) <= tol;
  }
}

template <typename T>
double as_double(const T& v) {
  if constexpr (std::is_same_v<T, Rational>) return v.get_d();
  else return v;
}

/// Null vector of a rank-one 2x2 matrix with first nonzero component 1.
template <typename T>
std::array<T, 2> null_vector(const std::array<std::array<T, 2>, 2>& m) {
  const double n0 = std::abs(as_double(m[0][0])) + std::abs(as_double(m[0][1]));
  const double n1 = std::abs(as_double(m[1][0])) + std::abs(as_double(m[1][1]));
  std::array<T, 2> v;
  if (n0 == 0.0 && n1 == 0.0) throw NotOneZeroError();
  if (n0 >= n1) v = {T(-m[0][1]), T(m[0][0])};
  else v = {T(-m[1][1]), T(m[1][0])};
  const double a0 = std::abs(as_double(v[0])), a1 = std::abs(as_double(v[1]));
  const T lead = a0 > 1e-12 * (a0 + a1) ? v[0] : v[1];
  std::array<T, 2> out{T(v[0] / lead), T(v[1] / lead)};
  if constexpr (!std::is_same_v<T, Rational>)
    for (auto& c : out)
      if (std::abs(c) < 1e-13) c = 0.0;
  return out;
}

/// Truncated univariate composition p(u, h(u)) through degree `order`.
template <typename T>
std::vector<T> substitute_graph(const Poly<T>& p, const std::vector<T>& h, int order) {
  auto mul = [order](const std::vector<T>& a, const std::vector<T>& b) {
    std::vector<T> out(order + 1, T(0));
    for (int i = 0; i <= order; ++i) {
      if (a[i] == 0) continue;
      for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
    }
    return out;
  };
  std::vector<std::vector<T>> hp{std::vector<T>(order + 1, T(0))};
  hp[0][0] = T(1);
  std::vector<T> out(order + 1, T(0));
  for (const auto& [e, c] : p.terms()) {
    if (e.first > order) continue;
    while (static_cast<int>(hp.size()) <= e.second) hp.push_back(mul(hp.back(), h));
    const auto& hj = hp[e.second];
    for (int k = 0; k + e.first <= order; ++k) out[k + e.first] += c * hj[k];
  }
  return out;
}

template <typename T>
std::vector<T> derivative_coeffs(const std::vector<T>& h) {
  std::vector<T> d(h.size(), T(0));
  for (std::size_t k = 1; k < h.size(); ++k) d[k - 1] = h[k] * T(static_cast<int>(k));
  return d;
}

template <typename T>
std::vector<T> product_truncated(const std::vector<T>& a, const std::vector<T>& b, int order) {
  std::vector<T> out(order + 1, T(0));
  for (int i = 0; i <= order; ++i)
    for (int j = 0; i + j <= order; ++j) out[i + j] += a[i] * b[j];
  return out;
}

template <typename T>
struct CmCore {
  T mu;
  std::array<std::array<T, 2>, 2> P, P_inv;
  Poly<T> N1, N2;
  std::vector<T> series, reduced, defect;
  std::optional<int> axis;
  std::optional<std::vector<T>> reduced_original;
};

template <typename T>
CmCore<T> solve_center_manifold(const Poly<T>& f, const Poly<T>& g, const T& x0, const T& y0, int order) {
  using P2 = Poly<T>;
  const P2 X = P2::x() + P2(x0), Y = P2::y() + P2(y0);
  const P2 fs = f.compose(X, Y), gs = g.compose(X, Y);
  std::array<std::array<T, 2>, 2> A{{{fs.coeff(1, 0), fs.coeff(0, 1)}, {gs.coeff(1, 0), gs.coeff(0, 1)}}};
  const T det = A[0][0] * A[1][1] - A[0][1] * A[1][0];
  const T mu = A[0][0] + A[1][1];
  const double scale = std::abs(as_double(A[0][0])) + std::abs(as_double(A[0][1])) + std::abs(as_double(A[1][0])) +
                       std::abs(as_double(A[1][1]));
  if (!is_zero_scalar(det, 1e-9 * (1.0 + scale * scale)) || is_zero_scalar(mu, kZeroEigenTol)) throw NotOneZeroError();

  CmCore<T> out;
  out.mu = mu;
  const auto v0 = null_vector(A);
  std::array<std::array<T, 2>, 2> B = A;
  B[0][0] -= mu;
  B[1][1] -= mu;
  const auto v1 = null_vector(B);
  out.P = {{{v0[0], v1[0]}, {v0[1], v1[1]}}};
  const T pd = out.P[0][0] * out.P[1][1] - out.P[0][1] * out.P[1][0];
  out.P_inv = {{{T(out.P[1][1] / pd), T(-out.P[0][1] / pd)}, {T(-out.P[1][0] / pd), T(out.P[0][0] / pd)}}};

  const P2 u = P2::x(), w = P2::y();
  const P2 Xe = u * out.P[0][0] + w * out.P[0][1];
  const P2 Ye = u * out.P[1][0] + w * out.P[1][1];
  const P2 fe = fs.compose(Xe, Ye), ge = gs.compose(Xe, Ye);
  P2 n1 = fe * out.P_inv[0][0] + ge * out.P_inv[0][1];
  P2 n2 = ge * out.P_inv[1][1] + fe * out.P_inv[1][0];
  // Strip the linear part (exactly diag(0, mu) up to rounding).
  auto strip = [](const P2& p) {
    P2 q;
    for (const auto& [e, c] : p.terms())
      if (e.first + e.second >= 2) q.add_term(e.first, e.second, c);
    return q;
  };
  out.N1 = strip(n1);
  out.N2 = strip(n2);

  std::vector<T> h(order + 1, T(0));
  for (int k = 2; k <= order; ++k) {
    const auto n1h = substitute_graph(out.N1, h, order);
    const auto n2h = substitute_graph(out.N2, h, order);
    const auto lhs = product_truncated(derivative_coeffs(h), n1h, order);
    h[k] = (lhs[k] - n2h[k]) / mu;
  }
  out.series = h;
  out.reduced = substitute_graph(out.N1, h, order);
  const auto lhs = product_truncated(derivative_coeffs(h), out.reduced, order);
  const auto n2h = substitute_graph(out.N2, h, order);
  out.defect.assign(order + 1, T(0));
  for (int k = 0; k <= order; ++k) out.defect[k] = lhs[k] - mu * h[k] - n2h[k];

  // P is a coordinate permutation: the center coordinate is x or y itself, shifted by the base point.
  if (is_zero_scalar(v0[1], 0.0) && is_zero_scalar(v1[0], 0.0)) {
    out.axis = 0;
    out.reduced_original = taylor_shift(out.reduced, T(-x0));
  } else if (is_zero_scalar(v0[0], 0.0) && is_zero_scalar(v1[1], 0.0)) {
    out.axis = 1;
    out.reduced_original = taylor_shift(out.reduced, T(-y0));
  }
  return out;
}

Mat2 to_mat(const ExactMat2& m) { return {{{m[0][0].get_d(), m[0][1].get_d()}, {m[1][0].get_d(), m[1][1].get_d()}}}; }

std::vector<double> to_doubles(const std::vector<Rational>& v) {
  std::vector<double> out;
  for (const auto& q : v) out.push_back(q.get_d());
  return out;
}

}  // namespace

CenterManifold center_manifold(const BivariatePolynomial& f, const BivariatePolynomial& g, const Equilibrium& e,
                               int order) {
  if (order < 3) throw std::invalid_argument("center manifold order must be at least 3");
  if (e.stability != StabilityClass::nonhyperbolic_one_zero) throw NotOneZeroError();
  CenterManifold cm;
  cm.base = e;
  cm.order = order;
  if (e.exact_coords) {
    auto core = solve_center_manifold<Rational>(f, g, e.exact_coords->x, e.exact_coords->y, order);
    cm.mu = core.mu.get_d();
    cm.mu_exact = core.mu;
    cm.P = to_mat(core.P);
    cm.P_inv = to_mat(core.P_inv);
    cm.P_exact = core.P;
    cm.P_inv_exact = core.P_inv;
    cm.N1 = to_real(core.N1);
    cm.N2 = to_real(core.N2);
    cm.N1_exact = core.N1;
    cm.N2_exact = core.N2;
    cm.series = to_doubles(core.series);
    cm.reduced = to_doubles(core.reduced);
    cm.series_exact = core.series;
    cm.reduced_exact = core.reduced;
    cm.defect_exact = core.defect;
    cm.center_axis = core.axis;
    if (core.reduced_original) {
      cm.reduced_original_exact = core.reduced_original;
      cm.reduced_original = to_doubles(*core.reduced_original);
    }
    return cm;
  }
  auto core = solve_center_manifold<double>(to_real(f), to_real(g), e.coords.x, e.coords.y, order);
  cm.mu = core.mu;
  cm.P = core.P;
  cm.P_inv = core.P_inv;
  cm.N1 = core.N1;
  cm.N2 = core.N2;
  cm.series = core.series;
  cm.reduced = core.reduced;
  cm.center_axis = core.axis;
  cm.reduced_original = core.reduced_original;
  return cm;
}

CenterManifold center_manifold(const PlanarSystem& sys, const Equilibrium& e, int order) {
  const PlanarSystem p = sys.is_polynomial() ? sys : desingularize(sys);
  return center_manifold(p.rhs_phi.num, p.rhs_psi.num, e, order);
}

CenterManifold center_manifold(const ChartSystem& cs, const Equilibrium& e, int order) {
  return center_manifold(cs.rhs_lambda1, cs.rhs_lambda2, e, order);
}

std::vector<CoefficientMismatch> compare_eigen_form(const CenterManifold& cm, const BivariatePolynomial& ref_u,
                                                    const BivariatePolynomial& ref_w) {
  if (!cm.N1_exact || !cm.N2_exact) throw std::logic_error("exact eigen-form unavailable");
  const BivariatePolynomial mu_w = BivariatePolynomial::y() * *cm.mu_exact;
  const BivariatePolynomial full[2] = {*cm.N1_exact, *cm.N2_exact + mu_w};
  const BivariatePolynomial* refs[2] = {&ref_u, &ref_w};
  std::vector<CoefficientMismatch> out;
  for (int comp = 0; comp < 2; ++comp) {
    std::map<Exponent, bool> keys;
    for (const auto& [e, c] : full[comp].terms()) keys[e] = true;
    for (const auto& [e, c] : refs[comp]->terms()) keys[e] = true;
    for (const auto& [e, unused] : keys) {
      Rational a = full[comp].coeff(e.first, e.second), b = refs[comp]->coeff(e.first, e.second);
      if (a != b) out.push_back({comp, e.first, e.second, a, b});
    }
  }
  return out;
}

std::pair<BivariatePolynomial, BivariatePolynomial> tabulated_origin_eigen_form(const Rational& s, const Rational& c) {
  using BP = BivariatePolynomial;
  const Rational ic = 1 / c;
  BP uw = BP::x() + BP::y();
  BP du = uw.pow(3) * Rational(-ic);
  BP dw;
  dw.add_term(0, 1, -c);
  dw.add_term(3, 0, ic);
  dw.add_term(0, 3, ic - 2 * c * s);
  dw.add_term(2, 1, 3 * ic - c * s);
  dw.add_term(1, 2, 3 * ic - c * s);
  return {du, dw};
}

std::string to_string(BlowupDirection d) {
  switch (d) {
    case BlowupDirection::lam1_pos: return "lam1_pos";
    case BlowupDirection::lam2_pos: return "lam2_pos";
    case BlowupDirection::lam2_neg: return "lam2_neg";
  }
  return "?";
}

namespace {

/// Exact division of every term by r^k (first variable); throws if not divisible.
BivariatePolynomial divide_by_r(const BivariatePolynomial& p, int k) {
  BivariatePolynomial out = p.shifted(-k, 0);
  if (out.has_negative_exponents()) throw std::domain_error("blow-up field not divisible by r");
  return out;
}

int r_valuation(const BivariatePolynomial& p) { return p.is_zero() ? 1 << 20 : p.min_exponent(0); }

}  // namespace

BlowupChart blowup_chart(const ChartSystem& cs, const Equilibrium& e, BlowupDirection direction) {
  using BP = BivariatePolynomial;
  const Rational x0 = e.exact_coords ? e.exact_coords->x : to_rational(e.coords.x);
  const Rational y0 = e.exact_coords ? e.exact_coords->y : to_rational(e.coords.y);
  const BP Fs = cs.rhs_lambda1.compose(BP::x() + BP(x0), BP::y() + BP(y0));
  const BP Gs = cs.rhs_lambda2.compose(BP::x() + BP(x0), BP::y() + BP(y0));
  for (const auto& p : {Fs, Gs})
    if (p.coeff(0, 0) != 0 || p.coeff(1, 0) != 0 || p.coeff(0, 1) != 0) throw NotNilpotentError();

  const BP r = BP::x(), bar = BP::y();
  BP rdot, bdot;
  switch (direction) {
    case BlowupDirection::lam1_pos: {
      // lambda1 = r, lambda2 = r b.
      const BP f = Fs.compose(r, r * bar), g = Gs.compose(r, r * bar);
      rdot = f;
      bdot = divide_by_r(g - bar * f, 1);
      break;
    }
    case BlowupDirection::lam2_pos: {
      // lambda1 = r a, lambda2 = r.
      const BP f = Fs.compose(r * bar, r), g = Gs.compose(r * bar, r);
      rdot = g;
      bdot = divide_by_r(f - bar * g, 1);
      break;
    }
    case BlowupDirection::lam2_neg: {
      // lambda1 = r a, lambda2 = -r.
      const BP f = Fs.compose(r * bar, -r), g = Gs.compose(r * bar, -r);
      rdot = -g;
      bdot = divide_by_r(f + bar * g, 1);
      break;
    }
  }
  const int k = std::min(r_valuation(rdot), r_valuation(bdot));
  if (k < 1 || k >= (1 << 20)) throw std::domain_error("blow-up field not divisible by r");

  BlowupChart out;
  out.direction = direction;
  out.rescale_power = k;
  out.field.chart = cs.chart;
  out.field.rhs_lambda1 = divide_by_r(rdot, k);
  out.field.rhs_lambda2 = divide_by_r(bdot, k);
  out.field.rescale_degree = k;
  out.field.source_params = cs.source_params;

  std::vector<Equilibrium> eqs;
  if (!out.field.rhs_lambda2.univariate_at_zero(1).empty()) eqs = boundary_equilibria(out.field);
  for (auto& q : eqs) {
    // lambda1 = r a on the lam2 charts; keep the half lambda1 >= 0.
    if (direction != BlowupDirection::lam1_pos && q.coords.y < -1e-12) continue;
    out.equilibria.push_back(std::move(q));
  }
  return out;
}

BlowupReport nilpotent_sector_report(const ChartSystem& cs, const Equilibrium& e) {
  BlowupReport rep;
  rep.parent = e;
  for (auto d : {BlowupDirection::lam1_pos, BlowupDirection::lam2_pos, BlowupDirection::lam2_neg})
    rep.charts.push_back(blowup_chart(cs, e, d));
  return rep;
}

std::vector<std::string> BlowupReport::summary() const {
  std::vector<std::string> out;
  for (const auto& ch : charts) {
    if (ch.equilibria.empty()) {
      out.push_back("none");
      continue;
    }
    std::string s;
    for (const auto& q : ch.equilibria) {
      if (!s.empty()) s += "+";
      s += to_string(q.stability);
    }
    out.push_back(s);
  }
  return out;
}

}  // namespace wavedisk
