#include "wavedisk/roots.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace wavedisk {

namespace {

void merge_close(std::vector<RealRoot>& roots) {
  std::sort(roots.begin(), roots.end(), [](const RealRoot& a, const RealRoot& b) { return a.value < b.value; });
  std::vector<RealRoot> out;
  for (auto& r : roots) {
    if (!out.empty() && std::abs(out.back().value - r.value) <= 1e-8) {
      out.back().multiplicity += r.multiplicity;
      if (!out.back().exact && r.exact) out.back() = {r.value, out.back().multiplicity, r.exact};
      continue;
    }
    out.push_back(r);
  }
  roots = std::move(out);
}

std::vector<RealRoot> companion_roots(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size()) - 1;
  Eigen::MatrixXd C = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) C(i, n - 1) = -a[static_cast<std::size_t>(i)] / a.back();
  Eigen::EigenSolver<Eigen::MatrixXd> es(C, false);
  std::vector<RealRoot> out;
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    if (std::abs(z.imag()) > 1e-9 * std::max(1.0, std::abs(z))) continue;
    double x = z.real();
    for (int it = 0; it < 20; ++it) {
      double p = 0.0, dp = 0.0;
      for (auto k = a.size(); k-- > 0;) {
        dp = dp * x + p;
        p = p * x + a[k];
      }
      if (dp == 0.0) break;
      double step = p / dp;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    out.push_back({x, 1, std::nullopt});
  }
  return out;
}

}  // namespace

std::vector<RealRoot> real_roots(const std::vector<Rational>& coeffs_in, double double_root_tol) {
  std::vector<Rational> a = coeffs_in;
  while (!a.empty() && a.back() == 0) a.pop_back();
  std::vector<RealRoot> roots;
  if (a.size() <= 1) return roots;
  int zeros = 0;
  while (a.front() == 0) {
    a.erase(a.begin());
    ++zeros;
  }
  if (zeros > 0) roots.push_back({0.0, zeros, Rational(0)});
  const std::size_t deg = a.size() - 1;
  if (deg == 1) {
    Rational r = -a[0] / a[1];
    roots.push_back({r.get_d(), 1, r});
  } else if (deg == 2) {
    Rational disc = a[1] * a[1] - 4 * a[2] * a[0];
    if (std::abs(disc.get_d()) <= double_root_tol) {
      Rational r = -a[1] / (2 * a[2]);
      roots.push_back({r.get_d(), 2, r});
    } else if (sgn(disc) > 0) {
      if (auto sq = exact_sqrt(disc)) {
        Rational r1 = (-a[1] - *sq) / (2 * a[2]);
        Rational r2 = (-a[1] + *sq) / (2 * a[2]);
        roots.push_back({r1.get_d(), 1, r1});
        roots.push_back({r2.get_d(), 1, r2});
      } else {
        // Cancellation-free pair: q = -(b + sign(b) sqrt(disc)) / 2.
        double b = a[1].get_d(), A = a[2].get_d(), C = a[0].get_d();
        double sd = std::sqrt(disc.get_d());
        double q = -0.5 * (b + (b >= 0 ? sd : -sd));
        roots.push_back({q / A, 1, std::nullopt});
        roots.push_back({C / q, 1, std::nullopt});
      }
    }
  } else if (deg > 2) {
    std::vector<double> ad;
    for (const auto& c : a) ad.push_back(c.get_d());
    auto more = companion_roots(ad);
    roots.insert(roots.end(), more.begin(), more.end());
  }
  merge_close(roots);
  return roots;
}

std::vector<RealRoot> real_roots(const std::vector<double>& coeffs, double double_root_tol) {
  std::vector<double> a = coeffs;
  while (!a.empty() && a.back() == 0.0) a.pop_back();
  std::vector<RealRoot> roots;
  if (a.size() <= 1) return roots;
  int zeros = 0;
  while (a.front() == 0.0) {
    a.erase(a.begin());
    ++zeros;
  }
  if (zeros > 0) roots.push_back({0.0, zeros, Rational(0)});
  const std::size_t deg = a.size() - 1;
  if (deg == 1) {
    roots.push_back({-a[0] / a[1], 1, std::nullopt});
  } else if (deg == 2) {
    double disc = a[1] * a[1] - 4 * a[2] * a[0];
    if (std::abs(disc) <= double_root_tol) {
      roots.push_back({-a[1] / (2 * a[2]), 2, std::nullopt});
    } else if (disc > 0) {
      double sd = std::sqrt(disc);
      double q = -0.5 * (a[1] + (a[1] >= 0 ? sd : -sd));
      roots.push_back({q / a[2], 1, std::nullopt});
      roots.push_back({a[0] / q, 1, std::nullopt});
    }
  } else if (deg > 2) {
    auto more = companion_roots(a);
    roots.insert(roots.end(), more.begin(), more.end());
  }
  merge_close(roots);
  return roots;
}

}  // namespace wavedisk
