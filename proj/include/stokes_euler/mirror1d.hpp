#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Eigenvalues>

#include "critical.hpp"
#include "unfolding.hpp"

namespace stokes_euler {

/// Laurent polynomial g(x) = x^p + q^r x^{-r} + s1 + sum b_j x^j + sum c_j x^{-j},
/// the unfolding restricted to x1 x2 x3 = ... after integrating out the
/// linear variable (x = x2, x3 = q / x).
struct Mirror1D {
  int p = 1;
  int r = 1;
  Complex q{1.0, 0.0};
  Complex s1{};
  std::vector<Complex> b;  // b[j-1]: coefficient of x^j, 1 <= j < p
  std::vector<Complex> c;  // c[j-1]: coefficient of x^{-j}, 1 <= j < r
  std::array<int, 3> arms{0, 1, 2};  // arms[0] has order 1; x is the variable of arms[1]

  /// coefficients[k + r] multiplies x^k, -r <= k <= p.
  std::vector<Complex> coefficients() const {
    std::vector<Complex> co(static_cast<std::size_t>(p + r + 1), Complex{});
    auto at = [&](int k) -> Complex& { return co[static_cast<std::size_t>(k + r)]; };
    at(p) += 1.0;
    at(-r) += std::pow(q, r);
    at(0) += s1;
    for (std::size_t j = 0; j < b.size(); ++j) at(static_cast<int>(j) + 1) += b[j];
    for (std::size_t j = 0; j < c.size(); ++j) at(-static_cast<int>(j) - 1) += c[j];
    return co;
  }

  /// d-th derivative of g at x (d = 0..3).
  Complex derivative(Complex x, int d) const {
    const auto co = coefficients();
    Complex sum{};
    for (int k = -r; k <= p; ++k) {
      const Complex a = co[static_cast<std::size_t>(k + r)];
      if (a == Complex{}) continue;
      double f = 1.0;
      for (int l = 0; l < d; ++l) f *= static_cast<double>(k - l);
      if (f == 0.0) continue;
      sum += a * f * std::pow(x, k - d);
    }
    return sum;
  }

  Complex value(Complex x) const { return derivative(x, 0); }
};

/// Fast evaluator of g and its derivatives for the tracer and the quadrature.
class LaurentEval {
 public:
  explicit LaurentEval(const Mirror1D& m) : p_(m.p), r_(m.r), co_(m.coefficients()) {}

  /// g, g', g'' at x.
  std::array<Complex, 3> operator()(Complex x) const {
    // Horner over x for the nonnegative part and over 1/x for the rest.
    Complex g{}, g1{}, g2{};
    for (int k = p_; k >= 0; --k) {
      g2 = g2 * x + 2.0 * g1;
      g1 = g1 * x + g;
      g = g * x + co_[static_cast<std::size_t>(k + r_)];
    }
    const Complex y = 1.0 / x;
    Complex h{}, h1{}, h2{};  // h(y) = sum_{k>=1} co_{-k} y^k
    for (int k = r_; k >= 1; --k) {
      h2 = h2 * y + 2.0 * h1;
      h1 = h1 * y + h;
      h = h * y + co_[static_cast<std::size_t>(r_ - k)];
    }
    h2 = h2 * y + 2.0 * h1;
    h1 = h1 * y + h;
    h = h * y;
    // d/dx = -y^2 d/dy
    const Complex dh = -y * y * h1;
    const Complex d2h = y * y * y * y * h2 + 2.0 * y * y * y * h1;
    return {g + h, g1 + dh, g2 + d2h};
  }

 private:
  int p_, r_;
  std::vector<Complex> co_;
};

/// Integrates out the order-one arm. Fails with NotReducible when no a_i = 1.
inline Mirror1D reduce_to_1d(const OrbifoldType& A, const UnfoldingPoint& s) {
  s.validate(A);
  int unit = -1;
  for (int i = 0; i < 3; ++i)
    if (A.order(i) == 1) {
      unit = i;
      break;
    }
  if (unit < 0) fail(ErrorKind::NotReducible, "A=" + A.label() + " has no isotropy order 1");
  Mirror1D m;
  m.arms = {unit, unit == 0 ? 1 : 0, unit == 2 ? 1 : 2};
  m.p = A.order(m.arms[1]);
  m.r = A.order(m.arms[2]);
  m.q = s.s_mu;
  m.s1 = s.s1;
  for (int j = 1; j < m.p; ++j) m.b.push_back(s.arm(m.arms[1], j));
  for (int j = 1; j < m.r; ++j) m.c.push_back(s.arm(m.arms[2], j) * std::pow(s.s_mu, j));
  return m;
}

struct CriticalPoint1D {
  Complex x, w, g2;
};

/// Roots of x^{r+1} g'(x) (companion matrix, then Newton on g'), sorted by (Re w, Im w).
inline std::vector<CriticalPoint1D> critical_points_1d(const Mirror1D& m, double collision_tol = 1e-8) {
  const auto co = m.coefficients();
  // x^{r+1} g'(x) = sum_k k a_k x^{k+r}, degree p + r
  const int n = m.p + m.r;
  std::vector<Complex> poly(static_cast<std::size_t>(n + 1));
  for (int k = -m.r; k <= m.p; ++k) poly[static_cast<std::size_t>(k + m.r)] = static_cast<double>(k) * co[static_cast<std::size_t>(k + m.r)];
  const Complex lead = poly.back();
  Eigen::MatrixXcd comp = Eigen::MatrixXcd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -poly[static_cast<std::size_t>(i)] / lead;
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(comp, false);

  const LaurentEval ev(m);
  std::vector<CriticalPoint1D> out;
  for (int k = 0; k < n; ++k) {
    Complex x = es.eigenvalues()(k);
    for (int it = 0; it < 50; ++it) {
      const auto d = ev(x);
      if (d[2] == Complex{}) break;
      const Complex step = d[1] / d[2];
      x -= step;
      if (std::abs(step) <= 1e-15 * std::abs(x)) break;
    }
    const auto d = ev(x);
    out.push_back({x, d[0], d[2]});
  }
  std::sort(out.begin(), out.end(), [](const CriticalPoint1D& a, const CriticalPoint1D& b) {
    if (a.w.real() != b.w.real()) return a.w.real() < b.w.real();
    return a.w.imag() < b.w.imag();
  });
  std::vector<Complex> w;
  for (const auto& c : out) w.push_back(c.w);
  if (relative_min_gap(w) < collision_tol)
    fail(ErrorKind::DegenerateCritical, "critical values of the 1-d mirror collide; perturb the deformation");
  return out;
}

inline std::vector<Complex> critical_values(const std::vector<CriticalPoint1D>& cps) {
  std::vector<Complex> w;
  for (const auto& c : cps) w.push_back(c.w);
  return w;
}

/// Largest relative mismatch between two multisets of values after greedy matching.
inline double multiset_distance(std::vector<Complex> a, std::vector<Complex> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (auto x : a) {
    auto best = b.begin();
    for (auto it = b.begin(); it != b.end(); ++it)
      if (std::abs(*it - x) < std::abs(*best - x)) best = it;
    worst = std::max(worst, std::abs(*best - x) / std::max(1.0, std::abs(x)));
    b.erase(best);
  }
  return worst;
}

}  // namespace stokes_euler
