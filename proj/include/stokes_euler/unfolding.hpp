#pragma once

#include <array>
#include <complex>
#include <vector>

#include <Eigen/Dense>

#include "orbifold.hpp"

namespace stokes_euler {

using Complex = std::complex<double>;
using Point3 = std::array<Complex, 3>;

/// A point (s1, s_{i,j}, s_mu) of the deformation space of the cusp
/// polynomial. arms[i][j-1] holds s_{i+1,j} for 1 <= j <= a_{i+1} - 1.
struct UnfoldingPoint {
  Complex s1{0.0, 0.0};
  std::array<std::vector<Complex>, 3> arms;
  Complex s_mu{1.0, 0.0};

  /// s = (0, 0, q): the undeformed cusp polynomial with parameter q.
  static UnfoldingPoint at_q(const OrbifoldType& A, Complex q) {
    UnfoldingPoint s;
    for (std::size_t i = 0; i < 3; ++i) s.arms[i].assign(static_cast<std::size_t>(A.a[i] - 1), Complex{});
    s.s_mu = q;
    return s;
  }

  Complex arm(int i, int j) const {
    const auto& v = arms[static_cast<std::size_t>(i)];
    const auto k = static_cast<std::size_t>(j - 1);
    return k < v.size() ? v[k] : Complex{};
  }

  /// Principal logarithm of s_mu.
  Complex t_mu() const { return std::log(s_mu); }

  void validate(const OrbifoldType& A) const {
    if (s_mu == Complex{}) fail(ErrorKind::InvalidArgument, "s_mu must be nonzero");
    for (std::size_t i = 0; i < 3; ++i)
      if (arms[i].size() > static_cast<std::size_t>(A.a[i] - 1))
        fail(ErrorKind::InvalidArgument, "too many arm coefficients for arm " + std::to_string(i + 1));
  }
};

namespace detail {
inline Complex ipow(Complex x, int k) {
  Complex r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}
}  // namespace detail

/// F_A(x; s, s_mu) = x1^a1 + x2^a2 + x3^a3 - x1 x2 x3 / s_mu + s1 + sum s_{i,j} x_i^j.
inline Complex eval_unfolding(const OrbifoldType& A, const UnfoldingPoint& s, const Point3& x) {
  Complex f = s.s1 - x[0] * x[1] * x[2] / s.s_mu;
  for (int i = 0; i < 3; ++i) {
    const auto xi = x[static_cast<std::size_t>(i)];
    f += detail::ipow(xi, A.order(i));
    for (int j = 1; j < A.order(i); ++j) f += s.arm(i, j) * detail::ipow(xi, j);
  }
  return f;
}

inline Point3 gradient_unfolding(const OrbifoldType& A, const UnfoldingPoint& s, const Point3& x) {
  Point3 g;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const auto xi = x[k];
    const int ai = A.order(i);
    Complex gi = static_cast<double>(ai) * detail::ipow(xi, ai - 1) - x[(k + 1) % 3] * x[(k + 2) % 3] / s.s_mu;
    for (int j = 1; j < ai; ++j) gi += static_cast<double>(j) * s.arm(i, j) * detail::ipow(xi, j - 1);
    g[k] = gi;
  }
  return g;
}

inline Eigen::Matrix3cd hessian_unfolding(const OrbifoldType& A, const UnfoldingPoint& s, const Point3& x) {
  Eigen::Matrix3cd h;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const int ai = A.order(i);
    Complex d = static_cast<double>(ai * (ai - 1)) * detail::ipow(x[k], std::max(ai - 2, 0));
    for (int j = 2; j < ai; ++j) d += static_cast<double>(j * (j - 1)) * s.arm(i, j) * detail::ipow(x[k], j - 2);
    h(i, i) = d;
    for (int l = 0; l < 3; ++l)
      if (l != i) h(i, l) = -x[static_cast<std::size_t>(3 - i - l)] / s.s_mu;
  }
  return h;
}

}  // namespace stokes_euler
