#pragma once

#include <array>
#include <cstdint>
#include <string>

#include "orbifold.hpp"

namespace stokes_euler {

/// Element n*c + m1*x1 + m2*x2 + m3*x3 of the Picard group L_A in normal
/// form, 0 <= m_i < a_i. The common value c = a_i*x_i is the class of a point.
struct PicElement {
  std::int64_t n = 0;
  std::array<std::int64_t, 3> m{0, 0, 0};

  friend bool operator==(const PicElement&, const PicElement&) = default;
};

namespace detail {
inline std::int64_t floor_div(std::int64_t x, std::int64_t d) {
  std::int64_t q = x / d;
  if ((x % d != 0) && ((x < 0) != (d < 0))) --q;
  return q;
}
}  // namespace detail

/// Normal form of shift*c + raw[0]*x1 + raw[1]*x2 + raw[2]*x3.
inline PicElement pic_normalize(const OrbifoldType& A, const std::array<std::int64_t, 3>& raw,
                                std::int64_t shift = 0) {
  PicElement e;
  e.n = shift;
  for (std::size_t i = 0; i < 3; ++i) {
    const std::int64_t ai = A.a[i];
    const std::int64_t q = detail::floor_div(raw[i], ai);
    e.n += q;
    e.m[i] = raw[i] - q * ai;
  }
  return e;
}

inline PicElement pic_add(const OrbifoldType& A, const PicElement& x, const PicElement& y) {
  return pic_normalize(A, {x.m[0] + y.m[0], x.m[1] + y.m[1], x.m[2] + y.m[2]}, x.n + y.n);
}

inline PicElement pic_negate(const OrbifoldType& A, const PicElement& x) {
  return pic_normalize(A, {-x.m[0], -x.m[1], -x.m[2]}, -x.n);
}

inline PicElement pic_sub(const OrbifoldType& A, const PicElement& x, const PicElement& y) {
  return pic_add(A, x, pic_negate(A, y));
}

/// j*x_arm, arm in {0,1,2}.
inline PicElement pic_arm(const OrbifoldType& A, int arm, std::int64_t j) {
  std::array<std::int64_t, 3> raw{0, 0, 0};
  raw[static_cast<std::size_t>(arm)] = j;
  return pic_normalize(A, raw);
}

inline PicElement pic_c(std::int64_t k = 1) { return PicElement{k, {0, 0, 0}}; }

/// delta(l) = n + sum m_i / a_i.
inline Rational degree(const OrbifoldType& A, const PicElement& l) {
  Rational d = l.n;
  for (std::size_t i = 0; i < 3; ++i) d += Rational(l.m[i], A.a[i]);
  return d;
}

/// Dualizing element omega = c - x1 - x2 - x3.
inline PicElement canonical_element(const OrbifoldType& A) { return pic_normalize(A, {-1, -1, -1}, 1); }

/// Dimension of the graded piece (R_A)_l: n+1 monomial classes survive the
/// single relation of degree c when n >= 0.
inline std::int64_t graded_dim(const OrbifoldType& /*A*/, const PicElement& l) { return l.n >= 0 ? l.n + 1 : 0; }

inline std::string to_string(const PicElement& l) {
  std::string s;
  auto term = [&](std::int64_t k, const std::string& sym) {
    if (k == 0) return;
    if (!s.empty()) s += k > 0 ? "+" : "-";
    else if (k < 0) s += "-";
    const auto ak = k < 0 ? -k : k;
    if (ak != 1) s += std::to_string(ak);
    s += sym;
  };
  term(l.n, "c");
  term(l.m[0], "x1");
  term(l.m[1], "x2");
  term(l.m[2], "x3");
  return s.empty() ? "0" : s;
}

}  // namespace stokes_euler
