#pragma once

#include <array>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

namespace stokes_euler {

using Rational = boost::multiprecision::cpp_rational;

/// Orbifold projective line with isotropy orders (a1, a2, a3).
struct OrbifoldType {
  std::array<int, 3> a{1, 1, 1};
  Rational chi;  // 1/a1 + 1/a2 + 1/a3 - 1
  int mu = 2;    // 2 + sum(a_k - 1)

  int order(int arm) const { return a[static_cast<std::size_t>(arm)]; }

  std::string label() const {
    return "(" + std::to_string(a[0]) + "," + std::to_string(a[1]) + "," + std::to_string(a[2]) + ")";
  }

  friend bool operator==(const OrbifoldType& x, const OrbifoldType& y) { return x.a == y.a; }
};

/// Rejects triples with non-positive orbifold Euler characteristic.
inline OrbifoldType make_orbifold(int a1, int a2, int a3) {
  const std::array<int, 3> a{a1, a2, a3};
  for (int ai : a)
    if (ai < 1) fail(ErrorKind::InvalidArgument, "isotropy orders must be positive");

  OrbifoldType o;
  o.a = a;
  o.chi = Rational(1, a1) + Rational(1, a2) + Rational(1, a3) - 1;
  o.mu = 2 + (a1 - 1) + (a2 - 1) + (a3 - 1);
  if (o.chi <= 0)
    fail(ErrorKind::NonPositiveEuler, "chi_A = " + o.chi.str() + " for A=" + o.label());
  return o;
}

}  // namespace stokes_euler
