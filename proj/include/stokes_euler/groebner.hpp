#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "error.hpp"

// Exact commutative algebra in Q(i)[x1,x2,x3]: just enough Buchberger to get
// a reduced Groebner basis and normal forms of zero-dimensional ideals.

namespace stokes_euler::exact {

using Rational = boost::multiprecision::cpp_rational;
using Monomial = std::array<int, 3>;

/// Gaussian rational re + i*im.
struct GaussRat {
  Rational re, im;

  GaussRat() = default;
  GaussRat(Rational r, Rational i = 0) : re(std::move(r)), im(std::move(i)) {}

  /// Exact value of a binary64 complex number.
  static GaussRat from(std::complex<double> z) { return {exact_double(z.real()), exact_double(z.imag())}; }

  static Rational exact_double(double v) {
    if (!std::isfinite(v)) fail(ErrorKind::InvalidArgument, "non-finite coefficient");
    if (v == 0.0) return 0;
    int exp = 0;
    const double mant = std::frexp(v, &exp);  // v = mant * 2^exp, 0.5 <= |mant| < 1
    const auto m = static_cast<long long>(std::ldexp(mant, 53));
    exp -= 53;
    Rational r = m;
    if (exp > 0) r *= Rational(boost::multiprecision::cpp_int(1) << exp);
    if (exp < 0) r /= Rational(boost::multiprecision::cpp_int(1) << -exp);
    return r;
  }

  bool is_zero() const { return re == 0 && im == 0; }

  GaussRat inverse() const {
    const Rational n = re * re + im * im;
    if (n == 0) fail(ErrorKind::InvalidArgument, "division by zero in Q(i)");
    return {re / n, -im / n};
  }

  std::complex<double> to_complex() const { return {re.convert_to<double>(), im.convert_to<double>()}; }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) { return {a.re + b.re, a.im + b.im}; }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) { return {a.re - b.re, a.im - b.im}; }
  friend GaussRat operator-(const GaussRat& a) { return {-a.re, -a.im}; }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(const GaussRat& a, const GaussRat& b) { return a.re == b.re && a.im == b.im; }
};

inline int degree(const Monomial& m) { return m[0] + m[1] + m[2]; }

/// Graded reverse lexicographic order: true when a > b.
struct GrevlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const {
    const int da = degree(a), db = degree(b);
    if (da != db) return da > db;
    for (int i = 2; i >= 0; --i)
      if (a[static_cast<std::size_t>(i)] != b[static_cast<std::size_t>(i)])
        return a[static_cast<std::size_t>(i)] < b[static_cast<std::size_t>(i)];
    return false;
  }
};

/// Sparse polynomial; iteration starts at the leading term.
using Poly = std::map<Monomial, GaussRat, GrevlexGreater>;

inline bool divides(const Monomial& a, const Monomial& b) { return a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2]; }
inline Monomial mul(const Monomial& a, const Monomial& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Monomial quot(const Monomial& a, const Monomial& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Monomial lcm(const Monomial& a, const Monomial& b) {
  return {std::max(a[0], b[0]), std::max(a[1], b[1]), std::max(a[2], b[2])};
}

inline void add_term(Poly& p, const Monomial& m, const GaussRat& c) {
  if (c.is_zero()) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) p.erase(it);
}

/// p -= c * x^shift * q
inline void sub_multiple(Poly& p, const GaussRat& c, const Monomial& shift, const Poly& q) {
  for (const auto& [m, a] : q) add_term(p, mul(m, shift), -(c * a));
}

inline Poly make_monic(Poly p) {
  if (p.empty()) return p;
  const GaussRat inv = p.begin()->second.inverse();
  for (auto& [m, c] : p) c = c * inv;
  return p;
}

/// Full reduction of p modulo the polynomials g (all monic).
inline Poly normal_form(Poly p, const std::vector<Poly>& g) {
  Poly rem;
  while (!p.empty()) {
    const auto [m, c] = *p.begin();
    bool reduced = false;
    for (const auto& gi : g) {
      const Monomial& lm = gi.begin()->first;
      if (divides(lm, m)) {
        sub_multiple(p, c, quot(m, lm), gi);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.emplace(m, c);
      p.erase(p.begin());
    }
  }
  return rem;
}

/// Reduced Groebner basis (grevlex) of the ideal generated by `gens`.
inline std::vector<Poly> groebner_basis(const std::vector<Poly>& gens) {
  std::vector<Poly> g;
  for (const auto& p : gens)
    if (!p.empty()) g.push_back(make_monic(p));

  // Pairs keyed by (degree of lcm, i, j): normal selection strategy.
  std::set<std::tuple<int, std::size_t, std::size_t>> pairs;
  auto push_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i)
      pairs.emplace(degree(lcm(g[i].begin()->first, g[j].begin()->first)), i, j);
  };
  for (std::size_t j = 1; j < g.size(); ++j) push_pairs(j);

  std::vector<bool> alive(g.size(), true);
  while (!pairs.empty()) {
    const auto [deg, i, j] = *pairs.begin();
    pairs.erase(pairs.begin());
    if (!alive[i] || !alive[j]) continue;
    const Monomial li = g[i].begin()->first, lj = g[j].begin()->first;
    const Monomial l = lcm(li, lj);
    if (l == mul(li, lj)) continue;  // coprime leading terms
    // chain criterion: some k with lm_k | lcm and both pairs already handled
    bool skip = false;
    for (std::size_t k = 0; k < g.size() && !skip; ++k) {
      if (k == i || k == j || !alive[k]) continue;
      if (!divides(g[k].begin()->first, l)) continue;
      auto key = [&](std::size_t a, std::size_t b) {
        const auto lo = std::min(a, b), hi = std::max(a, b);
        return std::make_tuple(degree(lcm(g[lo].begin()->first, g[hi].begin()->first)), lo, hi);
      };
      if (!pairs.count(key(i, k)) && !pairs.count(key(j, k))) skip = true;
    }
    if (skip) continue;

    Poly s;
    sub_multiple(s, GaussRat(-1), quot(l, li), g[i]);
    sub_multiple(s, GaussRat(1), quot(l, lj), g[j]);
    std::vector<Poly> active;
    for (std::size_t k = 0; k < g.size(); ++k)
      if (alive[k]) active.push_back(g[k]);
    Poly r = normal_form(std::move(s), active);
    if (r.empty()) continue;
    g.push_back(make_monic(std::move(r)));
    alive.push_back(true);
    push_pairs(g.size() - 1);
  }

  // Minimalise and inter-reduce.
  std::vector<Poly> minimal;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (!alive[k]) continue;
    bool redundant = false;
    for (std::size_t l = 0; l < g.size() && !redundant; ++l) {
      if (l == k || !alive[l]) continue;
      const auto& a = g[l].begin()->first;
      const auto& b = g[k].begin()->first;
      if (divides(a, b) && (a != b || l < k)) redundant = true;
    }
    if (!redundant) minimal.push_back(g[k]);
  }
  std::vector<Poly> reduced;
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    std::vector<Poly> others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.push_back(minimal[l]);
    Poly tail = minimal[k];
    const auto lead = *tail.begin();
    tail.erase(tail.begin());
    Poly r = normal_form(std::move(tail), others);
    r.emplace(lead.first, lead.second);
    reduced.push_back(std::move(r));
  }
  std::sort(reduced.begin(), reduced.end(),
            [](const Poly& a, const Poly& b) { return GrevlexGreater{}(b.begin()->first, a.begin()->first); });
  return reduced;
}

/// Monomials outside the leading-term ideal, ascending in grevlex. Returns
/// an empty vector (and sets `finite` false) when the quotient is infinite.
inline std::vector<Monomial> standard_monomials(const std::vector<Poly>& gb, bool& finite) {
  std::array<int, 3> cap{-1, -1, -1};
  for (const auto& g : gb) {
    const auto& m = g.begin()->first;
    for (std::size_t v = 0; v < 3; ++v)
      if (m[(v + 1) % 3] == 0 && m[(v + 2) % 3] == 0 && m[v] > 0) cap[v] = cap[v] < 0 ? m[v] : std::min(cap[v], m[v]);
  }
  finite = cap[0] > 0 && cap[1] > 0 && cap[2] > 0;
  std::vector<Monomial> out;
  if (!finite) return out;
  for (int a = 0; a < cap[0]; ++a)
    for (int b = 0; b < cap[1]; ++b)
      for (int c = 0; c < cap[2]; ++c) {
        const Monomial m{a, b, c};
        bool standard = true;
        for (const auto& g : gb)
          if (divides(g.begin()->first, m)) {
            standard = false;
            break;
          }
        if (standard) out.push_back(m);
      }
  std::sort(out.begin(), out.end(), [](const Monomial& x, const Monomial& y) { return GrevlexGreater{}(y, x); });
  return out;
}

}  // namespace stokes_euler::exact
