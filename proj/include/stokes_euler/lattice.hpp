#pragma once

#include <algorithm>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Eigenvalues>

#include "int_matrix.hpp"
#include "orbifold.hpp"

namespace stokes_euler {

using LatticeVector = std::vector<std::int64_t>;

/// Z^mu with a symmetric integer form I (diagonal -2).
struct MilnorLattice {
  IntMatrix gram;

  std::size_t rank() const noexcept { return gram.rows(); }

  std::int64_t pairing(const LatticeVector& x, const LatticeVector& y) const {
    if (x.size() != rank() || y.size() != rank()) fail(ErrorKind::InvalidArgument, "vector rank mismatch");
    std::int64_t acc = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j) acc += x[i] * gram(i, j) * y[j];
    }
    return acc;
  }

  void validate() const {
    if (!gram.is_symmetric()) fail(ErrorKind::InvalidArgument, "Gram matrix is not symmetric");
    for (std::size_t i = 0; i < rank(); ++i)
      if (gram(i, i) != -2) fail(ErrorKind::InvalidArgument, "Gram diagonal entry is not -2");
  }
};

/// Ordered tuple of lattice vectors L_1..L_mu, each of self-pairing -2.
struct DistinguishedBasis {
  MilnorLattice lattice;
  std::vector<LatticeVector> vectors;

  std::size_t size() const noexcept { return vectors.size(); }

  /// The standard basis of the lattice itself.
  static DistinguishedBasis standard(const MilnorLattice& lattice) {
    DistinguishedBasis b{lattice, {}};
    for (std::size_t i = 0; i < lattice.rank(); ++i) {
      LatticeVector e(lattice.rank(), 0);
      e[i] = 1;
      b.vectors.push_back(std::move(e));
    }
    return b;
  }

  /// Gram matrix of the tuple, (I(L_i, L_j)).
  IntMatrix tuple_gram() const {
    IntMatrix g(size(), size());
    for (std::size_t i = 0; i < size(); ++i)
      for (std::size_t j = 0; j < size(); ++j) g(i, j) = lattice.pairing(vectors[i], vectors[j]);
    return g;
  }

  void validate() const {
    lattice.validate();
    for (const auto& v : vectors)
      if (lattice.pairing(v, v) != -2) fail(ErrorKind::InvalidArgument, "basis vector with self-pairing != -2");
  }
};

/// h_v(x) = x + I(x,v) v.
inline LatticeVector pl_reflection(const MilnorLattice& lattice, const LatticeVector& v, const LatticeVector& x) {
  const std::int64_t c = lattice.pairing(x, v);
  LatticeVector out = x;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += c * v[k];
  return out;
}

/// S_ij = -G_ij above the diagonal, 1 on it, 0 below.
inline IntMatrix stokes_from_gram(const IntMatrix& gram) {
  const std::size_t n = gram.rows();
  IntMatrix s = IntMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s(i, j) = -gram(i, j);
  return s;
}

inline IntMatrix stokes_from_gram(const DistinguishedBasis& basis) { return stokes_from_gram(basis.tuple_gram()); }

/// I = -(S + S^T).
inline MilnorLattice gram_from_stokes(const IntMatrix& s) {
  if (!s.is_unit_upper_triangular()) fail(ErrorKind::InvalidArgument, "expected a unit upper-triangular matrix");
  return MilnorLattice{-(s + s.transpose())};
}

/// Coefficients of the left thimbles in the right ones: column j holds
/// L_j expanded in R_i = h_{L_1} ... h_{L_{i-1}} (L_i), computed by applying
/// the reflections and inverting the resulting unitriangular matrix.
inline IntMatrix left_basis_expansion(const DistinguishedBasis& basis) {
  const std::size_t n = basis.size();
  const MilnorLattice tuple{basis.tuple_gram()};
  IntMatrix r(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    LatticeVector x(n, 0);
    x[j] = 1;
    for (std::size_t i = j; i-- > 0;) {
      LatticeVector e(n, 0);
      e[i] = 1;
      x = pl_reflection(tuple, e, x);
    }
    for (std::size_t i = 0; i < n; ++i) r(i, j) = x[i];
  }
  return unit_upper_inverse(r);
}

// ---------------------------------------------------------------------------
// Moves. Positions are 1-based, 1 <= k < mu.

namespace detail {
inline void check_position(std::size_t n, std::size_t k) {
  if (k < 1 || k >= n)
    fail(ErrorKind::InvalidArgument, "move position " + std::to_string(k) + " out of range for rank " + std::to_string(n));
}
}  // namespace detail

/// Right move: (L_k, L_{k+1}) -> (h_{L_k}(L_{k+1}), L_k); left move is its inverse
/// (L_k, L_{k+1}) -> (L_{k+1}, h_{L_{k+1}}(L_k)).
inline DistinguishedBasis braid_move(DistinguishedBasis b, std::size_t k, bool right = true) {
  detail::check_position(b.size(), k);
  auto& a = b.vectors[k - 1];
  auto& c = b.vectors[k];
  if (right) {
    LatticeVector na = pl_reflection(b.lattice, a, c);
    c = a;
    a = std::move(na);
  } else {
    LatticeVector nc = pl_reflection(b.lattice, c, a);
    a = c;
    c = std::move(nc);
  }
  return b;
}

inline DistinguishedBasis sign_flip(DistinguishedBasis b, std::size_t k) {
  if (k < 1 || k > b.size()) fail(ErrorKind::InvalidArgument, "sign position out of range");
  for (auto& x : b.vectors[k - 1]) x = -x;
  return b;
}

/// Effect of a braid move on the tuple Gram matrix, without the ambient lattice.
inline IntMatrix braid_gram(const IntMatrix& g, std::size_t k, bool right = true) {
  const std::size_t n = g.rows();
  detail::check_position(n, k);
  const std::size_t i = k - 1, j = k;
  IntMatrix out = g;
  if (right) {
    const std::int64_t c = g(j, i);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i || m == j) continue;
      out(i, m) = out(m, i) = g(j, m) + c * g(i, m);
      out(j, m) = out(m, j) = g(i, m);
    }
    out(i, j) = out(j, i) = -c;
  } else {
    const std::int64_t c = g(i, j);
    for (std::size_t m = 0; m < n; ++m) {
      if (m == i || m == j) continue;
      out(i, m) = out(m, i) = g(j, m);
      out(j, m) = out(m, j) = g(i, m) + c * g(j, m);
    }
    out(i, j) = out(j, i) = -c;
  }
  out(i, i) = out(j, j) = -2;
  return out;
}

inline IntMatrix sign_gram(IntMatrix g, std::size_t k) {
  if (k < 1 || k > g.rows()) fail(ErrorKind::InvalidArgument, "sign position out of range");
  for (std::size_t m = 0; m < g.rows(); ++m)
    if (m != k - 1) {
      g(k - 1, m) = -g(k - 1, m);
      g(m, k - 1) = -g(m, k - 1);
    }
  return g;
}

/// Same moves on Stokes-like matrices, through the Gram dictionary.
inline IntMatrix braid_stokes(const IntMatrix& s, std::size_t k, bool right = true) {
  return stokes_from_gram(braid_gram(gram_from_stokes(s).gram, k, right));
}

inline IntMatrix sign_stokes(const IntMatrix& s, std::size_t k) {
  return stokes_from_gram(sign_gram(gram_from_stokes(s).gram, k));
}

// ---------------------------------------------------------------------------

struct CoxeterInvariants {
  std::vector<BigInt> char_poly;  // leading coefficient first
  std::vector<std::complex<double>> eigenvalues;

  double max_unit_circle_defect() const {
    double d = 0.0;
    for (auto z : eigenvalues) d = std::max(d, std::abs(std::abs(z) - 1.0));
    return d;
  }

  std::string poly_text() const {
    std::string out;
    const std::size_t n = char_poly.size() - 1;
    for (std::size_t k = 0; k <= n; ++k) {
      const BigInt& c = char_poly[k];
      if (c == 0) continue;
      const std::size_t power = n - k;
      const BigInt mag = c < 0 ? BigInt(-c) : c;
      if (out.empty())
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      if (mag != 1 || power == 0) out += mag.str();
      if (power >= 1) out += "x";
      if (power >= 2) out += "^" + std::to_string(power);
    }
    return out.empty() ? "0" : out;
  }
};

/// Characteristic polynomial det(x - M) by Faddeev-LeVerrier in exact integers
/// (M is integral, so every division is exact).
inline std::vector<BigInt> characteristic_polynomial(const IntMatrix& m) {
  const std::size_t n = m.rows();
  using Big = std::vector<std::vector<BigInt>>;
  Big a(n, std::vector<BigInt>(n)), mk(n, std::vector<BigInt>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = m(i, j);
  std::vector<BigInt> c(n + 1);
  c[0] = 1;
  // M_0 = 0; M_k = A M_{k-1} + c_{k-1} I; c_k = -tr(A M_k) / k
  Big prev(n, std::vector<BigInt>(n));
  for (std::size_t k = 1; k <= n; ++k) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        BigInt acc = i == j ? c[k - 1] : BigInt(0);
        for (std::size_t l = 0; l < n; ++l) acc += a[i][l] * prev[l][j];
        mk[i][j] = acc;
      }
    BigInt tr = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t l = 0; l < n; ++l) tr += a[i][l] * mk[l][i];
    c[k] = -tr / static_cast<long long>(k);
    std::swap(prev, mk);
  }
  return c;
}

namespace detail {

// Dense univariate polynomials over Q, ascending coefficients.
using QPoly = std::vector<Rational>;

inline QPoly trim(QPoly p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

inline QPoly derivative(const QPoly& p) {
  QPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long long>(k));
  return trim(d);
}

inline QPoly sub(QPoly a, const QPoly& b) {
  if (a.size() < b.size()) a.resize(b.size());
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  return trim(a);
}

/// Quotient and remainder; b nonzero.
inline std::pair<QPoly, QPoly> divmod(QPoly a, const QPoly& b) {
  a = trim(a);
  if (a.size() < b.size()) return {QPoly{}, a};
  QPoly q(a.size() - b.size() + 1);
  for (std::size_t k = q.size(); k-- > 0;) {
    const Rational c = a[k + b.size() - 1] / b.back();
    q[k] = c;
    for (std::size_t l = 0; l < b.size(); ++l) a[k + l] -= c * b[l];
  }
  return {trim(q), trim(a)};
}

inline QPoly monic(QPoly p) {
  p = trim(p);
  if (p.empty()) return p;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
  return p;
}

inline QPoly gcd(QPoly a, QPoly b) {
  a = trim(a);
  b = trim(b);
  while (!b.empty()) {
    auto r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

/// Yun's square-free decomposition: pairs (factor, multiplicity).
inline std::vector<std::pair<QPoly, int>> squarefree_factors(const QPoly& f) {
  std::vector<std::pair<QPoly, int>> out;
  const QPoly fp = derivative(f);
  QPoly a = gcd(f, fp);
  QPoly b = divmod(f, a).first;
  QPoly c = divmod(fp, a).first;
  QPoly d = sub(c, derivative(b));
  for (int i = 1; b.size() > 1; ++i) {
    a = gcd(b, d);
    if (a.size() > 1) out.emplace_back(a, i);
    b = divmod(b, a).first;
    c = divmod(d, a).first;
    d = sub(c, derivative(b));
  }
  return out;
}

/// Simple roots of a square-free polynomial: companion eigenvalues, then Newton.
inline std::vector<std::complex<double>> simple_roots(const QPoly& p) {
  const QPoly m = monic(p);
  const auto n = static_cast<Eigen::Index>(m.size()) - 1;
  std::vector<std::complex<double>> roots;
  if (n < 1) return roots;
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (Eigen::Index i = 0; i < n; ++i) comp(i, n - 1) = -m[static_cast<std::size_t>(i)].convert_to<double>();
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  for (Eigen::Index k = 0; k < n; ++k) {
    std::complex<double> z = es.eigenvalues()(k);
    for (int it = 0; it < 8; ++it) {
      std::complex<double> v = 0, dv = 0;
      for (std::size_t l = m.size(); l-- > 0;) {
        dv = dv * z + v;
        v = v * z + m[l].convert_to<double>();
      }
      if (dv == std::complex<double>{}) break;
      z -= v / dv;
    }
    roots.push_back(z);
  }
  return roots;
}

}  // namespace detail

/// Monodromy M = S^{-1} S^T: exact characteristic polynomial, and its roots
/// with multiplicity (via square-free factors, so Jordan blocks cost nothing).
inline CoxeterInvariants coxeter_invariants(const IntMatrix& s) {
  const IntMatrix m = unit_upper_inverse(s) * s.transpose();
  CoxeterInvariants inv;
  inv.char_poly = characteristic_polynomial(m);
  detail::QPoly f(inv.char_poly.rbegin(), inv.char_poly.rend());
  for (const auto& [factor, mult] : detail::squarefree_factors(f))
    for (auto z : detail::simple_roots(factor))
      for (int k = 0; k < mult; ++k) inv.eigenvalues.push_back(z);
  std::sort(inv.eigenvalues.begin(), inv.eigenvalues.end(), [](auto x, auto y) {
    return std::arg(x) != std::arg(y) ? std::arg(x) < std::arg(y) : std::abs(x) < std::abs(y);
  });
  return inv;
}

}  // namespace stokes_euler
