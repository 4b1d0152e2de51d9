#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "groebner.hpp"
#include "unfolding.hpp"

namespace stokes_euler {

using Monomial = std::array<int, 3>;
using Polynomial = std::map<Monomial, Complex>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;

inline int total_degree(const Monomial& m) { return m[0] + m[1] + m[2]; }

inline int total_degree(const Polynomial& p) {
  int d = -1;
  for (const auto& [m, c] : p)
    if (c != Complex{}) d = std::max(d, total_degree(m));
  return d;
}

inline std::string to_string(const Monomial& m) {
  std::string s;
  for (std::size_t i = 0; i < 3; ++i) {
    if (m[i] == 0) continue;
    s += "x" + std::to_string(i + 1);
    if (m[i] > 1) s += "^" + std::to_string(m[i]);
  }
  return s.empty() ? "1" : s;
}

/// The three partial derivatives of F_A as sparse polynomials.
inline std::array<Polynomial, 3> jacobian_generators(const OrbifoldType& A, const UnfoldingPoint& s) {
  std::array<Polynomial, 3> gens;
  for (int i = 0; i < 3; ++i) {
    auto& g = gens[static_cast<std::size_t>(i)];
    const int ai = A.order(i);
    Monomial lead{0, 0, 0};
    lead[static_cast<std::size_t>(i)] = ai - 1;
    g[lead] += static_cast<double>(ai);
    Monomial cross{1, 1, 1};
    cross[static_cast<std::size_t>(i)] = 0;
    g[cross] += -1.0 / s.s_mu;
    for (int j = 1; j < ai; ++j) {
      Monomial m{0, 0, 0};
      m[static_cast<std::size_t>(i)] = j - 1;
      g[m] += static_cast<double>(j) * s.arm(i, j);
    }
  }
  return gens;
}

/// Deformation directions: the unit (s1), an arm coefficient s_{i,j}, or s_mu.
struct Direction {
  enum class Kind { Unit, Arm, Mu } kind = Kind::Unit;
  int arm = 0;  // 0-based arm index for Kind::Arm
  int power = 0;

  static Direction unit() { return {Kind::Unit, 0, 0}; }
  static Direction arm_power(int arm, int j) { return {Kind::Arm, arm, j}; }
  static Direction mu() { return {Kind::Mu, 0, 0}; }
};

/// All mu_A directions in collection order: unit, arms by index then power, s_mu.
inline std::vector<Direction> deformation_directions(const OrbifoldType& A) {
  std::vector<Direction> out{Direction::unit()};
  for (int i = 0; i < 3; ++i)
    for (int j = 1; j < A.order(i); ++j) out.push_back(Direction::arm_power(i, j));
  out.push_back(Direction::mu());
  return out;
}

/// dF_A / ds_dir as a polynomial in x.
inline Polynomial deformation_derivative(const UnfoldingPoint& s, const Direction& d) {
  Polynomial p;
  switch (d.kind) {
    case Direction::Kind::Unit: p[{0, 0, 0}] = 1.0; break;
    case Direction::Kind::Arm: {
      Monomial m{0, 0, 0};
      m[static_cast<std::size_t>(d.arm)] = d.power;
      p[m] = 1.0;
      break;
    }
    case Direction::Kind::Mu: p[{1, 1, 1}] = 1.0 / (s.s_mu * s.s_mu); break;
  }
  return p;
}

/// Finite-dimensional quotient C[x]/(dF/dx1, dF/dx2, dF/dx3) with a monomial
/// basis. mult_ops[i] has column j = coordinates of x_i * basis[j].
struct JacobianAlgebra {
  std::vector<Monomial> basis;
  std::array<CMatrix, 3> mult_ops;
  CMatrix mult_F;
  std::vector<exact::Poly> groebner;  // reduced grevlex basis of the Jacobian ideal

  std::size_t dim() const noexcept { return basis.size(); }

  /// Index of the monomial 1 in the basis.
  std::size_t unit_index() const {
    for (std::size_t k = 0; k < basis.size(); ++k)
      if (basis[k] == Monomial{0, 0, 0}) return k;
    fail(ErrorKind::DimensionMismatch, "monomial 1 is not a basis element");
  }

  CVector unit() const {
    CVector e = CVector::Zero(static_cast<Eigen::Index>(dim()));
    e(static_cast<Eigen::Index>(unit_index())) = 1.0;
    return e;
  }

  /// Exact normal form of a polynomial, as coordinates in the basis.
  CVector reduce(const Polynomial& p) const {
    exact::Poly q;
    for (const auto& [m, c] : p) exact::add_term(q, m, exact::GaussRat::from(c));
    return coordinates(exact::normal_form(std::move(q), groebner));
  }

  CVector coordinates(const exact::Poly& nf) const {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim()));
    for (const auto& [m, c] : nf) {
      const auto it = std::find(basis.begin(), basis.end(), m);
      if (it == basis.end()) fail(ErrorKind::DimensionMismatch, "normal form leaves the monomial basis");
      v(it - basis.begin()) = c.to_complex();
    }
    return v;
  }

  /// Multiplication operator of an arbitrary polynomial, computed exactly.
  CMatrix operator_of(const Polynomial& p) const {
    exact::Poly q;
    for (const auto& [m, c] : p) exact::add_term(q, m, exact::GaussRat::from(c));
    return operator_of(q);
  }

  CMatrix operator_of(const exact::Poly& q) const {
    const auto n = static_cast<Eigen::Index>(dim());
    CMatrix out(n, n);
    for (Eigen::Index j = 0; j < n; ++j) {
      exact::Poly prod;
      for (const auto& [m, c] : q) exact::add_term(prod, exact::mul(m, basis[static_cast<std::size_t>(j)]), c);
      out.col(j) = coordinates(exact::normal_form(std::move(prod), groebner));
    }
    return out;
  }

  double commutator_defect() const {
    double worst = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = i + 1; j < 3; ++j) {
        const double scale = std::max(1.0, mult_ops[i].norm() * mult_ops[j].norm());
        worst = std::max(worst, (mult_ops[i] * mult_ops[j] - mult_ops[j] * mult_ops[i]).norm() / scale);
      }
    return worst;
  }
};

inline Polynomial unfolding_polynomial(const OrbifoldType& A, const UnfoldingPoint& s) {
  Polynomial f;
  f[{0, 0, 0}] += s.s1;
  f[{1, 1, 1}] += -1.0 / s.s_mu;
  for (int i = 0; i < 3; ++i) {
    Monomial m{0, 0, 0};
    m[static_cast<std::size_t>(i)] = A.order(i);
    f[m] += 1.0;
    for (int j = 1; j < A.order(i); ++j) {
      Monomial mj{0, 0, 0};
      mj[static_cast<std::size_t>(i)] = j;
      f[mj] += s.arm(i, j);
    }
  }
  return f;
}

namespace detail {

// Exact generators; 1/s_mu enters as the exact inverse of the binary64 value.
inline std::vector<exact::Poly> exact_jacobian_generators(const OrbifoldType& A, const UnfoldingPoint& s) {
  const exact::GaussRat inv_mu = exact::GaussRat::from(s.s_mu).inverse();
  std::vector<exact::Poly> gens(3);
  for (int i = 0; i < 3; ++i) {
    auto& g = gens[static_cast<std::size_t>(i)];
    const int ai = A.order(i);
    Monomial lead{0, 0, 0};
    lead[static_cast<std::size_t>(i)] = ai - 1;
    exact::add_term(g, lead, exact::GaussRat(ai));
    Monomial cross{1, 1, 1};
    cross[static_cast<std::size_t>(i)] = 0;
    exact::add_term(g, cross, -inv_mu);
    for (int j = 1; j < ai; ++j) {
      Monomial m{0, 0, 0};
      m[static_cast<std::size_t>(i)] = j - 1;
      exact::add_term(g, m, exact::GaussRat(j) * exact::GaussRat::from(s.arm(i, j)));
    }
  }
  return gens;
}

inline exact::Poly exact_unfolding(const OrbifoldType& A, const UnfoldingPoint& s) {
  exact::Poly f;
  exact::add_term(f, {0, 0, 0}, exact::GaussRat::from(s.s1));
  exact::add_term(f, {1, 1, 1}, -exact::GaussRat::from(s.s_mu).inverse());
  for (int i = 0; i < 3; ++i) {
    Monomial m{0, 0, 0};
    m[static_cast<std::size_t>(i)] = A.order(i);
    exact::add_term(f, m, exact::GaussRat(1));
    for (int j = 1; j < A.order(i); ++j) {
      Monomial mj{0, 0, 0};
      mj[static_cast<std::size_t>(i)] = j;
      exact::add_term(f, mj, exact::GaussRat::from(s.arm(i, j)));
    }
  }
  return f;
}

}  // namespace detail

/// Builds the Jacobian algebra from an exact reduced Groebner basis of the
/// Jacobian ideal over Q(i); the inputs are taken as the exact rationals their
/// binary64 values represent. The standard-monomial count certifies the
/// dimension.
inline JacobianAlgebra build_jacobian_algebra(const OrbifoldType& A, const UnfoldingPoint& s) {
  s.validate(A);
  JacobianAlgebra alg;
  alg.groebner = exact::groebner_basis(detail::exact_jacobian_generators(A, s));
  bool finite = false;
  alg.basis = exact::standard_monomials(alg.groebner, finite);
  if (!finite || static_cast<int>(alg.basis.size()) != A.mu)
    fail(ErrorKind::DimensionMismatch, "Jacobian algebra for A=" + A.label() + " has dimension " +
                                           (finite ? std::to_string(alg.basis.size()) : std::string("infinity")) +
                                           ", expected mu=" + std::to_string(A.mu));
  for (std::size_t i = 0; i < 3; ++i) {
    exact::Poly xi;
    Monomial m{0, 0, 0};
    m[i] = 1;
    exact::add_term(xi, m, exact::GaussRat(1));
    alg.mult_ops[i] = alg.operator_of(xi);
  }
  alg.mult_F = alg.operator_of(detail::exact_unfolding(A, s));
  return alg;
}

/// Class of dF/ds_dir in the algebra basis.
inline CVector kodaira_spencer_class(const JacobianAlgebra& alg, const UnfoldingPoint& s, const Direction& d) {
  return alg.reduce(deformation_derivative(s, d));
}

/// Class of E F_A for the Euler field
/// E = s1 d/ds1 + sum (a_i - j)/a_i s_{i,j} d/ds_{i,j} + chi_A s_mu d/ds_mu.
inline CVector euler_field_class(const OrbifoldType& A, const JacobianAlgebra& alg, const UnfoldingPoint& s) {
  CVector out = s.s1 * kodaira_spencer_class(alg, s, Direction::unit());
  for (int i = 0; i < 3; ++i)
    for (int j = 1; j < A.order(i); ++j) {
      const double w = static_cast<double>(A.order(i) - j) / A.order(i);
      out += w * s.arm(i, j) * kodaira_spencer_class(alg, s, Direction::arm_power(i, j));
    }
  out += A.chi.convert_to<double>() * s.s_mu * kodaira_spencer_class(alg, s, Direction::mu());
  return out;
}

}  // namespace stokes_euler
