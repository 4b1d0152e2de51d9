#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>

#include "jacobian.hpp"

namespace stokes_euler {

struct CriticalOptions {
  double collision_tol = 1e-8;  // pairwise, relative to max(1, |w_a|, |w_b|)
  double newton_tol = 1e-12;
  double gradient_tol = 1e-9;   // relative to the size of the gradient's terms
  int max_newton = 60;
  std::uint64_t seed = 20240917;  // for the random linear form separating points
};

/// Critical points p_i, values w_i (eigenvalues of multiplication by F) and
/// Hessian determinants Delta_i, sorted by (Re w, Im w).
struct CriticalData {
  std::vector<Point3> points;
  std::vector<Complex> values;         // Stickelberger: eigenvalues of mult_F
  std::vector<Complex> direct_values;  // F_A at the Newton-refined points
  std::vector<Complex> hessians;
  std::vector<double> gradient_residuals;

  std::size_t size() const noexcept { return values.size(); }
};

namespace detail {

/// Uniform double in [0,1) from the top 53 bits; identical on every platform.
inline double unit_uniform(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

inline double gradient_residual(const OrbifoldType& A, const UnfoldingPoint& s, const Point3& x) {
  const Point3 g = gradient_unfolding(A, s, x);
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const int ai = A.order(i);
    double scale = ai * std::abs(ipow(x[k], ai - 1)) + std::abs(x[(k + 1) % 3] * x[(k + 2) % 3] / s.s_mu);
    for (int j = 1; j < ai; ++j) scale += j * std::abs(s.arm(i, j) * ipow(x[k], j - 1));
    worst = std::max(worst, std::abs(g[k]) / std::max(1.0, scale));
  }
  return worst;
}

inline Point3 newton_refine(const OrbifoldType& A, const UnfoldingPoint& s, Point3 x, const CriticalOptions& opt) {
  for (int it = 0; it < opt.max_newton; ++it) {
    const Point3 g = gradient_unfolding(A, s, x);
    const Eigen::Matrix3cd h = hessian_unfolding(A, s, x);
    const Eigen::Vector3cd rhs(-g[0], -g[1], -g[2]);
    const Eigen::Vector3cd step = h.fullPivLu().solve(rhs);
    if (!step.allFinite()) break;
    double xnorm = 0.0;
    for (std::size_t k = 0; k < 3; ++k) {
      x[k] += step(static_cast<Eigen::Index>(k));
      xnorm = std::max(xnorm, std::abs(x[k]));
    }
    if (step.norm() <= opt.newton_tol * (1.0 + xnorm)) {
      if (gradient_residual(A, s, x) <= opt.gradient_tol) return x;
      break;
    }
  }
  if (gradient_residual(A, s, x) <= opt.gradient_tol) return x;
  fail(ErrorKind::NewtonDivergence, "Newton refinement of a critical point did not converge");
}

}  // namespace detail

/// Smallest pairwise distance, each pair measured relative to max(1, |w_a|, |w_b|).
inline double relative_min_gap(const std::vector<Complex>& w) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < w.size(); ++i)
    for (std::size_t j = i + 1; j < w.size(); ++j)
      gap = std::min(gap, std::abs(w[i] - w[j]) / std::max({1.0, std::abs(w[i]), std::abs(w[j])}));
  return gap;
}

/// q of the given argument at which the nonzero critical point of the cusp
/// polynomial has x1 x2 x3 / q of modulus one: |q| = prod a_i^{-1/a_i}. Away
/// from it the outlying critical value grows like |q|^{1/chi_A}.
inline Complex balanced_q(const OrbifoldType& A, double arg = 0.3) {
  double r = 1.0;
  for (int ai : A.a) r *= std::pow(static_cast<double>(ai), -1.0 / ai);
  return std::polar(r, arg);
}

inline CriticalData critical_data(const OrbifoldType& A, const UnfoldingPoint& s, const JacobianAlgebra& alg,
                                  const CriticalOptions& opt = {}) {
  const auto n = static_cast<Eigen::Index>(alg.dim());

  Eigen::ComplexEigenSolver<CMatrix> fsolve(alg.mult_F, false);
  std::vector<Complex> spectrum(fsolve.eigenvalues().data(), fsolve.eigenvalues().data() + n);
  if (relative_min_gap(spectrum) < opt.collision_tol)
    fail(ErrorKind::DegeneratePoint, "critical values collide; the point is on or near the bifurcation set");

  // Generic linear form separates the points; its transpose has the
  // evaluation vectors (b_j(p))_j as eigenvectors.
  std::mt19937_64 rng(opt.seed);
  CMatrix form = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < 3; ++i)
    form += Complex(detail::unit_uniform(rng) + 0.5, detail::unit_uniform(rng) - 0.5) * alg.mult_ops[i];
  form += alg.mult_F * Complex(0.1 * detail::unit_uniform(rng), 0.0);
  Eigen::ComplexEigenSolver<CMatrix> es(form.transpose());

  struct Entry {
    Point3 p;
    Complex value, direct, hessian;
    double residual;
  };
  std::vector<Entry> entries;
  for (Eigen::Index k = 0; k < n; ++k) {
    const CVector v = es.eigenvectors().col(k);
    const Complex vv = v.squaredNorm();
    Point3 p;
    for (std::size_t i = 0; i < 3; ++i) p[i] = v.dot(alg.mult_ops[i].transpose() * v) / vv;
    const Complex w = v.dot(alg.mult_F.transpose() * v) / vv;
    p = detail::newton_refine(A, s, p, opt);
    Entry e{p, w, eval_unfolding(A, s, p), hessian_unfolding(A, s, p).determinant(),
            detail::gradient_residual(A, s, p)};
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
    return a.value.imag() < b.value.imag();
  });

  CriticalData cd;
  for (const auto& e : entries) {
    cd.points.push_back(e.p);
    cd.values.push_back(e.value);
    cd.direct_values.push_back(e.direct);
    cd.hessians.push_back(e.hessian);
    cd.gradient_residuals.push_back(e.residual);
  }
  // Distinct eigenvalues must come from distinct refined points.
  if (relative_min_gap(cd.direct_values) < opt.collision_tol)
    fail(ErrorKind::NewtonDivergence, "two eigenvectors refined to the same critical point");
  return cd;
}

/// Copy of s with small fixed-seed random first-order arm coefficients
/// s_{i,1} (arms with a_i >= 2), used to leave the bifurcation set.
inline UnfoldingPoint perturb_arms(const OrbifoldType& A, UnfoldingPoint s, std::uint64_t seed,
                                   double magnitude = 0.05) {
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < 3; ++i) {
    const double re = detail::unit_uniform(rng) - 0.5;
    const double im = detail::unit_uniform(rng) - 0.5;
    if (A.a[i] < 2) continue;
    s.arms[i].resize(static_cast<std::size_t>(A.a[i] - 1));
    s.arms[i][0] += 2.0 * magnitude * Complex(re, im);
  }
  return s;
}

/// Canonical-frame data at one critical point.
struct FrameEntry {
  Complex eta;  // eta(d/dw_i, d/dw_i) = -exp(-2 t_mu) / Delta_i
  Complex psi;  // Psi_{1i} = exp(-t_mu) / sqrt(-Delta_i), principal branch
};

inline std::vector<FrameEntry> canonical_frame(const UnfoldingPoint& s, const CriticalData& cd) {
  const Complex t = s.t_mu();
  std::vector<FrameEntry> out;
  for (auto delta : cd.hessians) {
    if (delta == Complex{} || std::abs(delta) < 1e-300)
      fail(ErrorKind::ZeroHessian, "Hessian determinant vanishes at a critical point");
    out.push_back({-std::exp(-2.0 * t) / delta, std::exp(-t) / std::sqrt(-delta)});
  }
  return out;
}

/// Weights q_i in collection order (unit, arm directions, s_mu) and
/// V = diag(q_i - 1/2).
struct ExponentData {
  std::vector<Rational> degrees;

  std::vector<Rational> v_diagonal() const {
    std::vector<Rational> out;
    for (const auto& q : degrees) out.push_back(q - Rational(1, 2));
    return out;
  }
};

inline ExponentData exponent_data(const OrbifoldType& A) {
  ExponentData e;
  e.degrees.push_back(0);
  for (int i = 0; i < 3; ++i)
    for (int j = 1; j < A.order(i); ++j) e.degrees.push_back(Rational(j, A.order(i)));
  e.degrees.push_back(1);
  return e;
}

struct UVMatrices {
  CMatrix U;
  CMatrix V;
};

/// U = multiplication by F in the algebra basis (its spectrum is the
/// canonical coordinates), V = diag(q_i - 1/2).
inline UVMatrices assemble_UV(const ExponentData& ex, const JacobianAlgebra& alg) {
  UVMatrices uv;
  uv.U = alg.mult_F;
  const auto v = ex.v_diagonal();
  uv.V = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    uv.V(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = v[i].convert_to<double>();
  return uv;
}

}  // namespace stokes_euler
