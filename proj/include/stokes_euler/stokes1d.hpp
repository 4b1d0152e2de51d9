#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "int_matrix.hpp"
#include "moments.hpp"
#include "sectors.hpp"

namespace stokes_euler {

struct StokesOptions {
  double phi = std::numeric_limits<double>::quiet_NaN();  // NaN: pi/2, or the nearest good line
  double min_margin = 0.05;
  double u_scale = 1.0;       // multiplies the automatic |u0|
  double lambda = 40.0;
  double cond_max = 1e10;
  double int_tol = 1e-4;
  double collision_tol = 1e-8;
  TraceOptions trace;
  QuadratureOptions quad;
};

struct StokesResult {
  IntMatrix S;
  Eigen::MatrixXcd raw;            // before rounding, dominance order
  double max_int_distance = 0.0;
  double residual = 0.0;           // ||N_R (D S D^-1) - N_L|| / ||N_L||
  double condition = 0.0;          // of the row-equilibrated right moment matrix
  std::vector<std::size_t> order;  // order[a] = index into `points`
  double phi = 0.0, eps = 0.0, delta = 0.0;
  Complex u0;
  double theta_right = 0.0, theta_left = 0.0;
  std::vector<CriticalPoint1D> points;  // sorted as critical_points_1d
  std::vector<Thimble> right, left;     // dominance order

  std::vector<Complex> values() const {
    std::vector<Complex> w;
    for (auto i : order) w.push_back(points[i].w);
    return w;
  }
};

/// Moment matrix N(k, j) = e^{-w_j/u} m_k(thimble j), k = 0..n-1.
inline Eigen::MatrixXcd moment_matrix(const Mirror1D& m, const std::vector<Thimble>& ths, Complex u,
                                      const QuadratureOptions& quad = {}) {
  const auto n = static_cast<Eigen::Index>(ths.size());
  Eigen::MatrixXcd N(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k)
      N(k, j) = moment_normalized(m, ths[static_cast<std::size_t>(j)], u, static_cast<int>(k), quad);
  return N;
}

/// Integer Stokes matrix of g from thimbles traced on both sides of the
/// admissible line at angle phi, evaluated at a common u0 with arg u0 = phi.
/// Indices are in ascending Re(w e^{-i phi}); with that order
/// Gamma_left,b = sum_a S_ab Gamma_right,a and S is unit upper triangular.
inline StokesResult stokes_numeric(const Mirror1D& m, const StokesOptions& opt = {}) {
  StokesResult res;
  res.points = critical_points_1d(m, opt.collision_tol);
  const auto w_all = critical_values(res.points);
  const std::size_t n = w_all.size();

  res.phi = std::isnan(opt.phi) ? choose_admissible_angle(w_all, std::numbers::pi / 2, opt.min_margin) : opt.phi;
  const auto sector = require_admissible(w_all, res.phi);
  res.eps = sector.margin;
  res.order = sector.order;
  res.delta = std::min(res.eps / 2, 0.1);
  res.theta_right = res.phi - std::numbers::pi / 2 + res.delta;
  res.theta_left = res.phi + std::numbers::pi / 2 - res.delta;

  // |u0|: half the smallest gap, but not so small that e^{R/|u0|} swamps the solve
  double gap = std::numeric_limits<double>::infinity(), spread = 0.0;
  const Complex rot = std::polar(1.0, -res.phi);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = a + 1; b < n; ++b) {
      gap = std::min(gap, std::abs(w_all[a] - w_all[b]));
      spread = std::max(spread, std::abs(((w_all[a] - w_all[b]) * rot).real()));
    }
  if (n < 2) gap = 1.0;
  const double mod_u = opt.u_scale * std::max(gap / 2, spread / 10);
  res.u0 = std::polar(mod_u, res.phi);

  TraceOptions trace = opt.trace;
  trace.lambda = opt.lambda;
  trace.decay_scale = mod_u / std::sin(res.delta);
  for (auto i : res.order) {
    res.right.push_back(trace_thimble(m, res.points, i, res.theta_right, trace));
    res.left.push_back(trace_thimble(m, res.points, i, res.theta_left, trace));
  }

  Eigen::MatrixXcd NR = moment_matrix(m, res.right, res.u0, opt.quad);
  Eigen::MatrixXcd NL = moment_matrix(m, res.left, res.u0, opt.quad);
  const auto N = static_cast<Eigen::Index>(n);
  for (Eigen::Index k = 0; k < N; ++k) {
    const double s = NR.row(k).cwiseAbs().maxCoeff();
    if (!(s > 0) || !std::isfinite(s)) fail(ErrorKind::IllConditioned, "vanishing row in the right moment matrix");
    NR.row(k) /= s;
    NL.row(k) /= s;
  }
  const Eigen::JacobiSVD<Eigen::MatrixXcd> svd(NR);
  const auto& sv = svd.singularValues();
  res.condition = sv(N - 1) > 0 ? sv(0) / sv(N - 1) : std::numeric_limits<double>::infinity();
  if (!(res.condition < opt.cond_max))
    fail(ErrorKind::IllConditioned, "right moment matrix condition " + std::to_string(res.condition) + "; try another |u0|");

  const Eigen::MatrixXcd X = NR.fullPivLu().solve(NL);
  std::vector<Complex> w;
  for (auto i : res.order) w.push_back(res.points[i].w);
  res.raw.resize(N, N);
  res.S = IntMatrix(n, n);
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b) {
      const Complex v = X(a, b) * std::exp((w[static_cast<std::size_t>(b)] - w[static_cast<std::size_t>(a)]) / res.u0);
      res.raw(a, b) = v;
      const double r = std::round(v.real());
      res.max_int_distance = std::max(res.max_int_distance, std::abs(v - Complex{r, 0.0}));
      res.S(static_cast<std::size_t>(a), static_cast<std::size_t>(b)) = static_cast<std::int64_t>(r);
    }

  Eigen::MatrixXcd Y(N, N);
  for (Eigen::Index a = 0; a < N; ++a)
    for (Eigen::Index b = 0; b < N; ++b)
      Y(a, b) = static_cast<double>(res.S(static_cast<std::size_t>(a), static_cast<std::size_t>(b))) *
                std::exp((w[static_cast<std::size_t>(a)] - w[static_cast<std::size_t>(b)]) / res.u0);
  res.residual = (NR * Y - NL).norm() / NL.norm();

  if (res.max_int_distance > opt.int_tol)
    fail(ErrorKind::NonIntegerEntry, "Stokes entry " + std::to_string(res.max_int_distance) + " away from an integer");
  if (!res.S.is_unit_upper_triangular())
    fail(ErrorKind::TriangularityViolation, "rounded Stokes matrix is not unit upper triangular in dominance order");
  return res;
}

struct StabilityReport {
  bool stable = true;
  std::vector<StokesResult> variants;  // |u0| x 0.75, x 1.25, lambda 60
};

/// Re-runs stokes_numeric with perturbed |u0| and a longer truncation; S must not move.
inline StabilityReport stokes_stability(const Mirror1D& m, const StokesResult& base, StokesOptions opt = {}) {
  StabilityReport rep;
  opt.phi = base.phi;
  for (auto [scale, lambda] : {std::pair{0.75, opt.lambda}, {1.25, opt.lambda}, {1.0, 60.0}}) {
    StokesOptions o = opt;
    o.u_scale = opt.u_scale * scale;
    o.lambda = lambda;
    rep.variants.push_back(stokes_numeric(m, o));
    if (rep.variants.back().S != base.S) rep.stable = false;
  }
  return rep;
}

}  // namespace stokes_euler
