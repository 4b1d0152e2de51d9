#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "mirror1d.hpp"

namespace stokes_euler {

struct TraceOptions {
  double lambda = 40.0;        // truncation level
  double decay_scale = 1.0;    // path runs until g - w = -e^{i theta} t reaches t = lambda * decay_scale
  double step = 0.02;          // relative step bound on |dx| / |x|
  double level_tol = 1e-12;    // Newton corrector target (relative)
  double safety = 1e-3;        // collision radius, fraction of the closest pair of critical points
  int max_steps = 200000;
};

/// Steepest-descent path through critical point i: g(x(tau)) = w_i - e^{i theta} tau^2,
/// tau in [-tau_max, tau_max]. x(tau) ~ x_i + v tau near the saddle with
/// v = e^{i theta / 2} sqrt(-2 / g''(x_i)) (principal root), so the orientation
/// (increasing tau, the -v end towards the +v end) varies continuously with theta.
struct Thimble {
  std::size_t index = 0;
  double theta = 0.0;
  double lambda = 0.0;
  Complex x0, w, g2, g3, v;
  double tau_max = 0.0;
  std::vector<Complex> taylor;  // g(x0 + d) - w = sum_n taylor[n] d^n, n >= 2
  double near_radius = 0.0;     // |d| below which the Taylor form is used
  std::vector<double> tau;    // strictly increasing, tau.front() = -tau_max
  std::vector<Complex> path;  // x(tau)

  /// Largest |Im((g(x) - w) e^{-i theta})| over the vertices, relative to max(1, |w|).
  double level_defect(const Mirror1D& m) const {
    const LaurentEval ev(m);
    const Complex rot = std::polar(1.0, -theta);
    double worst = 0.0;
    for (const auto& x : path) worst = std::max(worst, std::abs(((ev(x)[0] - w) * rot).imag()));
    return worst / std::max(1.0, std::abs(w));
  }
};

namespace detail {

// Newton on g(x) = target starting from x; returns false when it does not settle.
inline bool level_newton(const LaurentEval& ev, Complex& x, Complex target, double tol, int iters = 8) {
  for (int it = 0; it < iters; ++it) {
    const auto d = ev(x);
    if (d[1] == Complex{}) return false;
    const Complex dx = (d[0] - target) / d[1];
    x -= dx;
    if (!std::isfinite(x.real()) || !std::isfinite(x.imag())) return false;
    if (std::abs(dx) <= tol * std::abs(x)) return true;
  }
  return false;
}

inline Complex level_target(const Thimble& th, double tau) { return th.w - std::polar(tau * tau, th.theta); }

// Taylor coefficients of g at x0 up to degree n_max (generalised binomials for x^{-k}).
inline std::vector<Complex> taylor_at(const Mirror1D& m, Complex x0, int n_max) {
  const auto co = m.coefficients();
  std::vector<Complex> t(static_cast<std::size_t>(n_max + 1), Complex{});
  for (int k = -m.r; k <= m.p; ++k) {
    const Complex a = co[static_cast<std::size_t>(k + m.r)];
    if (a == Complex{}) continue;
    double binom = 1.0;
    for (int n = 0; n <= n_max; ++n) {
      if (n > 0) binom *= static_cast<double>(k - n + 1) / n;
      if (binom == 0.0) break;
      t[static_cast<std::size_t>(n)] += a * binom * std::pow(x0, k - n);
    }
  }
  t[0] = t[1] = Complex{};
  return t;
}

// Local expansion x0 + v tau + a tau^2, a = -g''' v^2 / (6 g'').
inline Complex saddle_series(const Thimble& th, double tau) {
  const Complex a = -th.g3 * th.v * th.v / (6.0 * th.g2);
  return th.x0 + th.v * tau + a * tau * tau;
}

}  // namespace detail

/// Traces both branches of the thimble of critical point `i` of `cps` at angle theta.
inline Thimble trace_thimble(const Mirror1D& m, const std::vector<CriticalPoint1D>& cps, std::size_t i, double theta,
                             const TraceOptions& opt = {}) {
  if (i >= cps.size()) fail(ErrorKind::InvalidArgument, "critical point index out of range");
  const LaurentEval ev(m);
  Thimble th;
  th.index = i;
  th.theta = theta;
  th.lambda = opt.lambda;
  th.x0 = cps[i].x;
  th.w = cps[i].w;
  th.g2 = cps[i].g2;
  th.g3 = m.derivative(th.x0, 3);
  th.v = std::polar(1.0, theta / 2) * std::sqrt(-2.0 / th.g2);
  th.tau_max = std::sqrt(opt.lambda * opt.decay_scale);
  th.taylor = detail::taylor_at(m, th.x0, 28);

  double closest = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < cps.size(); ++a)
    for (std::size_t b = a + 1; b < cps.size(); ++b) closest = std::min(closest, std::abs(cps[a].x - cps[b].x));
  const double radius = std::isfinite(closest) ? opt.safety * closest : 0.0;
  double own = std::abs(th.x0);
  for (std::size_t a = 0; a < cps.size(); ++a)
    if (a != i) own = std::min(own, std::abs(cps[a].x - th.x0));

  th.near_radius = 0.3 * own;

  // Seed where the quadratic model is still accurate.
  const double tau0 = std::min(1e-3 * own / std::abs(th.v), th.tau_max / 4);

  auto branch = [&](double sign) {
    std::vector<double> ts{0.0};
    std::vector<Complex> xs{th.x0};
    double tau = tau0;
    Complex x = detail::saddle_series(th, sign * tau);
    if (!detail::level_newton(ev, x, detail::level_target(th, tau), opt.level_tol))
      fail(ErrorKind::StepFailure, "could not seed thimble branch");
    ts.push_back(tau);
    xs.push_back(x);
    double h = tau0;
    int steps = 0;
    while (tau < th.tau_max) {
      if (++steps > opt.max_steps) fail(ErrorKind::StepFailure, "thimble tracing exceeded the step budget");
      // dx/dtau = -2 tau e^{i theta} / g'(x)
      auto slope = [&](double t, Complex y) { return -2.0 * t * std::polar(1.0, theta) / ev(y)[1]; };
      const Complex k1 = slope(tau, x);
      h = std::min(h * 2.0, std::max(opt.step * std::abs(x) / std::abs(k1), 1e-14 * std::max(1.0, tau)));
      h = std::min(h, th.tau_max - tau);
      bool accepted = false;
      for (int tries = 0; tries < 40 && !accepted; ++tries) {
        const double tn = tau + h;
        const Complex k2 = slope(tau + h / 2, x + h / 2 * k1);
        const Complex k3 = slope(tau + h / 2, x + h / 2 * k2);
        const Complex k4 = slope(tn, x + h * k3);
        Complex y = x + h / 6 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        const Complex pred = y;
        if (detail::level_newton(ev, y, detail::level_target(th, tn), opt.level_tol) &&
            std::abs(y - pred) <= 0.1 * std::abs(y - x) + 1e-14 * std::abs(y) &&
            std::abs(y - x) <= 2.5 * opt.step * std::max(std::abs(x), std::abs(y))) {
          tau = tn;
          x = y;
          accepted = true;
        } else {
          h /= 2;
        }
      }
      if (!accepted) fail(ErrorKind::StepFailure, "thimble step size underflow");
      for (std::size_t a = 0; a < cps.size(); ++a)
        if (a != i && std::abs(x - cps[a].x) < radius)
          fail(ErrorKind::SaddleCollision, "thimble passes within the safety radius of another critical point");
      ts.push_back(tau);
      xs.push_back(x);
    }
    return std::make_pair(ts, xs);
  };

  const auto [tn, xn] = branch(-1.0);
  const auto [tp, xp] = branch(1.0);
  for (std::size_t k = tn.size(); k-- > 1;) {
    th.tau.push_back(-tn[k]);
    th.path.push_back(xn[k]);
  }
  for (std::size_t k = 0; k < tp.size(); ++k) {
    th.tau.push_back(tp[k]);
    th.path.push_back(xp[k]);
  }
  return th;
}

/// Point x(tau) on the thimble and dx/dtau. Near the saddle x = x0 + v tau (1 + eta)
/// is solved for eta in Taylor form (no cancellation as tau -> 0); further out
/// by Newton on g(x) = w - e^{i theta} tau^2 from the nearest traced vertex.
inline std::pair<Complex, Complex> thimble_point(const LaurentEval& ev, const Thimble& th, double tau) {
  const Complex e = std::polar(1.0, th.theta);
  if (std::abs(th.v * tau) < 0.5 * th.near_radius) {
    const auto& c = th.taylor;
    Complex eta{};
    Complex P, dP, Q;
    auto eval = [&](Complex d) {
      // P = sum c_n d^{n-2}, dP = P'(d), Q = sum n c_n d^{n-2}
      P = dP = Q = Complex{};
      for (std::size_t n = c.size() - 1; n >= 2; --n) {
        dP = dP * d + P;
        P = P * d + c[n];
        Q = Q * d + static_cast<double>(n) * c[n];
      }
    };
    for (int it = 0; it < 30; ++it) {
      const Complex one = 1.0 + eta;
      const Complex d = th.v * tau * one;
      eval(d);
      const Complex F = th.v * th.v * one * one * P + e;
      const Complex dF = 2.0 * th.v * th.v * one * P + th.v * th.v * one * one * dP * th.v * tau;
      const Complex step = F / dF;
      eta -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const Complex one = 1.0 + eta;
    const Complex d = th.v * tau * one;
    eval(d);
    return {th.x0 + d, -2.0 * e / (th.v * one * Q)};
  }
  auto it = std::lower_bound(th.tau.begin(), th.tau.end(), tau);
  std::size_t k = static_cast<std::size_t>(it - th.tau.begin());
  if (k == th.tau.size()) k = th.tau.size() - 1;
  if (k > 0 && std::abs(th.tau[k - 1] - tau) < std::abs(th.tau[k] - tau)) --k;
  // linear extrapolation along the polyline as the starting guess
  Complex x = th.path[k];
  if (k + 1 < th.tau.size() && th.tau[k] <= tau)
    x += (th.path[k + 1] - th.path[k]) * ((tau - th.tau[k]) / (th.tau[k + 1] - th.tau[k]));
  else if (k > 0 && th.tau[k] > tau)
    x += (th.path[k] - th.path[k - 1]) * ((tau - th.tau[k]) / (th.tau[k] - th.tau[k - 1]));
  if (!detail::level_newton(ev, x, detail::level_target(th, tau), 1e-15, 30)) {
    // Newton may stall at full precision; accept once the residual is at rounding level
    const auto d = ev(x);
    if (std::abs(d[0] - detail::level_target(th, tau)) > 1e-12 * std::max(1.0, std::abs(d[0])))
      fail(ErrorKind::QuadratureStall, "could not evaluate the thimble at a quadrature node");
  }
  const Complex g1 = ev(x)[1];
  return {x, -2.0 * tau * e / g1};
}

}  // namespace stokes_euler
