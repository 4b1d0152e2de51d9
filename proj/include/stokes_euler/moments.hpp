#pragma once

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "thimble.hpp"

namespace stokes_euler {

struct QuadratureOptions {
  double rel_tol = 1e-12;     // per panel
  unsigned max_depth = 14;
  double stall_tol = 1e-10;   // accepted estimated error relative to the result scale
  double tail_exponent = 60;  // integrate while decay exponent <= this
};

/// e^{-w/u} (2 pi u)^{-1/2} \int_thimble e^{g/u} x^{k-1} dx: the moment with the
/// saddle factor e^{w/u} divided out. Requires cos(theta - arg u) > 0.
inline Complex moment_normalized(const Mirror1D& m, const Thimble& th, Complex u, int k,
                                 const QuadratureOptions& opt = {}) {
  const double alpha = std::arg(u);
  const double c = std::cos(th.theta - alpha) / std::abs(u);
  if (!(c > 1e-3 / std::abs(u)))
    fail(ErrorKind::DecayViolation, "|arg u - theta| must stay below pi/2 for the thimble integral to converge");
  const double s = std::sin(th.theta - alpha) / std::abs(u);
  const double tau_end = std::min(th.tau_max, std::sqrt(opt.tail_exponent / c));
  if (c * th.tau_max * th.tau_max < 30.0)
    fail(ErrorKind::DecayViolation, "thimble truncated before the integrand has decayed; raise lambda");

  const LaurentEval ev(m);
  const Complex rate = std::polar(1.0, th.theta) / u;
  auto f = [&](double tau) -> Complex {
    const auto [x, dx] = thimble_point(ev, th, tau);
    return std::exp(-rate * (tau * tau)) * std::pow(x, k - 1) * dx;
  };

  // Panels uniform in tau^2, about one oscillation each.
  const double phase = std::abs(s) * tau_end * tau_end;
  const int panels = std::max(8, static_cast<int>(std::ceil(phase / std::numbers::pi)) + 4);
  Complex sum{};
  double err_total = 0.0, l1_total = 0.0;
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  for (double side : {-1.0, 1.0}) {
    double l1_side = 0.0;
    for (int p = 0; p < panels; ++p) {
      const double a = tau_end * std::sqrt(static_cast<double>(p) / panels);
      const double b = tau_end * std::sqrt(static_cast<double>(p + 1) / panels);
      auto g = [&](double t) { return f(side * t); };
      // panels run outwards from the saddle; tolerance is relative to what is already summed
      double err = 0.0, l1 = 0.0;
      Complex piece = GK::integrate(g, a, b, 0, 0.0, &err, &l1);
      if (l1_side > 0.0 && l1 < 1e-18 * l1_side) break;
      const double tol = opt.rel_tol * std::max(1.0, l1_side / std::max(l1, 1e-300));
      piece = GK::integrate(g, a, b, opt.max_depth, tol, &err, &l1);
      sum += piece;  // the negative half is parametrised by t = -tau; the reversed limits and Jacobian cancel
      err_total += err;
      l1_side += l1;
    }
    l1_total += l1_side;
  }
  if (err_total > opt.stall_tol * std::max(std::abs(sum), 1e-300) && err_total > opt.stall_tol * l1_total)
    fail(ErrorKind::QuadratureStall, "Gauss-Kronrod error estimate " + std::to_string(err_total) + " above tolerance (result " + std::to_string(std::abs(sum)) + ")");
  return sum / std::sqrt(2.0 * std::numbers::pi * u);
}

/// The moment itself, (2 pi u)^{-1/2} \int e^{g/u} x^{k-1} dx.
inline Complex moment_integral(const Mirror1D& m, const Thimble& th, Complex u, int k, const QuadratureOptions& opt = {}) {
  return std::exp(th.w / u) * moment_normalized(m, th, u, k, opt);
}

struct AsymptoticSample {
  Complex u;
  Complex ratio;  // m_0 x_i sqrt(-g'') e^{-w_i/u}
  double defect;  // |ratio - 1|
};

struct AsymptoticReport {
  std::vector<AsymptoticSample> samples;
  double slope = 0.0;  // defect / |u| from the two smallest |u|

  bool linear_decrease(double rel = 0.35) const {
    for (std::size_t k = 1; k < samples.size(); ++k) {
      const double expect = samples[k - 1].defect * std::abs(samples[k].u) / std::abs(samples[k - 1].u);
      if (std::abs(samples[k].defect - expect) > rel * expect) return false;
    }
    return std::isfinite(slope);
  }
};

/// Saddle-point law on the thimble of critical point i, traced at theta = arg u
/// for each u. sqrt(-g'') is taken as sqrt(2) / sqrt(-2/g'') to match the
/// orientation convention of the tracer.
inline AsymptoticReport asymptotic_check(const Mirror1D& m, const std::vector<CriticalPoint1D>& cps, std::size_t i,
                                         const std::vector<Complex>& u_sequence, TraceOptions trace = {},
                                         const QuadratureOptions& quad = {}) {
  AsymptoticReport rep;
  const Complex root = std::sqrt(2.0) / std::sqrt(-2.0 / cps[i].g2);
  for (auto u : u_sequence) {
    trace.decay_scale = std::abs(u);
    const Thimble th = trace_thimble(m, cps, i, std::arg(u), trace);
    const Complex ratio = moment_normalized(m, th, u, 0, quad) * cps[i].x * root;
    rep.samples.push_back({u, ratio, std::abs(ratio - 1.0)});
  }
  if (!rep.samples.empty()) {
    auto finest = rep.samples.back();
    rep.slope = finest.defect / std::abs(finest.u);
    if (rep.samples.size() >= 2) {
      const auto& prev = rep.samples[rep.samples.size() - 2];
      rep.slope = (prev.defect - finest.defect) / (std::abs(prev.u) - std::abs(finest.u));
    }
  }
  return rep;
}

}  // namespace stokes_euler
