#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <numeric>
#include <vector>

#include "error.hpp"

namespace stokes_euler {

/// Angle reduced into [0, pi).
inline double mod_pi(double phi) {
  double r = std::fmod(phi, std::numbers::pi);
  if (r < 0) r += std::numbers::pi;
  if (r >= std::numbers::pi) r -= std::numbers::pi;
  return r;
}

/// Distance between two directions of lines (angles mod pi).
inline double line_angle_distance(double a, double b) {
  const double d = mod_pi(a - b);
  return std::min(d, std::numbers::pi - d);
}

/// Sorted angles phi in [0, pi) at which some pair of values has
/// Re((w_a - w_b) e^{-i phi}) = 0, i.e. non-admissible lines.
inline std::vector<double> wall_structure(const std::vector<std::complex<double>>& values) {
  std::vector<double> walls;
  for (std::size_t a = 0; a < values.size(); ++a)
    for (std::size_t b = a + 1; b < values.size(); ++b) {
      const auto d = values[a] - values[b];
      if (d == std::complex<double>{}) continue;
      walls.push_back(mod_pi(std::arg(d) + std::numbers::pi / 2));
    }
  std::sort(walls.begin(), walls.end());
  walls.erase(std::unique(walls.begin(), walls.end(), [](double x, double y) { return std::abs(x - y) < 1e-15; }),
              walls.end());
  return walls;
}

/// Sectors in the u-plane attached to an admissible direction phi.
struct SectorConfig {
  double phi = std::numbers::pi / 2;
  double eps = 0.0;

  struct Interval {
    double lo, hi;
  };
  Interval right() const { return {phi - std::numbers::pi - eps, phi + eps}; }
  Interval left() const { return {phi - eps, phi + std::numbers::pi + eps}; }
  Interval plus() const { return {phi - eps, phi + eps}; }
};

struct SectorReport {
  bool admissible = false;
  double margin = 0.0;             // largest eps keeping [phi-eps, phi+eps] admissible
  std::vector<std::size_t> order;  // ascending Re(w e^{-i phi})
};

/// Admissibility of the line at angle phi and the dominance order of the
/// values along it (weakest |e^{w/u}| first as u -> 0 with arg u = phi).
inline SectorReport sector_analysis(const std::vector<std::complex<double>>& values, double phi,
                                    double tol = 1e-12) {
  SectorReport rep;
  const auto walls = wall_structure(values);
  rep.margin = std::numbers::pi / 2;
  for (double w : walls) rep.margin = std::min(rep.margin, line_angle_distance(w, phi));
  rep.admissible = rep.margin > tol;
  if (!rep.admissible) return rep;

  const std::complex<double> rot = std::polar(1.0, -phi);
  rep.order.resize(values.size());
  std::iota(rep.order.begin(), rep.order.end(), std::size_t{0});
  std::stable_sort(rep.order.begin(), rep.order.end(), [&](std::size_t a, std::size_t b) {
    return (values[a] * rot).real() < (values[b] * rot).real();
  });
  return rep;
}

/// As sector_analysis, but throws Inadmissible instead of returning an empty order.
inline SectorReport require_admissible(const std::vector<std::complex<double>>& values, double phi,
                                       double tol = 1e-12) {
  auto rep = sector_analysis(values, phi, tol);
  if (!rep.admissible) fail(ErrorKind::Inadmissible, "line at angle " + std::to_string(phi) + " is not admissible");
  return rep;
}

/// Angle of the admissible line closest to `preferred` whose margin is at
/// least `min_margin`: either `preferred` itself or the midpoint of the
/// nearest wall-free arc.
inline double choose_admissible_angle(const std::vector<std::complex<double>>& values, double preferred,
                                      double min_margin = 0.05) {
  const auto walls = wall_structure(values);
  if (walls.empty()) return mod_pi(preferred);
  if (sector_analysis(values, preferred).margin >= min_margin) return mod_pi(preferred);
  double best = mod_pi(preferred);
  double best_cost = std::numeric_limits<double>::infinity();
  double best_width = 0.0;
  for (std::size_t k = 0; k < walls.size(); ++k) {
    const double lo = walls[k];
    const double hi = k + 1 < walls.size() ? walls[k + 1] : walls[0] + std::numbers::pi;
    const double width = hi - lo;
    const double mid = mod_pi(0.5 * (lo + hi));
    if (width / 2 < min_margin) {
      if (best_cost == std::numeric_limits<double>::infinity() && width > best_width) {
        best_width = width;
        best = mid;
      }
      continue;
    }
    const double cost = line_angle_distance(mid, preferred);
    if (cost < best_cost) {
      best_cost = cost;
      best = mid;
    }
  }
  return best;
}

}  // namespace stokes_euler
