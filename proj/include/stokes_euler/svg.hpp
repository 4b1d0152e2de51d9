#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <limits>
#include <string>
#include <vector>

#include "stokes1d.hpp"

namespace stokes_euler::svg {

// Maps a box of the complex plane onto a square canvas (y up).
class Canvas {
 public:
  explicit Canvas(const std::vector<Complex>& pts, double size = 480.0, double pad = 0.12) : size_(size) {
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (auto z : pts) {
      x0 = std::min(x0, z.real());
      x1 = std::max(x1, z.real());
      y0 = std::min(y0, z.imag());
      y1 = std::max(y1, z.imag());
    }
    if (pts.empty()) x0 = y0 = -1, x1 = y1 = 1;
    const double span = std::max({x1 - x0, y1 - y0, 1e-9}) * (1 + 2 * pad);
    cx_ = (x0 + x1) / 2;
    cy_ = (y0 + y1) / 2;
    scale_ = size / span;
  }

  double x(Complex z) const { return size_ / 2 + (z.real() - cx_) * scale_; }
  double y(Complex z) const { return size_ / 2 - (z.imag() - cy_) * scale_; }
  double size() const { return size_; }

  std::string point(Complex z) const {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f,%.2f", x(z), y(z));
    return buf;
  }

 private:
  double size_, cx_ = 0, cy_ = 0, scale_ = 1;
};

inline std::string header(double size, const std::string& title) {
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\">\n",
                size, size, size, size);
  return std::string(buf) + "<title>" + title + "</title>\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

inline std::string circle(const Canvas& c, Complex z, const std::string& cls, const std::string& fill, int index) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "<circle class=\"%s\" data-index=\"%d\" cx=\"%.2f\" cy=\"%.2f\" r=\"4\" fill=\"%s\"/>\n",
                cls.c_str(), index, c.x(z), c.y(z), fill.c_str());
  return buf;
}

inline std::string polyline(const Canvas& c, const std::vector<Complex>& pts, const std::string& cls,
                            const std::string& stroke, const std::string& extra = "") {
  std::string out = "<polyline class=\"" + cls + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"1.2\"" + extra + " points=\"";
  for (std::size_t k = 0; k < pts.size(); ++k) out += (k ? " " : "") + c.point(pts[k]);
  return out + "\"/>\n";
}

/// Critical values in the w-plane. With a Stokes result, the half-lines
/// w_i - e^{i theta} [0, L) of both families and the admissible line at phi.
inline std::string constellation(const std::vector<Complex>& values, const StokesResult* sr = nullptr) {
  std::vector<Complex> box = values;
  box.push_back(0.0);
  double reach = 0.0;
  for (auto a : values)
    for (auto b : values) reach = std::max(reach, std::abs(a - b));
  if (reach == 0.0) reach = 1.0;
  if (sr)
    for (auto w : values)
      for (double th : {sr->theta_right, sr->theta_left}) box.push_back(w - std::polar(0.6 * reach, th));
  const Canvas c(box);
  std::string out = header(c.size(), "critical values");
  if (sr) {
    const Complex dir = std::polar(2.0 * reach, sr->phi);
    out += polyline(c, {-dir, dir}, "admissible-line", "#999", " stroke-dasharray=\"4 3\"");
    for (auto w : values) {
      out += polyline(c, {w, w - std::polar(0.6 * reach, sr->theta_right)}, "half-line right", "#c33");
      out += polyline(c, {w, w - std::polar(0.6 * reach, sr->theta_left)}, "half-line left", "#36c");
    }
  }
  for (std::size_t i = 0; i < values.size(); ++i) out += circle(c, values[i], "critical-value", "black", static_cast<int>(i));
  return out + "</svg>\n";
}

/// Both thimble families in the x-plane over the critical points.
inline std::string thimbles(const StokesResult& sr, double clip = 8.0) {
  std::vector<Complex> box;
  double scale = 0.0;
  for (const auto& p : sr.points) {
    box.push_back(p.x);
    scale = std::max(scale, std::abs(p.x));
  }
  // far ends of thimbles run off to 0 or infinity; keep the picture near the saddles
  auto clipped = [&](const Thimble& th) {
    std::vector<Complex> pts;
    for (auto z : th.path)
      if (std::abs(z) <= clip * scale) pts.push_back(z);
    return pts;
  };
  for (const auto* fam : {&sr.right, &sr.left})
    for (const auto& th : *fam)
      for (auto z : clipped(th)) box.push_back(z);
  const Canvas c(box);
  std::string out = header(c.size(), "thimbles");
  for (const auto& th : sr.right) out += polyline(c, clipped(th), "thimble right", "#c33");
  for (const auto& th : sr.left) out += polyline(c, clipped(th), "thimble left", "#36c");
  for (std::size_t i = 0; i < sr.points.size(); ++i) out += circle(c, sr.points[i].x, "critical-point", "black", static_cast<int>(i));
  return out + "</svg>\n";
}

}  // namespace stokes_euler::svg
