#pragma once

#include "arctic/curves.hpp"
#include "arctic/tangent.hpp"

#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace arctic {

struct Frame {
  double x_min = 0, x_max = 1, y_min = 0, y_max = 1;
};

inline Frame padded_window(const ImplicitCurve& c, double pad = 0.1) {
  double dx = (c.x_max - c.x_min) * pad, dy = (c.y_max - c.y_min) * pad;
  return {c.x_min - dx, c.x_max + dx, c.y_min - dy, c.y_max + dy};
}

namespace detail {

inline std::string fmt3(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  std::string s = buf;
  if (s == "-0.000") s = "0.000";
  return s;
}

// zero set of a quadratic on a grid, as segments (marching squares)
inline std::vector<std::array<XY, 2>> contour(const ImplicitCurve& c, const Frame& f, int cells) {
  std::vector<std::array<XY, 2>> segs;
  const double hx = (f.x_max - f.x_min) / cells, hy = (f.y_max - f.y_min) / cells;
  auto at = [&](int i, int j) { return c(f.x_min + i * hx, f.y_min + j * hy); };
  for (int i = 0; i < cells; ++i)
    for (int j = 0; j < cells; ++j) {
      double v[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
      XY corner[4] = {{f.x_min + i * hx, f.y_min + j * hy},
                      {f.x_min + (i + 1) * hx, f.y_min + j * hy},
                      {f.x_min + (i + 1) * hx, f.y_min + (j + 1) * hy},
                      {f.x_min + i * hx, f.y_min + (j + 1) * hy}};
      std::vector<XY> cut;
      for (int e = 0; e < 4; ++e) {
        double a = v[e], b = v[(e + 1) % 4];
        if ((a < 0) != (b < 0)) {
          double t = a / (a - b);
          const XY &p = corner[e], &q = corner[(e + 1) % 4];
          cut.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
        }
      }
      if (cut.size() == 2) segs.push_back({cut[0], cut[1]});
      if (cut.size() == 4) {
        segs.push_back({cut[0], cut[1]});
        segs.push_back({cut[2], cut[3]});
      }
    }
  return segs;
}

}  // namespace detail

// Deterministic SVG 1.1; frame mapped onto the 1000 x 1000 viewBox.
inline std::string emit_svg(const std::vector<TangentLine>& lines, const std::vector<XY>& env,
                            const ImplicitCurve* curve, const Frame& f) {
  if (!(f.x_max > f.x_min) || !(f.y_max > f.y_min)) throw domain_error("emit_svg: degenerate frame");
  if (lines.empty() && env.empty() && !curve) throw domain_error("emit_svg: nothing to draw");
  auto X = [&](double x) { return detail::fmt3((x - f.x_min) / (f.x_max - f.x_min) * 1000.0); };
  auto Y = [&](double y) { return detail::fmt3(1000.0 - (y - f.y_min) / (f.y_max - f.y_min) * 1000.0); };
  std::ostringstream o;
  o << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
    << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" viewBox=\"0 0 1000 1000\" width=\"1000\" height=\"1000\">\n"
    << "<defs><clipPath id=\"frame\"><rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\"/></clipPath></defs>\n"
    << "<rect x=\"0\" y=\"0\" width=\"1000\" height=\"1000\" fill=\"white\" stroke=\"black\"/>\n"
    << "<g clip-path=\"url(#frame)\">\n";
  if (!lines.empty()) {
    o << "<g stroke=\"#8899bb\" stroke-width=\"1\">\n";
    for (const TangentLine& l : lines)
      o << "<line x1=\"" << X(f.x_min) << "\" y1=\"" << Y(l.slope * f.x_min + l.intercept) << "\" x2=\"" << X(f.x_max)
        << "\" y2=\"" << Y(l.slope * f.x_max + l.intercept) << "\"/>\n";
    o << "</g>\n";
  }
  if (curve) {
    o << "<path fill=\"none\" stroke=\"#cc2222\" stroke-width=\"2\" d=\"";
    for (const auto& s : detail::contour(*curve, f, 240))
      o << "M" << X(s[0].x) << " " << Y(s[0].y) << "L" << X(s[1].x) << " " << Y(s[1].y);
    o << "\"/>\n";
  }
  if (!env.empty()) {
    o << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"2\" points=\"";
    for (size_t i = 0; i < env.size(); ++i) o << (i ? " " : "") << X(env[i].x) << "," << Y(env[i].y);
    o << "\"/>\n";
  }
  o << "</g>\n</svg>\n";
  return o.str();
}

}  // namespace arctic
