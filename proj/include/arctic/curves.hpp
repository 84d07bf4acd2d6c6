#pragma once

#include "arctic/kernel.hpp"
#include "arctic/models.hpp"

#include <array>
#include <cmath>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace arctic {

struct XY {
  double x = 0, y = 0;
};

// P(x, y) = c[0] + c[1] x + c[2] y + c[3] x^2 + c[4] x y + c[5] y^2
struct ImplicitCurve {
  std::string name;
  std::array<double, 6> c{};
  double x_min = 0, x_max = 0, y_min = 0, y_max = 0;

  double operator()(double x, double y) const {
    return c[0] + c[1] * x + c[2] * y + c[3] * x * x + c[4] * x * y + c[5] * y * y;
  }
  XY gradient(double x, double y) const {
    return {c[1] + 2 * c[3] * x + c[4] * y, c[2] + c[4] * x + 2 * c[5] * y};
  }
  bool in_window(double x, double y) const { return x >= x_min && x <= x_max && y >= y_min && y <= y_max; }
};

inline double residual(const ImplicitCurve& k, XY p) {
  XY g = k.gradient(p.x, p.y);
  return std::abs(k(p.x, p.y)) / std::max(std::hypot(g.x, g.y), 1.0);
}

inline ImplicitCurve circle_curve() {
  // x^2 + (y - 1)^2 - 1/2
  return {"circle", {0.5, 0, -2, 1, 0, 1}, -1, 1, 0, 2};
}

// in (u, v): x^2 v^2 - 4 (1 + x) u (2x - u), x the tiling parameter
inline ImplicitCurve ellipse_curve(double x) {
  if (!(x > 0)) throw domain_error("ellipse_curve: need x > 0");
  return {"ellipse", {0, -8 * x * (1 + x), 0, 4 * (1 + x), 0, x * x}, 0, 2 * x, 0, 2 + 2 * x};
}

inline ImplicitCurve parabola_curve() {
  // -8x + 4x^2 + 8y - 4xy + y^2
  return {"parabola", {0, -8, 8, 4, -4, 1}, 0, 2, 0, 2};
}

inline ImplicitCurve vsasm_curve() {
  // 4(1 - x) - 4(1 - x)^2 + 4y - 4y^2 + 4(1 - x)y - 1, expanded
  return {"vsasm", {-1, 4, 8, -4, -4, -4}, 0, 1, 0, 1};
}

inline std::map<ModelId, ImplicitCurve> curve_catalog(double x_model = 1.0) {
  return {{ModelId::Aztec, circle_curve()},
          {ModelId::DyckHalfHex, ellipse_curve(x_model)},
          {ModelId::RedHalfHex, ellipse_curve(x_model)},
          {ModelId::Staircase, parabola_curve()},
          {ModelId::StaircaseAlt, parabola_curve()},
          {ModelId::Vsasm, vsasm_curve()}};
}

// ---------------------------------------------------------------- parametric forms

inline XY vsasm_parametric(double t) {
  if (!(t >= 0 && t <= 1)) throw domain_error("vsasm_parametric: need t in [0, 1]");
  double s = std::sqrt(t * t - t + 1);
  return {(1 + t) / (2 * s), (-2 + t + 2 * s) / (2 * s)};
}

// NE arc of the circle traced by the Aztec family, z > 1
inline XY aztec_parametric(double z) {
  if (!(z > 1)) throw domain_error("aztec_parametric: need z > 1");
  double d = 2 * z * (z - 1) + 1;
  return {0.5 - (z - 1) * (2 * z - 1) / d, 1.5 + (z - 1) / d};
}

// staircase arc, xi in (3/2, 2), with z the matching target
inline XY staircase_parametric(double xi) {
  if (!(xi > 1.5 && xi < 2)) throw domain_error("staircase_parametric: need xi in (3/2, 2)");
  double z = 2 * (1 - xi) * (1 - xi) / (2 - xi);
  double x = 8 * xi - 2 * xi * xi - 6;
  return {x, z - (z - 1) * x / xi};
}

inline XY staircase_alt_parametric(double z) {
  if (!(z >= 1 && z <= 2)) throw domain_error("staircase_alt_parametric: need z in [1, 2]");
  return {2 - z * z / 2, z * (2 - z)};
}

// full ellipse in (u, v), theta in [0, 2 pi]
inline XY ellipse_parametric(double x, double theta) {
  if (!(x > 0)) throw domain_error("ellipse_parametric: need x > 0");
  return {x + x * std::cos(theta), 2 * std::sqrt(1 + x) * std::sin(theta)};
}

struct ParametricCurve {
  std::string name;
  double t_min = 0, t_max = 1;
  ImplicitCurve implicit;
  XY (*eval)(double) = nullptr;
};

inline std::vector<ParametricCurve> parametric_catalog() {
  return {{"vsasm", 0, 1, vsasm_curve(), &vsasm_parametric},
          {"circle", 1, 50, circle_curve(), &aztec_parametric},
          {"parabola-staircase", 1.5, 2, parabola_curve(), &staircase_parametric},
          {"parabola-staircase-alt", 1, 2, parabola_curve(), &staircase_alt_parametric}};
}

// ---------------------------------------------------------------- tangency points

struct TangencyPoint {
  std::string label;
  XY p;
  // boundary line a x + b y + c = 0 touched at p (all zero when only the point is known)
  double a = 0, b = 0, c = 0;
  double slope = std::nan("");  // expected tangent slope of the curve at p, when stated
};

inline std::vector<TangencyPoint> tangency_points(ModelId m, double x_model = 1.0) {
  switch (m) {
    case ModelId::Aztec:
      // inscribed in the square |x| + |y - 1| = 1
      return {{"NE", {0.5, 1.5}, 1, 1, -2},
              {"NW", {-0.5, 1.5}, -1, 1, -2},
              {"SE", {0.5, 0.5}, 1, -1, 0},
              {"SW", {-0.5, 0.5}, -1, -1, 0}};
    case ModelId::DyckHalfHex:
    case ModelId::RedHalfHex: {
      const double x = x_model;
      if (!(x > 0)) throw domain_error("tangency_points: need x > 0");
      double v = 4 * (1 + x) / (2 + x);
      return {{"B", {2 * x * (1 + x) / (2 + x), v}, 1, 1, -(2 + 2 * x)},  // v = 2 + 2x - u
              {"A", {2 * x / (2 + x), v}, -1, 1, -2}};                      // v = u + 2
    }
    case ModelId::Staircase:
    case ModelId::StaircaseAlt: {
      TangencyPoint o{"origin", {0, 0}};
      o.slope = 1;
      return {o, {"right", {2, 0}, 1, 0, -2}};  // vertical there: touches x = 2
    }
    case ModelId::Vsasm:
      return {{"bottom", {0.5, 0}, 0, 1, 0}, {"right", {1, 0.5}, 1, 0, -1}};
  }
  throw domain_error("tangency_points: unknown model");
}

}  // namespace arctic
