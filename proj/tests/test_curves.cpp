#include "arctic/curves.hpp"

#include <catch_amalgamated.hpp>

#include <cmath>
#include <random>

using namespace arctic;
using Catch::Approx;

TEST_CASE("catalog examples") {
  auto cat = curve_catalog(1.0);
  REQUIRE(cat.size() == 6);
  CHECK(residual(cat.at(ModelId::Aztec), {0, 1 + 1 / std::sqrt(2.0)}) <= 1e-15);
  CHECK(cat.at(ModelId::Staircase)(2, 0) == 0);
  CHECK(cat.at(ModelId::Staircase)(0, 0) == 0);
  CHECK(residual(cat.at(ModelId::Aztec), {0, 1}) == Approx(0.5));
  CHECK(residual(ellipse_curve(1), {1, 2 * std::sqrt(2.0)}) <= 1e-12);
  for (const auto& [m, c] : cat) {
    bool nonzero = false;
    for (double v : c.c) nonzero = nonzero || v != 0;
    CHECK(nonzero);
    CHECK(c.x_min < c.x_max);
    CHECK(c.y_min < c.y_max);
  }
  CHECK_THROWS_AS(ellipse_curve(0), domain_error);
}

TEST_CASE("implicit polynomials match their written forms") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> d(-3, 3);
  for (int i = 0; i < 200; ++i) {
    double x = d(rng), y = d(rng);
    REQUIRE(circle_curve()(x, y) == Approx(x * x + (y - 1) * (y - 1) - 0.5).margin(1e-12));
    REQUIRE(parabola_curve()(x, y) == Approx(-8 * x + 4 * x * x + 8 * y - 4 * x * y + y * y).margin(1e-12));
    double w = 1 - x;
    REQUIRE(vsasm_curve()(x, y) == Approx(4 * w - 4 * w * w + 4 * y - 4 * y * y + 4 * w * y - 1).margin(1e-12));
    for (double xm : {0.5, 1.0, 2.0})
      REQUIRE(ellipse_curve(xm)(x, y) == Approx(xm * xm * y * y - 4 * (1 + xm) * x * (2 * xm - x)).margin(1e-11));
  }
}

TEST_CASE("VSASM parametric form") {
  XY a = vsasm_parametric(0), b = vsasm_parametric(1);
  CHECK(a.x == Approx(0.5).margin(1e-15));
  CHECK(a.y == Approx(0).margin(1e-15));
  CHECK(b.x == Approx(1).margin(1e-15));
  CHECK(b.y == Approx(0.5).margin(1e-15));
  CHECK_THROWS_AS(vsasm_parametric(1.01), domain_error);
  CHECK_THROWS_AS(vsasm_parametric(-0.01), domain_error);
}

TEST_CASE("parametric curves satisfy their implicit curves") {
  for (const auto& pc : parametric_catalog()) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) {
      double t = pc.t_min + (pc.t_max - pc.t_min) * (i + 0.5) / 1000;
      worst = std::max(worst, residual(pc.implicit, pc.eval(t)));
    }
    INFO(pc.name << " worst=" << worst);
    CHECK(worst <= 1e-12);
  }
  for (double xm : {0.5, 1.0, 2.0}) {
    double worst = 0;
    for (int i = 0; i < 1000; ++i) worst = std::max(worst, residual(ellipse_curve(xm), ellipse_parametric(xm, 2 * M_PI * i / 1000)));
    CHECK(worst <= 1e-12);
  }
}

TEST_CASE("the two staircase arcs share their end point") {
  XY a = staircase_parametric(1.5 + 1e-9), b = staircase_alt_parametric(1);
  CHECK(a.x == Approx(b.x).margin(1e-7));
  CHECK(a.y == Approx(b.y).margin(1e-7));
  CHECK(b.x == 1.5);
  CHECK(b.y == 1);
}

TEST_CASE("curve symmetries") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> d(-2, 2);
  for (int i = 0; i < 500; ++i) {
    double x = d(rng), y = d(rng);
    REQUIRE(circle_curve()(x, y) == Approx(circle_curve()(-x, y)).margin(1e-12));
    for (double xm : {0.5, 1.0, 2.0}) {
      auto e = ellipse_curve(xm);
      REQUIRE(e(x, y) == Approx(e(2 * xm - x, y)).margin(1e-11));
      REQUIRE(e(x, y) == Approx(e(x, -y)).margin(1e-11));
    }
  }
}

TEST_CASE("tangency points") {
  auto dy = tangency_points(ModelId::DyckHalfHex, 2.0);
  REQUIRE(dy[0].label == "B");
  CHECK(dy[0].p.x == Approx(3));
  CHECK(dy[0].p.y == Approx(3));
  auto az = tangency_points(ModelId::Aztec);
  CHECK(az[0].p.x == 0.5);
  CHECK(az[0].p.y == 1.5);
  auto st = tangency_points(ModelId::Staircase);
  CHECK(st[0].p.x == 0);
  CHECK(st[0].p.y == 0);
  CHECK(st[0].slope == 1);

  for (ModelId m : {ModelId::Aztec, ModelId::DyckHalfHex, ModelId::RedHalfHex, ModelId::Staircase,
                    ModelId::StaircaseAlt, ModelId::Vsasm})
    for (double xm : {0.5, 1.0, 2.0}) {
      ImplicitCurve c = curve_catalog(xm).at(m);
      for (const auto& t : tangency_points(m, xm)) {
        INFO(model_name(m) << " " << t.label << " x=" << xm);
        REQUIRE(residual(c, t.p) <= 1e-12);
        XY g = c.gradient(t.p.x, t.p.y);
        if (t.a != 0 || t.b != 0) {
          REQUIRE(std::abs(t.a * t.p.x + t.b * t.p.y + t.c) <= 1e-12);
          // tangent: the curve normal is parallel to the line normal
          REQUIRE(std::abs(g.x * t.b - g.y * t.a) <= 1e-12 * std::max(1.0, std::hypot(g.x, g.y)));
        }
        if (!std::isnan(t.slope)) REQUIRE(-g.x / g.y == Approx(t.slope).margin(1e-12));
      }
    }
}
