#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cavspec/geometry.hpp"

using namespace cavspec;

namespace {

RectilinearPolygon unit_square() {
  return RectilinearPolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

}  // namespace

TEST_CASE("cuboid dims sort descending regardless of input order") {
  const CuboidDims dims(1.0, 3.0, 2.0);
  CHECK(dims.l1 == 3.0);
  CHECK(dims.l2 == 2.0);
  CHECK(dims.l3 == 1.0);
  CHECK(dims.volume() == doctest::Approx(6.0));
  CHECK(dims.surface_area() == doctest::Approx(22.0));
  CHECK_THROWS_AS(CuboidDims(1.0, 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(CuboidDims(-1.0, 2.0, 1.0), std::invalid_argument);
}

TEST_CASE("dumbbell params require 0 < eta < delta < 1") {
  CHECK_NOTHROW(DumbbellParams(0.5, 0.25));
  CHECK_THROWS_AS(DumbbellParams(0.1, 0.1), std::invalid_argument);  // eta = delta
  CHECK_THROWS_AS(DumbbellParams(1.0, 0.5), std::invalid_argument);  // delta not < 1
  CHECK_THROWS_AS(DumbbellParams(0.5, -0.1), std::invalid_argument);
}

TEST_CASE("rectilinear polygon validation") {
  CHECK_NOTHROW(unit_square());
  // Clockwise loop: negative signed area.
  CHECK_THROWS_AS(RectilinearPolygon({{0, 0}, {0, 1}, {1, 1}, {1, 0}}), std::invalid_argument);
  // Diagonal edge.
  CHECK_THROWS_AS(RectilinearPolygon({{0, 0}, {1, 1}, {0, 1}, {0, 0.5}}), std::invalid_argument);
  // Too few vertices.
  CHECK_THROWS_AS(RectilinearPolygon({{0, 0}, {1, 0}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("build_dumbbell traces the documented 12-vertex loop") {
  const DumbbellParams p(0.5, 0.25);
  const RectilinearPolygon poly = build_dumbbell(p);
  REQUIRE(poly.size() == 12);
  // Fixed starting corner of the big square.
  CHECK(poly.vertices()[0].x == doctest::Approx(-1.0));
  CHECK(poly.vertices()[0].y == doctest::Approx((p.eta - 1.0) / 2.0));
  // Sum of the three rectangle areas 1 + delta*eta + delta^2.
  CHECK(area(poly) == doctest::Approx(1.375).epsilon(1e-13));
  CHECK(perimeter(poly) == doctest::Approx(6.5).epsilon(1e-13));
}

TEST_CASE("dumbbell area and perimeter match the closed forms") {
  for (double delta : {0.9, 0.5, 0.1, 0.01}) {
    for (double frac : {0.1, 0.5, 0.9}) {
      const DumbbellParams p(delta, delta * frac);
      const RectilinearPolygon poly = build_dumbbell(p);
      CHECK(area(poly) ==
            doctest::Approx(1.0 + p.delta * (p.delta + p.eta)).epsilon(1e-12));
      CHECK(perimeter(poly) ==
            doctest::Approx(2.0 * (2.0 + 3.0 * p.delta - p.eta)).epsilon(1e-12));
    }
  }
}

TEST_CASE("area and perimeter basics") {
  const RectilinearPolygon square = unit_square();
  CHECK(area(square) == doctest::Approx(1.0));
  CHECK(perimeter(square) == doctest::Approx(4.0));
}

TEST_CASE("scale is homogeneous of degree 1 in lengths") {
  const RectilinearPolygon square = unit_square();
  CHECK(area(scale(square, 2.0)) == doctest::Approx(4.0));
  const RectilinearPolygon same = scale(square, 1.0);
  for (std::size_t i = 0; i < square.size(); ++i) {
    CHECK(same.vertices()[i].x == square.vertices()[i].x);
    CHECK(same.vertices()[i].y == square.vertices()[i].y);
  }
  const DumbbellParams p(0.3, 0.2);
  const double L = normalization_factor(p, 5.0);
  CHECK(area(scale(build_dumbbell(p), L)) ==
        doctest::Approx(L * L * (1.0 + p.delta * (p.delta + p.eta))).epsilon(1e-12));
  CHECK_THROWS_AS(scale(square, 0.0), std::invalid_argument);
}

TEST_CASE("product surface area formula") {
  const ProductDomain cube(unit_square(), 1.0);
  CHECK(product_surface_area(cube) == doctest::Approx(6.0));
  const ProductDomain slab(build_dumbbell(DumbbellParams(0.5, 0.25)), 2.0);
  CHECK(product_surface_area(slab) == doctest::Approx(15.75).epsilon(1e-13));
  // h -> 0 leaves only the two base copies.
  const ProductDomain thin(unit_square(), 1e-13);
  CHECK(product_surface_area(thin) == doctest::Approx(2.0).epsilon(1e-11));
  CHECK_THROWS_AS(ProductDomain(unit_square(), 0.0), std::invalid_argument);
}

TEST_CASE("normalization factor puts the product surface area at exactly 1") {
  const DumbbellParams p(0.01, 1e-8);
  const double h = 10.0;
  const double L = normalization_factor(p, h);
  const ProductDomain domain(scale(build_dumbbell(p), L), h);
  CHECK(std::abs(product_surface_area(domain) - 1.0) < 1e-12);

  // Independent root: bisection on the quadratic B L^2 + 2 A L - 1 in L.
  const double A = h * (2.0 + 3.0 * p.delta - p.eta);
  const double B = 2.0 * (1.0 + p.delta * (p.delta + p.eta));
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (B * mid * mid + 2.0 * A * mid - 1.0 < 0.0 ? lo : hi) = mid;
  }
  CHECK(L == doctest::Approx(0.5 * (lo + hi)).epsilon(1e-12));
}

TEST_CASE("normalization factor asymptotics L ~ 1/(4h)") {
  const DumbbellParams p(0.01, 1e-8);
  const double h = 1e4;
  const double L = normalization_factor(p, h);
  CHECK(L * 4.0 * h == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("dumbbell channel rectangle") {
  const DumbbellParams p(0.25, 0.05);
  const Rect channel = dumbbell_channel(p);
  CHECK(channel.x0 == 0.0);
  CHECK(channel.y0 == 0.0);
  CHECK(channel.x1 == doctest::Approx(0.25));
  CHECK(channel.y1 == doctest::Approx(0.05));
  CHECK(channel.contains(0.1, 0.02));
  CHECK(!channel.contains(-0.1, 0.02));
}

TEST_CASE("schedule params enforce p > 2/beta") {
  CHECK_NOTHROW(ScheduleParams(1.0, 10.0, 3.0));
  CHECK_THROWS_AS(ScheduleParams(1.0, 10.0, 2.0), std::invalid_argument);   // p = 2/beta
  CHECK_THROWS_AS(ScheduleParams(0.5, 10.0, 3.0), std::invalid_argument);   // p < 2/beta = 4
  CHECK_THROWS_AS(ScheduleParams(-1.0, 10.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(ScheduleParams(1.0, 0.0, 3.0), std::invalid_argument);
}
