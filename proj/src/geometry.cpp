#include "cavspec/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace cavspec {

namespace {

double signed_area(const std::vector<Point2>& v) {
  double twice = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return 0.5 * twice;
}

bool ranges_overlap(double a0, double a1, double b0, double b1) {
  if (a0 > a1) std::swap(a0, a1);
  if (b0 > b1) std::swap(b0, b1);
  return a0 <= b1 && b0 <= a1;
}

// Intersection test for two axis-aligned segments, endpoints included.
bool segments_touch(const Point2& a0, const Point2& a1, const Point2& b0, const Point2& b1) {
  const bool a_horizontal = a0.y == a1.y;
  const bool b_horizontal = b0.y == b1.y;
  if (a_horizontal && b_horizontal) {
    return a0.y == b0.y && ranges_overlap(a0.x, a1.x, b0.x, b1.x);
  }
  if (!a_horizontal && !b_horizontal) {
    return a0.x == b0.x && ranges_overlap(a0.y, a1.y, b0.y, b1.y);
  }
  const auto& h0 = a_horizontal ? a0 : b0;
  const auto& h1 = a_horizontal ? a1 : b1;
  const auto& v0 = a_horizontal ? b0 : a0;
  const auto& v1 = a_horizontal ? b1 : a1;
  return ranges_overlap(h0.x, h1.x, v0.x, v0.x) && ranges_overlap(v0.y, v1.y, h0.y, h0.y);
}

}  // namespace

CuboidDims::CuboidDims(double a, double b, double c) {
  if (!(a > 0.0) || !(b > 0.0) || !(c > 0.0)) {
    throw std::invalid_argument("cuboid sides must be positive");
  }
  double s[3] = {a, b, c};
  std::sort(s, s + 3, std::greater<>());
  l1 = s[0];
  l2 = s[1];
  l3 = s[2];
}

DumbbellParams::DumbbellParams(double delta_val, double eta_val) : delta(delta_val), eta(eta_val) {
  if (!(eta > 0.0) || !(eta < delta) || !(delta < 1.0)) {
    throw std::invalid_argument("dumbbell parameters must satisfy 0 < eta < delta < 1");
  }
}

RectilinearPolygon::RectilinearPolygon(std::vector<Point2> vertices)
    : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 4) {
    throw std::invalid_argument("rectilinear polygon needs at least 4 vertices");
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = vertices_[i];
    const Point2& b = vertices_[(i + 1) % n];
    const bool horizontal = a.y == b.y && a.x != b.x;
    const bool vertical = a.x == b.x && a.y != b.y;
    if (!horizontal && !vertical) {
      throw std::invalid_argument("polygon edge " + std::to_string(i) +
                                  " is degenerate or not axis-aligned");
    }
    const Point2& c = vertices_[(i + 2) % n];
    if (horizontal == (b.y == c.y)) {
      throw std::invalid_argument("polygon edges " + std::to_string(i) + " and " +
                                  std::to_string(i + 1) + " do not alternate orientation");
    }
  }
  if (signed_area(vertices_) <= 0.0) {
    throw std::invalid_argument("polygon must be counterclockwise");
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent through the closing edge
      if (segments_touch(vertices_[i], vertices_[(i + 1) % n], vertices_[j],
                         vertices_[(j + 1) % n])) {
        throw std::invalid_argument("polygon is not simple: edges " + std::to_string(i) +
                                    " and " + std::to_string(j) + " intersect");
      }
    }
  }
}

ProductDomain::ProductDomain(RectilinearPolygon base_poly, double h)
    : base(std::move(base_poly)), height(h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("product domain height must be positive");
  }
}

ScheduleParams::ScheduleParams(double beta_val, double h_val, double delta_exponent_val)
    : beta(beta_val), h(h_val), delta_exponent(delta_exponent_val) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("schedule beta must be positive");
  }
  if (!(h > 0.0)) {
    throw std::invalid_argument("schedule h must be positive");
  }
  if (!(delta_exponent > 2.0 / beta)) {
    throw std::invalid_argument("schedule exponent p must exceed 2/beta");
  }
}

RectilinearPolygon build_dumbbell(const DumbbellParams& p) {
  const double d = p.delta;
  const double e = p.eta;
  return RectilinearPolygon({
      {-1.0, (e - 1.0) / 2.0},
      {0.0, (e - 1.0) / 2.0},
      {0.0, 0.0},
      {d, 0.0},
      {d, (e - d) / 2.0},
      {2.0 * d, (e - d) / 2.0},
      {2.0 * d, (e + d) / 2.0},
      {d, (e + d) / 2.0},
      {d, e},
      {0.0, e},
      {0.0, (e + 1.0) / 2.0},
      {-1.0, (e + 1.0) / 2.0},
  });
}

Rect dumbbell_channel(const DumbbellParams& p) { return Rect{0.0, 0.0, p.delta, p.eta}; }

double area(const RectilinearPolygon& poly) { return signed_area(poly.vertices()); }

double perimeter(const RectilinearPolygon& poly) {
  const auto& v = poly.vertices();
  double total = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    total += std::abs(b.x - a.x) + std::abs(b.y - a.y);
  }
  return total;
}

RectilinearPolygon scale(const RectilinearPolygon& poly, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("scale factor must be positive");
  }
  std::vector<Point2> scaled = poly.vertices();
  for (Point2& v : scaled) {
    v.x *= alpha;
    v.y *= alpha;
  }
  return RectilinearPolygon(std::move(scaled));
}

double product_surface_area(const ProductDomain& d) {
  return 2.0 * area(d.base) + d.height * perimeter(d.base);
}

double normalization_factor(const DumbbellParams& p, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("height must be positive");
  }
  const double a = h * (2.0 + 3.0 * p.delta - p.eta);
  const double b = 2.0 * (1.0 + p.delta * (p.delta + p.eta));
  return 1.0 / (std::sqrt(a * a + b) + a);
}

}  // namespace cavspec
