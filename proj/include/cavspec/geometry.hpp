#pragma once

#include <vector>

namespace cavspec {

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned rectangle [x0,x1] x [y0,y1]; marks the dumbbell channel for meshing.
struct Rect {
  double x0 = 0.0;
  double y0 = 0.0;
  double x1 = 0.0;
  double y1 = 0.0;

  bool contains(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

/// Side lengths of a rectangular parallelepiped, stored sorted l1 >= l2 >= l3 > 0.
/// The constructor sorts, so callers may pass the sides in any order.
struct CuboidDims {
  CuboidDims(double a, double b, double c);

  double l1;
  double l2;
  double l3;

  double volume() const { return l1 * l2 * l3; }
  double surface_area() const { return 2.0 * (l1 * l2 + l1 * l3 + l2 * l3); }
};

/// Channel length delta and width eta of the planar dumbbell, 0 < eta < delta < 1.
struct DumbbellParams {
  DumbbellParams(double delta_val, double eta_val);

  double delta;
  double eta;
};

/// Closed, simple, counterclockwise vertex loop with every edge axis-aligned.
/// Consecutive edges alternate between horizontal and vertical.  Validated on
/// construction; instances are immutable.
class RectilinearPolygon {
public:
  explicit RectilinearPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

private:
  std::vector<Point2> vertices_;
};

/// Cylinder base x (0, height) over a planar cross-section.
struct ProductDomain {
  RectilinearPolygon base;
  double height;

  ProductDomain(RectilinearPolygon base_poly, double h);
};

/// Power-law schedule parameters: delta(h) = h^-p with p > 2/beta, eta = delta^(3+beta).
struct ScheduleParams {
  ScheduleParams(double beta_val, double h_val, double delta_exponent_val);

  double beta;
  double h;
  double delta_exponent;
};

/// The 12-vertex dumbbell boundary: unit square, channel of size delta x eta,
/// small square of side delta.  Starts at the square's bottom-left corner
/// (-1, (eta-1)/2) and runs counterclockwise.
RectilinearPolygon build_dumbbell(const DumbbellParams& p);

/// Channel rectangle [0,delta] x [0,eta] of the dumbbell built by build_dumbbell.
Rect dumbbell_channel(const DumbbellParams& p);

/// Shoelace area; positive by the orientation invariant.
double area(const RectilinearPolygon& poly);

/// Sum of edge lengths.
double perimeter(const RectilinearPolygon& poly);

RectilinearPolygon scale(const RectilinearPolygon& poly, double alpha);

/// 2*area(base) + height*perimeter(base).
double product_surface_area(const ProductDomain& d);

/// The factor L with surface area of L*dumbbell(p) x (0,h) equal to 1,
/// computed via the rationalized quadratic root 1/(sqrt(A^2+B)+A).
double normalization_factor(const DumbbellParams& p, double h);

}  // namespace cavspec
