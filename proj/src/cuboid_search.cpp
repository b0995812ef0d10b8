#include "cavspec/cuboid_search.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cavspec {

namespace {
constexpr double kPiSq = std::numbers::pi * std::numbers::pi;
}

PerimeterConstraint::PerimeterConstraint(double surface) : k(surface) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("surface area k must be positive");
  }
}

double l3_max(const PerimeterConstraint& c) { return std::sqrt(c.k / 6.0); }

double l1_lower_bound(double l3, const PerimeterConstraint& c) {
  return std::sqrt(l3 * l3 + c.k / 2.0) - l3;
}

double l1_upper_bound(double l3, const PerimeterConstraint& c) {
  return (c.k / 2.0 - l3 * l3) / (2.0 * l3);
}

FeasiblePoint::FeasiblePoint(double l1, double l3, PerimeterConstraint constraint)
    : l1_(l1), l3_(l3), constraint_(constraint) {
  if (!(l3 > 0.0) || l3 > l3_max(constraint_)) {
    throw std::invalid_argument("l3 = " + std::to_string(l3) +
                                " violates 0 < l3 <= sqrt(k/6) = " +
                                std::to_string(l3_max(constraint_)));
  }
  // At the cube corner l3 = sqrt(k/6) the two bounds coincide and their
  // floating-point images can invert by a few ulps; the slack keeps exact
  // boundary points constructible without admitting anything materially
  // infeasible.
  const double slack = 8.0 * std::numeric_limits<double>::epsilon();
  if (l1 < l1_lower_bound(l3, constraint_) * (1.0 - slack)) {
    throw std::invalid_argument("l1 = " + std::to_string(l1) +
                                " is below the lower feasibility bound sqrt(l3^2 + k/2) - l3 = " +
                                std::to_string(l1_lower_bound(l3, constraint_)));
  }
  if (l1 > l1_upper_bound(l3, constraint_) * (1.0 + slack)) {
    throw std::invalid_argument("l1 = " + std::to_string(l1) +
                                " is above the upper feasibility bound (k/2 - l3^2)/(2 l3) = " +
                                std::to_string(l1_upper_bound(l3, constraint_)));
  }
}

double ell2_from_constraint(const FeasiblePoint& p) {
  return (p.k() / 2.0 - p.l3() * p.l1()) / (p.l3() + p.l1());
}

CuboidDims completed_dims(const FeasiblePoint& p) {
  return CuboidDims(p.l1(), ell2_from_constraint(p), p.l3());
}

Eigenvalue lambda1_constrained(const FeasiblePoint& p) {
  const double denom = p.k() / 2.0 - p.l3() * p.l1();
  const double ratio = (p.l3() + p.l1()) / denom;
  return {kPiSq * (1.0 / (p.l1() * p.l1()) + ratio * ratio)};
}

SequencePoint minimizing_sequence(const PerimeterConstraint& c, double l3) {
  if (!(l3 > 0.0) || l3 > l3_max(c)) {
    throw std::invalid_argument("minimizing sequence needs 0 < l3 <= sqrt(k/6)");
  }
  FeasiblePoint p(l1_lower_bound(l3, c), l3, c);
  return {p, lambda1_constrained(p)};
}

void grid_scan(const PerimeterConstraint& c, int resolution,
               const std::function<void(double, double, double, double)>& visit) {
  if (resolution < 10) {
    throw std::invalid_argument("grid resolution must be at least 10");
  }
  const double top = l3_max(c);
  // The scan floor tracks the resolution until it hits the precision-driven
  // cutoff at 1e-3 * sqrt(k/6); finer grids then only subdivide.
  const double floor = top * std::max(1e-3, 1.0 / resolution);
  const double log_step = std::log(top / floor) / resolution;
  for (int i = 0; i <= resolution; ++i) {
    const double l3 = std::min(top, floor * std::exp(i * log_step));
    const double lo = l1_lower_bound(l3, c);
    // max() guards the cube corner, where rounding can put the computed upper
    // bound a few ulps below the lower one and std::clamp would see an
    // inverted interval.
    const double hi = std::max(lo, l1_upper_bound(l3, c));
    for (int j = 0; j <= resolution; ++j) {
      const double l1 =
          std::clamp(lo + (hi - lo) * (static_cast<double>(j) / resolution), lo, hi);
      FeasiblePoint p(l1, l3, c);
      visit(l1, ell2_from_constraint(p), l3, lambda1_constrained(p).value);
    }
  }
}

GridInfimum grid_infimum(const PerimeterConstraint& c, int resolution) {
  GridInfimum best;
  best.value = {std::numeric_limits<double>::infinity()};
  best.lower_bound = 4.0 * kPiSq / c.k;
  best.resolution = resolution;
  grid_scan(c, resolution, [&](double l1, double l2, double l3, double lambda1) {
    const bool better = lambda1 < best.value.value ||
                        (lambda1 == best.value.value &&
                         (l3 < best.l3 || (l3 == best.l3 && l1 < best.l1)));
    if (better) {
      best.value = {lambda1};
      best.l1 = l1;
      best.l2 = l2;
      best.l3 = l3;
    }
  });
  return best;
}

FamilyPoint volume_family_vanishing(double l) {
  if (!(l > 0.0) || l > 1.0) {
    throw std::invalid_argument("family parameter l must lie in (0, 1]");
  }
  const double side = 1.0 / std::sqrt(l);
  CuboidDims dims(side, side, l);
  return {dims, cuboid_lambda1(dims)};
}

FamilyPoint volume_family_blowup(double l) {
  if (!(l > 0.0) || l > 1.0) {
    throw std::invalid_argument("family parameter l must lie in (0, 1]");
  }
  CuboidDims dims(1.0 / (l * l), l, l);
  return {dims, cuboid_lambda1(dims)};
}

FamilyPoint perimeter_family_blowup(double l, double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("surface area k must be positive");
  }
  if (!(l > 0.0) || l > 1.0 / std::sqrt(3.0)) {
    throw std::invalid_argument("family parameter l must lie in (0, 1/sqrt(3)]");
  }
  // The family is parameterized at k = 2; other k are the same shapes
  // rescaled by sqrt(k/2), which maps surface 2 to surface k.
  const double alpha = std::sqrt(k / 2.0);
  CuboidDims dims(alpha * (1.0 - l * l) / (2.0 * l), alpha * l, alpha * l);
  return {dims, cuboid_lambda1(dims)};
}

}  // namespace cavspec
