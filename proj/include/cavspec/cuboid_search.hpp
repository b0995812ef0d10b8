#pragma once

#include <functional>

#include "cavspec/closed_form.hpp"
#include "cavspec/geometry.hpp"

namespace cavspec {

/// Fixed surface area 2(l1 l2 + l1 l3 + l2 l3) = k.
struct PerimeterConstraint {
  explicit PerimeterConstraint(double surface);
  double k;
};

/// Largest admissible l3 under the constraint: sqrt(k/6), attained by the cube.
double l3_max(const PerimeterConstraint& c);

/// Bounds on l1 at fixed l3 that make the completed triple ordered l3 <= l2 <= l1.
double l1_lower_bound(double l3, const PerimeterConstraint& c);
double l1_upper_bound(double l3, const PerimeterConstraint& c);

/// A pair (l1, l3) inside the feasibility region of the perimeter-constrained
/// search.  Construction rejects infeasible pairs with a diagnostic naming the
/// violated bound.
class FeasiblePoint {
public:
  FeasiblePoint(double l1, double l3, PerimeterConstraint constraint);

  double l1() const { return l1_; }
  double l3() const { return l3_; }
  double k() const { return constraint_.k; }
  const PerimeterConstraint& constraint() const { return constraint_; }

private:
  double l1_;
  double l3_;
  PerimeterConstraint constraint_;
};

/// The unique l2 closing the surface constraint: (k/2 - l3 l1)/(l3 + l1).
double ell2_from_constraint(const FeasiblePoint& p);

/// The full triple (l1, l2, l3) for a feasible point.
CuboidDims completed_dims(const FeasiblePoint& p);

/// lambda_1 via the eliminated form pi^2 (1/l1^2 + (l3+l1)^2/(k/2 - l3 l1)^2);
/// agrees with cuboid_lambda1 of the completed triple.
Eigenvalue lambda1_constrained(const FeasiblePoint& p);

struct SequencePoint {
  FeasiblePoint point;
  Eigenvalue lambda1;
};

/// The minimizing-sequence point at given l3: l1 sits at its lower feasibility
/// bound (where l1 = l2); lambda_1 tends to 4 pi^2 / k as l3 -> 0+.
SequencePoint minimizing_sequence(const PerimeterConstraint& c, double l3);

struct GridInfimum {
  Eigenvalue value;
  double l1 = 0.0;
  double l2 = 0.0;
  double l3 = 0.0;
  double lower_bound = 0.0;  // 4 pi^2 / k, never attained
  int resolution = 0;
};

/// Visits every point of the search grid: l3 log-spaced over
/// [sqrt(k/6)*max(1e-3, 1/resolution), sqrt(k/6)], l1 linearly spaced within
/// its bounds, resolution+1 samples per axis.
void grid_scan(const PerimeterConstraint& c, int resolution,
               const std::function<void(double l1, double l2, double l3, double lambda1)>& visit);

/// Minimum of lambda1_constrained over the grid_scan grid.  Strictly above
/// 4 pi^2 / k; decreasing as resolution grows.  Ties broken by smallest l3.
GridInfimum grid_infimum(const PerimeterConstraint& c, int resolution);

struct FamilyPoint {
  CuboidDims dims;
  Eigenvalue lambda1;
};

/// Unit-volume cuboids (l^-1/2, l^-1/2, l): lambda_1 = 2 pi^2 l -> 0.
FamilyPoint volume_family_vanishing(double l);

/// Unit-volume cuboids (l^-2, l, l): lambda_1 = pi^2 (l^4 + 1/l^2) -> infinity.
FamilyPoint volume_family_blowup(double l);

/// Surface-k cuboids degenerating to a needle; for k = 2 the triple is
/// ((1-l^2)/(2l), l, l) with 0 < l <= 1/sqrt(3), rescaled for general k.
FamilyPoint perimeter_family_blowup(double l, double k);

}  // namespace cavspec
