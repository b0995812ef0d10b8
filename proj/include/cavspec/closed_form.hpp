#pragma once

#include "cavspec/geometry.hpp"

namespace cavspec {

/// First eigenvalue of the cavity problem on some domain.  Positive for every
/// domain this toolkit produces (connected boundary throughout).
struct Eigenvalue {
  double value = 0.0;
};

/// Cached first positive zero of psi_1', computed once via specfun.
double a11_prime();

/// lambda_1 = pi^2 (1/l1^2 + 1/l2^2).  The shortest side does not enter.
Eigenvalue cuboid_lambda1(const CuboidDims& c);

/// Ball of radius R: lambda_1 = (a'_{1,1}/R)^2.
Eigenvalue ball_lambda1_radius(double radius);

/// Ball of surface area k: lambda_1 = 4 pi (a'_{1,1})^2 / k.
Eigenvalue ball_lambda1_surface(double k);

/// Ball of volume k: lambda_1 = (a'_{1,1})^2 (16 pi^2 / (9 k^2))^(1/3).
Eigenvalue ball_lambda1_volume(double k);

/// Cube of surface area k: lambda_1 = 12 pi^2 / k.
Eigenvalue cube_lambda1_surface(double k);

/// lambda_1 of the domain scaled by alpha: lambda / alpha^2.
Eigenvalue scaling_law(Eigenvalue lambda, double alpha);

}  // namespace cavspec
