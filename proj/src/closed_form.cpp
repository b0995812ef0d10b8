#include "cavspec/closed_form.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cavspec/specfun.hpp"

namespace cavspec {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kPiSq = kPi * kPi;
}  // namespace

double a11_prime() {
  static const double cached = find_a11_prime().value;
  return cached;
}

Eigenvalue cuboid_lambda1(const CuboidDims& c) {
  return {kPiSq * (1.0 / (c.l1 * c.l1) + 1.0 / (c.l2 * c.l2))};
}

Eigenvalue ball_lambda1_radius(double radius) {
  if (!(radius > 0.0)) {
    throw std::invalid_argument("ball radius must be positive");
  }
  const double a = a11_prime();
  return {(a / radius) * (a / radius)};
}

Eigenvalue ball_lambda1_surface(double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("surface area must be positive");
  }
  const double a = a11_prime();
  return {4.0 * kPi * a * a / k};
}

Eigenvalue ball_lambda1_volume(double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("volume must be positive");
  }
  const double a = a11_prime();
  return {a * a * std::cbrt(16.0 * kPiSq / (9.0 * k * k))};
}

Eigenvalue cube_lambda1_surface(double k) {
  if (!(k > 0.0)) {
    throw std::invalid_argument("surface area must be positive");
  }
  return {12.0 * kPiSq / k};
}

Eigenvalue scaling_law(Eigenvalue lambda, double alpha) {
  if (!(alpha > 0.0)) {
    throw std::invalid_argument("scaling factor must be positive");
  }
  return {lambda.value / (alpha * alpha)};
}

}  // namespace cavspec
