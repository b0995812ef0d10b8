#include "cavspec/specfun.hpp"

#include <cmath>
#include <functional>

#include "cavspec/errors.hpp"

namespace cavspec {

namespace {

constexpr double kSeriesSwitch = 1e-2;
constexpr double kResidualTarget = 1e-12;
constexpr int kMaxNewtonSteps = 50;

/// Bisection to a 1e-6 bracket followed by Newton refinement, with bisection
/// as the fallback whenever a Newton step leaves the current bracket.
ZeroResult find_zero(const std::function<double(double)>& f,
                     const std::function<double(double)>& fprime, double lo, double hi) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return {lo, 0.0, 0};
  if (fhi == 0.0) return {hi, 0.0, 0};
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NumericalError("zero finder: no sign change on the bracket [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]");
  }
  int iterations = 0;
  while (hi - lo > 1e-6) {
    ++iterations;
    const double mid = 0.5 * (lo + hi);
    const double fmid = f(mid);
    if (fmid == 0.0) return {mid, 0.0, iterations};
    if ((fmid > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fmid;
    } else {
      hi = mid;
    }
  }
  double x = 0.5 * (lo + hi);
  double fx = f(x);
  for (int step = 0; step < kMaxNewtonSteps && std::abs(fx) >= kResidualTarget; ++step) {
    ++iterations;
    const double slope = fprime(x);
    double next = x - fx / slope;
    if (!(slope != 0.0) || next <= lo || next >= hi) {
      next = 0.5 * (lo + hi);  // Newton left the bracket: bisect instead
    }
    const double fnext = f(next);
    if ((fnext > 0.0) == (flo > 0.0)) {
      lo = next;
      flo = fnext;
    } else {
      hi = next;
    }
    x = next;
    fx = fnext;
  }
  if (std::abs(fx) >= kResidualTarget) {
    throw NumericalError("zero finder: residual " + std::to_string(std::abs(fx)) +
                         " did not reach 1e-12 within the step cap");
  }
  return {x, std::abs(fx), iterations};
}

}  // namespace

namespace detail {

double psi1_series(double z) {
  const double z2 = z * z;
  return z2 * (1.0 / 3.0 + z2 * (-1.0 / 30.0 + z2 * (1.0 / 840.0 - z2 / 45360.0)));
}

double psi1_closed(double z) { return std::sin(z) / z - std::cos(z); }

double psi1_prime_series(double z) {
  const double z2 = z * z;
  return z * (2.0 / 3.0 + z2 * (-2.0 / 15.0 + z2 * (1.0 / 140.0 - z2 / 5670.0)));
}

double psi1_prime_closed(double z) {
  return std::cos(z) / z - std::sin(z) / (z * z) + std::sin(z);
}

double psi1_second(double z) {
  if (std::abs(z) < kSeriesSwitch) {
    const double z2 = z * z;
    return 2.0 / 3.0 + z2 * (-2.0 / 5.0 + z2 * (1.0 / 28.0 - z2 / 810.0));
  }
  const double z2 = z * z;
  return -std::sin(z) / z - 2.0 * std::cos(z) / z2 + 2.0 * std::sin(z) / (z2 * z) + std::cos(z);
}

}  // namespace detail

double psi1(double z) {
  return std::abs(z) < kSeriesSwitch ? detail::psi1_series(z) : detail::psi1_closed(z);
}

double psi1_prime(double z) {
  return std::abs(z) < kSeriesSwitch ? detail::psi1_prime_series(z) : detail::psi1_prime_closed(z);
}

ZeroResult find_a11_prime(double lo, double hi) {
  return find_zero([](double z) { return psi1_prime(z); },
                   [](double z) { return detail::psi1_second(z); }, lo, hi);
}

ZeroResult find_j0_zero1() {
  // J0' = -J1; the first J0 zero sits in (2, 3).
  return find_zero([](double z) { return std::cyl_bessel_j(0.0, z); },
                   [](double z) { return -std::cyl_bessel_j(1.0, z); }, 2.0, 3.0);
}

}  // namespace cavspec
