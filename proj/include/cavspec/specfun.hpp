#pragma once

namespace cavspec {

/// Riccati-Bessel function psi_1(z) = z*j_1(z) = sin(z)/z - cos(z).
/// Switches to a Taylor series below |z| = 1e-2 to avoid cancellation.
double psi1(double z);

/// Derivative psi_1'(z) = cos(z)/z - sin(z)/z^2 + sin(z), with the matching
/// series branch near zero.
double psi1_prime(double z);

struct ZeroResult {
  double value = 0.0;
  double residual = 0.0;
  int iterations = 0;
};

/// First positive zero of psi_1' (approx 2.7437), located by bisection on the
/// given bracket followed by Newton refinement to residual < 1e-12.
/// Throws NumericalError if psi_1' does not change sign on [lo, hi].
ZeroResult find_a11_prime(double lo = 2.0, double hi = 3.0);

/// First positive zero of the Bessel function J_0 (approx 2.4048), found the
/// same way on [2, 3].  Feeds the Faber-Krahn area bound used as a Dirichlet
/// floor when no FEM value is available.
ZeroResult find_j0_zero1();

namespace detail {
// Both branches of psi1/psi1_prime, exposed so tests can check they agree at
// the switchover.
double psi1_series(double z);
double psi1_closed(double z);
double psi1_prime_series(double z);
double psi1_prime_closed(double z);
double psi1_second(double z);
}  // namespace detail

}  // namespace cavspec
