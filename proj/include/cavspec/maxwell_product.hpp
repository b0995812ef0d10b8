#pragma once

#include <optional>

#include "cavspec/closed_form.hpp"
#include "cavspec/fem2d.hpp"
#include "cavspec/geometry.hpp"

namespace cavspec {

enum class DichotomyBranch { dirichlet, neumann, tie };

struct ProductEigenvalue {
  Eigenvalue value;
  DichotomyBranch branch = DichotomyBranch::tie;
};

/// lambda_1(omega x (0,h)) = min{mu_1^D(omega), mu_1^N(omega) + pi^2/h^2},
/// with the active branch reported.  Requires mu1D >= mu1N >= 0 and h > 0.
ProductEigenvalue product_lambda1(Eigenvalue mu1D, Eigenvalue mu1N, double h);

/// Closed-form data of the three-piece dumbbell trial function
///   u = c on the unit square, linear across the channel, -1/delta on the
///   small square, with c = (eta+2*delta)/(eta*delta+2) forcing zero mean.
/// rayleigh = grad_energy/mass is a rigorous upper bound for mu_1^N.
struct TrialFunctionReport {
  double c = 0.0;
  double grad_energy = 0.0;
  double mass = 0.0;
  double rayleigh = 0.0;
};

TrialFunctionReport trial_bound(const DumbbellParams& p);

/// Same quantities by composite Gauss-Legendre quadrature of the piecewise
/// trial function over the three rectangles; shares no formulas with
/// trial_bound and serves as its oracle.
TrialFunctionReport trial_bound_quadrature(const DumbbellParams& p, int panels_per_piece = 64);

/// Discrete Rayleigh quotient of the trial function interpolated onto the
/// mesh vertices with its discrete (mass-weighted) mean projected out.
/// Dominates neumann_eig1 on the same mesh by discrete min-max.  The mesh
/// must carry grid lines at x = 0 and x = delta; otherwise throws.
double trial_bound_discrete(const DumbbellParams& p, const TriMesh& mesh);

/// Power-law schedule that drives the dumbbell eigenvalue bound to zero:
/// delta = h^(-p), eta = delta^(3+beta).  Throws if delta >= 1.
DumbbellParams schedule(const ScheduleParams& s);

enum class Mu1nMethod { trial, fem };
enum class DirichletFloorSource { fem, area_bound };

/// One point of the lambda_1(Omega_h) -> 0 family: the normalized dumbbell
/// cylinder L*omega_{delta,eta} x (0,h) with unit surface area.
struct DumbbellRun {
  double h = 0.0;
  std::optional<double> beta;  // absent when delta, eta were forced directly
  DumbbellParams params;
  double scale_factor = 0.0;   // L
  TrialFunctionReport trial;   // mu1N_bound = trial.rayleigh
  std::optional<double> mu1n_fem;
  Mu1nMethod method = Mu1nMethod::trial;
  double mu1n_scaled = 0.0;    // mu_1^N(omega_{delta,eta}) / L^2, per method
  double lambda1_upper = 0.0;  // mu1n_scaled + pi^2/h^2

  /// Branch-inactivity check: a lower bound for the scaled Dirichlet
  /// eigenvalue mu_1^D(omega_{delta,eta})/L^2, from FEM when available and
  /// otherwise from the Faber-Krahn area bound mu_1^D >= pi*j01^2/area
  /// (standard, but an ingredient external to the construction; the JSON
  /// output labels the source).
  double mu1d_floor = 0.0;
  DirichletFloorSource mu1d_floor_source = DirichletFloorSource::area_bound;
  bool dirichlet_branch_inactive = false;

  double surface_residual = 0.0;  // | |dOmega_h| - 1 |
};

/// Evaluates one schedule point.  use_fem requests the FEM route for
/// mu_1^N; it silently falls back to the trial bound (method tag "trial")
/// when the graded mesh would blow the dof budget.
DumbbellRun dumbbell_run(const ScheduleParams& s, bool use_fem,
                         std::size_t dof_cap = kDefaultDofCap);

/// Same evaluation with delta, eta pinned directly instead of via the
/// schedule (L still chosen so the product has unit surface area).
DumbbellRun dumbbell_run_forced(const DumbbellParams& p, double h, bool use_fem,
                                std::size_t dof_cap = kDefaultDofCap);

}  // namespace cavspec
