#include "cavspec/maxwell_product.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "cavspec/specfun.hpp"

namespace cavspec {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;
constexpr double kFemTargetH = 1.0 / 64.0;

double j0_zero1() {
  static const double cached = find_j0_zero1().value;
  return cached;
}

// 8-point Gauss-Legendre nodes/weights on [-1, 1]; exact through degree 15,
// far beyond the quadratic integrands here.
constexpr double kGaussNodes[8] = {
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr double kGaussWeights[8] = {
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

template <typename F>
double integrate(F&& f, double a, double b, int panels) {
  double total = 0.0;
  const double width = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double mid = a + (p + 0.5) * width;
    double panel = 0.0;
    for (int g = 0; g < 8; ++g) {
      panel += kGaussWeights[g] * f(mid + 0.5 * width * kGaussNodes[g]);
    }
    total += 0.5 * width * panel;
  }
  return total;
}

}  // namespace

ProductEigenvalue product_lambda1(Eigenvalue mu1D, Eigenvalue mu1N, double h) {
  if (!(h > 0.0)) {
    throw std::invalid_argument("product height must be positive");
  }
  if (!(mu1N.value >= 0.0) || !(mu1D.value >= mu1N.value)) {
    throw std::invalid_argument("product_lambda1 requires mu1D >= mu1N >= 0");
  }
  const double dirichlet_branch = mu1D.value;
  const double neumann_branch = mu1N.value + kPiSq / (h * h);
  ProductEigenvalue out;
  out.value = {std::min(dirichlet_branch, neumann_branch)};
  if (dirichlet_branch < neumann_branch) {
    out.branch = DichotomyBranch::dirichlet;
  } else if (neumann_branch < dirichlet_branch) {
    out.branch = DichotomyBranch::neumann;
  } else {
    out.branch = DichotomyBranch::tie;
  }
  return out;
}

TrialFunctionReport trial_bound(const DumbbellParams& p) {
  const double d = p.delta;
  const double e = p.eta;
  TrialFunctionReport report;
  report.c = (e + 2.0 * d) / (e * d + 2.0);
  const double slope_sum = 1.0 / d + report.c;
  report.grad_energy = (e / d) * slope_sum * slope_sum;
  report.mass =
      report.c * report.c + 1.0 +
      (e / (3.0 * d)) * (1.0 - report.c * d + report.c * report.c * d * d);
  report.rayleigh = report.grad_energy / report.mass;
  return report;
}

TrialFunctionReport trial_bound_quadrature(const DumbbellParams& p, int panels_per_piece) {
  if (panels_per_piece < 1) {
    throw std::invalid_argument("quadrature needs at least one panel per piece");
  }
  const double d = p.delta;
  const double e = p.eta;
  const double c = (e + 2.0 * d) / (e * d + 2.0);
  const double channel_slope = -(1.0 / d + c) / d;
  const auto u_channel = [&](double x) { return c + channel_slope * x; };

  // The three rectangles: G (height 1), the channel (height eta), G_delta
  // (height delta); u depends on x only, so each 2D integral is the height
  // times a 1D quadrature.
  TrialFunctionReport report;
  report.c = c;
  report.grad_energy =
      1.0 * integrate([](double) { return 0.0; }, -1.0, 0.0, panels_per_piece) +
      e * integrate([&](double) { return channel_slope * channel_slope; }, 0.0, d,
                    panels_per_piece) +
      d * integrate([](double) { return 0.0; }, d, 2.0 * d, panels_per_piece);
  report.mass =
      1.0 * integrate([&](double) { return c * c; }, -1.0, 0.0, panels_per_piece) +
      e * integrate([&](double x) { return u_channel(x) * u_channel(x); }, 0.0, d,
                    panels_per_piece) +
      d * integrate([&](double) { return 1.0 / (d * d); }, d, 2.0 * d, panels_per_piece);
  report.rayleigh = report.grad_energy / report.mass;
  return report;
}

double trial_bound_discrete(const DumbbellParams& p, const TriMesh& mesh) {
  const auto aligned = [&](double coord) {
    for (double x : mesh.grid_x) {
      if (std::abs(x - coord) <= 1e-12) return true;
    }
    return false;
  };
  if (!aligned(0.0) || !aligned(p.delta)) {
    throw std::invalid_argument(
        "mesh is not aligned to the trial function breakpoints x = 0 and x = delta");
  }

  const double c = (p.eta + 2.0 * p.delta) / (p.eta * p.delta + 2.0);
  const double slope = -(1.0 / p.delta + c) / p.delta;
  Eigen::VectorXd u(mesh.dof_count());
  for (int v = 0; v < mesh.dof_count(); ++v) {
    const double x = mesh.vertices[static_cast<std::size_t>(v)].x;
    if (x <= 0.0) {
      u(v) = c;
    } else if (x >= p.delta) {
      u(v) = -1.0 / p.delta;
    } else {
      u(v) = c + slope * x;
    }
  }

  const AssembledOperators ops = assemble(mesh);
  const Eigen::VectorXd weights = ops.mass.mat * Eigen::VectorXd::Ones(mesh.dof_count());
  u.array() -= weights.dot(u) / weights.sum();  // discrete mean-zero projection
  const double energy = u.dot(ops.stiffness.mat * u);
  const double mass = u.dot(ops.mass.mat * u);
  if (!(mass > 0.0)) {
    throw NumericalError("trial function vanished after mean projection");
  }
  return energy / mass;
}

DumbbellParams schedule(const ScheduleParams& s) {
  const double delta = std::pow(s.h, -s.delta_exponent);
  if (!(delta < 1.0)) {
    throw std::invalid_argument("h too small for the schedule: delta = h^-p >= 1");
  }
  const double eta = std::pow(delta, 3.0 + s.beta);
  return DumbbellParams(delta, eta);
}

namespace {

DumbbellRun evaluate_run(const DumbbellParams& p, double h, std::optional<double> beta,
                         bool use_fem, std::size_t dof_cap) {
  const double big_l = normalization_factor(p, h);
  const TrialFunctionReport trial = trial_bound(p);

  std::optional<double> mu1n_fem;
  double mu1d_floor = 0.0;
  DirichletFloorSource floor_source = DirichletFloorSource::area_bound;
  if (use_fem) {
    try {
      const RectilinearPolygon poly = build_dumbbell(p);
      const Rect channel = dumbbell_channel(p);
      const TriMesh mesh = mesh_rectilinear(poly, kFemTargetH, 2, &channel, dof_cap);
      mu1n_fem = neumann_eig1(mesh).eigenvalues.front();
      mu1d_floor = dirichlet_eig1(mesh).eigenvalues.front() / (big_l * big_l);
      floor_source = DirichletFloorSource::fem;
    } catch (const DofBudgetError&) {
      mu1n_fem.reset();  // fall back to the trial bound below
    }
  }

  const Mu1nMethod method = mu1n_fem ? Mu1nMethod::fem : Mu1nMethod::trial;
  const double mu1n = mu1n_fem ? *mu1n_fem : trial.rayleigh;
  const double mu1n_scaled = mu1n / (big_l * big_l);
  const double lambda1_upper = mu1n_scaled + kPiSq / (h * h);

  if (floor_source == DirichletFloorSource::area_bound) {
    const double base_area = 1.0 + p.delta * (p.delta + p.eta);
    const double j0 = j0_zero1();
    mu1d_floor = std::numbers::pi * j0 * j0 / (base_area * big_l * big_l);
  }

  const RectilinearPolygon poly = build_dumbbell(p);
  const double surface =
      2.0 * big_l * big_l * area(poly) + h * big_l * perimeter(poly);

  return DumbbellRun{h,
                     beta,
                     p,
                     big_l,
                     trial,
                     mu1n_fem,
                     method,
                     mu1n_scaled,
                     lambda1_upper,
                     mu1d_floor,
                     floor_source,
                     mu1d_floor >= lambda1_upper,
                     std::abs(surface - 1.0)};
}

}  // namespace

DumbbellRun dumbbell_run(const ScheduleParams& s, bool use_fem, std::size_t dof_cap) {
  return evaluate_run(schedule(s), s.h, s.beta, use_fem, dof_cap);
}

DumbbellRun dumbbell_run_forced(const DumbbellParams& p, double h, bool use_fem,
                                std::size_t dof_cap) {
  return evaluate_run(p, h, std::nullopt, use_fem, dof_cap);
}

}  // namespace cavspec
