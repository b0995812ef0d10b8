#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavspec/cli.hpp"
#include "cavspec/closed_form.hpp"
#include "cavspec/cuboid_search.hpp"
#include "cavspec/errors.hpp"
#include "cavspec/fem2d.hpp"
#include "cavspec/geometry.hpp"
#include "cavspec/maxwell_product.hpp"
#include "cavspec/specfun.hpp"

namespace cavspec {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CheckFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void require(bool condition, const std::string& message) {
  if (!condition) throw CheckFailure(message);
}

double rel_diff(double a, double b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

DumbbellParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> delta_dist(0.02, 0.9);
  std::uniform_real_distribution<double> frac_dist(0.01, 0.95);
  const double delta = delta_dist(rng);
  return DumbbellParams(delta, delta * frac_dist(rng));
}

TriMesh square_mesh(double target_h) {
  const RectilinearPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return mesh_rectilinear(square, target_h);
}

TriMesh dumbbell_mesh(const DumbbellParams& p, double target_h, int layers) {
  const Rect channel = dumbbell_channel(p);
  return mesh_rectilinear(build_dumbbell(p), target_h, layers, &channel);
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---- geometry ----

std::string check_dumbbell_closed_forms(std::mt19937_64& rng) {
  double worst_area = 0.0;
  double worst_perimeter = 0.0;
  for (int i = 0; i < 25; ++i) {
    const DumbbellParams p = random_params(rng);
    const RectilinearPolygon poly = build_dumbbell(p);
    const double area_residual = std::abs(area(poly) - (1.0 + p.delta * (p.delta + p.eta)));
    const double perim_residual =
        std::abs(perimeter(poly) - 2.0 * (2.0 + 3.0 * p.delta - p.eta));
    worst_area = std::max(worst_area, area_residual);
    worst_perimeter = std::max(worst_perimeter, perim_residual);
  }
  require(worst_area < 1e-12, "area residual " + fmt(worst_area) + " exceeds 1e-12");
  require(worst_perimeter < 1e-12,
          "perimeter residual " + fmt(worst_perimeter) + " exceeds 1e-12");
  return "25 samples; worst residuals area " + fmt(worst_area) + ", perimeter " +
         fmt(worst_perimeter);
}

std::string check_scale_homogeneity(std::mt19937_64& rng) {
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const RectilinearPolygon poly = build_dumbbell(random_params(rng));
    for (double alpha : {0.5, 2.0, 10.0}) {
      const RectilinearPolygon scaled = scale(poly, alpha);
      worst = std::max(worst, rel_diff(area(scaled), alpha * alpha * area(poly)));
      worst = std::max(worst, rel_diff(perimeter(scaled), alpha * perimeter(poly)));
    }
  }
  require(worst < 1e-12, "homogeneity residual " + fmt(worst) + " exceeds 1e-12");
  return "30 scalings; worst relative residual " + fmt(worst);
}

std::string check_normalization_residual(std::mt19937_64&) {
  double worst = 0.0;
  for (double delta : {0.05, 0.1, 0.25}) {
    for (double eta : {delta / 10.0, delta / 2.0}) {
      for (double h : {1.0, 10.0, 1000.0}) {
        const DumbbellParams p(delta, eta);
        const double big_l = normalization_factor(p, h);
        const RectilinearPolygon poly = build_dumbbell(p);
        const double surface =
            2.0 * big_l * big_l * area(poly) + h * big_l * perimeter(poly);
        worst = std::max(worst, std::abs(surface - 1.0));
      }
    }
  }
  require(worst < 1e-12, "surface residual " + fmt(worst) + " exceeds 1e-12");
  return "18 (delta, eta, h) combinations; worst residual " + fmt(worst);
}

std::string check_polygon_validity(std::mt19937_64& rng) {
  for (int i = 0; i < 25; ++i) {
    const RectilinearPolygon poly = build_dumbbell(random_params(rng));
    require(area(poly) > 0.0, "dumbbell polygon has nonpositive signed area");
  }
  bool rejected = false;
  try {
    const RectilinearPolygon clockwise({{0, 0}, {0, 1}, {1, 1}, {1, 0}});
    (void)clockwise;
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  require(rejected, "clockwise polygon was not rejected");
  return "25 random dumbbells simple and counterclockwise; clockwise loop rejected";
}

// ---- specfun ----

std::string check_zero_bracket_invariance(std::mt19937_64&) {
  const double wide = find_a11_prime(2.0, 3.0).value;
  const double narrow = find_a11_prime(2.5, 2.9).value;
  require(std::abs(wide - narrow) < 1e-12,
          "bracket refinement moved the zero by " + fmt(std::abs(wide - narrow)));
  return "a'_{1,1} = " + fmt(wide) + " from both brackets";
}

std::string check_series_switchover(std::mt19937_64&) {
  double worst = 0.0;
  for (double z : {1e-2, -1e-2}) {
    worst = std::max(worst, std::abs(detail::psi1_series(z) - detail::psi1_closed(z)));
    worst = std::max(worst,
                     std::abs(detail::psi1_prime_series(z) - detail::psi1_prime_closed(z)));
  }
  require(worst < 1e-12, "series/closed-form mismatch " + fmt(worst) + " at |z| = 1e-2");
  return "worst branch disagreement " + fmt(worst);
}

// ---- closed_form ----

std::string check_permutation_invariance(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side(0.1, 5.0);
  for (int i = 0; i < 10; ++i) {
    const double a = side(rng);
    const double b = side(rng);
    const double c = side(rng);
    const double reference = cuboid_lambda1(CuboidDims(a, b, c)).value;
    for (const auto& perm : {CuboidDims(a, c, b), CuboidDims(b, a, c), CuboidDims(b, c, a),
                             CuboidDims(c, a, b), CuboidDims(c, b, a)}) {
      require(cuboid_lambda1(perm).value == reference,
              "permuted sides changed lambda1 at sample " + std::to_string(i));
    }
  }
  return "10 triples, all 6 permutations identical";
}

std::string check_closed_form_homogeneity(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side(0.1, 5.0);
  double worst = 0.0;
  for (int i = 0; i < 10; ++i) {
    const CuboidDims dims(side(rng), side(rng), side(rng));
    const double radius = side(rng);
    for (double alpha : {0.5, 2.0, 10.0}) {
      const CuboidDims scaled(alpha * dims.l1, alpha * dims.l2, alpha * dims.l3);
      worst = std::max(worst, rel_diff(cuboid_lambda1(scaled).value,
                                       scaling_law(cuboid_lambda1(dims), alpha).value));
      worst = std::max(worst, rel_diff(ball_lambda1_radius(alpha * radius).value,
                                       scaling_law(ball_lambda1_radius(radius), alpha).value));
    }
  }
  require(worst < 1e-12, "scaling-law residual " + fmt(worst) + " exceeds 1e-12");
  return "cuboid and ball at alpha in {0.5, 2, 10}; worst relative residual " + fmt(worst);
}

std::string check_perimeter_ordering(std::mt19937_64&) {
  for (double k : {1.0, 2.0, 10.0}) {
    const double ball = ball_lambda1_surface(k).value;
    const double cube = cube_lambda1_surface(k).value;
    require(4.0 * kPiSq / k < ball, "ball value not above 4 pi^2 / k at k = " + fmt(k));
    require(ball < cube, "ball value not below cube value at k = " + fmt(k));
  }
  return "4 pi^2/k < ball < cube for k in {1, 2, 10}";
}

std::string check_volume_ordering(std::mt19937_64&) {
  for (double k : {1.0, 2.0, 10.0}) {
    const double ball = ball_lambda1_volume(k).value;
    const double cube = 2.0 * kPiSq / std::cbrt(k * k);
    require(ball < cube, "ball not below cube under volume constraint at k = " + fmt(k));
  }
  return "ball < cube under volume constraint for k in {1, 2, 10}";
}

// ---- cuboid_search ----

std::string check_strict_young_bound(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double min_margin = std::numeric_limits<double>::infinity();
  for (double k : {1.0, 2.0, 10.0}) {
    const PerimeterConstraint constraint(k);
    const double bound = 4.0 * kPiSq / k;
    for (int i = 0; i < 10000; ++i) {
      const double l3 = l3_max(constraint) * std::exp(std::log(1e-3) * unit(rng));
      const double lo = l1_lower_bound(l3, constraint);
      const double hi = l1_upper_bound(l3, constraint);
      const FeasiblePoint p(std::min(hi, lo + (hi - lo) * unit(rng)), l3, constraint);
      min_margin = std::min(min_margin, lambda1_constrained(p).value - bound);
    }
  }
  require(min_margin > 0.0, "sampled point at or below 4 pi^2 / k (margin " +
                                fmt(min_margin) + ")");
  return "30000 samples; smallest margin above 4 pi^2/k is " + fmt(min_margin);
}

std::string check_feasibility_ordering(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const PerimeterConstraint constraint(2.0);
  for (int i = 0; i < 200; ++i) {
    const double l3 = l3_max(constraint) * (0.001 + 0.999 * unit(rng));
    const double lo = l1_lower_bound(l3, constraint);
    const double hi = l1_upper_bound(l3, constraint);
    const double l1 =
        i % 3 == 0 ? lo : (i % 3 == 1 ? hi : std::min(hi, lo + (hi - lo) * unit(rng)));
    const CuboidDims dims = completed_dims(FeasiblePoint(l1, l3, constraint));
    // completed_dims sorts, so compare against the raw inputs instead.
    const double l2 = ell2_from_constraint(FeasiblePoint(l1, l3, constraint));
    require(l3 <= l2 + 1e-12 && l2 <= l1 + 1e-12,
            "completed triple is not ordered at sample " + std::to_string(i));
    require(std::abs(2.0 * (dims.l1 * dims.l2 + dims.l1 * dims.l3 + dims.l2 * dims.l3) - 2.0) <
                1e-12,
            "surface constraint violated at sample " + std::to_string(i));
  }
  int rejections = 0;
  for (int i = 0; i < 100; ++i) {
    const double l3 = l3_max(constraint) * (0.01 + 0.98 * unit(rng));
    const double hi = l1_upper_bound(l3, constraint);
    const double lo = l1_lower_bound(l3, constraint);
    try {
      const FeasiblePoint above(hi * 1.01, l3, constraint);
      (void)above;
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
    try {
      const FeasiblePoint below(lo * 0.99, l3, constraint);
      (void)below;
    } catch (const std::invalid_argument&) {
      ++rejections;
    }
  }
  require(rejections == 200, "only " + std::to_string(rejections) +
                                 " of 200 infeasible points were rejected");
  return "200 feasible samples ordered and on-constraint; 200 infeasible points rejected";
}

std::string check_volume_families(std::mt19937_64&) {
  double worst = 0.0;
  for (double l : {1.0, 0.5, 0.1, 0.01}) {
    worst = std::max(worst, std::abs(volume_family_vanishing(l).dims.volume() - 1.0));
    worst = std::max(worst, std::abs(volume_family_blowup(l).dims.volume() - 1.0));
  }
  require(worst < 1e-12, "unit-volume residual " + fmt(worst) + " exceeds 1e-12");
  return "both families at l in {1, 0.5, 0.1, 0.01}; worst volume residual " + fmt(worst);
}

std::string check_grid_infimum_convergence(std::mt19937_64&) {
  const PerimeterConstraint constraint(2.0);
  const double bound = 4.0 * kPiSq / 2.0;
  const double gap_coarse = grid_infimum(constraint, 200).value.value - bound;
  const double gap_fine = grid_infimum(constraint, 800).value.value - bound;
  require(gap_coarse > 0.0 && gap_fine > 0.0, "grid minimum fell to or below 4 pi^2 / k");
  require(gap_fine < 0.5 * gap_coarse, "gap at resolution 800 (" + fmt(gap_fine) +
                                           ") is not below half the gap at 200 (" +
                                           fmt(gap_coarse) + ")");
  return "gap " + fmt(gap_coarse) + " at r=200 vs " + fmt(gap_fine) + " at r=800";
}

// ---- fem2d ----

std::string check_conforming_upper_bound(std::mt19937_64&) {
  double prev_d = std::numeric_limits<double>::infinity();
  double prev_n = std::numeric_limits<double>::infinity();
  for (double target : {1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0}) {
    const TriMesh mesh = square_mesh(target);
    const double d = dirichlet_eig1(mesh).eigenvalues.front();
    const double n = neumann_eig1(mesh).eigenvalues.front();
    require(d >= 2.0 * kPiSq, "Dirichlet FEM value below the analytic 2 pi^2");
    require(n >= kPiSq, "Neumann FEM value below the analytic pi^2");
    require(d <= prev_d && n <= prev_n, "FEM eigenvalue increased under refinement");
    prev_d = d;
    prev_n = n;
  }
  return "square values stay above the analytic limits and decrease under refinement";
}

std::string check_neumann_deflation(std::mt19937_64&) {
  double worst = 0.0;
  for (const TriMesh& mesh :
       {square_mesh(1.0 / 32.0), dumbbell_mesh(DumbbellParams(0.25, 0.05), 1.0 / 32.0, 2)}) {
    const EigenResult result = neumann_eig1(mesh);
    const Eigen::VectorXd weights =
        assemble(mesh).mass.mat * Eigen::VectorXd::Ones(mesh.dof_count());
    for (int j = 0; j < result.vectors.cols(); ++j) {
      worst = std::max(worst, std::abs(weights.dot(result.vectors.col(j))) /
                                  result.vectors.col(j).norm());
    }
  }
  require(worst < 1e-10, "constant-mode component " + fmt(worst) + " exceeds 1e-10");
  return "worst |1^T M v| / ||v|| = " + fmt(worst);
}

std::string check_channel_flag_independence(std::mt19937_64&) {
  const DumbbellParams p(0.25, 0.05);
  const double coarse2 = neumann_eig1(dumbbell_mesh(p, 1.0 / 32.0, 2)).eigenvalues.front();
  const double fine2 = neumann_eig1(dumbbell_mesh(p, 1.0 / 64.0, 2)).eigenvalues.front();
  const double fine4 = neumann_eig1(dumbbell_mesh(p, 1.0 / 64.0, 4)).eigenvalues.front();
  const double error_bar = std::abs(coarse2 - fine2);
  const double flag_shift = std::abs(fine2 - fine4);
  require(flag_shift < error_bar, "layer toggle moved mu1N by " + fmt(flag_shift) +
                                      ", above the discretization bar " + fmt(error_bar));
  return "layer toggle shift " + fmt(flag_shift) + " < refinement bar " + fmt(error_bar);
}

std::string check_dirichlet_dominates_neumann(std::mt19937_64&) {
  const RectilinearPolygon rectangle({{0, 0}, {2, 0}, {2, 1}, {0, 1}});
  const std::vector<TriMesh> meshes = {
      square_mesh(1.0 / 32.0), mesh_rectilinear(rectangle, 1.0 / 32.0),
      dumbbell_mesh(DumbbellParams(0.25, 0.05), 1.0 / 32.0, 2)};
  for (const TriMesh& mesh : meshes) {
    const double d = dirichlet_eig1(mesh).eigenvalues.front();
    const double n = neumann_eig1(mesh).eigenvalues.front();
    require(d >= n, "mu1D = " + fmt(d) + " below mu1N = " + fmt(n));
  }
  return "mu1D >= mu1N on square, 2x1 rectangle, and dumbbell";
}

// ---- maxwell_product ----

std::string check_dichotomy_identity(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> side(0.2, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    double s[3] = {side(rng), side(rng), side(rng)};
    std::sort(s, s + 3, std::greater<>());
    const double mu1d = kPiSq * (1.0 / (s[0] * s[0]) + 1.0 / (s[1] * s[1]));
    const double mu1n = kPiSq / (s[0] * s[0]);
    const ProductEigenvalue product = product_lambda1({mu1d}, {mu1n}, s[2]);
    worst = std::max(worst,
                     rel_diff(product.value.value, cuboid_lambda1(CuboidDims(s[0], s[1], s[2])).value));
    require(product.branch != DichotomyBranch::neumann,
            "Neumann branch won on a rectangle cylinder with h = l3");
  }
  require(worst < 1e-12, "dichotomy/cuboid mismatch " + fmt(worst) + " exceeds 1e-12");
  return "20 random cuboids; worst relative mismatch " + fmt(worst);
}

std::string check_trial_bound_decay(std::mt19937_64&) {
  double previous = std::numeric_limits<double>::infinity();
  for (double delta : {0.2, 0.1, 0.05, 0.02}) {
    const double eta = std::pow(delta, 4.0);
    const double rayleigh = trial_bound(DumbbellParams(delta, eta)).rayleigh;
    require(rayleigh > 0.0, "trial bound not positive at delta = " + fmt(delta));
    require(rayleigh < previous, "trial bound not decreasing at delta = " + fmt(delta));
    previous = rayleigh;
  }
  return "rayleigh positive and strictly decreasing along eta = delta^4";
}

std::string check_fem_scaling_consistency(std::mt19937_64&) {
  const DumbbellParams p(0.25, 0.05);
  const double base = neumann_eig1(dumbbell_mesh(p, 1.0 / 32.0, 2)).eigenvalues.front();
  const RectilinearPolygon half_poly = scale(build_dumbbell(p), 0.5);
  const Rect channel = dumbbell_channel(p);
  const Rect half_channel{0.5 * channel.x0, 0.5 * channel.y0, 0.5 * channel.x1,
                          0.5 * channel.y1};
  const TriMesh half_mesh = mesh_rectilinear(half_poly, 1.0 / 64.0, 2, &half_channel);
  const double halved = neumann_eig1(half_mesh).eigenvalues.front();
  const double mismatch = rel_diff(halved, 4.0 * base);
  require(mismatch < 1e-8, "scaling mismatch " + fmt(mismatch) + " exceeds 1e-8");
  return "mu1N(L=0.5) = mu1N(L=1)/L^2 to relative " + fmt(mismatch);
}

std::string check_dumbbell_decay_runs(std::mt19937_64&) {
  for (double beta : {0.5, 1.0, 2.0}) {
    const double p = 2.0 / beta + 1.0;
    double first = 0.0;
    double previous = std::numeric_limits<double>::infinity();
    double last = 0.0;
    for (double h : {10.0, 100.0, 1000.0, 10000.0}) {
      const DumbbellRun run = dumbbell_run(ScheduleParams(beta, h, p), false);
      require(run.surface_residual < 1e-12,
              "surface residual " + fmt(run.surface_residual) + " at h = " + fmt(h));
      require(run.dirichlet_branch_inactive,
              "Dirichlet branch not excluded at h = " + fmt(h) + ", beta = " + fmt(beta));
      require(run.lambda1_upper < previous, "upper bound not decreasing at h = " + fmt(h));
      if (first == 0.0) first = run.lambda1_upper;
      previous = run.lambda1_upper;
      last = run.lambda1_upper;
    }
    require(last < 0.1 * first, "final bound " + fmt(last) +
                                    " is not below a tenth of the initial " + fmt(first));
  }
  return "strict decay with final < initial/10 for beta in {0.5, 1, 2}";
}

std::string check_trial_vs_quadrature(std::mt19937_64& rng) {
  double worst = 0.0;
  double worst_mean = 0.0;
  for (int i = 0; i < 50; ++i) {
    const DumbbellParams p = random_params(rng);
    const TrialFunctionReport closed = trial_bound(p);
    const TrialFunctionReport quad = trial_bound_quadrature(p);
    worst = std::max({worst, rel_diff(closed.c, quad.c),
                      rel_diff(closed.grad_energy, quad.grad_energy),
                      rel_diff(closed.mass, quad.mass), rel_diff(closed.rayleigh, quad.rayleigh)});
    const double mean = closed.c - p.delta + 0.5 * p.eta * p.delta * closed.c - 0.5 * p.eta;
    worst_mean = std::max(worst_mean, std::abs(mean));
  }
  require(worst < 1e-12, "closed form vs quadrature mismatch " + fmt(worst));
  require(worst_mean < 1e-14, "mean-zero identity residual " + fmt(worst_mean));
  return "50 samples; worst quadrature mismatch " + fmt(worst) + ", worst mean " +
         fmt(worst_mean);
}

// ---- cli ----

std::filesystem::path temp_json(const std::string& stem) {
  return std::filesystem::temp_directory_path() / (stem + ".json");
}

// run() reports progress on the standard streams; nested invocations run
// muted so the verification table does not interleave with their output.
int run_muted(const RunConfig& config) {
  std::ostringstream sink;
  std::streambuf* out = std::cout.rdbuf(sink.rdbuf());
  std::streambuf* err = std::cerr.rdbuf(sink.rdbuf());
  const int code = run(config);
  std::cout.rdbuf(out);
  std::cerr.rdbuf(err);
  return code;
}

std::string check_cli_determinism(std::mt19937_64&) {
  const std::string pid = std::to_string(static_cast<long>(::getpid()));
  std::size_t sweep_bytes = 0;
  std::size_t dumbbell_bytes = 0;
  {
    RunConfig config;
    config.subcommand = Subcommand::sweep;
    config.sweep = {2.0, 50};
    const auto path_a = temp_json("cavspec-verify-sweep-a-" + pid);
    const auto path_b = temp_json("cavspec-verify-sweep-b-" + pid);
    config.output_path = path_a.string();
    require(run_muted(config) == 0, "sweep subcommand failed");
    config.output_path = path_b.string();
    require(run_muted(config) == 0, "sweep subcommand failed on rerun");
    const std::string a = read_file(path_a);
    const std::string b = read_file(path_b);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
    require(!a.empty() && a == b, "sweep reruns differ");
    sweep_bytes = a.size();
  }
  {
    RunConfig config;
    config.subcommand = Subcommand::dumbbell;
    config.dumbbell.h_grid = {10.0, 100.0};
    config.dumbbell.use_fem = false;
    const auto path_a = temp_json("cavspec-verify-dumbbell-a-" + pid);
    const auto path_b = temp_json("cavspec-verify-dumbbell-b-" + pid);
    config.output_path = path_a.string();
    require(run_muted(config) == 0, "dumbbell subcommand failed");
    config.output_path = path_b.string();
    require(run_muted(config) == 0, "dumbbell subcommand failed on rerun");
    const std::string a = read_file(path_a);
    const std::string b = read_file(path_b);
    std::filesystem::remove(path_a);
    std::filesystem::remove(path_b);
    require(!a.empty() && a == b, "dumbbell reruns differ");
    dumbbell_bytes = a.size();
  }
  return "sweep (" + std::to_string(sweep_bytes) + " bytes) and dumbbell (" +
         std::to_string(dumbbell_bytes) + " bytes) reruns byte-identical";
}

std::string check_cli_validation(std::mt19937_64&) {
  const std::string pid = std::to_string(static_cast<long>(::getpid()));
  const auto path = temp_json("cavspec-verify-invalid-" + pid);
  {
    RunConfig config;
    config.subcommand = Subcommand::sweep;
    config.sweep = {2.0, 5};  // below the minimum resolution of 10
    config.output_path = path.string();
    require(run_muted(config) == 1, "invalid sweep resolution did not exit with code 1");
    require(!std::filesystem::exists(path), "invalid sweep run still wrote output");
  }
  {
    RunConfig config;
    config.subcommand = Subcommand::dumbbell;
    config.dumbbell.h_grid = {1.0};  // schedule gives delta = 1, invalid
    config.output_path = path.string();
    require(run_muted(config) == 1, "infeasible schedule did not exit with code 1");
    require(!std::filesystem::exists(path), "infeasible schedule run still wrote output");
  }
  return "invalid configs exit 1 without touching the output path";
}

struct NamedCheck {
  const char* name;
  std::string (*body)(std::mt19937_64&);
};

constexpr NamedCheck kChecks[] = {
    {"geometry/dumbbell-closed-forms", check_dumbbell_closed_forms},
    {"geometry/scale-homogeneity", check_scale_homogeneity},
    {"geometry/normalization-surface-residual", check_normalization_residual},
    {"geometry/polygon-validity", check_polygon_validity},
    {"specfun/zero-bracket-invariance", check_zero_bracket_invariance},
    {"specfun/series-switchover", check_series_switchover},
    {"closed-form/permutation-invariance", check_permutation_invariance},
    {"closed-form/scaling-homogeneity", check_closed_form_homogeneity},
    {"closed-form/perimeter-ordering", check_perimeter_ordering},
    {"closed-form/volume-ordering", check_volume_ordering},
    {"cuboid-search/strict-young-bound", check_strict_young_bound},
    {"cuboid-search/feasibility-ordering", check_feasibility_ordering},
    {"cuboid-search/volume-families-unit", check_volume_families},
    {"cuboid-search/grid-infimum-convergence", check_grid_infimum_convergence},
    {"fem2d/conforming-upper-bound", check_conforming_upper_bound},
    {"fem2d/neumann-deflation", check_neumann_deflation},
    {"fem2d/channel-flag-independence", check_channel_flag_independence},
    {"fem2d/dirichlet-dominates-neumann", check_dirichlet_dominates_neumann},
    {"maxwell/dichotomy-rectangle-identity", check_dichotomy_identity},
    {"maxwell/trial-bound-decay", check_trial_bound_decay},
    {"maxwell/fem-scaling-consistency", check_fem_scaling_consistency},
    {"maxwell/dumbbell-decay-runs", check_dumbbell_decay_runs},
    {"maxwell/trial-vs-quadrature", check_trial_vs_quadrature},
    {"cli/determinism", check_cli_determinism},
    {"cli/validation-before-work", check_cli_validation},
};

}  // namespace

std::vector<CheckResult> verification_suite(std::uint64_t seed) {
  std::vector<CheckResult> results;
  std::uint64_t index = 0;
  for (const NamedCheck& check : kChecks) {
    std::mt19937_64 rng(seed + index++);
    CheckResult result;
    result.name = check.name;
    try {
      result.detail = check.body(rng);
      result.pass = true;
    } catch (const std::exception& e) {
      result.detail = e.what();
      result.pass = false;
    }
    results.push_back(std::move(result));
  }
  return results;
}

std::string verification_json(const std::vector<CheckResult>& checks, std::uint64_t seed) {
  nlohmann::ordered_json doc;
  doc["schema"] = 1;
  doc["seed"] = seed;
  doc["passed"] = std::all_of(checks.begin(), checks.end(),
                              [](const CheckResult& c) { return c.pass; });
  doc["checks"] = nlohmann::ordered_json::array();
  for (const CheckResult& check : checks) {
    doc["checks"].push_back({{"name", check.name}, {"pass", check.pass}, {"detail", check.detail}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace cavspec
