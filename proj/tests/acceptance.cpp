// Acceptance gate: one line per criterion, exit 0 only if every criterion
// holds.  Each criterion re-derives its numbers from the library entry points
// rather than trusting intermediate caches.

#include "cavspec/cli.hpp"
#include "cavspec/closed_form.hpp"
#include "cavspec/cuboid_search.hpp"
#include "cavspec/fem2d.hpp"
#include "cavspec/geometry.hpp"
#include "cavspec/maxwell_product.hpp"
#include "cavspec/specfun.hpp"

#include <unistd.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cavspec;

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

std::string fmt(double x) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.10g", x);
  return buffer;
}

struct Criterion {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& on_failure) {
    if (!ok && pass) {
      pass = false;
      detail.str(on_failure);
    } else if (!ok) {
      detail << "; " << on_failure;
    }
  }
};

bool criterion1_bessel_zero(std::string& detail) {
  Criterion c;
  const ZeroResult root = find_a11_prime();
  c.require(root.value > 2.7436 && root.value < 2.7438,
            "a11' = " + fmt(root.value) + " outside [2.7436, 2.7438]");
  c.require(std::abs(root.residual) < 1e-12,
            "residual " + fmt(root.residual) + " above 1e-12");
  if (c.pass) {
    c.detail << "a'_{1,1} = " << fmt(root.value) << ", residual " << fmt(root.residual);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion2_cuboid_routes(std::string& detail) {
  Criterion c;
  std::mt19937_64 rng(92821701);
  std::uniform_real_distribution<double> edge(0.2, 3.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const CuboidDims dims(edge(rng), edge(rng), edge(rng));
    const double direct = cuboid_lambda1(dims).value;
    const Eigenvalue mu1d{kPiSq * (1.0 / (dims.l1 * dims.l1) + 1.0 / (dims.l2 * dims.l2))};
    const Eigenvalue mu1n{kPiSq / (dims.l1 * dims.l1)};
    const double via_product = product_lambda1(mu1d, mu1n, dims.l3).value.value;
    const double rel = std::abs(via_product - direct) / direct;
    worst = std::max(worst, rel);
    c.require(rel < 1e-12, "triple (" + fmt(dims.l1) + ", " + fmt(dims.l2) + ", " +
                               fmt(dims.l3) + ") disagrees by rel " + fmt(rel));
  }
  if (c.pass) {
    c.detail << "20 random triples, worst relative gap " << fmt(worst);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion3_fem_square(std::string& detail) {
  Criterion c;
  const RectilinearPolygon square({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const EigenResult d32 = dirichlet_eig1(mesh_rectilinear(square, 1.0 / 32.0));
  const EigenResult d64 = dirichlet_eig1(mesh_rectilinear(square, 1.0 / 64.0));
  const EigenResult n32 = neumann_eig1(mesh_rectilinear(square, 1.0 / 32.0));
  const EigenResult n64 = neumann_eig1(mesh_rectilinear(square, 1.0 / 64.0));

  const double d_exact = 2.0 * kPiSq;
  const double n_exact = kPiSq;
  c.require(std::abs(d64.eigenvalues[0] - d_exact) / d_exact < 0.01,
            "Dirichlet h=1/64 off by more than 1%");
  c.require(std::abs(n64.eigenvalues[0] - n_exact) / n_exact < 0.01,
            "Neumann h=1/64 off by more than 1%");

  const double d_extrap = richardson_extrapolate(d32, d64).value.value;
  const double n_extrap = richardson_extrapolate(n32, n64).value.value;
  c.require(std::abs(d_extrap - d_exact) / d_exact < 5e-4,
            "Dirichlet extrapolant " + fmt(d_extrap) + " misses 2 pi^2 by more than 0.05%");
  c.require(std::abs(n_extrap - n_exact) / n_exact < 5e-4,
            "Neumann extrapolant " + fmt(n_extrap) + " misses pi^2 by more than 0.05%");

  const double d_ratio = (d32.eigenvalues[0] - d_exact) / (d64.eigenvalues[0] - d_exact);
  const double n_ratio = (n32.eigenvalues[0] - n_exact) / (n64.eigenvalues[0] - n_exact);
  c.require(d_ratio > 3.5 && d_ratio < 4.5,
            "Dirichlet error ratio " + fmt(d_ratio) + " outside [3.5, 4.5]");
  c.require(n_ratio > 3.5 && n_ratio < 4.5,
            "Neumann error ratio " + fmt(n_ratio) + " outside [3.5, 4.5]");
  if (c.pass) {
    c.detail << "extrapolants " << fmt(d_extrap) << " / " << fmt(n_extrap)
             << ", error ratios " << fmt(d_ratio) << " / " << fmt(n_ratio);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion4_perimeter_infimum(std::string& detail) {
  Criterion c;
  const PerimeterConstraint k2(2.0);
  const double bound = 2.0 * kPiSq;

  std::mt19937_64 rng(92821704);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double strict_margin = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 300; ++trial) {
    const double l3 = l3_max(k2) * std::max(1e-6, unit(rng));
    const double lo = l1_lower_bound(l3, k2);
    const double hi = std::max(lo, l1_upper_bound(l3, k2));
    const FeasiblePoint point(lo + (hi - lo) * unit(rng), l3, k2);
    const double lambda = lambda1_constrained(point).value;
    strict_margin = std::min(strict_margin, lambda - bound);
    c.require(lambda > bound, "sampled feasible cuboid at lambda " + fmt(lambda) +
                                  " not above 4 pi^2 / k");
  }

  const SequencePoint seq = minimizing_sequence(k2, 0.01);
  c.require(seq.lambda1.value > bound && seq.lambda1.value < 1.03 * bound,
            "minimizing sequence at l3=0.01 gives " + fmt(seq.lambda1.value));

  const GridInfimum coarse = grid_infimum(k2, 200);
  const GridInfimum fine = grid_infimum(k2, 400);
  c.require(std::abs(coarse.lower_bound - bound) < 1e-12 * bound,
            "reported lower bound is not 4 pi^2 / k");
  c.require(coarse.value.value > bound && coarse.value.value < 1.05 * bound,
            "grid infimum " + fmt(coarse.value.value) + " outside (2 pi^2, 1.05 * 2 pi^2)");
  const double gap_coarse = coarse.value.value - coarse.lower_bound;
  const double gap_fine = fine.value.value - fine.lower_bound;
  c.require(gap_fine <= 0.51 * gap_coarse,
            "gap " + fmt(gap_fine) + " at resolution 400 is not close to half of " +
                fmt(gap_coarse));
  if (c.pass) {
    c.detail << "300 samples strictly above the bound (min margin " << fmt(strict_margin)
             << "), grid gaps " << fmt(gap_coarse) << " -> " << fmt(gap_fine);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion5_extremal_families(std::string& detail) {
  Criterion c;
  double vanish_at = 0.0;
  for (double l : {0.5, 0.1, 0.01}) {
    const FamilyPoint member = volume_family_vanishing(l);
    c.require(std::abs(member.dims.volume() - 1.0) < 1e-12, "vanishing family leaves volume 1");
    const double expected = 2.0 * kPiSq * l;
    c.require(std::abs(member.lambda1.value - expected) < 1e-12 * expected,
              "vanishing family member at l = " + fmt(l) + " is " + fmt(member.lambda1.value));
    vanish_at = member.lambda1.value;
  }
  for (double m : {0.5, 0.1, 0.01}) {
    const FamilyPoint member = volume_family_blowup(m);
    c.require(std::abs(member.dims.volume() - 1.0) < 1e-12, "blowup family leaves volume 1");
    const double expected = kPiSq * (m * m * m * m + 1.0 / (m * m));
    c.require(std::abs(member.lambda1.value - expected) < 1e-12 * expected,
              "blowup family member at m = " + fmt(m) + " is " + fmt(member.lambda1.value));
  }
  const FamilyPoint tall = volume_family_blowup(0.01);
  c.require(tall.lambda1.value > 1e3, "volume-constrained blowup fails to pass 1e3");

  const FamilyPoint slab = perimeter_family_blowup(0.01, 2.0);
  c.require(std::abs(slab.dims.surface_area() - 2.0) < 1e-12, "perimeter family leaves surface 2");
  c.require(slab.lambda1.value > 1e3, "perimeter-constrained blowup fails to pass 1e3");
  if (c.pass) {
    c.detail << "vanishing member reaches " << fmt(vanish_at) << ", blowup members reach "
             << fmt(tall.lambda1.value) << " / " << fmt(slab.lambda1.value);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion6_ball_sandwich(std::string& detail) {
  Criterion c;
  for (double k : {1.0, 2.0, 10.0}) {
    const double ball_surface = ball_lambda1_surface(k).value;
    c.require(ball_surface > 4.0 * kPiSq / k,
              "surface-constrained ball at k = " + fmt(k) + " below the cuboid infimum");
    c.require(ball_surface < cube_lambda1_surface(k).value,
              "surface-constrained ball at k = " + fmt(k) + " above the cube");
    const double ball_volume = ball_lambda1_volume(k).value;
    const double cube_volume = 2.0 * kPiSq / std::cbrt(k * k);
    c.require(ball_volume < cube_volume,
              "volume-constrained ball at k = " + fmt(k) + " above the cube");
  }
  if (c.pass) {
    c.detail << "4 pi^2/k < ball < cube under surface, ball < cube under volume, k in {1, 2, 10}";
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion7_trial_function(std::string& detail) {
  Criterion c;
  std::mt19937_64 rng(92821707);
  std::uniform_real_distribution<double> log_delta(std::log(1e-3), std::log(0.9));
  std::uniform_real_distribution<double> eta_frac(0.05, 0.95);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const double delta = std::exp(log_delta(rng));
    const DumbbellParams p(delta, delta * eta_frac(rng));
    const TrialFunctionReport closed = trial_bound(p);
    const TrialFunctionReport quad = trial_bound_quadrature(p);
    const double rel = std::abs(closed.rayleigh - quad.rayleigh) / quad.rayleigh;
    worst = std::max(worst, rel);
    c.require(rel < 1e-12, "quadrature oracle disagrees by rel " + fmt(rel));
    const double mean =
        closed.c + 0.5 * p.delta * p.eta * (closed.c - 1.0 / p.delta) - p.delta;
    c.require(std::abs(mean) < 1e-14, "trial function mean " + fmt(mean) + " is not zero");
  }
  for (double delta : {0.2, 0.1, 0.05}) {
    const double eta = delta * delta * delta * delta;
    const double ratio =
        trial_bound(DumbbellParams(delta, eta)).rayleigh / (eta / (delta * delta * delta));
    c.require(ratio > 0.5 && ratio < 1.5,
              "decay ratio " + fmt(ratio) + " at delta = " + fmt(delta) +
                  " leaves [0.5, 1.5]");
  }
  if (c.pass) {
    c.detail << "50 random dumbbells, worst oracle gap " << fmt(worst)
             << ", eta/delta^3 law holds";
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion8_dumbbell_fem(std::string& detail) {
  Criterion c;
  const DumbbellParams p(0.25, 0.05);
  const RectilinearPolygon poly = build_dumbbell(p);
  const Rect channel = dumbbell_channel(p);
  const TriMesh coarse = mesh_rectilinear(poly, 1.0 / 32.0, 2, &channel);
  const TriMesh fine = mesh_rectilinear(poly, 1.0 / 64.0, 2, &channel);

  const EigenResult mu_coarse = neumann_eig1(coarse);
  const EigenResult mu_fine = neumann_eig1(fine);
  const double bound_coarse = trial_bound_discrete(p, coarse);
  const double bound_fine = trial_bound_discrete(p, fine);
  c.require(mu_coarse.eigenvalues[0] <= bound_coarse + 1e-9,
            "discrete min-max violated on the h=1/32 mesh");
  c.require(mu_fine.eigenvalues[0] <= bound_fine + 1e-9,
            "discrete min-max violated on the h=1/64 mesh");

  const double extrapolated = richardson_extrapolate(mu_coarse, mu_fine).value.value;
  const double continuous = trial_bound(p).rayleigh;
  c.require(extrapolated <= 1.05 * continuous,
            "extrapolated mu_1^N " + fmt(extrapolated) + " exceeds the trial bound " +
                fmt(continuous) + " by more than 5%");
  if (c.pass) {
    c.detail << "mu_1^N " << fmt(mu_fine.eigenvalues[0]) << " <= discrete bound "
             << fmt(bound_fine) << ", extrapolant " << fmt(extrapolated)
             << " <= 1.05 * " << fmt(continuous);
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion9_vanishing_cavity(std::string& detail) {
  Criterion c;
  std::vector<DumbbellRun> runs;
  for (double h : {10.0, 1e2, 1e3, 1e4}) {
    runs.push_back(dumbbell_run(ScheduleParams(1.0, h, 3.0), false));
  }
  for (std::size_t i = 0; i < runs.size(); ++i) {
    c.require(runs[i].surface_residual < 1e-12,
              "surface residual " + fmt(runs[i].surface_residual) + " at h = " +
                  fmt(runs[i].h));
    c.require(runs[i].dirichlet_branch_inactive,
              "Dirichlet branch not ruled out at h = " + fmt(runs[i].h));
    if (i > 0) {
      c.require(runs[i].lambda1_upper < runs[i - 1].lambda1_upper,
                "lambda_1 upper bound fails to decrease at h = " + fmt(runs[i].h));
    }
  }
  c.require(runs.back().lambda1_upper < 0.1 * runs.front().lambda1_upper,
            "decade sweep shrinks lambda_1 by less than 10x");
  if (c.pass) {
    c.detail << "lambda_1 upper bounds " << fmt(runs.front().lambda1_upper) << " -> "
             << fmt(runs.back().lambda1_upper) << " across h = 10 .. 1e4, unit surface area";
  }
  detail = c.detail.str();
  return c.pass;
}

bool criterion10_deterministic_verify(std::string& detail) {
  Criterion c;
  const std::string base =
      (std::filesystem::temp_directory_path() /
       ("cavspec_acceptance_" + std::to_string(::getpid()) + "_"))
          .string();
  const std::string path_a = base + "a.json";
  const std::string path_b = base + "b.json";

  RunConfig config;
  config.subcommand = Subcommand::verify;
  config.seed = 424242;

  int code_a = -1;
  int code_b = -1;
  {
    std::ostringstream sink;
    std::streambuf* old_out = std::cout.rdbuf(sink.rdbuf());
    std::streambuf* old_err = std::cerr.rdbuf(sink.rdbuf());
    config.output_path = path_a;
    code_a = run(config);
    config.output_path = path_b;
    code_b = run(config);
    std::cout.rdbuf(old_out);
    std::cerr.rdbuf(old_err);
  }
  c.require(code_a == 0, "first verify run exited " + fmt(code_a));
  c.require(code_b == 0, "second verify run exited " + fmt(code_b));

  std::string bytes_a;
  std::string bytes_b;
  for (const auto& [path, bytes] : {std::pair{path_a, &bytes_a}, std::pair{path_b, &bytes_b}}) {
    std::ifstream in(path, std::ios::binary);
    c.require(in.good(), "verify run left no report at " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    *bytes = buffer.str();
  }
  c.require(!bytes_a.empty() && bytes_a == bytes_b,
            "verify reports differ between identically seeded runs");
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
  if (c.pass) {
    c.detail << "two seeded verify runs, " << bytes_a.size()
             << " byte reports byte-identical, both exit 0";
  }
  detail = c.detail.str();
  return c.pass;
}

}  // namespace

int main() {
  struct Entry {
    const char* name;
    bool (*fn)(std::string&);
  };
  const Entry entries[] = {
      {"criterion 1 (radial Bessel derivative zero)", criterion1_bessel_zero},
      {"criterion 2 (cuboid closed form vs product dichotomy)", criterion2_cuboid_routes},
      {"criterion 3 (FEM square benchmarks and convergence order)", criterion3_fem_square},
      {"criterion 4 (perimeter infimum strict and approached)", criterion4_perimeter_infimum},
      {"criterion 5 (vanishing and exploding cuboid families)", criterion5_extremal_families},
      {"criterion 6 (ball between cuboid infimum and cube)", criterion6_ball_sandwich},
      {"criterion 7 (dumbbell trial function against quadrature)", criterion7_trial_function},
      {"criterion 8 (dumbbell FEM dominated by trial bound)", criterion8_dumbbell_fem},
      {"criterion 9 (unit-surface cylinders with vanishing lambda_1)", criterion9_vanishing_cavity},
      {"criterion 10 (deterministic verification artifact)", criterion10_deterministic_verify},
  };

  int failures = 0;
  for (const Entry& entry : entries) {
    std::string detail;
    const bool ok = entry.fn(detail);
    failures += ok ? 0 : 1;
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << entry.name;
    if (!detail.empty()) {
      std::cout << " -- " << detail;
    }
    std::cout << "\n";
  }
  std::cout << (10 - failures) << "/10 acceptance criteria passed\n";
  return failures == 0 ? 0 : 1;
}
