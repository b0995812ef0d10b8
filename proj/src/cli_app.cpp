#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
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

namespace cavspec {

namespace {

using Json = nlohmann::ordered_json;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::invalid_argument("cannot open output path: " + path);
  }
  out << content;
  if (!out) {
    throw std::invalid_argument("failed while writing output path: " + path);
  }
}

int run_cuboid(const RunConfig& config) {
  const CuboidDims dims(config.cuboid.l1, config.cuboid.l2, config.cuboid.l3);
  const Eigenvalue lambda = cuboid_lambda1(dims);
  std::string artifact;
  if (config.format == OutputFormat::json) {
    Json doc;
    doc["schema"] = 1;
    doc["subcommand"] = "cuboid";
    doc["l1"] = dims.l1;
    doc["l2"] = dims.l2;
    doc["l3"] = dims.l3;
    doc["lambda1"] = lambda.value;
    doc["pi"] = std::numbers::pi;
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = "l1,l2,l3,lambda1\n" + fmt17(dims.l1) + "," + fmt17(dims.l2) + "," +
               fmt17(dims.l3) + "," + fmt17(lambda.value) + "\n";
  }
  write_output(config.output_path, artifact);
  if (!config.output_path.empty()) {
    std::cout << "cuboid (" << fmt17(dims.l1) << ", " << fmt17(dims.l2) << ", "
              << fmt17(dims.l3) << "): lambda1 = " << fmt17(lambda.value)
              << "  [pi = " << fmt17(std::numbers::pi) << "]\n";
  }
  return 0;
}

int run_ball(const RunConfig& config) {
  if (!(config.ball.value > 0.0)) {
    throw std::invalid_argument("ball constraint value must be positive");
  }
  double radius = 0.0;
  Eigenvalue lambda{0.0};
  std::string constraint;
  switch (config.ball.constraint) {
    case BallConstraint::radius:
      constraint = "radius";
      radius = config.ball.value;
      lambda = ball_lambda1_radius(radius);
      break;
    case BallConstraint::surface:
      constraint = "surface";
      radius = std::sqrt(config.ball.value / (4.0 * std::numbers::pi));
      lambda = ball_lambda1_surface(config.ball.value);
      break;
    case BallConstraint::volume:
      constraint = "volume";
      radius = std::cbrt(3.0 * config.ball.value / (4.0 * std::numbers::pi));
      lambda = ball_lambda1_volume(config.ball.value);
      break;
  }
  std::string artifact;
  if (config.format == OutputFormat::json) {
    Json doc;
    doc["schema"] = 1;
    doc["subcommand"] = "ball";
    doc["constraint"] = constraint;
    doc["value"] = config.ball.value;
    doc["radius"] = radius;
    doc["lambda1"] = lambda.value;
    doc["a11_prime"] = a11_prime();
    artifact = doc.dump(2) + "\n";
  } else {
    artifact = "constraint,value,radius,lambda1\n" + constraint + "," +
               fmt17(config.ball.value) + "," + fmt17(radius) + "," + fmt17(lambda.value) + "\n";
  }
  write_output(config.output_path, artifact);
  if (!config.output_path.empty()) {
    std::cout << "ball (" << constraint << " = " << fmt17(config.ball.value)
              << "): lambda1 = " << fmt17(lambda.value)
              << "  [a11_prime = " << fmt17(a11_prime()) << "]\n";
  }
  return 0;
}

int run_sweep(const RunConfig& config) {
  const PerimeterConstraint constraint(config.sweep.k);
  if (config.sweep.resolution < 10) {
    throw std::invalid_argument("sweep resolution must be at least 10");
  }
  const GridInfimum result = grid_infimum(constraint, config.sweep.resolution);
  const double gap = result.value.value - result.lower_bound;

  Json summary;
  summary["schema"] = 1;
  summary["subcommand"] = "sweep";
  summary["k"] = config.sweep.k;
  summary["resolution"] = config.sweep.resolution;
  summary["grid_min"] = result.value.value;
  summary["argmin"] = {{"l1", result.l1}, {"l2", result.l2}, {"l3", result.l3}};
  summary["lower_bound"] = result.lower_bound;
  summary["gap"] = gap;

  if (config.format == OutputFormat::json) {
    write_output(config.output_path, summary.dump(2) + "\n");
    if (!config.output_path.empty()) {
      std::cout << summary.dump() << "\n";
    }
  } else {
    std::string rows = "l1,l2,l3,k,lambda1\n";
    grid_scan(constraint, config.sweep.resolution,
              [&](double l1, double l2, double l3, double lambda1) {
                rows += fmt17(l1) + "," + fmt17(l2) + "," + fmt17(l3) + "," +
                        fmt17(config.sweep.k) + "," + fmt17(lambda1) + "\n";
              });
    write_output(config.output_path, rows);
    std::cout << summary.dump() << "\n";
  }
  return 0;
}

std::string floor_source_name(DirichletFloorSource source) {
  // The area bound is textbook spectral theory, external to the dumbbell
  // construction itself, so the output spells out where the floor came from.
  return source == DirichletFloorSource::fem ? "fem"
                                             : "faber-krahn-area-bound-external";
}

int run_dumbbell(const RunConfig& config) {
  const DumbbellOptions& opts = config.dumbbell;
  if (opts.h_grid.empty()) {
    throw std::invalid_argument("dumbbell needs a nonempty h grid");
  }
  const bool forced = opts.forced_delta.has_value() || opts.forced_eta.has_value();
  if (forced && (!opts.forced_delta.has_value() || !opts.forced_eta.has_value())) {
    throw std::invalid_argument("--delta and --eta must be given together");
  }

  // Validate every grid point before any meshing or factorization.
  std::vector<ScheduleParams> schedules;
  std::optional<DumbbellParams> forced_params;
  if (forced) {
    forced_params.emplace(*opts.forced_delta, *opts.forced_eta);  // ctor validates
    for (double h : opts.h_grid) {
      if (!(h > 0.0)) throw std::invalid_argument("h values must be positive");
    }
  } else {
    for (double h : opts.h_grid) {
      schedules.emplace_back(opts.beta, h, opts.p);  // ctor validates beta, p
      const DumbbellParams params = schedule(schedules.back());
      (void)params;  // throws when h is too small for the schedule
    }
  }

  std::vector<DumbbellRun> runs;
  for (std::size_t i = 0; i < opts.h_grid.size(); ++i) {
    if (forced) {
      runs.push_back(
          dumbbell_run_forced(*forced_params, opts.h_grid[i], opts.use_fem, config.dof_cap));
    } else {
      runs.push_back(dumbbell_run(schedules[i], opts.use_fem, config.dof_cap));
    }
  }

  if (!config.dump_geometry_path.empty()) {
    // Named so the polygon outlives the loop; the range expression would not
    // keep a temporary's member vector alive.
    const RectilinearPolygon poly = build_dumbbell(runs.front().params);
    Json polygon = Json::array();
    for (const Point2& v : poly.vertices()) {
      polygon.push_back({v.x, v.y});
    }
    write_output(config.dump_geometry_path, polygon.dump() + "\n");
  }
  if (!opts.dump_mesh_path.empty()) {
    int dumped = 0;
    for (std::size_t i = 0; i < runs.size(); ++i) {
      if (runs[i].method != Mu1nMethod::fem) continue;
      const Rect channel = dumbbell_channel(runs[i].params);
      const TriMesh mesh = mesh_rectilinear(build_dumbbell(runs[i].params), 1.0 / 64.0, 2,
                                            &channel, config.dof_cap);
      const std::string path = runs.size() == 1
                                   ? opts.dump_mesh_path
                                   : opts.dump_mesh_path + ".h" + std::to_string(i);
      std::ofstream out(path, std::ios::binary);
      if (!out) throw std::invalid_argument("cannot open mesh dump path: " + path);
      write_vtk(mesh, out);
      ++dumped;
    }
    if (dumped == 0) {
      std::cerr << "note: --dump-mesh requested but no run used the FEM route\n";
    }
  }

  std::string artifact;
  if (config.format == OutputFormat::json) {
    Json doc;
    doc["schema"] = 1;
    doc["subcommand"] = "dumbbell";
    doc["use_fem"] = opts.use_fem;
    if (!forced) {
      doc["beta"] = opts.beta;
      doc["p"] = opts.p;
    }
    doc["runs"] = Json::array();
    for (const DumbbellRun& run : runs) {
      Json rec;
      rec["h"] = run.h;
      if (run.beta.has_value()) {
        rec["beta"] = *run.beta;
      } else {
        rec["beta"] = nullptr;
      }
      rec["delta"] = run.params.delta;
      rec["eta"] = run.params.eta;
      rec["L"] = run.scale_factor;
      rec["mu1n_bound"] = run.trial.rayleigh;
      rec["trial"] = {{"c", run.trial.c},
                      {"grad_energy", run.trial.grad_energy},
                      {"mass", run.trial.mass},
                      {"rayleigh", run.trial.rayleigh}};
      if (run.mu1n_fem.has_value()) {
        rec["mu1n_fem"] = *run.mu1n_fem;
      } else {
        rec["mu1n_fem"] = nullptr;
      }
      rec["method"] = run.method == Mu1nMethod::fem ? "fem" : "trial";
      rec["mu1n_scaled"] = run.mu1n_scaled;
      rec["lambda1_upper"] = run.lambda1_upper;
      rec["mu1d_floor"] = run.mu1d_floor;
      rec["mu1d_floor_source"] = floor_source_name(run.mu1d_floor_source);
      rec["dirichlet_branch_inactive"] = run.dirichlet_branch_inactive;
      rec["surface_residual"] = run.surface_residual;
      doc["runs"].push_back(rec);
    }
    artifact = doc.dump(2) + "\n";
  } else {
    artifact =
        "h,beta,p,delta,eta,L,mu1n_bound,mu1n_fem,method,mu1n_scaled,lambda1_upper,"
        "mu1d_floor,mu1d_floor_source,dirichlet_branch_inactive,surface_residual\n";
    for (const DumbbellRun& run : runs) {
      artifact += fmt17(run.h) + ",";
      artifact += (run.beta ? fmt17(*run.beta) : "") + std::string(",");
      artifact += (run.beta ? fmt17(opts.p) : "") + std::string(",");
      artifact += fmt17(run.params.delta) + "," + fmt17(run.params.eta) + "," +
                  fmt17(run.scale_factor) + "," + fmt17(run.trial.rayleigh) + ",";
      artifact += (run.mu1n_fem ? fmt17(*run.mu1n_fem) : "") + std::string(",");
      artifact += (run.method == Mu1nMethod::fem ? "fem" : "trial") + std::string(",");
      artifact += fmt17(run.mu1n_scaled) + "," + fmt17(run.lambda1_upper) + "," +
                  fmt17(run.mu1d_floor) + "," + floor_source_name(run.mu1d_floor_source) + "," +
                  (run.dirichlet_branch_inactive ? "true" : "false") + "," +
                  fmt17(run.surface_residual) + "\n";
    }
  }
  write_output(config.output_path, artifact);
  if (!config.output_path.empty()) {
    std::cout << "dumbbell: " << runs.size() << " runs, lambda1 upper bound "
              << fmt17(runs.front().lambda1_upper) << " at h = " << fmt17(runs.front().h)
              << " down to " << fmt17(runs.back().lambda1_upper)
              << " at h = " << fmt17(runs.back().h) << "\n";
  }
  return 0;
}

int run_verify(const RunConfig& config) {
  const std::vector<CheckResult> checks = verification_suite(config.seed);
  int passed = 0;
  for (const CheckResult& check : checks) {
    std::cout << (check.pass ? "[PASS] " : "[FAIL] ") << check.name;
    for (std::size_t pad = check.name.size(); pad < 44; ++pad) std::cout << ' ';
    std::cout << ' ' << check.detail << "\n";
    if (check.pass) ++passed;
  }
  std::cout << passed << "/" << checks.size() << " checks passed\n";
  if (!config.output_path.empty()) {
    write_output(config.output_path, verification_json(checks, config.seed));
  }
  return passed == static_cast<int>(checks.size()) ? 0 : 2;
}

}  // namespace

int run(const RunConfig& config) {
  try {
    if (!config.dump_geometry_path.empty() && config.subcommand != Subcommand::dumbbell) {
      throw std::invalid_argument("--dump-geometry is only available with the dumbbell subcommand");
    }
    switch (config.subcommand) {
      case Subcommand::cuboid:
        return run_cuboid(config);
      case Subcommand::ball:
        return run_ball(config);
      case Subcommand::sweep:
        return run_sweep(config);
      case Subcommand::dumbbell:
        return run_dumbbell(config);
      case Subcommand::verify:
        return run_verify(config);
    }
    throw std::invalid_argument("unknown subcommand");
  } catch (const DofBudgetError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace cavspec
