#include <cstdlib>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cavspec/cli.hpp"

int main(int argc, char** argv) {
  cavspec::RunConfig config;

  CLI::App app{"First Maxwell cavity eigenvalues on cuboids, balls, and thin product domains"};
  app.require_subcommand(1);
  app.fallthrough();  // let global flags (--out, --format, ...) follow the subcommand

  const std::map<std::string, cavspec::OutputFormat> format_names{
      {"json", cavspec::OutputFormat::json}, {"csv", cavspec::OutputFormat::csv}};
  app.add_option("--out", config.output_path, "write the artifact here instead of stdout");
  app.add_option("--format", config.format, "artifact format")
      ->transform(CLI::CheckedTransformer(format_names, CLI::ignore_case));
  app.add_option("--seed", config.seed, "seed for randomized verification sampling");
  app.add_option("--dump-geometry", config.dump_geometry_path,
                 "write the dumbbell polygon as a JSON array of [x,y] pairs");

  std::vector<double> edges{1.0, 1.0, 1.0};
  CLI::App* cuboid = app.add_subcommand("cuboid", "lambda1 of a cuboid cavity");
  cuboid->add_option("--l", edges, "edge lengths l1 l2 l3")->expected(3);

  CLI::App* ball = app.add_subcommand("ball", "lambda1 of a ball cavity");
  double ball_radius = 0.0;
  double ball_surface = 0.0;
  double ball_volume = 0.0;
  CLI::Option_group* constraint = ball->add_option_group("constraint", "how the ball is sized");
  constraint->add_option("--radius", ball_radius, "radius R");
  constraint->add_option("--surface", ball_surface, "surface area 4*pi*R^2");
  constraint->add_option("--volume", ball_volume, "volume (4/3)*pi*R^3");
  constraint->require_option(1);

  CLI::App* sweep = app.add_subcommand("sweep", "grid scan of perimeter-constrained cuboids");
  sweep->add_option("--k", config.sweep.k, "surface-area budget |dOmega| = k");
  sweep->add_option("--resolution", config.sweep.resolution, "grid points per axis (>= 10)");

  CLI::App* dumbbell =
      app.add_subcommand("dumbbell", "lambda1 decay along the dumbbell-cross-interval family");
  dumbbell->add_option("--beta", config.dumbbell.beta, "schedule exponent beta > 0");
  dumbbell->add_option("--p", config.dumbbell.p, "delta = h^(-p); needs p > 2/beta");
  dumbbell->add_option("--h-grid", config.dumbbell.h_grid, "heights h to evaluate")
      ->expected(-1);
  dumbbell->add_flag("--fem,!--no-fem", config.dumbbell.use_fem,
                     "certify mu1_N by FEM when the mesh fits the dof budget");
  dumbbell->add_option("--delta", config.dumbbell.forced_delta,
                       "pin the channel width (bypasses the schedule; needs --eta)");
  dumbbell->add_option("--eta", config.dumbbell.forced_eta,
                       "pin the channel height (bypasses the schedule; needs --delta)");
  dumbbell->add_option("--dump-mesh", config.dumbbell.dump_mesh_path,
                       "write the FEM mesh(es) in legacy VTK ASCII");

  app.add_subcommand("verify", "run the cross-module invariant suite");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (const char* cap_text = std::getenv("CAVSPEC_DOF_CAP")) {
    char* end = nullptr;
    const unsigned long long cap = std::strtoull(cap_text, &end, 10);
    if (end == cap_text || *end != '\0' || cap == 0) {
      std::cerr << "error: CAVSPEC_DOF_CAP must be a positive integer, got \"" << cap_text
                << "\"\n";
      return 1;
    }
    config.dof_cap = static_cast<std::size_t>(cap);
  }

  if (cuboid->parsed()) {
    config.subcommand = cavspec::Subcommand::cuboid;
    config.cuboid.l1 = edges[0];
    config.cuboid.l2 = edges[1];
    config.cuboid.l3 = edges[2];
  } else if (ball->parsed()) {
    config.subcommand = cavspec::Subcommand::ball;
    if (ball->count("--radius") > 0) {
      config.ball.constraint = cavspec::BallConstraint::radius;
      config.ball.value = ball_radius;
    } else if (ball->count("--surface") > 0) {
      config.ball.constraint = cavspec::BallConstraint::surface;
      config.ball.value = ball_surface;
    } else {
      config.ball.constraint = cavspec::BallConstraint::volume;
      config.ball.value = ball_volume;
    }
  } else if (sweep->parsed()) {
    config.subcommand = cavspec::Subcommand::sweep;
  } else if (dumbbell->parsed()) {
    config.subcommand = cavspec::Subcommand::dumbbell;
  } else {
    config.subcommand = cavspec::Subcommand::verify;
  }

  return cavspec::run(config);
}
