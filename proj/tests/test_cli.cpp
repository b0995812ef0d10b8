#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cavspec/cli.hpp"

#include "json.hpp"

#include <unistd.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>

using namespace cavspec;

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

std::string temp_file(const std::string& tag) {
  return (std::filesystem::temp_directory_path() /
          ("cavspec_cli_test_" + std::to_string(::getpid()) + "_" + tag))
      .string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

/// run() narrates to stdout/stderr; keep the doctest report clean.
class MutedStreams {
 public:
  MutedStreams()
      : old_out_(std::cout.rdbuf(captured_out_.rdbuf())),
        old_err_(std::cerr.rdbuf(captured_err_.rdbuf())) {}
  ~MutedStreams() {
    std::cout.rdbuf(old_out_);
    std::cerr.rdbuf(old_err_);
  }
  std::string out() const { return captured_out_.str(); }

 private:
  std::ostringstream captured_out_;
  std::ostringstream captured_err_;
  std::streambuf* old_out_;
  std::streambuf* old_err_;
};

int run_muted(const RunConfig& config, std::string* captured_stdout = nullptr) {
  MutedStreams mute;
  const int code = run(config);
  if (captured_stdout != nullptr) {
    *captured_stdout = mute.out();
  }
  return code;
}

}  // namespace

TEST_CASE("cuboid subcommand writes schema-1 JSON with the closed form") {
  const std::string path = temp_file("cuboid.json");
  RunConfig config;
  config.subcommand = Subcommand::cuboid;
  config.cuboid = {1.0, 1.0, 1.0};
  config.output_path = path;
  CHECK(run_muted(config) == 0);

  const nlohmann::json doc = nlohmann::json::parse(slurp(path));
  CHECK(doc.at("schema").get<int>() == 1);
  CHECK(doc.at("subcommand").get<std::string>() == "cuboid");
  CHECK(doc.at("l1").get<double>() == 1.0);
  CHECK(doc.at("lambda1").get<double>() == doctest::Approx(2.0 * kPiSq).epsilon(1e-12));
  CHECK(doc.at("pi").get<double>() == std::numbers::pi);
  std::filesystem::remove(path);
}

TEST_CASE("ball subcommand reports the constraint and the Bessel zero") {
  const std::string path = temp_file("ball.json");
  RunConfig config;
  config.subcommand = Subcommand::ball;
  config.ball = {BallConstraint::radius, 1.0};
  config.output_path = path;
  CHECK(run_muted(config) == 0);

  const nlohmann::json doc = nlohmann::json::parse(slurp(path));
  CHECK(doc.at("subcommand").get<std::string>() == "ball");
  CHECK(doc.at("constraint").get<std::string>() == "radius");
  CHECK(doc.at("radius").get<double>() == 1.0);
  const double a = doc.at("a11_prime").get<double>();
  CHECK(doc.at("lambda1").get<double>() == doctest::Approx(a * a).epsilon(1e-14));
  std::filesystem::remove(path);
}

TEST_CASE("sweep CSV streams the full grid and summarizes on stdout") {
  const std::string path = temp_file("sweep.csv");
  RunConfig config;
  config.subcommand = Subcommand::sweep;
  config.sweep = {2.0, 50};
  config.format = OutputFormat::csv;
  config.output_path = path;
  std::string summary;
  CHECK(run_muted(config, &summary) == 0);
  CHECK(summary.find("\"grid_min\"") != std::string::npos);
  CHECK(summary.find("\"lower_bound\"") != std::string::npos);

  const std::string csv = slurp(path);
  std::istringstream lines(csv);
  std::string line;
  REQUIRE(std::getline(lines, line));
  CHECK(line == "l1,l2,l3,k,lambda1");
  std::size_t rows = 0;
  while (std::getline(lines, line)) {
    if (!line.empty()) ++rows;
  }
  CHECK(rows == 51u * 51u);
  std::filesystem::remove(path);
}

TEST_CASE("dumbbell runs are byte-identical across invocations") {
  const std::string path_a = temp_file("dumbbell_a.json");
  const std::string path_b = temp_file("dumbbell_b.json");
  RunConfig config;
  config.subcommand = Subcommand::dumbbell;
  config.dumbbell.use_fem = false;
  config.dumbbell.h_grid = {10.0, 100.0};
  config.output_path = path_a;
  CHECK(run_muted(config) == 0);
  config.output_path = path_b;
  CHECK(run_muted(config) == 0);

  const std::string bytes_a = slurp(path_a);
  CHECK(!bytes_a.empty());
  CHECK(bytes_a == slurp(path_b));

  const nlohmann::json doc = nlohmann::json::parse(bytes_a);
  CHECK(doc.at("subcommand").get<std::string>() == "dumbbell");
  CHECK(doc.at("use_fem").get<bool>() == false);
  REQUIRE(doc.at("runs").size() == 2);
  CHECK(doc.at("runs")[0].at("h").get<double>() == 10.0);
  CHECK(doc.at("runs")[1].at("lambda1_upper").get<double>() <
        doc.at("runs")[0].at("lambda1_upper").get<double>());
  std::filesystem::remove(path_a);
  std::filesystem::remove(path_b);
}

TEST_CASE("validation failures exit 1 and leave no artifact behind") {
  RunConfig bad_ball;
  bad_ball.subcommand = Subcommand::ball;
  bad_ball.ball = {BallConstraint::radius, -1.0};
  CHECK(run_muted(bad_ball) == 1);

  const std::string path = temp_file("sweep_invalid.json");
  RunConfig bad_sweep;
  bad_sweep.subcommand = Subcommand::sweep;
  bad_sweep.sweep = {2.0, 5};
  bad_sweep.output_path = path;
  CHECK(run_muted(bad_sweep) == 1);
  CHECK(!std::filesystem::exists(path));

  RunConfig bad_cuboid;
  bad_cuboid.subcommand = Subcommand::cuboid;
  bad_cuboid.cuboid = {0.0, 1.0, 1.0};
  CHECK(run_muted(bad_cuboid) == 1);

  RunConfig bad_path;
  bad_path.subcommand = Subcommand::cuboid;
  bad_path.output_path = "/nonexistent_directory_zz/out.json";
  CHECK(run_muted(bad_path) == 1);
}

TEST_CASE("geometry dumps are a dumbbell-only feature") {
  RunConfig misuse;
  misuse.subcommand = Subcommand::cuboid;
  misuse.dump_geometry_path = temp_file("never_written.json");
  CHECK(run_muted(misuse) == 1);
  CHECK(!std::filesystem::exists(misuse.dump_geometry_path));

  const std::string geometry = temp_file("polygon.json");
  RunConfig config;
  config.subcommand = Subcommand::dumbbell;
  config.dumbbell.use_fem = false;
  config.dumbbell.h_grid = {10.0};
  config.dumbbell.forced_delta = 0.25;
  config.dumbbell.forced_eta = 0.05;
  config.dump_geometry_path = geometry;
  CHECK(run_muted(config) == 0);

  const nlohmann::json poly = nlohmann::json::parse(slurp(geometry));
  REQUIRE(poly.is_array());
  REQUIRE(poly.size() == 12);
  for (const auto& vertex : poly) {
    REQUIRE(vertex.is_array());
    REQUIRE(vertex.size() == 2);
  }
  CHECK(poly[0][0].get<double>() == -1.0);
  std::filesystem::remove(geometry);
}

TEST_CASE("verification suite passes and serializes deterministically") {
  const std::vector<CheckResult> checks = verification_suite(12345);
  CHECK(checks.size() == 25);
  for (const CheckResult& check : checks) {
    CAPTURE(check.name);
    CAPTURE(check.detail);
    CHECK(check.pass);
  }

  const std::string report = verification_json(checks, 12345);
  CHECK(report == verification_json(checks, 12345));
  const nlohmann::json doc = nlohmann::json::parse(report);
  CHECK(doc.at("schema").get<int>() == 1);
  CHECK(doc.at("seed").get<std::uint64_t>() == 12345u);
  CHECK(doc.at("passed").get<bool>());
  CHECK(doc.at("checks").size() == checks.size());
}
