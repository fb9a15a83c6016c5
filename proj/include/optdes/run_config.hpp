#ifndef OPTDES_RUN_CONFIG_HPP_
#define OPTDES_RUN_CONFIG_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

#include "optdes/candidate_set.hpp"
#include "optdes/feature_map.hpp"
#include "optdes/solver.hpp"

namespace optdes {

// Regression model selection as it appears in config files.
struct ModelSpec {
  FeatureKind kind = FeatureKind::FullQuadratic;
  int q = 2;
  // Monomial exponent vectors for FeatureKind::Custom.
  std::vector<std::vector<int>> custom_terms;

  bool operator==(const ModelSpec &) const = default;
};

// Parameters of the benchmark subcommand.
struct BenchmarkConfig {
  std::vector<Algorithm> algorithms = {Algorithm::Proposed, Algorithm::VDM,
                                       Algorithm::MUL};
  // Candidate-set sizes: grid sides for grid spaces, point counts otherwise.
  std::vector<int> sizes = {21};
  double time_budget_seconds = 60.0;
  long trace_stride = 10;
  double reference_gamma = 1e-7;

  bool operator==(const BenchmarkConfig &) const = default;
};

// Parameters of the converge-n subcommand.
struct ConvergeNConfig {
  std::vector<int> schedule = {50, 200, 1000, 5000};
  int replicates = 5;
  // Side of the deterministic fine grid providing the reference objective.
  int reference_side = 101;

  bool operator==(const ConvergeNConfig &) const = default;
};

// Parameters of the quad-scaling subcommand.
struct QuadScalingConfig {
  std::vector<int> q_list = {8};
  long iteration_budget = 200;
  int lhs_points = 1000;

  bool operator==(const QuadScalingConfig &) const = default;
};

// Complete description of a run; serializes to a flat snake_case JSON
// document and echoes into every result file.
struct RunConfig {
  ModelSpec model;
  SpaceSpec space;
  Criterion criterion = Criterion::D;
  Algorithm algorithm = Algorithm::Proposed;
  double gamma = 5e-4;
  double delta = 1e-4;
  long max_iterations = 100000;
  int max_restart_rounds = 10;
  double mul_lambda = 0.0;  // 0 = criterion default
  InitMode init = InitMode::Uniform;
  std::uint64_t seed = 0;
  int thread_count = 1;
  bool record_trace = false;
  long trace_stride = 1;
  double time_budget_seconds = 0.0;
  double certified_tolerance = 1e-2;
  std::string design_out;
  std::string trace_out;
  std::string result_out;
  BenchmarkConfig benchmark;
  ConvergeNConfig converge_n;
  QuadScalingConfig quad_scaling;

  bool operator==(const RunConfig &) const = default;
};

// Strict parse: unknown or ill-typed keys are collected and reported
// together in a ConfigError.
RunConfig parse_config(const nlohmann::json &j);
RunConfig parse_config_text(const std::string &text);
RunConfig load_config_file(const std::string &path);

nlohmann::json config_to_json(const RunConfig &cfg);

// Derived objects.
FeatureMap make_feature_map(const ModelSpec &m);
SolverConfig solver_config(const RunConfig &cfg);

// Enum <-> string names used in config files and result documents.
std::string to_string(Criterion crit);
std::string to_string(Algorithm alg);
std::string to_string(InitMode mode);
std::string to_string(SpaceKind kind);
std::string to_string(FeatureKind kind);

}  // namespace optdes

#endif  // OPTDES_RUN_CONFIG_HPP_
