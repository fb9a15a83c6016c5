#include <cstdint>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "optdes/commands.hpp"
#include "optdes/csv.hpp"
#include "optdes/errors.hpp"
#include "optdes/run_config.hpp"

namespace {

using nlohmann::json;

// Flag values layered over the config file.  Flags are merged into the JSON
// document before the strict parse so both sources share one validation
// path and one set of error messages.
struct FlagSet {
  std::string criterion, algorithm, init, space_kind, model_kind;
  std::string design_out, trace_out, result_out;
  double gamma = 0, delta = 0, mul_lambda = 0, time_budget = 0;
  double certified_tolerance = 0, bench_budget = 0, reference_gamma = 0;
  long max_iterations = 0, trace_stride = 0, bench_stride = 0;
  long iteration_budget = 0;
  int max_restart_rounds = 0, threads = 0, size = 0, q = 0;
  int replicates = 0, reference_side = 0, lhs_points = 0;
  std::uint64_t seed = 0;
  bool record_trace = false;
  std::vector<std::string> bench_algorithms;
  std::vector<int> bench_sizes, n_schedule, q_list;
};

void add_flags(CLI::App &app, FlagSet &f) {
  app.add_option("--criterion", f.criterion, "Optimality criterion: D or A");
  app.add_option("--algorithm", f.algorithm, "Solver: proposed, vdm, or mul");
  app.add_option("--gamma", f.gamma, "Stopping threshold");
  app.add_option("--delta", f.delta, "Support pruning threshold");
  app.add_option("--max-iterations", f.max_iterations, "Iteration cap per phase");
  app.add_option("--max-restart-rounds", f.max_restart_rounds,
                 "Prune-and-restart cap");
  app.add_option("--mul-lambda", f.mul_lambda,
                 "MUL exponent (0 = criterion default)");
  app.add_option("--init", f.init, "Starting weights: uniform or random_dirichlet");
  app.add_option("--seed", f.seed, "Seed for all randomness");
  app.add_option("--threads", f.threads, "Worker thread count");
  app.add_flag("--record-trace", f.record_trace, "Record the convergence trace");
  app.add_option("--trace-stride", f.trace_stride, "Trace sampling stride");
  app.add_option("--time-budget", f.time_budget, "Wall-clock budget in seconds");
  app.add_option("--certified-tolerance", f.certified_tolerance,
                 "Relative gap for certification");
  app.add_option("--space", f.space_kind,
                 "Candidate space kind (e.g. square_grid, disk_grid)");
  app.add_option("--size", f.size, "Space size: grid side or point count");
  app.add_option("--model", f.model_kind,
                 "Model kind: full_quadratic, quadratic_no_intercept, custom");
  app.add_option("--q", f.q, "Model input dimension");
  app.add_option("--design-out", f.design_out, "Design CSV output path");
  app.add_option("--trace-out", f.trace_out, "Trace CSV output path");
  app.add_option("--result-out", f.result_out, "Result JSON output path");
  app.add_option("--algorithms", f.bench_algorithms,
                 "Benchmark: algorithms to compare");
  app.add_option("--sizes", f.bench_sizes, "Benchmark: candidate-set sizes");
  app.add_option("--bench-budget", f.bench_budget,
                 "Benchmark: per-run budget in seconds");
  app.add_option("--bench-stride", f.bench_stride, "Benchmark: trace stride");
  app.add_option("--reference-gamma", f.reference_gamma,
                 "Benchmark: reference-run stopping threshold");
  app.add_option("--n-schedule", f.n_schedule, "Converge-n: candidate counts");
  app.add_option("--replicates", f.replicates, "Converge-n: runs per N");
  app.add_option("--reference-side", f.reference_side,
                 "Converge-n: reference grid side");
  app.add_option("--q-list", f.q_list, "Quad-scaling: model dimensions");
  app.add_option("--iteration-budget", f.iteration_budget,
                 "Quad-scaling: iterations per q");
  app.add_option("--lhs-points", f.lhs_points,
                 "Quad-scaling: Latin-hypercube point count");
}

// Overlay every flag the user actually passed onto the config document.
void merge_flags(const CLI::App &app, const FlagSet &f, json &doc) {
  auto given = [&app](const char *name) { return app.count(name) > 0; };

  if (given("--criterion")) doc["criterion"] = f.criterion;
  if (given("--algorithm")) doc["algorithm"] = f.algorithm;
  if (given("--gamma")) doc["gamma"] = f.gamma;
  if (given("--delta")) doc["delta"] = f.delta;
  if (given("--max-iterations")) doc["max_iterations"] = f.max_iterations;
  if (given("--max-restart-rounds"))
    doc["max_restart_rounds"] = f.max_restart_rounds;
  if (given("--mul-lambda")) doc["mul_lambda"] = f.mul_lambda;
  if (given("--init")) doc["init"] = f.init;
  if (given("--seed")) doc["seed"] = f.seed;
  if (given("--threads")) doc["thread_count"] = f.threads;
  if (given("--record-trace")) doc["record_trace"] = true;
  if (given("--trace-stride")) doc["trace_stride"] = f.trace_stride;
  if (given("--time-budget")) doc["time_budget_seconds"] = f.time_budget;
  if (given("--certified-tolerance"))
    doc["certified_tolerance"] = f.certified_tolerance;
  if (given("--space")) doc["space"]["kind"] = f.space_kind;
  if (given("--size")) doc["space"]["size"] = f.size;
  if (given("--model")) doc["model"]["kind"] = f.model_kind;
  if (given("--q")) doc["model"]["q"] = f.q;
  if (given("--design-out")) doc["design_out"] = f.design_out;
  if (given("--trace-out")) doc["trace_out"] = f.trace_out;
  if (given("--result-out")) doc["result_out"] = f.result_out;
  if (given("--algorithms")) doc["benchmark"]["algorithms"] = f.bench_algorithms;
  if (given("--sizes")) doc["benchmark"]["sizes"] = f.bench_sizes;
  if (given("--bench-budget"))
    doc["benchmark"]["time_budget_seconds"] = f.bench_budget;
  if (given("--bench-stride")) doc["benchmark"]["trace_stride"] = f.bench_stride;
  if (given("--reference-gamma"))
    doc["benchmark"]["reference_gamma"] = f.reference_gamma;
  if (given("--n-schedule")) doc["converge_n"]["schedule"] = f.n_schedule;
  if (given("--replicates")) doc["converge_n"]["replicates"] = f.replicates;
  if (given("--reference-side"))
    doc["converge_n"]["reference_side"] = f.reference_side;
  if (given("--q-list")) doc["quad_scaling"]["q_list"] = f.q_list;
  if (given("--iteration-budget"))
    doc["quad_scaling"]["iteration_budget"] = f.iteration_budget;
  if (given("--lhs-points")) doc["quad_scaling"]["lhs_points"] = f.lhs_points;
}

int report_config_error(const std::string &message) {
  json doc{{"error", {{"type", "config_error"}, {"message", message}}}};
  std::cout << doc.dump(2) << "\n";
  return optdes::kExitConfigError;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Approximate D- and A-optimal experimental designs on finite "
               "candidate sets"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  app.add_option("--config", config_path, "JSON config file")
      ->check(CLI::ExistingFile);

  FlagSet flags;
  add_flags(app, flags);

  CLI::App *solve_cmd =
      app.add_subcommand("solve", "Compute an optimal design and certify it");
  std::string design_path;
  CLI::App *verify_cmd =
      app.add_subcommand("verify", "Certify an external design CSV");
  verify_cmd->add_option("design_csv", design_path, "Design CSV to verify")
      ->required()
      ->check(CLI::ExistingFile);

  std::string out_path;
  CLI::App *bench_cmd = app.add_subcommand(
      "benchmark", "Compare algorithms against a high-precision reference");
  bench_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");
  CLI::App *conv_cmd = app.add_subcommand(
      "converge-n", "Objective versus candidate-set size on random candidates");
  conv_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");
  CLI::App *scaling_cmd = app.add_subcommand(
      "quad-scaling", "Per-iteration efficiency for growing model dimension");
  scaling_cmd->add_option("--out", out_path, "Output CSV path (default: stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : optdes::kExitConfigError;
  }

  try {
    json doc = json::object();
    if (!config_path.empty()) {
      doc = json::parse(optdes::read_text_file(config_path), nullptr, false);
      if (doc.is_discarded())
        return report_config_error("config file '" + config_path +
                                   "' is not valid JSON");
    }
    merge_flags(app, flags, doc);
    const optdes::RunConfig cfg = optdes::parse_config(doc);

    if (solve_cmd->parsed()) return optdes::cmd_solve(cfg, std::cout);
    if (verify_cmd->parsed())
      return optdes::cmd_verify(cfg, design_path, std::cout);
    if (bench_cmd->parsed())
      return optdes::cmd_benchmark(cfg, out_path, std::cout);
    if (conv_cmd->parsed())
      return optdes::cmd_converge_n(cfg, out_path, std::cout);
    if (scaling_cmd->parsed())
      return optdes::cmd_quadratic_scaling(cfg, out_path, std::cout);
    return report_config_error("no subcommand selected");
  } catch (const optdes::ConfigError &e) {
    return report_config_error(e.what());
  }
}
