#ifndef OPTDES_COMMANDS_HPP_
#define OPTDES_COMMANDS_HPP_

#include <iosfwd>
#include <string>

#include "optdes/run_config.hpp"

namespace optdes {

// Process exit codes shared by every subcommand.
constexpr int kExitSuccess = 0;        // solve/verify: design certified
constexpr int kExitNotCertified = 2;   // finished, equivalence gap too large
constexpr int kExitNumericalFailure = 3;
constexpr int kExitConfigError = 4;

// Each command writes its primary machine-readable document to `out` and
// returns a process exit code.  Domain failures are reported as a JSON
// error record on `out` (and into cfg.result_out when set) rather than as
// exceptions.

// Runs the configured solver, writes the design CSV / trace CSV / result
// JSON to the configured paths, and prints the result JSON.
int cmd_solve(const RunConfig &cfg, std::ostream &out);

// Reads a design CSV, checks it lies in the configured space on the
// simplex, and certifies it against the equivalence theorem over the
// configured candidate grid plus the design's own points.
int cmd_verify(const RunConfig &cfg, const std::string &design_csv_path,
               std::ostream &out);

// Reference-vs-baselines timing sweep; emits a long-format CSV
// (algorithm,N,elapsed_s,efficiency) to out_path, or to `out` when empty.
int cmd_benchmark(const RunConfig &cfg, const std::string &out_path,
                  std::ostream &out);

// Growing-N experiment on randomly sampled candidates; emits
// (N,objective,gap) rows against a deterministic fine-grid reference.
int cmd_converge_n(const RunConfig &cfg, const std::string &out_path,
                   std::ostream &out);

// Per-iteration D-efficiency lower bound for growing model dimension q;
// emits (q,iteration,objective,neg_log10_one_minus_eff) rows.
int cmd_quadratic_scaling(const RunConfig &cfg, const std::string &out_path,
                          std::ostream &out);

}  // namespace optdes

#endif  // OPTDES_COMMANDS_HPP_
