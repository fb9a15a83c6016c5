#ifndef OPTDES_SOLVER_HPP_
#define OPTDES_SOLVER_HPP_

#include <cstdint>
#include <utility>
#include <vector>

#include "optdes/candidate_set.hpp"

namespace optdes {

enum class Criterion { D, A };
enum class Algorithm { Proposed, VDM, MUL };
enum class InitMode { Uniform, RandomDirichlet };

// Tuning and stopping parameters shared by all solver algorithms.
struct SolverConfig {
  Criterion criterion = Criterion::D;
  Algorithm algorithm = Algorithm::Proposed;
  // Stopping threshold: the proposed algorithm stops a phase when the
  // simplex drift sum |w_new - w_old| falls below gamma; the VDM and MUL
  // baselines stop when the relative equivalence gap falls below it.
  double gamma = 5e-4;
  // Pruning threshold between phases of the proposed algorithm.
  double delta = 1e-4;
  // Iteration cap per phase (and overall for VDM/MUL).
  long max_iterations = 100000;
  // Cap on prune-and-restart cycles of the proposed algorithm.
  int max_restart_rounds = 10;
  // Exponent for the MUL baseline; 0 picks the criterion default
  // (1 for D, 1/2 for A).
  double mul_lambda = 0.0;
  bool record_trace = false;
  long trace_stride = 1;
  int thread_count = 1;
  // Wall-clock budget in seconds; 0 disables the budget.  A run stopped by
  // the budget is flagged like an iteration-capped one.
  double time_budget_seconds = 0.0;
};

// Throws ConfigError if a field is out of range.
void validate(const SolverConfig &cfg);

// One recorded solver state.  objective and gap describe the state after
// `iteration` update steps; drift is the weight movement of the step that
// produced it (0 for the initial state).  gap is the absolute equivalence
// gap (max statistic minus its threshold) over the candidates the solver is
// currently working on.
struct TraceRow {
  long iteration = 0;
  double objective = 0.0;
  double drift = 0.0;
  double gap = 0.0;
  int support_size = 0;
  double elapsed_seconds = 0.0;
};

struct ConvergenceTrace {
  std::vector<TraceRow> rows;
  // Row index at which each phase (restart round) begins; monotonicity of
  // the D objective is guaranteed within a phase, not across a prune.
  std::vector<std::size_t> phase_starts;
  // Largest |sum(w) - 1| observed after any update, across the whole run.
  double max_simplex_deviation = 0.0;
};

// A converged (or capped) design: the candidates carrying positive weight.
struct Design {
  int q = 0;
  Criterion criterion = Criterion::D;
  std::vector<double> support_points;   // k x q, row major
  std::vector<double> support_weights;  // k, all > 0, summing to 1
  std::vector<int> support_indices;     // rows of the solved candidate set
  double objective = 0.0;               // -log|M| for D, tr(M^-1) for A
  long iterations = 0;                  // update steps across all phases
  int restart_rounds = 0;
  double equivalence_gap = 0.0;  // absolute gap over the full candidate set
  bool iteration_cap_reached = false;

  int support_size() const { return static_cast<int>(support_weights.size()); }
  const double *support_point(int i) const {
    return &support_points[static_cast<std::size_t>(i) * q];
  }
};

// Starting weights on the n-simplex.  Uniform ignores the seed.
std::vector<double> initial_weights(int n, InitMode mode, std::uint64_t seed = 0);

// One multiplicative update step for the D criterion:
//   w_i <- w_i * (f_i' M^-1 f_i) / p,  renormalized.
// Throws SingularInformation if the information matrix of w is singular.
std::vector<double> d_update(const std::vector<double> &w, const CandidateSet &c);

// One multiplicative update step for the A criterion:
//   w_i <- w_i * ((p-1)/p * (f_i' M^-2 f_i) / tr(M^-1) + 1/p),  renormalized.
std::vector<double> a_update(const std::vector<double> &w, const CandidateSet &c);

// Iterates the configured criterion's update from w0 until the simplex
// drift falls below cfg.gamma or cfg.max_iterations steps were taken.
std::pair<std::vector<double>, ConvergenceTrace> run_phase(
    const std::vector<double> &w0, const CandidateSet &c, const SolverConfig &cfg);

// Retains the candidates with w_i > delta and renormalizes their weights.
// Throws SupportCollapse if fewer than p candidates survive.
std::pair<CandidateSet, std::vector<double>> prune_support(
    const std::vector<double> &w, const CandidateSet &c, double delta);

// The proposed algorithm: repeated run_phase / prune_support rounds until
// the support stabilizes or cfg.max_restart_rounds is hit.  The optional w0
// overrides the uniform start.
std::pair<Design, ConvergenceTrace> solve(const CandidateSet &c,
                                          const SolverConfig &cfg);
std::pair<Design, ConvergenceTrace> solve(const CandidateSet &c,
                                          const SolverConfig &cfg,
                                          const std::vector<double> &w0);

// Classic vertex-direction (Fedorov-Wynn) baseline: moves weight toward the
// candidate with the steepest directional derivative, with the closed-form
// D step size and a golden-section line search for A.
std::pair<Design, ConvergenceTrace> solve_vdm(const CandidateSet &c,
                                              const SolverConfig &cfg);

// Classic multiplicative baseline: w_i <- w_i * (d_i / sum_j w_j d_j)^lambda
// renormalized, with d_i = f_i' M^-1 f_i (D) or f_i' M^-2 f_i (A).
// lambda = 0 picks the criterion default (1 for D, 1/2 for A).
std::pair<Design, ConvergenceTrace> solve_mul(const CandidateSet &c,
                                              const SolverConfig &cfg,
                                              double lambda = 0.0);

// Dispatches to solve / solve_vdm / solve_mul on cfg.algorithm.
std::pair<Design, ConvergenceTrace> run_solver(const CandidateSet &c,
                                               const SolverConfig &cfg);

}  // namespace optdes

#endif  // OPTDES_SOLVER_HPP_
