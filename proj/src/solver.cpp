#include "optdes/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "optdes/errors.hpp"
#include "optdes/information.hpp"
#include "optdes/parallel.hpp"
#include "optdes/rng.hpp"
#include "optdes/spd_linalg.hpp"

namespace optdes {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

// Everything one iteration needs to know about the current state.
struct StateStats {
  double objective = 0.0;      // -log|M| (D) or tr(M^-1) (A)
  double trace_inv = 0.0;      // tr(M^-1), filled for the A criterion
  std::vector<double> d;       // f_i' M^-1 f_i
  std::vector<double> s;       // f_i' M^-2 f_i, filled for the A criterion
  double max_stat = 0.0;       // largest equivalence statistic
  int argmax = 0;              // its lowest-index attainer
  double gap = 0.0;            // max_stat minus the criterion threshold
  int support_size = 0;        // count of w_i > 0
};

StateStats evaluate_state(const CandidateSet &c, const std::vector<double> &w,
                          Criterion crit, int thread_count) {
  CholeskyFactor factor = factor_information(c, w, thread_count);
  const int p = c.p;
  const bool need_s = crit == Criterion::A;

  StateStats st;
  st.d.resize(c.n);
  if (need_s) st.s.resize(c.n);

  parallel_for(c.n, thread_count, [&](int begin, int end) {
    std::vector<double> work(p);
    for (int i = begin; i < end; ++i) {
      const double *f = c.regressor(i);
      std::copy(f, f + p, work.begin());
      factor.forward_solve(work.data());
      double d = 0.0;
      for (int a = 0; a < p; ++a) d += work[a] * work[a];
      st.d[i] = d;
      if (need_s) {
        factor.backward_solve(work.data());  // work = M^-1 f
        double s = 0.0;
        for (int a = 0; a < p; ++a) s += work[a] * work[a];
        st.s[i] = s;
      }
    }
  });

  if (crit == Criterion::D) {
    st.objective = -log_det(factor);
  } else {
    st.trace_inv = trace_inverse(factor);
    st.objective = st.trace_inv;
  }

  // Deterministic lowest-index argmax of the equivalence statistic.
  const std::vector<double> &stat = need_s ? st.s : st.d;
  int best = 0;
  double best_val = stat[0];
  for (int i = 1; i < c.n; ++i) {
    if (stat[i] > best_val) {
      best_val = stat[i];
      best = i;
    }
  }
  st.argmax = best;
  if (crit == Criterion::D) {
    st.max_stat = best_val;
    st.gap = best_val - p;
  } else {
    st.max_stat = best_val / st.trace_inv;
    st.gap = st.max_stat - 1.0;
  }

  int support = 0;
  for (int i = 0; i < c.n; ++i)
    if (w[i] > 0.0) ++support;
  st.support_size = support;
  return st;
}

// Relative equivalence gap used as the VDM/MUL stopping rule: the absolute
// gap over its threshold (p for D; the A threshold is already 1).
double relative_gap(const StateStats &st, Criterion crit, int p) {
  return crit == Criterion::D ? st.gap / p : st.gap;
}

double block_sum(const std::vector<double> &v, int thread_count) {
  return reduce_blocks<double>(
      static_cast<int>(v.size()), thread_count,
      [&](int begin, int end) {
        double acc = 0.0;
        for (int i = begin; i < end; ++i) acc += v[i];
        return acc;
      },
      [](double lhs, double rhs) { return lhs + rhs; }, 0.0);
}

double block_abs_diff(const std::vector<double> &a, const std::vector<double> &b,
                      int thread_count) {
  return reduce_blocks<double>(
      static_cast<int>(a.size()), thread_count,
      [&](int begin, int end) {
        double acc = 0.0;
        for (int i = begin; i < end; ++i) acc += std::abs(a[i] - b[i]);
        return acc;
      },
      [](double lhs, double rhs) { return lhs + rhs; }, 0.0);
}

// Divides w by its block sum and reports |sum - 1| of the result.
double renormalize(std::vector<double> &w, int thread_count) {
  const double total = block_sum(w, thread_count);
  if (!(total > 0.0))
    throw SingularInformation("weight vector renormalization hit a nonpositive sum");
  for (double &x : w) x /= total;
  return std::abs(block_sum(w, thread_count) - 1.0);
}

// In-place multiplicative update for the configured criterion; returns the
// simplex deviation after renormalization.
double apply_update(std::vector<double> &w, const StateStats &st, Criterion crit,
                    int p, int thread_count) {
  const int n = static_cast<int>(w.size());
  if (crit == Criterion::D) {
    for (int i = 0; i < n; ++i) w[i] *= st.d[i] / p;
  } else {
    const double scale = (p - 1.0) / p;
    const double offset = 1.0 / p;
    for (int i = 0; i < n; ++i)
      w[i] *= scale * (st.s[i] / st.trace_inv) + offset;
  }
  return renormalize(w, thread_count);
}

struct PhaseResult {
  StateStats final_stats;
  long updates = 0;
  bool capped = false;
};

// Runs multiplicative updates on w until the drift stops or a cap fires.
// Trace rows are global: `iteration` counts updates across all phases and
// elapsed time is measured from run_start.  The initial state is recorded
// only when record_initial is set (the first phase); later phases start at
// the same weights their predecessor ended with, so re-recording it would
// duplicate an iteration number.
PhaseResult run_phase_into(std::vector<double> &w, const CandidateSet &c,
                           const SolverConfig &cfg, ConvergenceTrace &trace,
                           long &global_iteration, Clock::time_point run_start,
                           bool record_initial) {
  trace.phase_starts.push_back(trace.rows.size());

  PhaseResult result;
  std::vector<double> previous;
  double drift = 0.0;
  long k = 0;  // updates taken within this phase
  for (;;) {
    StateStats st = evaluate_state(c, w, cfg.criterion, cfg.thread_count);
    const bool converged = k > 0 && drift < cfg.gamma;
    const bool capped =
        !converged &&
        (k >= cfg.max_iterations ||
         (cfg.time_budget_seconds > 0.0 &&
          seconds_since(run_start) >= cfg.time_budget_seconds));
    const bool final_state = converged || capped;

    if (cfg.record_trace && (k > 0 || record_initial) &&
        (k % cfg.trace_stride == 0 || final_state)) {
      TraceRow row;
      row.iteration = global_iteration;
      row.objective = st.objective;
      row.drift = k == 0 ? 0.0 : drift;
      row.gap = st.gap;
      row.support_size = st.support_size;
      row.elapsed_seconds = seconds_since(run_start);
      trace.rows.push_back(row);
    }

    if (final_state) {
      result.final_stats = std::move(st);
      result.updates = k;
      result.capped = capped;
      return result;
    }

    previous = w;
    const double deviation =
        apply_update(w, st, cfg.criterion, c.p, cfg.thread_count);
    trace.max_simplex_deviation = std::max(trace.max_simplex_deviation, deviation);
    drift = block_abs_diff(w, previous, cfg.thread_count);
    ++k;
    ++global_iteration;
  }
}

struct Pruned {
  CandidateSet candidates;
  std::vector<double> weights;
  std::vector<int> kept;  // row indices into the pruned-from set
};

Pruned prune_with_indices(const std::vector<double> &w, const CandidateSet &c,
                          double delta) {
  if (static_cast<int>(w.size()) != c.n)
    throw std::invalid_argument("prune_support: weight count does not match candidates");

  Pruned out;
  for (int i = 0; i < c.n; ++i)
    if (w[i] > delta) out.kept.push_back(i);

  if (static_cast<int>(out.kept.size()) < c.p)
    throw SupportCollapse("pruning at threshold " + std::to_string(delta) +
                          " left " + std::to_string(out.kept.size()) +
                          " candidates for a " + std::to_string(c.p) +
                          "-parameter model");

  const int kept_n = static_cast<int>(out.kept.size());
  out.candidates.n = kept_n;
  out.candidates.q = c.q;
  out.candidates.p = c.p;
  out.candidates.points.resize(static_cast<std::size_t>(kept_n) * c.q);
  out.candidates.regressors.resize(static_cast<std::size_t>(kept_n) * c.p);
  out.weights.resize(kept_n);

  double total = 0.0;
  for (int r = 0; r < kept_n; ++r) total += w[out.kept[r]];
  for (int r = 0; r < kept_n; ++r) {
    const int i = out.kept[r];
    std::copy(c.point(i), c.point(i) + c.q,
              &out.candidates.points[static_cast<std::size_t>(r) * c.q]);
    std::copy(c.regressor(i), c.regressor(i) + c.p,
              &out.candidates.regressors[static_cast<std::size_t>(r) * c.p]);
    out.weights[r] = w[i] / total;
  }
  return out;
}

void check_candidates(const CandidateSet &c) {
  if (c.n <= 0) throw std::invalid_argument("solver: empty candidate set");
  if (c.p <= 0 || c.q <= 0)
    throw std::invalid_argument("solver: candidate set has empty dimensions");
}

void check_weights(const std::vector<double> &w, int n) {
  if (static_cast<int>(w.size()) != n)
    throw std::invalid_argument("solver: weight count does not match candidates");
  double total = 0.0;
  for (double x : w) {
    if (!(x >= 0.0))
      throw std::invalid_argument("solver: starting weights must be nonnegative");
    total += x;
  }
  if (std::abs(total - 1.0) > 1e-8)
    throw std::invalid_argument("solver: starting weights must sum to 1");
}

// Scatters active-set weights back onto the full candidate set, evaluates
// the final state there, and packages the Design.
Design finalize_design(const CandidateSet &full, const std::vector<int> &indices,
                       const std::vector<double> &w, const SolverConfig &cfg,
                       long iterations, int rounds, bool capped) {
  std::vector<double> full_w(full.n, 0.0);
  for (std::size_t r = 0; r < indices.size(); ++r) full_w[indices[r]] = w[r];

  StateStats st = evaluate_state(full, full_w, cfg.criterion, cfg.thread_count);

  Design design;
  design.q = full.q;
  design.criterion = cfg.criterion;
  design.objective = st.objective;
  design.iterations = iterations;
  design.restart_rounds = rounds;
  design.equivalence_gap = st.gap;
  design.iteration_cap_reached = capped;
  for (int i = 0; i < full.n; ++i) {
    if (full_w[i] <= 0.0) continue;
    design.support_indices.push_back(i);
    design.support_weights.push_back(full_w[i]);
    design.support_points.insert(design.support_points.end(), full.point(i),
                                 full.point(i) + full.q);
  }
  return design;
}

double default_mul_lambda(Criterion crit) {
  return crit == Criterion::D ? 1.0 : 0.5;
}

// Minimizes the one-step A objective over the VDM step size by golden
// section.  Moving mass alpha onto candidate i* turns M into
// (1-alpha) M + alpha f f', whose inverse trace has the closed form below
// via the Sherman-Morrison identity (t = alpha / (1-alpha)):
//   tr(M_a^-1) = tr(M^-1) / (1-alpha) - (alpha / (1-alpha)^2) * s / (1 + t d)
// with d = f' M^-1 f and s = f' M^-2 f.
double a_trace_after_step(double alpha, double trace_inv, double d, double s) {
  const double om = 1.0 - alpha;
  const double t = alpha / om;
  return trace_inv / om - (alpha / (om * om)) * s / (1.0 + t * d);
}

double golden_section_a_step(double trace_inv, double d, double s) {
  const double inv_phi = 0.6180339887498949;  // (sqrt(5) - 1) / 2
  double lo = 0.0;
  double hi = 1.0 - 1e-9;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = a_trace_after_step(x1, trace_inv, d, s);
  double f2 = a_trace_after_step(x2, trace_inv, d, s);
  for (int it = 0; it < 90; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = a_trace_after_step(x1, trace_inv, d, s);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = a_trace_after_step(x2, trace_inv, d, s);
    }
  }
  const double alpha = 0.5 * (lo + hi);
  // Accept the step only if it actually improves the objective.
  return a_trace_after_step(alpha, trace_inv, d, s) < trace_inv ? alpha : 0.0;
}

// --- incremental state for the vertex-direction baseline --------------------
//
// A VDM step is a rank-one modification of the information matrix,
//   M' = (1 - alpha) M + alpha g g',   g = f(x*),
// so with u = M^-1 g, beta = alpha / (1 - alpha), and
// cc = beta / (1 + beta d*), the Sherman-Morrison identity gives O(n p)
// updates for everything an iteration needs:
//   M'^-1       = (M^-1 - cc u u') / (1 - alpha)
//   d_i'        = (d_i - cc h_i^2) / (1 - alpha),        h_i = f_i . u
//   (M^-1 f_i)' = ((M^-1 f_i) - cc h_i u) / (1 - alpha)
//   log|M'|     = log|M| + p log(1 - alpha) + log(1 + beta d*)
//   tr(M'^-1)   = (tr(M^-1) - cc |u|^2) / (1 - alpha)
// A full refresh every kVdmRefreshStride steps flushes rounding drift; the
// final design is always re-evaluated from scratch in finalize_design.
struct VdmStats {
  SymMatrix inv;           // M^-1
  std::vector<double> d;   // f_i' M^-1 f_i
  std::vector<double> v;   // M^-1 f_i, n x p row major (A criterion only)
  std::vector<double> s;   // |M^-1 f_i|^2 (A criterion only)
  double log_det_m = 0.0;  // D criterion
  double trace_inv = 0.0;  // A criterion
};

constexpr long kVdmRefreshStride = 1000;

void vdm_refresh(const CandidateSet &c, const std::vector<double> &w,
                 Criterion crit, int thread_count, VdmStats &st) {
  const CholeskyFactor factor = factor_information(c, w, thread_count);
  st.inv = inverse_spd(factor);
  st.log_det_m = log_det(factor);
  st.trace_inv = trace_inverse(factor);

  const int p = c.p;
  const bool need_s = crit == Criterion::A;
  st.d.resize(c.n);
  if (need_s) {
    st.v.resize(static_cast<std::size_t>(c.n) * p);
    st.s.resize(c.n);
  }
  parallel_for(c.n, thread_count, [&](int begin, int end) {
    for (int i = begin; i < end; ++i) {
      const double *f = c.regressor(i);
      if (!need_s) {
        st.d[i] = quad_form(st.inv, f, p);
        continue;
      }
      double *vi = &st.v[static_cast<std::size_t>(i) * p];
      for (int a = 0; a < p; ++a) {
        const double *row = st.inv.data() + static_cast<std::size_t>(a) * p;
        double acc = 0.0;
        for (int b = 0; b < p; ++b) acc += row[b] * f[b];
        vi[a] = acc;
      }
      double di = 0.0, si = 0.0;
      for (int a = 0; a < p; ++a) {
        di += f[a] * vi[a];
        si += vi[a] * vi[a];
      }
      st.d[i] = di;
      st.s[i] = si;
    }
  });
}

void vdm_apply(const CandidateSet &c, int star, double alpha, Criterion crit,
               int thread_count, VdmStats &st) {
  const int p = c.p;
  const double om = 1.0 - alpha;
  const double beta = alpha / om;
  const double *g = c.regressor(star);

  std::vector<double> u(p);
  for (int a = 0; a < p; ++a) {
    const double *row = st.inv.data() + static_cast<std::size_t>(a) * p;
    double acc = 0.0;
    for (int b = 0; b < p; ++b) acc += row[b] * g[b];
    u[a] = acc;
  }
  const double d_star = st.d[star];
  const double cc = beta / (1.0 + beta * d_star);

  if (crit == Criterion::A) {
    double u_norm2 = 0.0;
    for (int a = 0; a < p; ++a) u_norm2 += u[a] * u[a];
    parallel_for(c.n, thread_count, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        const double *f = c.regressor(i);
        double h = 0.0;
        for (int a = 0; a < p; ++a) h += f[a] * u[a];
        st.d[i] = (st.d[i] - cc * h * h) / om;
        double *vi = &st.v[static_cast<std::size_t>(i) * p];
        double si = 0.0;
        for (int a = 0; a < p; ++a) {
          vi[a] = (vi[a] - cc * h * u[a]) / om;
          si += vi[a] * vi[a];
        }
        st.s[i] = si;
      }
    });
    st.trace_inv = (st.trace_inv - cc * u_norm2) / om;
  } else {
    parallel_for(c.n, thread_count, [&](int begin, int end) {
      for (int i = begin; i < end; ++i) {
        const double *f = c.regressor(i);
        double h = 0.0;
        for (int a = 0; a < p; ++a) h += f[a] * u[a];
        st.d[i] = (st.d[i] - cc * h * h) / om;
      }
    });
    st.log_det_m += p * std::log(om) + std::log1p(beta * d_star);
  }

  for (int a = 0; a < p; ++a)
    for (int b = a; b < p; ++b)
      st.inv.set(a, b, (st.inv(a, b) - cc * u[a] * u[b]) / om);
}

std::pair<Design, ConvergenceTrace> run_vdm(const CandidateSet &c,
                                            const SolverConfig &cfg) {
  check_candidates(c);
  validate(cfg);
  const int p = c.p;
  const Criterion crit = cfg.criterion;

  std::vector<double> w = initial_weights(c.n, InitMode::Uniform);
  ConvergenceTrace trace;
  trace.phase_starts.push_back(0);
  const Clock::time_point start = Clock::now();

  VdmStats st;
  vdm_refresh(c, w, crit, cfg.thread_count, st);
  long since_refresh = 0;

  long k = 0;
  double drift = 0.0;  // weight movement of the transition into state k
  bool capped = false;
  for (;;) {
    // Deterministic lowest-index argmax of the equivalence statistic.
    const std::vector<double> &stat = crit == Criterion::A ? st.s : st.d;
    int star = 0;
    double best = stat[0];
    for (int i = 1; i < c.n; ++i) {
      if (stat[i] > best) {
        best = stat[i];
        star = i;
      }
    }
    const double objective = crit == Criterion::A ? st.trace_inv : -st.log_det_m;
    const double gap =
        crit == Criterion::A ? best / st.trace_inv - 1.0 : best - p;
    const double rel = crit == Criterion::A ? gap : gap / p;

    const bool converged = rel < cfg.gamma;
    capped = !converged &&
             (k >= cfg.max_iterations ||
              (cfg.time_budget_seconds > 0.0 &&
               seconds_since(start) >= cfg.time_budget_seconds));
    const bool final_state = converged || capped;

    if (cfg.record_trace && (k % cfg.trace_stride == 0 || final_state)) {
      TraceRow row;
      row.iteration = k;
      row.objective = objective;
      row.drift = drift;
      row.gap = gap;
      int support = 0;
      for (int i = 0; i < c.n; ++i)
        if (w[i] > 0.0) ++support;
      row.support_size = support;
      row.elapsed_seconds = seconds_since(start);
      trace.rows.push_back(row);
    }
    if (final_state) break;

    double alpha = 0.0;
    if (crit == Criterion::A) {
      // Line search on the Sherman-Morrison trace formula.
      alpha = golden_section_a_step(st.trace_inv, st.d[star], st.s[star]);
    } else {
      // The closed-form optimal step for the D criterion.
      const double d_star = st.d[star];
      if (d_star > p && d_star > 1.0) alpha = (d_star - p) / (p * (d_star - 1.0));
    }

    const std::vector<double> previous = w;
    bool moved = false;
    if (alpha > 0.0) {
      for (double &x : w) x *= 1.0 - alpha;
      w[star] += alpha;
      moved = true;
    }
    const double deviation = renormalize(w, cfg.thread_count);
    trace.max_simplex_deviation = std::max(trace.max_simplex_deviation, deviation);
    drift = block_abs_diff(w, previous, cfg.thread_count);
    ++k;
    if (!moved) {
      // No improving move exists; a further iteration would loop forever on
      // the same state.
      capped = true;
      break;
    }
    vdm_apply(c, star, alpha, crit, cfg.thread_count, st);
    if (++since_refresh >= kVdmRefreshStride) {
      vdm_refresh(c, w, crit, cfg.thread_count, st);
      since_refresh = 0;
    }
  }

  std::vector<int> indices(c.n);
  for (int i = 0; i < c.n; ++i) indices[i] = i;
  Design design = finalize_design(c, indices, w, cfg, k, 1, capped);
  return {std::move(design), std::move(trace)};
}

// Shared driver for the MUL baseline: evaluate, record, stop on relative
// gap, otherwise apply `step` and continue.
template <class StepFn>
std::pair<Design, ConvergenceTrace> run_baseline(const CandidateSet &c,
                                                 const SolverConfig &cfg,
                                                 const StepFn &step) {
  check_candidates(c);
  validate(cfg);

  std::vector<double> w = initial_weights(c.n, InitMode::Uniform);
  ConvergenceTrace trace;
  trace.phase_starts.push_back(0);
  const Clock::time_point start = Clock::now();

  long k = 0;
  double drift = 0.0;  // weight movement of the transition into state k
  bool capped = false;
  for (;;) {
    StateStats st = evaluate_state(c, w, cfg.criterion, cfg.thread_count);
    const bool converged = relative_gap(st, cfg.criterion, c.p) < cfg.gamma;
    capped = !converged &&
             (k >= cfg.max_iterations ||
              (cfg.time_budget_seconds > 0.0 &&
               seconds_since(start) >= cfg.time_budget_seconds));
    const bool final_state = converged || capped;

    if (cfg.record_trace && (k % cfg.trace_stride == 0 || final_state)) {
      TraceRow row;
      row.iteration = k;
      row.objective = st.objective;
      row.drift = drift;
      row.gap = st.gap;
      row.support_size = st.support_size;
      row.elapsed_seconds = seconds_since(start);
      trace.rows.push_back(row);
    }
    if (final_state) break;

    std::vector<double> previous = w;
    const bool moved = step(w, st);
    const double deviation = renormalize(w, cfg.thread_count);
    trace.max_simplex_deviation = std::max(trace.max_simplex_deviation, deviation);
    drift = block_abs_diff(w, previous, cfg.thread_count);
    ++k;
    if (!moved) {
      // The step rule found no improving move; a further iteration would
      // loop forever on the same state.
      capped = true;
      break;
    }
  }

  std::vector<int> indices(c.n);
  for (int i = 0; i < c.n; ++i) indices[i] = i;
  Design design = finalize_design(c, indices, w, cfg, k, 1, capped);
  return {std::move(design), std::move(trace)};
}

}  // namespace

void validate(const SolverConfig &cfg) {
  std::string bad;
  auto complain = [&bad](const char *msg) {
    if (!bad.empty()) bad += "; ";
    bad += msg;
  };
  if (!(cfg.gamma > 0.0)) complain("gamma must be positive");
  if (!(cfg.delta >= 0.0 && cfg.delta < 1.0)) complain("delta must lie in [0, 1)");
  if (cfg.max_iterations < 1) complain("max_iterations must be at least 1");
  if (cfg.max_restart_rounds < 1) complain("max_restart_rounds must be at least 1");
  if (!(cfg.mul_lambda >= 0.0 && cfg.mul_lambda <= 1.0))
    complain("mul_lambda must lie in [0, 1]");
  if (cfg.trace_stride < 1) complain("trace_stride must be at least 1");
  if (cfg.thread_count < 1) complain("thread_count must be at least 1");
  if (cfg.time_budget_seconds < 0.0)
    complain("time_budget_seconds must be nonnegative");
  if (!bad.empty()) throw ConfigError("invalid solver configuration: " + bad);
}

std::vector<double> initial_weights(int n, InitMode mode, std::uint64_t seed) {
  if (n <= 0) throw std::invalid_argument("initial_weights: n must be positive");
  if (mode == InitMode::Uniform) return std::vector<double>(n, 1.0 / n);
  Rng rng(seed);
  return dirichlet_uniform(n, rng);
}

std::vector<double> d_update(const std::vector<double> &w, const CandidateSet &c) {
  check_candidates(c);
  check_weights(w, c.n);
  StateStats st = evaluate_state(c, w, Criterion::D, 1);
  std::vector<double> out = w;
  apply_update(out, st, Criterion::D, c.p, 1);
  return out;
}

std::vector<double> a_update(const std::vector<double> &w, const CandidateSet &c) {
  check_candidates(c);
  check_weights(w, c.n);
  StateStats st = evaluate_state(c, w, Criterion::A, 1);
  std::vector<double> out = w;
  apply_update(out, st, Criterion::A, c.p, 1);
  return out;
}

std::pair<std::vector<double>, ConvergenceTrace> run_phase(
    const std::vector<double> &w0, const CandidateSet &c, const SolverConfig &cfg) {
  check_candidates(c);
  validate(cfg);
  check_weights(w0, c.n);

  std::vector<double> w = w0;
  ConvergenceTrace trace;
  long iterations = 0;
  run_phase_into(w, c, cfg, trace, iterations, Clock::now(), true);
  return {std::move(w), std::move(trace)};
}

std::pair<CandidateSet, std::vector<double>> prune_support(
    const std::vector<double> &w, const CandidateSet &c, double delta) {
  Pruned pruned = prune_with_indices(w, c, delta);
  return {std::move(pruned.candidates), std::move(pruned.weights)};
}

std::pair<Design, ConvergenceTrace> solve(const CandidateSet &c,
                                          const SolverConfig &cfg) {
  return solve(c, cfg, initial_weights(c.n, InitMode::Uniform));
}

std::pair<Design, ConvergenceTrace> solve(const CandidateSet &c,
                                          const SolverConfig &cfg,
                                          const std::vector<double> &w0) {
  check_candidates(c);
  validate(cfg);
  check_weights(w0, c.n);

  ConvergenceTrace trace;
  const Clock::time_point start = Clock::now();

  CandidateSet active = c;
  std::vector<double> w = w0;
  std::vector<int> indices(c.n);
  for (int i = 0; i < c.n; ++i) indices[i] = i;

  long iterations = 0;
  int rounds = 0;
  bool capped = false;
  for (;;) {
    ++rounds;
    PhaseResult phase = run_phase_into(w, active, cfg, trace, iterations, start,
                                       rounds == 1);
    if (phase.capped) {
      capped = true;
      break;
    }

    std::vector<int> kept;
    for (int i = 0; i < active.n; ++i)
      if (w[i] > cfg.delta) kept.push_back(i);
    if (static_cast<int>(kept.size()) == active.n) break;  // support stabilized
    if (rounds >= cfg.max_restart_rounds) {
      // Out of restart budget: keep the converged weights as they stand.
      break;
    }

    Pruned pruned = prune_with_indices(w, active, cfg.delta);
    std::vector<int> remapped(pruned.kept.size());
    for (std::size_t r = 0; r < pruned.kept.size(); ++r)
      remapped[r] = indices[pruned.kept[r]];
    active = std::move(pruned.candidates);
    w = std::move(pruned.weights);
    indices = std::move(remapped);
  }

  Design design = finalize_design(c, indices, w, cfg, iterations, rounds, capped);
  return {std::move(design), std::move(trace)};
}

std::pair<Design, ConvergenceTrace> solve_vdm(const CandidateSet &c,
                                              const SolverConfig &cfg) {
  return run_vdm(c, cfg);
}

std::pair<Design, ConvergenceTrace> solve_mul(const CandidateSet &c,
                                              const SolverConfig &cfg,
                                              double lambda) {
  if (lambda == 0.0) lambda = cfg.mul_lambda;
  if (lambda == 0.0) lambda = default_mul_lambda(cfg.criterion);
  if (!(lambda > 0.0 && lambda <= 1.0))
    throw ConfigError("solve_mul: lambda must lie in (0, 1]");

  const int threads = cfg.thread_count;
  return run_baseline(
      c, cfg, [lambda, threads](std::vector<double> &w, const StateStats &st) {
        const std::vector<double> &stat = st.s.empty() ? st.d : st.s;
        const int n = static_cast<int>(w.size());
        double mean = reduce_blocks<double>(
            n, threads,
            [&](int begin, int end) {
              double acc = 0.0;
              for (int i = begin; i < end; ++i) acc += w[i] * stat[i];
              return acc;
            },
            [](double lhs, double rhs) { return lhs + rhs; }, 0.0);
        if (!(mean > 0.0)) return false;
        if (lambda == 1.0) {
          for (int i = 0; i < n; ++i) w[i] *= stat[i] / mean;
        } else {
          for (int i = 0; i < n; ++i) w[i] *= std::pow(stat[i] / mean, lambda);
        }
        return true;
      });
}

std::pair<Design, ConvergenceTrace> run_solver(const CandidateSet &c,
                                               const SolverConfig &cfg) {
  switch (cfg.algorithm) {
    case Algorithm::Proposed:
      return solve(c, cfg);
    case Algorithm::VDM:
      return solve_vdm(c, cfg);
    case Algorithm::MUL:
      return solve_mul(c, cfg, cfg.mul_lambda);
  }
  throw ConfigError("run_solver: unknown algorithm");
}

}  // namespace optdes
