#include "optdes/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "optdes/csv.hpp"
#include "optdes/errors.hpp"
#include "optdes/optimality.hpp"
#include "optdes/rng.hpp"

namespace optdes {

namespace {

using nlohmann::json;

void emit_document(const json &doc, const RunConfig &cfg, std::ostream &out) {
  const std::string text = doc.dump(2) + "\n";
  out << text;
  if (!cfg.result_out.empty()) write_text_file(cfg.result_out, text);
}

void emit_error(const RunConfig &cfg, std::ostream &out, const char *type,
                const std::string &message) {
  json doc{{"error", {{"type", type}, {"message", message}}}};
  // Never let a broken output path mask the original failure.
  try {
    emit_document(doc, cfg, out);
  } catch (const ConfigError &) {
    out << doc.dump(2) << "\n";
  }
}

// Runs `body`, translating domain failures into a JSON error record plus
// the documented exit code.
template <class Body>
int guarded(const RunConfig &cfg, std::ostream &out, const Body &body) {
  try {
    return body();
  } catch (const ConfigError &e) {
    emit_error(cfg, out, "config_error", e.what());
    return kExitConfigError;
  } catch (const SingularInformation &e) {
    emit_error(cfg, out, "singular_information", e.what());
    return kExitNumericalFailure;
  } catch (const SupportCollapse &e) {
    emit_error(cfg, out, "support_collapse", e.what());
    return kExitNumericalFailure;
  } catch (const NotPositiveDefinite &e) {
    emit_error(cfg, out, "not_positive_definite", e.what());
    return kExitNumericalFailure;
  } catch (const RejectionStall &e) {
    emit_error(cfg, out, "rejection_stall", e.what());
    return kExitNumericalFailure;
  } catch (const CertificateFault &e) {
    emit_error(cfg, out, "certificate_fault", e.what());
    return kExitNumericalFailure;
  } catch (const std::invalid_argument &e) {
    emit_error(cfg, out, "config_error", e.what());
    return kExitConfigError;
  }
}

json certificate_json(const Certificate &cert, double tolerance) {
  return json{{"criterion", to_string(cert.criterion)},
              {"max_statistic", cert.max_statistic},
              {"threshold", cert.threshold},
              {"gap", cert.gap},
              {"argmax_point", cert.argmax_point},
              {"efficiency_lower_bound", cert.efficiency_lower_bound},
              {"certified", certified(cert, tolerance)},
              {"relative_tolerance", tolerance}};
}

json design_json(const Design &design) {
  const DesignTable table = design_table(design);
  json points = json::array();
  json weights = json::array();
  for (int i = 0; i < table.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < table.q; ++j) row.push_back(table.point(i)[j]);
    points.push_back(std::move(row));
    weights.push_back(table.weights[i]);
  }
  return json{{"criterion", to_string(design.criterion)},
              {"objective", design.objective},
              {"equivalence_gap", design.equivalence_gap},
              {"support_size", design.support_size()},
              {"points", std::move(points)},
              {"weights", std::move(weights)},
              {"iterations", design.iterations},
              {"restart_rounds", design.restart_rounds},
              {"iteration_cap_reached", design.iteration_cap_reached}};
}

json prng_json(const RunConfig &cfg) {
  return json{{"algorithm", Rng::kAlgorithmId}, {"seed", cfg.seed}};
}

// Scatters a design's support weights back over its candidate set.
std::vector<double> full_weights(const Design &design, int n) {
  std::vector<double> w(n, 0.0);
  for (std::size_t r = 0; r < design.support_indices.size(); ++r)
    w[design.support_indices[r]] = design.support_weights[r];
  return w;
}

std::pair<Design, ConvergenceTrace> dispatch_solve(const CandidateSet &c,
                                                   const RunConfig &cfg) {
  SolverConfig scfg = solver_config(cfg);
  if (cfg.algorithm == Algorithm::Proposed)
    return solve(c, scfg, initial_weights(c.n, cfg.init, cfg.seed));
  return run_solver(c, scfg);
}

void write_output_csv(const std::string &out_path, const std::string &content,
                      std::ostream &out) {
  if (out_path.empty())
    out << content;
  else
    write_text_file(out_path, content);
}

}  // namespace

int cmd_solve(const RunConfig &cfg, std::ostream &out) {
  return guarded(cfg, out, [&] {
    const FeatureMap map = make_feature_map(cfg.model);
    const CandidateSet c = generate_candidates(cfg.space, map);

    auto [design, trace] = dispatch_solve(c, cfg);
    const Certificate cert =
        make_certificate(full_weights(design, c.n), c, cfg.criterion);

    if (!cfg.design_out.empty())
      write_design_csv(cfg.design_out, design_table(design));
    if (cfg.record_trace && !cfg.trace_out.empty())
      write_trace_csv(cfg.trace_out, trace);

    json doc{{"design", design_json(design)},
             {"certificate", certificate_json(cert, cfg.certified_tolerance)},
             {"config", config_to_json(cfg)},
             {"prng", prng_json(cfg)}};
    emit_document(doc, cfg, out);
    return certified(cert, cfg.certified_tolerance) ? kExitSuccess
                                                    : kExitNotCertified;
  });
}

int cmd_verify(const RunConfig &cfg, const std::string &design_csv_path,
               std::ostream &out) {
  return guarded(cfg, out, [&] {
    const FeatureMap map = make_feature_map(cfg.model);
    const DesignTable table = read_design_csv(design_csv_path);
    if (table.q != cfg.model.q)
      throw ConfigError("design CSV has q=" + std::to_string(table.q) +
                        " coordinates but the model expects q=" +
                        std::to_string(cfg.model.q));

    double total = 0.0;
    for (double w : table.weights) {
      if (!(w >= 0.0)) throw ConfigError("design weights must be nonnegative");
      total += w;
    }
    if (std::abs(total - 1.0) > 1e-6)
      throw ConfigError("design weights sum to " + format_double(total) +
                        "; |sum - 1| exceeds 1e-6");

    for (int i = 0; i < table.rows(); ++i) {
      if (!space_contains(cfg.space, table.point(i))) {
        std::string coords;
        for (int j = 0; j < table.q; ++j) {
          if (j) coords += ", ";
          coords += format_double(table.point(i)[j]);
        }
        throw ConfigError("design row " + std::to_string(i + 2) + " (" + coords +
                          ") lies outside the configured space");
      }
    }

    // Certify over the configured grid plus the design's own points: the
    // design rows carry the weights (and hence define M); the grid carries
    // zero weight and only competes in the statistic maximum.
    const CandidateSet grid = generate_candidates(cfg.space, map);
    std::vector<double> pts = table.points;
    pts.insert(pts.end(), grid.points.begin(), grid.points.end());
    const CandidateSet combined =
        make_candidates(map, pts, table.rows() + grid.n, table.q);
    std::vector<double> w = table.weights;
    w.resize(static_cast<std::size_t>(combined.n), 0.0);

    const Certificate cert = make_certificate(w, combined, cfg.criterion);
    json doc{{"certificate", certificate_json(cert, cfg.certified_tolerance)},
             {"config", config_to_json(cfg)}};
    emit_document(doc, cfg, out);
    return certified(cert, cfg.certified_tolerance) ? kExitSuccess
                                                    : kExitNotCertified;
  });
}

int cmd_benchmark(const RunConfig &cfg, const std::string &out_path,
                  std::ostream &out) {
  return guarded(cfg, out, [&] {
    const FeatureMap map = make_feature_map(cfg.model);
    std::string rows = "algorithm,N,elapsed_s,efficiency\n";

    for (int size : cfg.benchmark.sizes) {
      SpaceSpec space = cfg.space;
      space.size = size;
      const CandidateSet c = generate_candidates(space, map);

      // Reference: the proposed algorithm at high precision.
      SolverConfig ref_cfg = solver_config(cfg);
      ref_cfg.algorithm = Algorithm::Proposed;
      ref_cfg.gamma = std::min(cfg.gamma, cfg.benchmark.reference_gamma);
      ref_cfg.record_trace = false;
      ref_cfg.time_budget_seconds = 0.0;
      const double ref_objective = solve(c, ref_cfg).first.objective;

      for (Algorithm alg : cfg.benchmark.algorithms) {
        SolverConfig run_cfg = solver_config(cfg);
        run_cfg.algorithm = alg;
        run_cfg.record_trace = true;
        run_cfg.trace_stride = cfg.benchmark.trace_stride;
        run_cfg.time_budget_seconds = cfg.benchmark.time_budget_seconds;
        const ConvergenceTrace trace = run_solver(c, run_cfg).second;

        for (const TraceRow &row : trace.rows) {
          // Efficiency of the row's design against the reference, oriented
          // so values approach 1 from below: the determinant ratio
          // |M_row| / |M_ref| for D, the trace ratio for A.
          const double eff = cfg.criterion == Criterion::D
                                 ? std::exp(ref_objective - row.objective)
                                 : ref_objective / row.objective;
          rows += to_string(alg);
          rows += ',';
          rows += std::to_string(c.n);
          rows += ',';
          rows += format_double(row.elapsed_seconds);
          rows += ',';
          rows += format_double(eff);
          rows += '\n';
        }
      }
    }
    write_output_csv(out_path, rows, out);
    return kExitSuccess;
  });
}

int cmd_converge_n(const RunConfig &cfg, const std::string &out_path,
                   std::ostream &out) {
  return guarded(cfg, out, [&] {
    const FeatureMap map = make_feature_map(cfg.model);

    SpaceSpec ref_space = cfg.space;
    switch (cfg.space.kind) {
      case SpaceKind::SquareRandom:
        ref_space.kind = SpaceKind::SquareGrid;
        break;
      case SpaceKind::DiskRandom:
        ref_space.kind = SpaceKind::DiskGrid;
        break;
      default:
        throw ConfigError(
            "converge-n needs a random-sampling space "
            "(square_random or disk_random); got " +
            to_string(cfg.space.kind));
    }
    ref_space.size = cfg.converge_n.reference_side;

    SolverConfig ref_cfg = solver_config(cfg);
    ref_cfg.algorithm = Algorithm::Proposed;
    ref_cfg.gamma = std::min(cfg.gamma, 1e-6);
    ref_cfg.record_trace = false;
    const double ref_objective =
        solve(generate_candidates(ref_space, map), ref_cfg).first.objective;

    SolverConfig run_cfg = solver_config(cfg);
    run_cfg.algorithm = Algorithm::Proposed;
    run_cfg.record_trace = false;

    std::string rows = "N,objective,gap\n";
    std::uint64_t run_index = 0;
    for (int n : cfg.converge_n.schedule) {
      for (int r = 0; r < cfg.converge_n.replicates; ++r) {
        SpaceSpec space = cfg.space;
        space.size = n;
        space.seed = cfg.seed + run_index;
        ++run_index;
        const CandidateSet c = generate_candidates(space, map);
        const Design design = solve(c, run_cfg).first;
        rows += std::to_string(n);
        rows += ',';
        rows += format_double(design.objective);
        rows += ',';
        rows += format_double(design.objective - ref_objective);
        rows += '\n';
      }
    }
    write_output_csv(out_path, rows, out);
    return kExitSuccess;
  });
}

int cmd_quadratic_scaling(const RunConfig &cfg, const std::string &out_path,
                          std::ostream &out) {
  return guarded(cfg, out, [&] {
    std::string rows = "q,iteration,objective,neg_log10_one_minus_eff\n";

    for (int q : cfg.quad_scaling.q_list) {
      const FeatureMap map = FeatureMap::full_quadratic(q);
      const CandidateSet c =
          scaling_candidates(map, q, cfg.quad_scaling.lhs_points, cfg.seed);

      // The efficiency series uses the D-criterion lower bound p/max d(x);
      // the criterion is fixed to D for this experiment.
      SolverConfig scfg = solver_config(cfg);
      scfg.criterion = Criterion::D;
      scfg.algorithm = Algorithm::Proposed;
      scfg.record_trace = true;
      scfg.trace_stride = 1;
      scfg.max_iterations = cfg.quad_scaling.iteration_budget;
      const ConvergenceTrace trace = solve(c, scfg).second;

      const double p = c.p;
      // The raw per-iteration bound p / max d(x) oscillates while the
      // support is still forming; the reported series is the best bound
      // certified so far, which is what a nondecreasing efficiency figure
      // needs.
      double best_bound = 0.0;
      for (const TraceRow &row : trace.rows) {
        const double bound = std::min(1.0, p / (p + row.gap));
        best_bound = std::max(best_bound, bound);
        const double shortfall = std::max(1.0 - best_bound, 1e-16);
        rows += std::to_string(q);
        rows += ',';
        rows += std::to_string(row.iteration);
        rows += ',';
        rows += format_double(row.objective);
        rows += ',';
        rows += format_double(-std::log10(shortfall));
        rows += '\n';
      }
    }
    write_output_csv(out_path, rows, out);
    return kExitSuccess;
  });
}

}  // namespace optdes
