#include "optdes/run_config.hpp"

#include <fstream>
#include <iterator>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "optdes/errors.hpp"

namespace optdes {

namespace {

using nlohmann::json;

// Collects every problem found during a parse so a single ConfigError can
// name all offending keys at once.
struct ProblemList {
  std::vector<std::string> items;

  void add(const std::string &where, const std::string &what) {
    items.push_back(where + ": " + what);
  }
  void raise_if_any() const {
    if (items.empty()) return;
    std::string msg = "invalid config";
    for (const std::string &item : items) msg += "\n  - " + item;
    throw ConfigError(msg);
  }
};

// Strict reader over one JSON object: typed accessors mark keys consumed,
// finish() reports the keys nothing consumed.
class ObjectReader {
 public:
  ObjectReader(const json &j, std::string path, ProblemList &problems)
      : j_(j), path_(std::move(path)), problems_(problems) {
    if (!j_.is_object()) {
      problems_.add(path_, "expected an object");
      ok_ = false;
    }
  }

  bool ok() const { return ok_; }

  std::string member(const std::string &key) const { return path_ + "." + key; }

  const json *find(const char *key) {
    if (!ok_) return nullptr;
    auto it = j_.find(key);
    if (it == j_.end()) return nullptr;
    consumed_.insert(key);
    return &*it;
  }

  void real(const char *key, double &out) {
    if (const json *v = find(key)) {
      if (v->is_number())
        out = v->get<double>();
      else
        problems_.add(member(key), "expected a number");
    }
  }

  template <class Int>
  void integer(const char *key, Int &out) {
    if (const json *v = find(key)) {
      if (v->is_number_integer())
        out = v->get<Int>();
      else
        problems_.add(member(key), "expected an integer");
    }
  }

  void boolean(const char *key, bool &out) {
    if (const json *v = find(key)) {
      if (v->is_boolean())
        out = v->get<bool>();
      else
        problems_.add(member(key), "expected a boolean");
    }
  }

  void text(const char *key, std::string &out) {
    if (const json *v = find(key)) {
      if (v->is_string())
        out = v->get<std::string>();
      else
        problems_.add(member(key), "expected a string");
    }
  }

  void int_list(const char *key, std::vector<int> &out) {
    if (const json *v = find(key)) {
      if (!v->is_array()) {
        problems_.add(member(key), "expected an array of integers");
        return;
      }
      std::vector<int> parsed;
      for (const json &e : *v) {
        if (!e.is_number_integer()) {
          problems_.add(member(key), "expected an array of integers");
          return;
        }
        parsed.push_back(e.get<int>());
      }
      out = std::move(parsed);
    }
  }

  // Parses an enum through `decode`, which returns false on a bad name.
  template <class Enum, class Decode>
  void enumeration(const char *key, Enum &out, const Decode &decode,
                   const char *expected) {
    if (const json *v = find(key)) {
      if (!v->is_string() || !decode(v->get<std::string>(), out))
        problems_.add(member(key), std::string("expected one of ") + expected);
    }
  }

  void finish() {
    if (!ok_) return;
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!consumed_.count(it.key())) problems_.add(member(it.key()), "unknown key");
  }

 private:
  const json &j_;
  std::string path_;
  ProblemList &problems_;
  std::set<std::string> consumed_;
  bool ok_ = true;
};

bool decode_criterion(const std::string &s, Criterion &out) {
  if (s == "D" || s == "d") out = Criterion::D;
  else if (s == "A" || s == "a") out = Criterion::A;
  else return false;
  return true;
}

bool decode_algorithm(const std::string &s, Algorithm &out) {
  if (s == "proposed") out = Algorithm::Proposed;
  else if (s == "vdm") out = Algorithm::VDM;
  else if (s == "mul") out = Algorithm::MUL;
  else return false;
  return true;
}

bool decode_init(const std::string &s, InitMode &out) {
  if (s == "uniform") out = InitMode::Uniform;
  else if (s == "random_dirichlet") out = InitMode::RandomDirichlet;
  else return false;
  return true;
}

bool decode_space_kind(const std::string &s, SpaceKind &out) {
  if (s == "square_grid") out = SpaceKind::SquareGrid;
  else if (s == "cube_grid") out = SpaceKind::CubeGrid;
  else if (s == "disk_grid") out = SpaceKind::DiskGrid;
  else if (s == "disk_random") out = SpaceKind::DiskRandom;
  else if (s == "wynn_polygon_grid") out = SpaceKind::WynnPolygonGrid;
  else if (s == "sphere_fibonacci") out = SpaceKind::SphereFibonacci;
  else if (s == "square_random") out = SpaceKind::SquareRandom;
  else if (s == "custom") out = SpaceKind::Custom;
  else return false;
  return true;
}

bool decode_feature_kind(const std::string &s, FeatureKind &out) {
  if (s == "full_quadratic") out = FeatureKind::FullQuadratic;
  else if (s == "quadratic_no_intercept") out = FeatureKind::QuadraticNoIntercept;
  else if (s == "custom") out = FeatureKind::Custom;
  else return false;
  return true;
}

constexpr const char *kCriterionNames = "\"D\", \"A\"";
constexpr const char *kAlgorithmNames = "\"proposed\", \"vdm\", \"mul\"";
constexpr const char *kInitNames = "\"uniform\", \"random_dirichlet\"";
constexpr const char *kSpaceKindNames =
    "\"square_grid\", \"cube_grid\", \"disk_grid\", \"disk_random\", "
    "\"wynn_polygon_grid\", \"sphere_fibonacci\", \"square_random\", \"custom\"";
constexpr const char *kFeatureKindNames =
    "\"full_quadratic\", \"quadratic_no_intercept\", \"custom\"";

void parse_model(const json &j, ModelSpec &model, ProblemList &problems) {
  ObjectReader r(j, "model", problems);
  r.enumeration("kind", model.kind, decode_feature_kind, kFeatureKindNames);
  r.integer("q", model.q);
  if (const json *terms = r.find("terms")) {
    bool shape_ok = terms->is_array();
    std::vector<std::vector<int>> parsed;
    if (shape_ok) {
      for (const json &row : *terms) {
        if (!row.is_array()) {
          shape_ok = false;
          break;
        }
        std::vector<int> exps;
        for (const json &e : row) {
          if (!e.is_number_integer()) {
            shape_ok = false;
            break;
          }
          exps.push_back(e.get<int>());
        }
        if (!shape_ok) break;
        parsed.push_back(std::move(exps));
      }
    }
    if (shape_ok)
      model.custom_terms = std::move(parsed);
    else
      problems.add(r.member("terms"), "expected an array of integer arrays");
  }
  r.finish();
  if (model.kind == FeatureKind::Custom && model.custom_terms.empty())
    problems.add("model.terms", "required for a custom model");
  if (model.kind != FeatureKind::Custom && !model.custom_terms.empty())
    problems.add("model.terms", "only allowed for a custom model");
}

void parse_space(const json &j, SpaceSpec &space, ProblemList &problems) {
  ObjectReader r(j, "space", problems);
  r.enumeration("kind", space.kind, decode_space_kind, kSpaceKindNames);
  r.integer("size", space.size);
  r.integer("seed", space.seed);
  if (const json *points = r.find("points")) {
    bool shape_ok = points->is_array() && !points->empty();
    std::vector<double> flat;
    std::size_t q = 0;
    if (shape_ok) {
      for (const json &row : *points) {
        if (!row.is_array() || row.empty() ||
            (q != 0 && row.size() != q)) {
          shape_ok = false;
          break;
        }
        q = row.size();
        for (const json &e : row) {
          if (!e.is_number()) {
            shape_ok = false;
            break;
          }
          flat.push_back(e.get<double>());
        }
        if (!shape_ok) break;
      }
    }
    if (shape_ok) {
      space.custom_points = std::move(flat);
      space.q = static_cast<int>(q);
    } else {
      problems.add(r.member("points"),
                   "expected a nonempty array of equal-length number arrays");
    }
  }
  r.finish();
  if (space.kind == SpaceKind::Custom && space.custom_points.empty())
    problems.add("space.points", "required for a custom space");
  if (space.kind != SpaceKind::Custom && !space.custom_points.empty())
    problems.add("space.points", "only allowed for a custom space");
  if (space.kind != SpaceKind::Custom) space.q = space_dimension(space);
}

void parse_benchmark(const json &j, BenchmarkConfig &bench, ProblemList &problems) {
  ObjectReader r(j, "benchmark", problems);
  if (const json *algos = r.find("algorithms")) {
    bool shape_ok = algos->is_array() && !algos->empty();
    std::vector<Algorithm> parsed;
    if (shape_ok) {
      for (const json &e : *algos) {
        Algorithm a;
        if (!e.is_string() || !decode_algorithm(e.get<std::string>(), a)) {
          shape_ok = false;
          break;
        }
        parsed.push_back(a);
      }
    }
    if (shape_ok)
      bench.algorithms = std::move(parsed);
    else
      problems.add(r.member("algorithms"),
                   std::string("expected a nonempty array of ") + kAlgorithmNames);
  }
  r.int_list("sizes", bench.sizes);
  r.real("time_budget_seconds", bench.time_budget_seconds);
  r.integer("trace_stride", bench.trace_stride);
  r.real("reference_gamma", bench.reference_gamma);
  r.finish();
}

void parse_converge_n(const json &j, ConvergeNConfig &conv, ProblemList &problems) {
  ObjectReader r(j, "converge_n", problems);
  r.int_list("schedule", conv.schedule);
  r.integer("replicates", conv.replicates);
  r.integer("reference_side", conv.reference_side);
  r.finish();
}

void parse_quad_scaling(const json &j, QuadScalingConfig &qs, ProblemList &problems) {
  ObjectReader r(j, "quad_scaling", problems);
  r.int_list("q_list", qs.q_list);
  r.integer("iteration_budget", qs.iteration_budget);
  r.integer("lhs_points", qs.lhs_points);
  r.finish();
}

}  // namespace

RunConfig parse_config(const nlohmann::json &j) {
  ProblemList problems;
  RunConfig cfg;

  ObjectReader top(j, "config", problems);
  top.enumeration("criterion", cfg.criterion, decode_criterion, kCriterionNames);
  top.enumeration("algorithm", cfg.algorithm, decode_algorithm, kAlgorithmNames);
  top.real("gamma", cfg.gamma);
  top.real("delta", cfg.delta);
  top.integer("max_iterations", cfg.max_iterations);
  top.integer("max_restart_rounds", cfg.max_restart_rounds);
  top.real("mul_lambda", cfg.mul_lambda);
  top.enumeration("init", cfg.init, decode_init, kInitNames);
  top.integer("seed", cfg.seed);
  top.integer("thread_count", cfg.thread_count);
  top.boolean("record_trace", cfg.record_trace);
  top.integer("trace_stride", cfg.trace_stride);
  top.real("time_budget_seconds", cfg.time_budget_seconds);
  top.real("certified_tolerance", cfg.certified_tolerance);
  top.text("design_out", cfg.design_out);
  top.text("trace_out", cfg.trace_out);
  top.text("result_out", cfg.result_out);

  // Space randomness defaults to the run seed so one seed governs the run.
  cfg.space.seed = cfg.seed;
  if (const json *model = top.find("model")) parse_model(*model, cfg.model, problems);
  if (const json *space = top.find("space")) parse_space(*space, cfg.space, problems);
  if (const json *bench = top.find("benchmark"))
    parse_benchmark(*bench, cfg.benchmark, problems);
  if (const json *conv = top.find("converge_n"))
    parse_converge_n(*conv, cfg.converge_n, problems);
  if (const json *qs = top.find("quad_scaling"))
    parse_quad_scaling(*qs, cfg.quad_scaling, problems);
  top.finish();

  if (problems.items.empty() && cfg.space.q != cfg.model.q)
    problems.add("space", "has dimension " + std::to_string(cfg.space.q) +
                              " but the model expects q=" +
                              std::to_string(cfg.model.q));

  problems.raise_if_any();
  return cfg;
}

RunConfig parse_config_text(const std::string &text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  return parse_config(j);
}

RunConfig load_config_file(const std::string &path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  return parse_config_text(text);
}

nlohmann::json config_to_json(const RunConfig &cfg) {
  json model{{"kind", to_string(cfg.model.kind)}, {"q", cfg.model.q}};
  if (cfg.model.kind == FeatureKind::Custom) model["terms"] = cfg.model.custom_terms;

  json space{{"kind", to_string(cfg.space.kind)},
             {"size", cfg.space.size},
             {"seed", cfg.space.seed}};
  if (cfg.space.kind == SpaceKind::Custom) {
    json rows = json::array();
    const int n = static_cast<int>(cfg.space.custom_points.size()) / cfg.space.q;
    for (int i = 0; i < n; ++i) {
      json row = json::array();
      for (int d = 0; d < cfg.space.q; ++d)
        row.push_back(cfg.space.custom_points[static_cast<std::size_t>(i) *
                                                  cfg.space.q +
                                              d]);
      rows.push_back(std::move(row));
    }
    space["points"] = std::move(rows);
  }

  json algos = json::array();
  for (Algorithm a : cfg.benchmark.algorithms) algos.push_back(to_string(a));

  return json{
      {"model", std::move(model)},
      {"space", std::move(space)},
      {"criterion", to_string(cfg.criterion)},
      {"algorithm", to_string(cfg.algorithm)},
      {"gamma", cfg.gamma},
      {"delta", cfg.delta},
      {"max_iterations", cfg.max_iterations},
      {"max_restart_rounds", cfg.max_restart_rounds},
      {"mul_lambda", cfg.mul_lambda},
      {"init", to_string(cfg.init)},
      {"seed", cfg.seed},
      {"thread_count", cfg.thread_count},
      {"record_trace", cfg.record_trace},
      {"trace_stride", cfg.trace_stride},
      {"time_budget_seconds", cfg.time_budget_seconds},
      {"certified_tolerance", cfg.certified_tolerance},
      {"design_out", cfg.design_out},
      {"trace_out", cfg.trace_out},
      {"result_out", cfg.result_out},
      {"benchmark",
       {{"algorithms", std::move(algos)},
        {"sizes", cfg.benchmark.sizes},
        {"time_budget_seconds", cfg.benchmark.time_budget_seconds},
        {"trace_stride", cfg.benchmark.trace_stride},
        {"reference_gamma", cfg.benchmark.reference_gamma}}},
      {"converge_n",
       {{"schedule", cfg.converge_n.schedule},
        {"replicates", cfg.converge_n.replicates},
        {"reference_side", cfg.converge_n.reference_side}}},
      {"quad_scaling",
       {{"q_list", cfg.quad_scaling.q_list},
        {"iteration_budget", cfg.quad_scaling.iteration_budget},
        {"lhs_points", cfg.quad_scaling.lhs_points}}},
  };
}

FeatureMap make_feature_map(const ModelSpec &m) {
  switch (m.kind) {
    case FeatureKind::FullQuadratic:
      return FeatureMap::full_quadratic(m.q);
    case FeatureKind::QuadraticNoIntercept:
      return FeatureMap::quadratic_no_intercept(m.q);
    case FeatureKind::Custom:
      return FeatureMap::custom(m.q, m.custom_terms);
  }
  throw ConfigError("unknown model kind");
}

SolverConfig solver_config(const RunConfig &cfg) {
  SolverConfig s;
  s.criterion = cfg.criterion;
  s.algorithm = cfg.algorithm;
  s.gamma = cfg.gamma;
  s.delta = cfg.delta;
  s.max_iterations = cfg.max_iterations;
  s.max_restart_rounds = cfg.max_restart_rounds;
  s.mul_lambda = cfg.mul_lambda;
  s.record_trace = cfg.record_trace;
  s.trace_stride = cfg.trace_stride;
  s.thread_count = cfg.thread_count;
  s.time_budget_seconds = cfg.time_budget_seconds;
  return s;
}

std::string to_string(Criterion crit) { return crit == Criterion::D ? "D" : "A"; }

std::string to_string(Algorithm alg) {
  switch (alg) {
    case Algorithm::Proposed: return "proposed";
    case Algorithm::VDM: return "vdm";
    case Algorithm::MUL: return "mul";
  }
  return "proposed";
}

std::string to_string(InitMode mode) {
  return mode == InitMode::Uniform ? "uniform" : "random_dirichlet";
}

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::SquareGrid: return "square_grid";
    case SpaceKind::CubeGrid: return "cube_grid";
    case SpaceKind::DiskGrid: return "disk_grid";
    case SpaceKind::DiskRandom: return "disk_random";
    case SpaceKind::WynnPolygonGrid: return "wynn_polygon_grid";
    case SpaceKind::SphereFibonacci: return "sphere_fibonacci";
    case SpaceKind::SquareRandom: return "square_random";
    case SpaceKind::Custom: return "custom";
  }
  return "square_grid";
}

std::string to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::FullQuadratic: return "full_quadratic";
    case FeatureKind::QuadraticNoIntercept: return "quadratic_no_intercept";
    case FeatureKind::Custom: return "custom";
  }
  return "full_quadratic";
}

}  // namespace optdes
