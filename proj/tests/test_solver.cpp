#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"

#include "optdes/candidate_set.hpp"
#include "optdes/errors.hpp"
#include "optdes/feature_map.hpp"
#include "optdes/information.hpp"
#include "optdes/rng.hpp"
#include "optdes/solver.hpp"
#include "optdes/spd_linalg.hpp"
#include "oracle.hpp"

using namespace optdes;

namespace {

// Line segment designs with f(x) = (1, x): the classic hand-checkable case.
CandidateSet segment(const std::vector<double> &xs) {
  const FeatureMap map = FeatureMap::custom(1, {{0}, {1}});
  std::vector<double> pts(xs);
  return make_candidates(map, pts, static_cast<int>(xs.size()), 1);
}

const FeatureMap &quad2() {
  static const FeatureMap map = FeatureMap::full_quadratic(2);
  return map;
}

double weight_of(const Design &d, const std::vector<double> &point) {
  for (int i = 0; i < d.support_size(); ++i) {
    const double *x = d.support_point(i);
    if (std::equal(point.begin(), point.end(), x)) return d.support_weights[i];
  }
  return 0.0;
}

void check_simplex(const std::vector<double> &w, double tol = 1e-12) {
  double total = 0.0;
  for (double x : w) {
    CHECK(x >= 0.0);
    total += x;
  }
  CHECK(std::abs(total - 1.0) <= tol);
}

}  // namespace

TEST_CASE("initial weights are uniform or reproducibly random") {
  CHECK(initial_weights(4, InitMode::Uniform) ==
        std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK(initial_weights(1, InitMode::Uniform) == std::vector<double>{1.0});

  const std::vector<double> a = initial_weights(10, InitMode::RandomDirichlet, 1);
  const std::vector<double> b = initial_weights(10, InitMode::RandomDirichlet, 1);
  const std::vector<double> other =
      initial_weights(10, InitMode::RandomDirichlet, 2);
  CHECK(a == b);
  CHECK(a != other);
  check_simplex(a);
  CHECK(*std::min_element(a.begin(), a.end()) > 0.0);
}

TEST_CASE("two-point symmetric design is a fixed point of both updates") {
  const CandidateSet c = segment({-1.0, 1.0});
  const std::vector<double> w = {0.5, 0.5};
  const std::vector<double> wd = d_update(w, c);
  const std::vector<double> wa = a_update(w, c);
  for (int i = 0; i < 2; ++i) {
    CHECK(wd[i] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(wa[i] == doctest::Approx(0.5).epsilon(1e-14));
  }
}

TEST_CASE("one D step from uniform on three points shifts mass outward") {
  // M = diag(1, 2/3), statistics d = (2.5, 1, 2.5), new w_i = w_i d_i / 2.
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const std::vector<double> w = d_update({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  CHECK(w[0] == doctest::Approx(5.0 / 12).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0 / 6).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(5.0 / 12).epsilon(1e-12));
}

TEST_CASE("one A step from uniform on three points") {
  // M = diag(1, 2/3), D = M^-1 = diag(1, 1.5), tr(D) = 2.5, and
  // f' D^2 f = (3.25, 1, 3.25); the update w_i [ (1/2) s_i / 2.5 + 1/2 ]
  // gives (23/60, 7/30, 23/60), which sums to 1 exactly.
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const std::vector<double> w = a_update({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  CHECK(w[0] == doctest::Approx(23.0 / 60).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(7.0 / 30).epsilon(1e-12));
  CHECK(w[2] == doctest::Approx(23.0 / 60).epsilon(1e-12));
}

TEST_CASE("updates preserve the simplex for random weights") {
  const CandidateSet c = disk_grid_points(quad2(), 9);
  Rng rng(5);
  for (int rep = 0; rep < 5; ++rep) {
    const std::vector<double> w = dirichlet_uniform(c.n, rng);
    check_simplex(d_update(w, c));
    check_simplex(a_update(w, c));
  }
}

TEST_CASE("a zero weight stays zero under both updates") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  std::vector<double> w(c.n, 1.0 / (c.n - 1));
  w[4] = 0.0;  // the grid center
  const std::vector<double> wd = d_update(w, c);
  const std::vector<double> wa = a_update(w, c);
  CHECK(wd[4] == 0.0);
  CHECK(wa[4] == 0.0);
}

TEST_CASE("pruning keeps exactly the weights above the threshold") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});

  // One candidate falls away; survivors are renormalized.
  const auto [kept, w] = prune_support({0.5, 0.5, 1e-6}, c, 1e-4);
  REQUIRE(kept.n == 2);
  CHECK(kept.point(0)[0] == -1.0);
  CHECK(kept.point(1)[0] == 0.0);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-12));

  // Nothing below the threshold: the identity.
  const auto [same, v] = prune_support({0.4, 0.3, 0.3}, c, 1e-4);
  CHECK(same.n == 3);
  CHECK(v == std::vector<double>{0.4, 0.3, 0.3});

  // Fewer than p survivors is a collapse.
  CHECK_THROWS_AS(prune_support({1.0 - 2e-5, 1e-5, 1e-5}, c, 1e-4),
                  SupportCollapse);
}

TEST_CASE("a phase on an already optimal design stops immediately") {
  const CandidateSet c = segment({-1.0, 1.0});
  SolverConfig cfg;
  cfg.record_trace = true;
  const auto [w, trace] = run_phase({0.5, 0.5}, c, cfg);
  CHECK(w[0] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(w[1] == doctest::Approx(0.5).epsilon(1e-14));
  // One update is needed to observe the zero drift; it leaves w unchanged.
  CHECK(trace.rows.back().iteration <= 2);
}

TEST_CASE("a D phase on the coarse square grid reaches the known objective") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.record_trace = true;
  const auto [w, trace] = run_phase(initial_weights(c.n, InitMode::Uniform), c, cfg);

  REQUIRE(!trace.rows.empty());
  const double objective = trace.rows.back().objective;
  CHECK(objective > 4.4700);
  CHECK(objective < 4.4730);

  // Theorem-2 monotonicity: -log|M| never increases along the phase.
  for (size_t r = 1; r < trace.rows.size(); ++r)
    CHECK(trace.rows[r].objective <= trace.rows[r - 1].objective + 1e-10);

  // Iteration numbers are strictly increasing and the first drift is zero.
  for (size_t r = 1; r < trace.rows.size(); ++r)
    CHECK(trace.rows[r].iteration > trace.rows[r - 1].iteration);
  CHECK(trace.rows.front().iteration == 0);
  CHECK(trace.rows.front().drift == 0.0);
  CHECK(trace.max_simplex_deviation <= 1e-12);
}

TEST_CASE("trace stride thins rows but always keeps the final state") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.record_trace = true;
  cfg.trace_stride = 7;
  const auto [w, trace] = run_phase(initial_weights(c.n, InitMode::Uniform), c, cfg);
  REQUIRE(trace.rows.size() >= 2);
  for (size_t r = 0; r + 1 < trace.rows.size(); ++r)
    CHECK(trace.rows[r].iteration % 7 == 0);

  SolverConfig dense = cfg;
  dense.trace_stride = 1;
  const auto [wd, full] = run_phase(initial_weights(c.n, InitMode::Uniform), c, dense);
  CHECK(trace.rows.back().iteration == full.rows.back().iteration);
  CHECK(trace.rows.back().objective == full.rows.back().objective);
}

TEST_CASE("A-criterion traces are monotone on the test grids") {
  // The A analogue of the monotonicity theorem is only conjectured, so a
  // violation is surfaced as a warning rather than a failure.
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.criterion = Criterion::A;
  cfg.record_trace = true;
  const auto [w, trace] = run_phase(initial_weights(c.n, InitMode::Uniform), c, cfg);
  for (size_t r = 1; r < trace.rows.size(); ++r)
    WARN(trace.rows[r].objective <= trace.rows[r - 1].objective + 1e-8);
}

TEST_CASE("solving the coarse grid reproduces the published D design") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  const auto [design, trace] = solve(c, cfg);

  CHECK(design.support_size() == 9);
  CHECK(design.objective == doctest::Approx(4.4718).epsilon(5e-4));
  CHECK(!design.iteration_cap_reached);
  check_simplex(design.support_weights, 1e-10);

  CHECK(weight_of(design, {-1, -1}) == doctest::Approx(0.1457).epsilon(0.02));
  CHECK(weight_of(design, {0, -1}) == doctest::Approx(0.0803).epsilon(0.02));
  CHECK(weight_of(design, {0, 0}) == doctest::Approx(0.0960).epsilon(0.02));

  // Fixed-point characterization at convergence: every support point's
  // variance statistic sits at the threshold p within 1%, and no candidate
  // exceeds it by more than 1%.
  std::vector<double> full(c.n, 0.0);
  for (int i = 0; i < design.support_size(); ++i)
    full[design.support_indices[i]] = design.support_weights[i];
  const SymMatrix info_inv =
      inverse_spd(cholesky(information_matrix(c, full)));
  const double p = static_cast<double>(c.p);
  for (int i = 0; i < c.n; ++i) {
    const double d = quad_form(info_inv, c.regressor(i), c.p);
    CHECK(d <= p * 1.01);
    if (full[i] > 0.0) CHECK(d >= p * 0.99);
  }
}

TEST_CASE("solving the coarse grid reproduces the published A design") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.criterion = Criterion::A;
  cfg.gamma = 1e-6;
  const auto [design, trace] = solve(c, cfg);

  CHECK(design.objective == doctest::Approx(17.8922).epsilon(1e-3));
  CHECK(weight_of(design, {-1, -1}) == doctest::Approx(0.0939).epsilon(0.03));
  CHECK(weight_of(design, {0, -1}) == doctest::Approx(0.0978).epsilon(0.03));
  CHECK(weight_of(design, {0, 0}) == doctest::Approx(0.2332).epsilon(0.03));
}

TEST_CASE("permuting the candidates permutes the solution") {
  const CandidateSet c = disk_grid_points(quad2(), 7);

  // Reverse the candidate order.
  CandidateSet reversed;
  reversed.n = c.n;
  reversed.q = c.q;
  reversed.p = c.p;
  for (int i = c.n - 1; i >= 0; --i) {
    reversed.points.insert(reversed.points.end(), c.point(i), c.point(i) + c.q);
    reversed.regressors.insert(reversed.regressors.end(), c.regressor(i),
                               c.regressor(i) + c.p);
  }

  SolverConfig cfg;
  const auto [a, ta] = solve(c, cfg);
  const auto [b, tb] = solve(reversed, cfg);

  CHECK(std::abs(a.objective - b.objective) <= 1e-12);
  REQUIRE(a.support_size() == b.support_size());

  // Match supports through the reversal map i -> n-1-i.  The weights agree
  // to rounding: reversing the summation order inside the information matrix
  // shifts the last few ulps.
  for (int i = 0; i < a.support_size(); ++i) {
    const int mirrored = c.n - 1 - a.support_indices[i];
    bool found = false;
    for (int j = 0; j < b.support_size(); ++j) {
      if (b.support_indices[j] == mirrored) {
        CHECK(b.support_weights[j] ==
              doctest::Approx(a.support_weights[i]).epsilon(1e-9));
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("solver output is bit-identical across thread counts") {
  const CandidateSet c = disk_grid_points(quad2(), 15);
  SolverConfig base;
  base.gamma = 1e-5;
  const auto [one, t1] = solve(c, base);

  SolverConfig threaded = base;
  threaded.thread_count = 4;
  const auto [four, t4] = solve(c, threaded);

  CHECK(one.objective == four.objective);
  CHECK(one.support_weights == four.support_weights);
  CHECK(one.support_indices == four.support_indices);
  CHECK(one.equivalence_gap == four.equivalence_gap);
}

TEST_CASE("a degenerate start fails fast instead of regularizing") {
  // A single support point cannot carry a two-parameter information matrix.
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  CHECK_THROWS_AS(d_update({1.0, 0.0, 0.0}, c), SingularInformation);
  CHECK_THROWS_AS(a_update({0.0, 1.0, 0.0}, c), SingularInformation);

  const CandidateSet lone = segment({0.5});
  SolverConfig cfg;
  CHECK_THROWS_AS(solve(lone, cfg), SingularInformation);
}

TEST_CASE("vertex-direction baseline finds the two-point optimum") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  SolverConfig cfg;
  cfg.gamma = 1e-6;
  const auto [design, trace] = solve_vdm(c, cfg);
  CHECK(weight_of(design, {-1.0}) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(weight_of(design, {1.0}) == doctest::Approx(0.5).epsilon(1e-3));
  CHECK(weight_of(design, {0.0}) <= 1e-3);
}

TEST_CASE("vertex-direction baseline rests at the optimum") {
  // At the D-optimum max d = p, so the step size is zero and the run ends
  // on the spot.
  const CandidateSet c = segment({-1.0, 1.0});
  SolverConfig cfg;
  const auto [design, trace] = solve_vdm(c, cfg);
  CHECK(design.iterations == 0);
  CHECK(weight_of(design, {-1.0}) == 0.5);
  CHECK(weight_of(design, {1.0}) == 0.5);
}

TEST_CASE("vertex-direction baseline solves the A criterion too") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.criterion = Criterion::A;
  cfg.gamma = 1e-4;
  const auto [design, trace] = solve_vdm(c, cfg);
  CHECK(design.objective == doctest::Approx(17.8922).epsilon(1e-3));
  CHECK(!design.iteration_cap_reached);
}

TEST_CASE("multiplicative baseline with unit exponent matches one D step") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  SolverConfig cfg;
  cfg.max_iterations = 1;
  const auto [design, trace] = solve_mul(c, cfg, 1.0);
  CHECK(design.iteration_cap_reached);

  const std::vector<double> expected =
      d_update({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  REQUIRE(design.support_size() == 3);
  for (int i = 0; i < 3; ++i)
    CHECK(design.support_weights[i] ==
          doctest::Approx(expected[i]).epsilon(1e-13));
}

TEST_CASE("multiplicative baseline holds symmetric fixed points") {
  const CandidateSet c = segment({-1.0, 1.0});
  for (double lambda : {0.25, 0.5, 1.0}) {
    SolverConfig cfg;
    const auto [design, trace] = solve_mul(c, cfg, lambda);
    CHECK(weight_of(design, {-1.0}) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(weight_of(design, {1.0}) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("multiplicative baseline converges on the coarse grid") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  SolverConfig cfg;
  cfg.gamma = 1e-4;
  const auto [d_design, dt] = solve_mul(c, cfg, 0.0);
  CHECK(d_design.objective == doctest::Approx(4.4718).epsilon(1e-3));

  cfg.criterion = Criterion::A;
  const auto [a_design, at] = solve_mul(c, cfg, 0.0);
  CHECK(a_design.objective == doctest::Approx(17.8922).epsilon(1e-3));
}

TEST_CASE("mul exponent outside (0, 1] is rejected") {
  const CandidateSet c = segment({-1.0, 1.0});
  SolverConfig cfg;
  CHECK_THROWS_AS(solve_mul(c, cfg, 1.5), ConfigError);
  CHECK_THROWS_AS(solve_mul(c, cfg, -0.25), ConfigError);
}

TEST_CASE("solver configs are validated with every problem listed") {
  SolverConfig cfg;
  cfg.gamma = 0.0;
  cfg.delta = 1.5;
  cfg.max_iterations = 0;
  try {
    validate(cfg);
    FAIL("expected ConfigError");
  } catch (const ConfigError &e) {
    const std::string msg = e.what();
    CHECK(msg.find("gamma") != std::string::npos);
    CHECK(msg.find("delta") != std::string::npos);
    CHECK(msg.find("max_iterations") != std::string::npos);
  }

  SolverConfig ok;
  CHECK_NOTHROW(validate(ok));
}

TEST_CASE("run_solver dispatches on the configured algorithm") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  for (Algorithm alg : {Algorithm::Proposed, Algorithm::VDM, Algorithm::MUL}) {
    SolverConfig cfg;
    cfg.algorithm = alg;
    cfg.gamma = alg == Algorithm::Proposed ? 5e-4 : 1e-4;
    const auto [design, trace] = run_solver(c, cfg);
    CHECK(design.objective == doctest::Approx(4.4718).epsilon(1e-3));
  }
}

TEST_CASE("solver matches the exhaustive oracle on tiny instances") {
  // Two fixed instances here; the randomized battery lives in the
  // acceptance harness.
  const CandidateSet line = segment({-1.0, -0.2, 0.3, 1.0});
  const CandidateSet tiny = [&] {
    const FeatureMap map = FeatureMap::custom(2, {{0, 0}, {1, 0}, {0, 1}});
    return make_candidates(map, {-1, -1, 1, -0.5, 0.2, 1, -0.6, 0.8}, 4, 2);
  }();

  for (const CandidateSet *c : {&line, &tiny}) {
    const testing::OracleResult oracle = testing::brute_force_optimum(*c);

    SolverConfig cfg;
    cfg.gamma = 1e-7;
    const auto [d_design, dt] = solve(*c, cfg);
    CHECK(std::abs(d_design.objective - oracle.d_objective) <= 1e-3);

    cfg.criterion = Criterion::A;
    const auto [a_design, at] = solve(*c, cfg);
    CHECK(std::abs(a_design.objective - oracle.a_objective) <= 1e-3);
  }
}

TEST_CASE("iteration caps are reported, not hidden") {
  const CandidateSet c = square_grid_points(quad2(), 5);
  SolverConfig cfg;
  cfg.gamma = 1e-12;  // unreachable in the allotted steps
  cfg.max_iterations = 10;
  cfg.max_restart_rounds = 1;
  const auto [design, trace] = solve(c, cfg);
  CHECK(design.iteration_cap_reached);
  CHECK(design.iterations == 10);
  check_simplex(design.support_weights, 1e-10);
}
