#include <cmath>
#include <vector>

#include "doctest.h"

#include "optdes/candidate_set.hpp"
#include "optdes/errors.hpp"
#include "optdes/feature_map.hpp"
#include "optdes/information.hpp"
#include "optdes/optimality.hpp"
#include "optdes/rng.hpp"
#include "optdes/solver.hpp"
#include "optdes/spd_linalg.hpp"
#include "oracle.hpp"

using namespace optdes;

namespace {

CandidateSet segment(const std::vector<double> &xs) {
  const FeatureMap map = FeatureMap::custom(1, {{0}, {1}});
  std::vector<double> pts(xs);
  return make_candidates(map, pts, static_cast<int>(xs.size()), 1);
}

const FeatureMap &quad2() {
  static const FeatureMap map = FeatureMap::full_quadratic(2);
  return map;
}

}  // namespace

TEST_CASE("D certificate of the two-point optimum closes the gap") {
  const CandidateSet c = segment({-1.0, 1.0});
  const Certificate cert = d_certificate({0.5, 0.5}, c);
  CHECK(cert.criterion == Criterion::D);
  CHECK(cert.threshold == 2.0);
  CHECK(cert.max_statistic == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(std::abs(cert.gap) <= 1e-12);
  CHECK(cert.efficiency_lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certified(cert));
}

TEST_CASE("D certificate of the uniform three-point design") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const Certificate cert = d_certificate({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  CHECK(cert.max_statistic == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(cert.gap == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(cert.efficiency_lower_bound == doctest::Approx(0.8).epsilon(1e-12));
  // Lowest-index attainer: both endpoints reach 2.5 and -1 comes first.
  REQUIRE(cert.argmax_point.size() == 1);
  CHECK(cert.argmax_point[0] == -1.0);
  CHECK_FALSE(certified(cert));
}

TEST_CASE("A certificate of the two-point optimum closes the gap") {
  const CandidateSet c = segment({-1.0, 1.0});
  const Certificate cert = a_certificate({0.5, 0.5}, c);
  CHECK(cert.threshold == 1.0);
  CHECK(cert.max_statistic == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(cert.gap) <= 1e-12);
  CHECK(cert.efficiency_lower_bound == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(certified(cert));
}

TEST_CASE("A certificate of the uniform three-point design") {
  // M = diag(1, 2/3), M^-2 = diag(1, 2.25), tr(M^-1) = 2.5; statistics are
  // (3.25, 1, 3.25) / 2.5, so the max is 1.3.
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const Certificate cert = a_certificate({1.0 / 3, 1.0 / 3, 1.0 / 3}, c);
  CHECK(cert.max_statistic == doctest::Approx(1.3).epsilon(1e-12));
  CHECK(cert.gap == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(cert.efficiency_lower_bound == doctest::Approx(0.7).epsilon(1e-12));
  CHECK_FALSE(certified(cert));
}

TEST_CASE("certification is a relative comparison against the threshold") {
  Certificate cert;
  cert.criterion = Criterion::D;
  cert.threshold = 6.0;
  cert.gap = 0.05;
  CHECK(certified(cert));          // 0.05 / 6 < 1e-2
  CHECK(certified(cert, 1e-2));
  CHECK_FALSE(certified(cert, 1e-3));
  cert.gap = 0.30;
  CHECK_FALSE(certified(cert));    // 0.30 / 6 = 5e-2
  CHECK(certified(cert, 0.06));
}

TEST_CASE("the weighted mean statistics pin both certificates") {
  // Identities Sum w_i f_i' M^-1 f_i = p and Sum w_i f_i' M^-2 f_i =
  // tr(M^-1) hold for every simplex weight vector, which also forces
  // max >= threshold.
  const CandidateSet c = disk_grid_points(quad2(), 9);
  Rng rng(17);
  for (int rep = 0; rep < 6; ++rep) {
    const std::vector<double> w = dirichlet_uniform(c.n, rng);
    const SymMatrix m = information_matrix(c, w);
    const CholeskyFactor factor = cholesky(m);
    const SymMatrix inv = inverse_spd(factor);

    double mean_d = 0.0;
    double mean_s = 0.0;
    for (int i = 0; i < c.n; ++i) {
      mean_d += w[i] * quad_form(inv, c.regressor(i), c.p);
      mean_s += w[i] * quad_form_squared(inv, c.regressor(i), c.p);
    }
    CHECK(mean_d == doctest::Approx(c.p).epsilon(1e-10));
    CHECK(mean_s == doctest::Approx(trace_inverse(factor)).epsilon(1e-10));

    CHECK(d_certificate(w, c).max_statistic >= c.p - 1e-9);
    CHECK(a_certificate(w, c).max_statistic >= 1.0 - 1e-9);
  }
}

TEST_CASE("exhaustively optimal designs certify with tiny gaps") {
  const CandidateSet c = segment({-1.0, -0.4, 0.1, 0.7, 1.0});
  const testing::OracleResult oracle = testing::brute_force_optimum(c);
  CHECK(d_certificate(oracle.d_weights, c).gap <= 2e-3);
  CHECK(a_certificate(oracle.a_weights, c).gap <= 2e-3);
}

TEST_CASE("a statistic below the threshold is a computation fault") {
  // Scaling all weights by 1.2 inflates M and deflates every statistic, so
  // the "certificate" would claim better-than-optimal: exactly the fault
  // the guard exists for.
  const CandidateSet c = segment({-1.0, 1.0});
  CHECK_THROWS_AS(d_certificate({0.6, 0.6}, c), CertificateFault);
  CHECK_THROWS_AS(a_certificate({0.6, 0.6}, c), CertificateFault);
}

TEST_CASE("certificates reject degenerate weights") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  CHECK_THROWS_AS(d_certificate({0.0, 1.0, 0.0}, c), SingularInformation);
  CHECK_THROWS_AS(d_certificate({0.5, 0.5}, c), std::invalid_argument);
}

TEST_CASE("make_certificate dispatches on the criterion") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const std::vector<double> w = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  CHECK(make_certificate(w, c, Criterion::D).threshold == 2.0);
  CHECK(make_certificate(w, c, Criterion::A).threshold == 1.0);
}

TEST_CASE("D efficiency follows the determinant-ratio orientation") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const std::vector<double> optimal = {0.5, 0.0, 0.5};
  const std::vector<double> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};

  CHECK(d_efficiency(uniform, uniform, c) == doctest::Approx(1.0).epsilon(1e-14));

  // det M(optimal) = 1, det M(uniform) = 2/3: the raw ratio of the better
  // reference over the worse test exceeds 1.
  const double raw = d_efficiency(uniform, optimal, c);
  CHECK(raw == doctest::Approx(1.5).epsilon(1e-12));

  // The normalized variant is the conventional per-parameter efficiency in
  // (0, 1]: (det_test / det_ref)^(1/p).
  const double normalized = d_efficiency(uniform, optimal, c, true);
  CHECK(normalized == doctest::Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-12));
  CHECK(d_efficiency(optimal, optimal, c, true) ==
        doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("A efficiency is the inverse-trace ratio") {
  const CandidateSet c = segment({-1.0, 0.0, 1.0});
  const std::vector<double> optimal = {0.5, 0.0, 0.5};
  const std::vector<double> uniform = {1.0 / 3, 1.0 / 3, 1.0 / 3};

  CHECK(a_efficiency(uniform, uniform, c) == doctest::Approx(1.0).epsilon(1e-14));
  // tr M^-1 is 2 at the optimum and 2.5 under uniform weights.
  CHECK(a_efficiency(uniform, optimal, c) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("efficiencies ignore candidate ordering") {
  const CandidateSet c = square_grid_points(quad2(), 3);

  CandidateSet reversed;
  reversed.n = c.n;
  reversed.q = c.q;
  reversed.p = c.p;
  for (int i = c.n - 1; i >= 0; --i) {
    reversed.points.insert(reversed.points.end(), c.point(i), c.point(i) + c.q);
    reversed.regressors.insert(reversed.regressors.end(), c.regressor(i),
                               c.regressor(i) + c.p);
  }

  Rng rng(23);
  const std::vector<double> test = dirichlet_uniform(c.n, rng);
  const std::vector<double> reference = dirichlet_uniform(c.n, rng);
  std::vector<double> test_rev(test.rbegin(), test.rend());
  std::vector<double> reference_rev(reference.rbegin(), reference.rend());

  CHECK(d_efficiency(test, reference, c) ==
        doctest::Approx(d_efficiency(test_rev, reference_rev, reversed))
            .epsilon(1e-12));
  CHECK(a_efficiency(test, reference, c) ==
        doctest::Approx(a_efficiency(test_rev, reference_rev, reversed))
            .epsilon(1e-12));
}

TEST_CASE("converged designs certify over their full candidate sets") {
  const CandidateSet c = square_grid_points(quad2(), 3);
  for (Criterion crit : {Criterion::D, Criterion::A}) {
    SolverConfig cfg;
    cfg.criterion = crit;
    cfg.gamma = 1e-6;
    const auto [design, trace] = solve(c, cfg);

    std::vector<double> full(c.n, 0.0);
    for (int i = 0; i < design.support_size(); ++i)
      full[design.support_indices[i]] = design.support_weights[i];

    const Certificate cert = make_certificate(full, c, crit);
    CHECK(certified(cert));
    CHECK(cert.gap == doctest::Approx(design.equivalence_gap).epsilon(1e-12));
    CHECK(cert.efficiency_lower_bound > 0.99);
    CHECK(cert.efficiency_lower_bound <= 1.0 + 1e-12);
  }
}
