#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "optdes/feature_map.hpp"

using namespace optdes;

namespace {

void check_vector(const std::vector<double> &got,
                  const std::vector<double> &want) {
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < want.size(); ++i) CHECK(got[i] == want[i]);
}

}  // namespace

TEST_CASE("full quadratic in two variables evaluates known points") {
  const FeatureMap map = FeatureMap::full_quadratic(2);
  CHECK(map.input_dim() == 2);
  CHECK(map.output_dim() == 6);
  CHECK(map.kind() == FeatureKind::FullQuadratic);

  // Term order: 1, x1, x2, x1^2, x1*x2, x2^2.
  check_vector(map.evaluate({0.0, 0.0}), {1, 0, 0, 0, 0, 0});
  check_vector(map.evaluate({1.0, -1.0}), {1, 1, -1, 1, -1, 1});
  check_vector(map.evaluate({0.5, 2.0}), {1, 0.5, 2.0, 0.25, 1.0, 4.0});
}

TEST_CASE("full quadratic in three variables has ten terms") {
  const FeatureMap map = FeatureMap::full_quadratic(3);
  CHECK(map.output_dim() == 10);
  CHECK(map.evaluate({0.3, -0.7, 0.1}).size() == 10);
}

TEST_CASE("full quadratic output length is (q+1)(q+2)/2 for q up to 14") {
  for (int q = 1; q <= 14; ++q) {
    const FeatureMap map = FeatureMap::full_quadratic(q);
    CHECK(map.output_dim() == (q + 1) * (q + 2) / 2);
    const std::vector<double> x(q, 0.25);
    CHECK(map.evaluate(x).size() == static_cast<size_t>(map.output_dim()));
  }
}

TEST_CASE("quadratic without intercept drops only the constant term") {
  const FeatureMap map = FeatureMap::quadratic_no_intercept(3);
  CHECK(map.output_dim() == 9);
  CHECK(map.kind() == FeatureKind::QuadraticNoIntercept);

  // Term order: x1, x2, x3, x1^2, x1x2, x1x3, x2^2, x2x3, x3^2.
  check_vector(map.evaluate({0.0, 0.0, 1.0}), {0, 0, 1, 0, 0, 0, 0, 0, 1});
  check_vector(map.evaluate({1.0, 1.0, 1.0}), {1, 1, 1, 1, 1, 1, 1, 1, 1});

  for (int q = 1; q <= 10; ++q)
    CHECK(FeatureMap::quadratic_no_intercept(q).output_dim() ==
          q + q * (q + 1) / 2);
}

TEST_CASE("term order is intercept, linear, then (j,k) pairs with j <= k") {
  const FeatureMap map = FeatureMap::full_quadratic(3);
  const std::vector<std::vector<int>> want = {
      {0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {2, 0, 0},
      {1, 1, 0}, {1, 0, 1}, {0, 2, 0}, {0, 1, 1}, {0, 0, 2}};
  REQUIRE(map.terms() == want);
}

TEST_CASE("custom maps evaluate caller-supplied monomials in order") {
  // A cubic-ish map: 1, x2, x1^3, x1*x2^2.
  const FeatureMap map = FeatureMap::custom(
      2, {{0, 0}, {0, 1}, {3, 0}, {1, 2}});
  CHECK(map.kind() == FeatureKind::Custom);
  CHECK(map.output_dim() == 4);
  check_vector(map.evaluate({2.0, 3.0}), {1, 3, 8, 18});
}

TEST_CASE("custom maps reject malformed term lists") {
  CHECK_THROWS_AS(FeatureMap::custom(2, {}), std::invalid_argument);
  CHECK_THROWS_AS(FeatureMap::custom(2, {{1, 0, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(FeatureMap::custom(2, {{1, -1}}), std::invalid_argument);
  CHECK_THROWS_AS(FeatureMap::full_quadratic(0), std::invalid_argument);
}

TEST_CASE("evaluating a point of the wrong dimension is an error") {
  const FeatureMap map = FeatureMap::full_quadratic(2);
  CHECK_THROWS_AS(map.evaluate({1.0}), std::invalid_argument);
  CHECK_THROWS_AS(map.evaluate({1.0, 2.0, 3.0}), std::invalid_argument);
}
