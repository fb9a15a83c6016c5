#include "optdes/feature_map.hpp"

#include <sstream>
#include <stdexcept>

namespace optdes {

namespace {
void check_q(int q, const char *where) {
  if (q < 1) {
    std::ostringstream msg;
    msg << where << ": input dimension must be at least 1, got " << q;
    throw std::invalid_argument(msg.str());
  }
}

// Quadratic exponent vectors in the fixed order: x1..xq, then xj*xk for
// j <= k lexicographically.
void append_linear_and_quadratic(int q, std::vector<std::vector<int>> *terms) {
  for (int d = 0; d < q; ++d) {
    std::vector<int> e(q, 0);
    e[d] = 1;
    terms->push_back(std::move(e));
  }
  for (int j = 0; j < q; ++j) {
    for (int k = j; k < q; ++k) {
      std::vector<int> e(q, 0);
      e[j] += 1;
      e[k] += 1;
      terms->push_back(std::move(e));
    }
  }
}
}  // namespace

FeatureMap FeatureMap::full_quadratic(int q) {
  check_q(q, "FeatureMap::full_quadratic");
  std::vector<std::vector<int>> terms;
  terms.push_back(std::vector<int>(q, 0));  // intercept
  append_linear_and_quadratic(q, &terms);
  return FeatureMap(FeatureKind::FullQuadratic, q, std::move(terms));
}

FeatureMap FeatureMap::quadratic_no_intercept(int q) {
  check_q(q, "FeatureMap::quadratic_no_intercept");
  std::vector<std::vector<int>> terms;
  append_linear_and_quadratic(q, &terms);
  return FeatureMap(FeatureKind::QuadraticNoIntercept, q, std::move(terms));
}

FeatureMap FeatureMap::custom(int q, std::vector<std::vector<int>> terms) {
  check_q(q, "FeatureMap::custom");
  if (terms.empty()) {
    throw std::invalid_argument("FeatureMap::custom: term list is empty");
  }
  for (const auto &e : terms) {
    if (static_cast<int>(e.size()) != q) {
      std::ostringstream msg;
      msg << "FeatureMap::custom: exponent vector of length " << e.size()
          << " does not match input dimension " << q;
      throw std::invalid_argument(msg.str());
    }
    for (int exp : e) {
      if (exp < 0) {
        throw std::invalid_argument(
            "FeatureMap::custom: exponents must be nonnegative");
      }
    }
  }
  return FeatureMap(FeatureKind::Custom, q, std::move(terms));
}

void FeatureMap::evaluate(const double *x, double *out) const {
  for (size_t t = 0; t < terms_.size(); ++t) {
    double value = 1.0;
    const std::vector<int> &e = terms_[t];
    for (int d = 0; d < q_; ++d) {
      for (int rep = 0; rep < e[d]; ++rep) value *= x[d];
    }
    out[t] = value;
  }
}

std::vector<double> FeatureMap::evaluate(const std::vector<double> &x) const {
  if (static_cast<int>(x.size()) != q_) {
    std::ostringstream msg;
    msg << "FeatureMap::evaluate: point of dimension " << x.size()
        << " does not match input dimension " << q_;
    throw std::invalid_argument(msg.str());
  }
  std::vector<double> out(terms_.size());
  evaluate(x.data(), out.data());
  return out;
}

}  // namespace optdes
