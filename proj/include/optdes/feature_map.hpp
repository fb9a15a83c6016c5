#ifndef OPTDES_FEATURE_MAP_HPP_
#define OPTDES_FEATURE_MAP_HPP_

#include <string>
#include <vector>

namespace optdes {

enum class FeatureKind { FullQuadratic, QuadraticNoIntercept, Custom };

// Polynomial regressor map f : R^q -> R^p represented as an ordered list of
// monomial exponent vectors.  The term order is fixed and part of the
// interface (it defines CSV column semantics and weight positions):
//   FullQuadratic(q):        1, x1..xq, then xj*xk for j <= k in
//                            lexicographic (j, k) order; p = (q+1)(q+2)/2.
//   QuadraticNoIntercept(q): the same without the leading 1;
//                            p = q + q(q+1)/2.
//   Custom:                  caller-supplied exponent vectors, in order.
class FeatureMap {
 public:
  static FeatureMap full_quadratic(int q);
  static FeatureMap quadratic_no_intercept(int q);
  // terms[t][d] is the exponent of x_{d+1} in term t; terms must be nonempty.
  static FeatureMap custom(int q, std::vector<std::vector<int>> terms);

  FeatureKind kind() const { return kind_; }
  int input_dim() const { return q_; }
  int output_dim() const { return static_cast<int>(terms_.size()); }
  const std::vector<std::vector<int>> &terms() const { return terms_; }

  // Evaluates the regressor vector at x.  x must have input_dim() entries;
  // out receives output_dim() values.
  void evaluate(const double *x, double *out) const;
  std::vector<double> evaluate(const std::vector<double> &x) const;

 private:
  FeatureMap(FeatureKind kind, int q, std::vector<std::vector<int>> terms)
      : kind_(kind), q_(q), terms_(std::move(terms)) {}

  FeatureKind kind_;
  int q_;
  std::vector<std::vector<int>> terms_;
};

}  // namespace optdes

#endif  // OPTDES_FEATURE_MAP_HPP_
