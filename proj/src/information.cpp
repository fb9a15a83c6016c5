#include "optdes/information.hpp"

#include <stdexcept>
#include <string>

#include "optdes/errors.hpp"
#include "optdes/parallel.hpp"

namespace optdes {

SymMatrix information_matrix(const CandidateSet &c, const std::vector<double> &w,
                             int thread_count) {
  if (static_cast<int>(w.size()) != c.n)
    throw std::invalid_argument(
        "information_matrix: weight count does not match candidates");

  const int p = c.p;
  const int packed = p * (p + 1) / 2;
  std::vector<double> upper = reduce_blocks<std::vector<double>>(
      c.n, thread_count,
      [&](int begin, int end) {
        std::vector<double> part(packed, 0.0);
        for (int i = begin; i < end; ++i) {
          const double wi = w[i];
          if (wi == 0.0) continue;
          const double *f = c.regressor(i);
          int idx = 0;
          for (int a = 0; a < p; ++a) {
            const double fa = wi * f[a];
            for (int b = a; b < p; ++b) part[idx++] += fa * f[b];
          }
        }
        return part;
      },
      [packed](std::vector<double> lhs, const std::vector<double> &rhs) {
        for (int k = 0; k < packed; ++k) lhs[k] += rhs[k];
        return lhs;
      },
      std::vector<double>(packed, 0.0));

  SymMatrix m(p);
  int idx = 0;
  for (int a = 0; a < p; ++a)
    for (int b = a; b < p; ++b) m.set(a, b, upper[idx++]);
  return m;
}

CholeskyFactor factor_information(const CandidateSet &c,
                                  const std::vector<double> &w,
                                  int thread_count) {
  SymMatrix m = information_matrix(c, w, thread_count);
  try {
    return cholesky(m);
  } catch (const NotPositiveDefinite &e) {
    throw SingularInformation(
        std::string("information matrix is singular for the given weights: ") +
        e.what());
  }
}

}  // namespace optdes
