#ifndef OPTDES_INFORMATION_HPP_
#define OPTDES_INFORMATION_HPP_

#include <vector>

#include "optdes/candidate_set.hpp"
#include "optdes/spd_linalg.hpp"

namespace optdes {

// Weighted information matrix M(w) = sum_i w_i f_i f_i'.  Accumulated over
// fixed-size candidate blocks combined pairwise, so the result is
// bit-identical for every thread count.
SymMatrix information_matrix(const CandidateSet &c, const std::vector<double> &w,
                             int thread_count = 1);

// Cholesky factor of M(w); throws SingularInformation when the weights do
// not span the model (instead of the lower-level NotPositiveDefinite).
CholeskyFactor factor_information(const CandidateSet &c,
                                  const std::vector<double> &w,
                                  int thread_count = 1);

}  // namespace optdes

#endif  // OPTDES_INFORMATION_HPP_
