#ifndef OPTDES_OPTIMALITY_HPP_
#define OPTDES_OPTIMALITY_HPP_

#include <vector>

#include "optdes/candidate_set.hpp"
#include "optdes/solver.hpp"

namespace optdes {

// Equivalence-theorem certificate for a design: the largest variance-type
// statistic over the candidate set against its optimality threshold.  A
// gap near zero certifies the design; a gap below -1e-6 is numerically
// impossible for a valid statistic and raises CertificateFault.
struct Certificate {
  Criterion criterion = Criterion::D;
  double max_statistic = 0.0;
  double threshold = 0.0;  // p for D, 1 for A
  double gap = 0.0;        // max_statistic - threshold
  std::vector<double> argmax_point;  // coordinates of the attaining candidate
  double efficiency_lower_bound = 0.0;  // in (0, 1]
};

// D certificate: max_i f_i' M^-1 f_i against threshold p, with the
// efficiency lower bound p / max_statistic.
Certificate d_certificate(const std::vector<double> &w, const CandidateSet &c);

// A certificate: max_i f_i' M^-2 f_i / tr(M^-1) against threshold 1, with
// the efficiency lower bound 2 - max_statistic (clamped into (0, 1]).
Certificate a_certificate(const std::vector<double> &w, const CandidateSet &c);

// Dispatches on the criterion.
Certificate make_certificate(const std::vector<double> &w, const CandidateSet &c,
                             Criterion crit);

// True when the relative gap (gap / threshold) is at most the tolerance.
bool certified(const Certificate &cert, double relative_tolerance = 1e-2);

// Determinant-ratio D efficiency of `test` against `reference`:
//   |M(reference)| / |M(test)|,
// which exceeds 1 when the reference is the better design.  With
// `normalized`, returns the conventional (|M(test)| / |M(reference)|)^(1/p)
// in (0, 1] instead.
double d_efficiency(const std::vector<double> &test,
                    const std::vector<double> &reference, const CandidateSet &c,
                    bool normalized = false);

// Trace-ratio A efficiency: tr(M(reference)^-1) / tr(M(test)^-1), at most 1
// when the reference is the better design.
double a_efficiency(const std::vector<double> &test,
                    const std::vector<double> &reference, const CandidateSet &c);

}  // namespace optdes

#endif  // OPTDES_OPTIMALITY_HPP_
