#include "optdes/optimality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "optdes/errors.hpp"
#include "optdes/information.hpp"
#include "optdes/spd_linalg.hpp"

namespace optdes {

namespace {

void check_inputs(const std::vector<double> &w, const CandidateSet &c) {
  if (c.n <= 0) throw std::invalid_argument("certificate: empty candidate set");
  if (static_cast<int>(w.size()) != c.n)
    throw std::invalid_argument("certificate: weight count does not match candidates");
}

// Shared scan: the lowest-index candidate maximizing the statistic.
struct MaxScan {
  double value;
  int index;
};

template <class StatFn>
MaxScan max_over_candidates(const CandidateSet &c, const StatFn &stat) {
  MaxScan best{stat(0), 0};
  for (int i = 1; i < c.n; ++i) {
    const double v = stat(i);
    if (v > best.value) best = {v, i};
  }
  return best;
}

Certificate finish_certificate(const CandidateSet &c, Criterion crit,
                               double threshold, const MaxScan &best,
                               double efficiency) {
  Certificate cert;
  cert.criterion = crit;
  cert.max_statistic = best.value;
  cert.threshold = threshold;
  cert.gap = best.value - threshold;
  cert.argmax_point.assign(c.point(best.index), c.point(best.index) + c.q);
  cert.efficiency_lower_bound = efficiency;
  if (cert.gap < -1e-6)
    throw CertificateFault("equivalence statistic fell below its optimality "
                           "threshold by " +
                           std::to_string(-cert.gap) +
                           "; the certificate computation is numerically broken");
  return cert;
}

}  // namespace

Certificate d_certificate(const std::vector<double> &w, const CandidateSet &c) {
  check_inputs(w, c);
  CholeskyFactor factor = factor_information(c, w);

  const int p = c.p;
  std::vector<double> work(p);
  MaxScan best = max_over_candidates(c, [&](int i) {
    const double *f = c.regressor(i);
    std::copy(f, f + p, work.begin());
    factor.forward_solve(work.data());
    double d = 0.0;
    for (int a = 0; a < p; ++a) d += work[a] * work[a];
    return d;
  });

  const double bound = std::min(1.0, p / best.value);
  return finish_certificate(c, Criterion::D, static_cast<double>(p), best, bound);
}

Certificate a_certificate(const std::vector<double> &w, const CandidateSet &c) {
  check_inputs(w, c);
  CholeskyFactor factor = factor_information(c, w);

  const int p = c.p;
  const double trace_inv = trace_inverse(factor);
  std::vector<double> work(p);
  MaxScan best = max_over_candidates(c, [&](int i) {
    const double *f = c.regressor(i);
    std::copy(f, f + p, work.begin());
    factor.inverse_apply(work.data());  // work = M^-1 f
    double s = 0.0;
    for (int a = 0; a < p; ++a) s += work[a] * work[a];
    return s / trace_inv;
  });

  const double bound = std::clamp(2.0 - best.value, 1e-300, 1.0);
  return finish_certificate(c, Criterion::A, 1.0, best, bound);
}

Certificate make_certificate(const std::vector<double> &w, const CandidateSet &c,
                             Criterion crit) {
  return crit == Criterion::D ? d_certificate(w, c) : a_certificate(w, c);
}

bool certified(const Certificate &cert, double relative_tolerance) {
  return cert.gap / cert.threshold <= relative_tolerance;
}

double d_efficiency(const std::vector<double> &test,
                    const std::vector<double> &reference, const CandidateSet &c,
                    bool normalized) {
  check_inputs(test, c);
  check_inputs(reference, c);
  const double ld_test = log_det(factor_information(c, test));
  const double ld_ref = log_det(factor_information(c, reference));
  if (normalized) return std::exp((ld_test - ld_ref) / c.p);
  return std::exp(ld_ref - ld_test);
}

double a_efficiency(const std::vector<double> &test,
                    const std::vector<double> &reference, const CandidateSet &c) {
  check_inputs(test, c);
  check_inputs(reference, c);
  const double tr_test = trace_inverse(factor_information(c, test));
  const double tr_ref = trace_inverse(factor_information(c, reference));
  return tr_ref / tr_test;
}

}  // namespace optdes
