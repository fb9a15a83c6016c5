#include "optdes/spd_linalg.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "optdes/errors.hpp"

namespace optdes {

namespace {
// Relative floor below which a Cholesky pivot is treated as zero.
constexpr double kPivotFloorScale = 1e-12;
}  // namespace

void CholeskyFactor::forward_solve(double *b) const {
  for (int i = 0; i < dim_; ++i) {
    double sum = b[i];
    const double *row = &lower_[static_cast<size_t>(i) * dim_];
    for (int j = 0; j < i; ++j) sum -= row[j] * b[j];
    b[i] = sum / row[i];
  }
}

void CholeskyFactor::backward_solve(double *b) const {
  for (int i = dim_ - 1; i >= 0; --i) {
    double sum = b[i];
    for (int j = i + 1; j < dim_; ++j) {
      sum -= lower_[static_cast<size_t>(j) * dim_ + i] * b[j];
    }
    b[i] = sum / lower_[static_cast<size_t>(i) * dim_ + i];
  }
}

CholeskyFactor cholesky(const SymMatrix &m) {
  const int p = m.dim();
  double max_diag = 0.0;
  for (int i = 0; i < p; ++i) max_diag = std::max(max_diag, m(i, i));
  const double pivot_floor = kPivotFloorScale * max_diag;

  CholeskyFactor f;
  f.dim_ = p;
  f.lower_.assign(static_cast<size_t>(p) * p, 0.0);
  for (int j = 0; j < p; ++j) {
    double diag = m(j, j);
    const double *colj = &f.lower_[static_cast<size_t>(j) * p];
    for (int k = 0; k < j; ++k) diag -= colj[k] * colj[k];
    if (!(diag > pivot_floor)) {
      std::ostringstream msg;
      msg << "cholesky: pivot " << diag << " at column " << j
          << " is at or below the floor " << pivot_floor
          << "; matrix is not positive definite";
      throw NotPositiveDefinite(msg.str());
    }
    const double root = std::sqrt(diag);
    f.lower_[static_cast<size_t>(j) * p + j] = root;
    for (int i = j + 1; i < p; ++i) {
      double sum = m(i, j);
      const double *coli = &f.lower_[static_cast<size_t>(i) * p];
      for (int k = 0; k < j; ++k) sum -= coli[k] * colj[k];
      f.lower_[static_cast<size_t>(i) * p + j] = sum / root;
    }
  }
  return f;
}

double log_det(const CholeskyFactor &f) {
  double sum = 0.0;
  for (int i = 0; i < f.dim(); ++i) sum += std::log(f(i, i));
  return 2.0 * sum;
}

SymMatrix inverse_spd(const CholeskyFactor &f) {
  const int p = f.dim();
  SymMatrix inv(p);
  std::vector<double> col(p);
  // Solve M x = e_j column by column; the result is symmetric up to
  // rounding, and set() symmetrizes storage exactly.
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i) col[i] = (i == j) ? 1.0 : 0.0;
    f.inverse_apply(col.data());
    for (int i = j; i < p; ++i) inv.set(i, j, col[i]);
  }
  return inv;
}

double trace_inverse(const CholeskyFactor &f) {
  const int p = f.dim();
  // tr(M^-1) = |L^-1|_F^2; build L^-1 one column at a time by forward
  // substitution against unit vectors.
  std::vector<double> col(p);
  double total = 0.0;
  for (int j = 0; j < p; ++j) {
    for (int i = 0; i < p; ++i) col[i] = (i == j) ? 1.0 : 0.0;
    f.forward_solve(col.data());
    for (int i = j; i < p; ++i) total += col[i] * col[i];
  }
  return total;
}

namespace {
void check_dim(const SymMatrix &m, int n, const char *where) {
  if (m.dim() != n) {
    std::ostringstream msg;
    msg << where << ": vector length " << n << " does not match matrix dimension "
        << m.dim();
    throw std::invalid_argument(msg.str());
  }
}
}  // namespace

double quad_form(const SymMatrix &m, const double *v, int n) {
  check_dim(m, n, "quad_form");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += m(i, j) * v[j];
    total += v[i] * row;
  }
  return total;
}

double quad_form(const SymMatrix &m, const std::vector<double> &v) {
  return quad_form(m, v.data(), static_cast<int>(v.size()));
}

double quad_form_squared(const SymMatrix &m, const double *v, int n) {
  check_dim(m, n, "quad_form_squared");
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) row += m(i, j) * v[j];
    total += row * row;
  }
  return total;
}

double quad_form_squared(const SymMatrix &m, const std::vector<double> &v) {
  return quad_form_squared(m, v.data(), static_cast<int>(v.size()));
}

}  // namespace optdes
