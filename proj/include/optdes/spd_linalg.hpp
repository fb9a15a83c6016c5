#ifndef OPTDES_SPD_LINALG_HPP_
#define OPTDES_SPD_LINALG_HPP_

#include <cstddef>
#include <vector>

namespace optdes {

// Dense symmetric matrix with full (unpacked) storage, sized for the small
// parameter dimensions of design problems (p up to a few hundred).  Symmetry
// is maintained by construction: set() writes both triangles.
class SymMatrix {
 public:
  SymMatrix() : dim_(0) {}
  explicit SymMatrix(int dim) : dim_(dim), data_(static_cast<size_t>(dim) * dim, 0.0) {}

  int dim() const { return dim_; }

  double operator()(int i, int j) const {
    return data_[static_cast<size_t>(i) * dim_ + j];
  }

  // Assigns entry (i, j) and its mirror (j, i).
  void set(int i, int j, double value) {
    data_[static_cast<size_t>(i) * dim_ + j] = value;
    data_[static_cast<size_t>(j) * dim_ + i] = value;
  }

  // Adds to entry (i, j) and, when off-diagonal, to its mirror.
  void add(int i, int j, double value) {
    data_[static_cast<size_t>(i) * dim_ + j] += value;
    if (i != j) data_[static_cast<size_t>(j) * dim_ + i] += value;
  }

  // Raw row-major storage; symmetric by construction.
  const double *data() const { return data_.data(); }
  double *data() { return data_.data(); }

 private:
  int dim_;
  std::vector<double> data_;
};

// Lower-triangular Cholesky factor L with M = L Lt.  Produced only by
// cholesky(), so the strictly-positive-diagonal invariant always holds.
class CholeskyFactor {
 public:
  int dim() const { return dim_; }

  // Entry (i, j) of L for j <= i; zero above the diagonal.
  double operator()(int i, int j) const {
    return lower_[static_cast<size_t>(i) * dim_ + j];
  }

  // Solves L y = b in place (forward substitution).  b has dim() entries.
  void forward_solve(double *b) const;

  // Solves Lt y = b in place (backward substitution).
  void backward_solve(double *b) const;

  // Overwrites b with M^-1 b, i.e. a forward then a backward solve.
  void inverse_apply(double *b) const { forward_solve(b); backward_solve(b); }

 private:
  friend CholeskyFactor cholesky(const SymMatrix &m);
  int dim_ = 0;
  std::vector<double> lower_;
};

// Factors a symmetric positive-definite matrix.  A pivot at or below
// 1e-12 times the largest diagonal entry of m raises NotPositiveDefinite,
// catching singular information matrices before NaNs can propagate.
CholeskyFactor cholesky(const SymMatrix &m);

// log|M| = 2 * sum(log L_ii).
double log_det(const CholeskyFactor &f);

// M^-1, reconstructed from the factor by triangular solves.
SymMatrix inverse_spd(const CholeskyFactor &f);

// tr(M^-1), computed as the squared Frobenius norm of L^-1.  Deliberately a
// different route than inverse_spd so the two can cross-check each other.
double trace_inverse(const CholeskyFactor &f);

// vt m v.
double quad_form(const SymMatrix &m, const double *v, int n);
double quad_form(const SymMatrix &m, const std::vector<double> &v);

// vt m^2 v = |m v|^2 for symmetric m.
double quad_form_squared(const SymMatrix &m, const double *v, int n);
double quad_form_squared(const SymMatrix &m, const std::vector<double> &v);

}  // namespace optdes

#endif  // OPTDES_SPD_LINALG_HPP_
