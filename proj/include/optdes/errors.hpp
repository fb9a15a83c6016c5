#ifndef OPTDES_ERRORS_HPP_
#define OPTDES_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace optdes {

// A symmetric matrix handed to the Cholesky factorization was not positive
// definite (a pivot fell below the pivot floor).  For information matrices
// this means the weighted regressors span fewer than p directions.
class NotPositiveDefinite : public std::runtime_error {
 public:
  explicit NotPositiveDefinite(const std::string &what)
      : std::runtime_error(what) {}
};

// The information matrix of a design is singular: the candidate regressors
// carrying positive weight do not span the parameter space.  Raised by the
// solver when the start or an iterate degenerates; no regularization is
// attempted.
class SingularInformation : public std::runtime_error {
 public:
  explicit SingularInformation(const std::string &what)
      : std::runtime_error(what) {}
};

// Pruning removed so many candidates that fewer than p remain, which makes
// every subsequent information matrix singular.  Signals that the pruning
// threshold delta is too large for the problem at hand.
class SupportCollapse : public std::runtime_error {
 public:
  explicit SupportCollapse(const std::string &what)
      : std::runtime_error(what) {}
};

// Rejection sampling failed to produce a point after an implausible number
// of draws.  Only reachable if the acceptance region of a sampler is broken.
class RejectionStall : public std::runtime_error {
 public:
  explicit RejectionStall(const std::string &what)
      : std::runtime_error(what) {}
};

// An optimality certificate came out better than the theoretical optimum by
// more than numerical noise, which indicates a fault in the inputs or the
// arithmetic rather than a genuinely superior design.
class CertificateFault : public std::runtime_error {
 public:
  explicit CertificateFault(const std::string &what)
      : std::runtime_error(what) {}
};

// A structured run configuration failed validation.  The message lists the
// offending keys so callers can surface them verbatim.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string &what) : std::runtime_error(what) {}
};

}  // namespace optdes

#endif  // OPTDES_ERRORS_HPP_
