#ifndef HIDIM_ERRORS_HPP_
#define HIDIM_ERRORS_HPP_

#include <complex>
#include <stdexcept>
#include <string>

namespace hidim {

// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A user-supplied function returned a non-finite value.
class EvaluationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Adaptive quadrature ran out of subdivisions before meeting its tolerance.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string &what, std::complex<double> best_estimate,
                   double error_estimate)
      : std::runtime_error(what), best_estimate_(best_estimate),
        error_estimate_(error_estimate) {}

  // Real-valued integrals carry a zero imaginary part.
  std::complex<double> best_estimate() const noexcept { return best_estimate_; }
  double error_estimate() const noexcept { return error_estimate_; }

 private:
  std::complex<double> best_estimate_;
  double error_estimate_;
};

// p >= n: the centered covariance cannot be full rank.
class RankDeficiencyError : public DomainError {
 public:
  using DomainError::DomainError;
};

// A matrix or kernel is too close to singular to be used.
class SingularityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input data (CSV parsing, degenerate samples, bad configs).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A Monte Carlo experiment lost too many replicates to be reported.
class ExperimentError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

} // namespace hidim

#endif // HIDIM_ERRORS_HPP_
