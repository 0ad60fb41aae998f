#ifndef HIDIM_SPECTRAL_CORE_HPP_
#define HIDIM_SPECTRAL_CORE_HPP_

#include <complex>
#include <cstddef>
#include <functional>

#include <Eigen/Dense>

#include "hidim/mp_law.hpp"

namespace hidim {

// p x n matrix of observations; column j is the observation vector s_j.
// Every entry is finite.
class DataMatrix {
 public:
  explicit DataMatrix(Eigen::MatrixXd values);

  const Eigen::MatrixXd &values() const noexcept { return values_; }
  std::size_t p() const noexcept { return static_cast<std::size_t>(values_.rows()); }
  std::size_t n() const noexcept { return static_cast<std::size_t>(values_.cols()); }
  double aspect_ratio() const noexcept {
    return static_cast<double>(p()) / static_cast<double>(n());
  }

  bool operator==(const DataMatrix &other) const {
    return values_.rows() == other.values_.rows() &&
           values_.cols() == other.values_.cols() && values_ == other.values_;
  }

 private:
  Eigen::MatrixXd values_;
};

// Eigendecomposition of a symmetric matrix. Eigenvalues ascend and column i
// of eigenvectors() belongs to eigenvalues()(i).
class SpectralDecomp {
 public:
  explicit SpectralDecomp(const Eigen::MatrixXd &symmetric);

  const Eigen::VectorXd &eigenvalues() const noexcept { return eigenvalues_; }
  const Eigen::MatrixXd &eigenvectors() const noexcept { return eigenvectors_; }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues_.size()); }

  // U diag(lambda) U^T
  Eigen::MatrixXd reconstruct() const;

 private:
  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

// Eigenvector-weighted spectral distribution sum_i t_i^2 1(lambda_i <= x)
// with t = U^T sbar / |sbar|.
struct WeightedEsd {
  Eigen::VectorXd eigenvalues;
  Eigen::VectorXd weights;

  double total_weight() const { return weights.sum(); }
  double integrate(const RealFunction &f) const;
  std::complex<double> stieltjes(std::complex<double> z) const;
  double cdf(double x) const;
};

Eigen::VectorXd sample_mean(const DataMatrix &data);

// n^{-1} sum_j (s_j - sbar)(s_j - sbar)^T. The divisor is n, not n - 1.
Eigen::MatrixXd centered_cov(const DataMatrix &data);

// n^{-1} X X^T
Eigen::MatrixXd gram_cov(const DataMatrix &data);

// Condition number above which a covariance is treated as singular.
inline constexpr double kMaxConditionNumber = 1e12;

// n (sbar - mu0)^T Scov^{-1} (sbar - mu0), obtained from a symmetric
// factorization of the centered covariance. Throws RankDeficiencyError when
// p >= n and SingularityError when the condition number exceeds 1e12.
double hotelling_t2(const DataMatrix &data, const Eigen::VectorXd &mu0);

// U diag(f(lambda_i)) U^T. Throws EvaluationError naming the eigenvalue where
// f is not finite.
Eigen::MatrixXd matrix_function(const SpectralDecomp &decomp, const RealFunction &f);

// Throws DomainError when sbar is the zero vector.
WeightedEsd weighted_esd(const SpectralDecomp &decomp, const Eigen::VectorXd &sbar);

// sbar^T f(Scov) sbar / |sbar|^2, computed through the explicit matrix
// function (independent of the weighted-ESD route).
double bilinear_form(const DataMatrix &data, const RealFunction &f);
double bilinear_form(const SpectralDecomp &decomp, const Eigen::VectorXd &sbar,
                     const RealFunction &f);

struct ResolventIdentity {
  std::complex<double> lhs; // q / (1 - q), q = sbar^T (S - zI)^{-1} sbar
  std::complex<double> rhs; // sbar^T (Scov - zI)^{-1} sbar
  double residual;          // |lhs - rhs|
};

// Evaluates both sides of the rank-one resolvent identity linking S and
// Scov = S - sbar sbar^T. The S side uses a complex LU solve, the Scov side
// the eigendecomposition of Scov. Throws SingularityError if either
// resolvent is singular at z.
ResolventIdentity resolvent_identity(const DataMatrix &data, std::complex<double> z);
double resolvent_identity_check(const DataMatrix &data, std::complex<double> z);

} // namespace hidim

#endif // HIDIM_SPECTRAL_CORE_HPP_
