#include "hidim/spectral_core.hpp"

#include <cmath>
#include <sstream>

#include "hidim/errors.hpp"

namespace hidim {

DataMatrix::DataMatrix(Eigen::MatrixXd values) : values_(std::move(values)) {
  if (values_.rows() < 1 || values_.cols() < 1) {
    throw DataError("data matrix needs p >= 1 and n >= 1");
  }
  if (!values_.allFinite()) {
    throw DataError("data matrix contains non-finite entries");
  }
}

SpectralDecomp::SpectralDecomp(const Eigen::MatrixXd &symmetric) {
  if (symmetric.rows() != symmetric.cols() || symmetric.rows() == 0) {
    throw DomainError("spectral decomposition needs a non-empty square matrix");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(symmetric);
  if (solver.info() != Eigen::Success) {
    throw SingularityError("symmetric eigensolver failed to converge");
  }
  eigenvalues_ = solver.eigenvalues();
  eigenvectors_ = solver.eigenvectors();
}

Eigen::MatrixXd SpectralDecomp::reconstruct() const {
  return eigenvectors_ * eigenvalues_.asDiagonal() * eigenvectors_.transpose();
}

double WeightedEsd::integrate(const RealFunction &f) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    total += weights(i) * f(eigenvalues(i));
  }
  return total;
}

std::complex<double> WeightedEsd::stieltjes(std::complex<double> z) const {
  std::complex<double> total = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    total += weights(i) / (eigenvalues(i) - z);
  }
  return total;
}

double WeightedEsd::cdf(double x) const {
  double total = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    if (eigenvalues(i) <= x) {
      total += weights(i);
    }
  }
  return total;
}

Eigen::VectorXd sample_mean(const DataMatrix &data) {
  return data.values().rowwise().mean();
}

Eigen::MatrixXd centered_cov(const DataMatrix &data) {
  if (data.n() < 2) {
    throw DomainError("centered covariance needs n >= 2 observations");
  }
  const Eigen::MatrixXd centered =
      data.values().colwise() - sample_mean(data);
  const auto p = static_cast<Eigen::Index>(data.p());
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(p, p);
  cov.selfadjointView<Eigen::Lower>().rankUpdate(centered, 1.0 / static_cast<double>(data.n()));
  return cov.selfadjointView<Eigen::Lower>();
}

Eigen::MatrixXd gram_cov(const DataMatrix &data) {
  const auto p = static_cast<Eigen::Index>(data.p());
  Eigen::MatrixXd gram = Eigen::MatrixXd::Zero(p, p);
  gram.selfadjointView<Eigen::Lower>().rankUpdate(data.values(), 1.0 / static_cast<double>(data.n()));
  return gram.selfadjointView<Eigen::Lower>();
}

double hotelling_t2(const DataMatrix &data, const Eigen::VectorXd &mu0) {
  if (data.p() >= data.n()) {
    std::ostringstream msg;
    msg << "Hotelling T^2 needs p < n, got p = " << data.p() << ", n = " << data.n()
        << " (centered covariance is rank deficient)";
    throw RankDeficiencyError(msg.str());
  }
  if (static_cast<std::size_t>(mu0.size()) != data.p()) {
    std::ostringstream msg;
    msg << "mu0 has length " << mu0.size() << " but the data has p = " << data.p();
    throw DomainError(msg.str());
  }
  const Eigen::MatrixXd cov = centered_cov(data);
  const Eigen::VectorXd diff = sample_mean(data) - mu0;

  const Eigen::LDLT<Eigen::MatrixXd> ldlt(cov);
  // rcond() misreports exactly zero pivots, so the pivot ratio is checked too.
  const Eigen::VectorXd pivots = ldlt.vectorD().cwiseAbs();
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive() ||
      !(pivots.minCoeff() * kMaxConditionNumber > pivots.maxCoeff()) ||
      ldlt.rcond() < 1.0 / kMaxConditionNumber) {
    const Eigen::VectorXd eig = SpectralDecomp(cov).eigenvalues();
    std::ostringstream msg;
    msg << "centered covariance is numerically singular: smallest eigenvalue "
        << eig(0) << ", largest " << eig(eig.size() - 1)
        << " (condition limit " << kMaxConditionNumber << ")";
    throw SingularityError(msg.str());
  }
  const Eigen::VectorXd w = ldlt.solve(diff);
  const double t2 = static_cast<double>(data.n()) * diff.dot(w);
  return std::max(0.0, t2);
}

Eigen::MatrixXd matrix_function(const SpectralDecomp &decomp, const RealFunction &f) {
  const auto &lambda = decomp.eigenvalues();
  Eigen::VectorXd values(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    values(i) = f(lambda(i));
    if (!std::isfinite(values(i))) {
      std::ostringstream msg;
      msg << "matrix function is not finite at eigenvalue " << lambda(i);
      throw EvaluationError(msg.str());
    }
  }
  const auto &u = decomp.eigenvectors();
  return u * values.asDiagonal() * u.transpose();
}

WeightedEsd weighted_esd(const SpectralDecomp &decomp, const Eigen::VectorXd &sbar) {
  const double norm = sbar.norm();
  if (!(norm > 0.0)) {
    throw DomainError("weighted ESD needs a nonzero mean vector");
  }
  const Eigen::VectorXd t = decomp.eigenvectors().transpose() * (sbar / norm);
  return {decomp.eigenvalues(), t.array().square().matrix()};
}

double bilinear_form(const SpectralDecomp &decomp, const Eigen::VectorXd &sbar,
                     const RealFunction &f) {
  const double norm2 = sbar.squaredNorm();
  if (!(norm2 > 0.0)) {
    throw DomainError("bilinear form needs a nonzero mean vector");
  }
  return sbar.dot(matrix_function(decomp, f) * sbar) / norm2;
}

double bilinear_form(const DataMatrix &data, const RealFunction &f) {
  return bilinear_form(SpectralDecomp(centered_cov(data)), sample_mean(data), f);
}

ResolventIdentity resolvent_identity(const DataMatrix &data, std::complex<double> z) {
  using CMatrix = Eigen::MatrixXcd;
  using CVector = Eigen::VectorXcd;

  const Eigen::VectorXd sbar = sample_mean(data);
  const auto p = static_cast<Eigen::Index>(data.p());

  CMatrix shifted = gram_cov(data).cast<std::complex<double>>();
  shifted.diagonal().array() -= z;
  const Eigen::PartialPivLU<CMatrix> lu(shifted);
  if (!(std::abs(lu.determinant()) > 0.0) || lu.rcond() < 1.0 / kMaxConditionNumber) {
    throw SingularityError("resolvent of S is singular at the requested z");
  }
  const CVector csbar = sbar.cast<std::complex<double>>();
  const std::complex<double> q = csbar.dot(lu.solve(csbar));

  const SpectralDecomp decomp(centered_cov(data));
  const Eigen::VectorXd t = decomp.eigenvectors().transpose() * sbar;
  std::complex<double> rhs = 0.0;
  for (Eigen::Index i = 0; i < p; ++i) {
    const std::complex<double> gap = decomp.eigenvalues()(i) - z;
    if (std::abs(gap) < 1e-12 * std::max(1.0, std::abs(z))) {
      throw SingularityError("z coincides with an eigenvalue of the centered covariance");
    }
    rhs += t(i) * t(i) / gap;
  }
  const std::complex<double> lhs = q / (1.0 - q);
  return {lhs, rhs, std::abs(lhs - rhs)};
}

double resolvent_identity_check(const DataMatrix &data, std::complex<double> z) {
  return resolvent_identity(data, z).residual;
}

} // namespace hidim
