#include "hidim/clt_inference.hpp"

#include <cmath>
#include <sstream>

#include "hidim/errors.hpp"

namespace hidim {

std::string_view to_string(Alternative alternative) {
  switch (alternative) {
  case Alternative::two_sided:
    return "two_sided";
  case Alternative::greater:
    return "greater";
  case Alternative::less:
    return "less";
  }
  return "two_sided";
}

Alternative parse_alternative(std::string_view text) {
  if (text == "two_sided" || text == "two-sided") {
    return Alternative::two_sided;
  }
  if (text == "greater") {
    return Alternative::greater;
  }
  if (text == "less") {
    return Alternative::less;
  }
  throw DomainError("unknown alternative '" + std::string(text) +
                    "' (expected two_sided, greater or less)");
}

TestReport standardize_t2(double t2, std::size_t n, std::size_t p,
                          Alternative alternative) {
  if (p < 1 || p >= n) {
    std::ostringstream msg;
    msg << "standardization needs 1 <= p < n, got p = " << p << ", n = " << n;
    throw DomainError(msg.str());
  }
  if (!(t2 >= 0.0) || !std::isfinite(t2)) {
    throw DomainError("T^2 must be finite and non-negative");
  }
  TestReport report;
  report.t2 = t2;
  report.n = n;
  report.p = p;
  report.c_n = static_cast<double>(p) / static_cast<double>(n);
  const auto moments = inverse_moments(MpModel(report.c_n));
  report.centering = report.c_n * moments.m1;
  report.scaling = std::sqrt(2.0 * report.c_n * moments.m2);
  report.zscore = std::sqrt(static_cast<double>(n)) *
                  (t2 / static_cast<double>(n) - report.centering) / report.scaling;
  report.alternative = alternative;
  report.p_value = p_value(report.zscore, alternative);
  return report;
}

double normal_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double p_value(double zscore, Alternative alternative) {
  switch (alternative) {
  case Alternative::greater:
    return normal_cdf(-zscore);
  case Alternative::less:
    return normal_cdf(zscore);
  case Alternative::two_sided:
    break;
  }
  // 2 (1 - Phi(|z|)) through the upper tail directly, so small p-values keep
  // their relative accuracy.
  return std::min(1.0, 2.0 * normal_cdf(-std::abs(zscore)));
}

double theorem2_variance(double c, const RealFunction &f, const QuadratureSpec &spec) {
  const MpModel model(c);
  const double mean = integral_f(model, f, spec);
  const double second = integral_f(model, [&](double x) {
    const double v = f(x);
    return v * v;
  }, spec);
  // Clamp tiny negative values produced by cancellation for near-constant f.
  return std::max(0.0, (2.0 / c) * (second - mean * mean));
}

double mean_norm_variance(double c, double g_prime_at_c) {
  if (!(c > 0.0)) {
    throw DomainError("mean-norm variance needs c > 0");
  }
  return 2.0 * c * g_prime_at_c * g_prime_at_c;
}

ComplexPoint process_covariance_leading_term(double c, ComplexPoint z1, ComplexPoint z2) {
  const MpModel model(c);
  const ComplexPoint md1 = companion_m(model, z1);
  const ComplexPoint md2 = companion_m(model, z2);
  const ComplexPoint bracket = (1.0 + md1) * (1.0 + md2) - c * md1 * md2;
  if (std::abs(bracket) < 1e-13) {
    std::ostringstream msg;
    msg << "process covariance kernel is singular at z1 = " << z1 << ", z2 = " << z2;
    throw SingularityError(msg.str());
  }
  return 2.0 / (c * z1 * z2 * bracket);
}

ComplexPoint process_covariance(double c, ComplexPoint z1, ComplexPoint z2) {
  const MpModel model(c);
  return process_covariance_leading_term(c, z1, z2) -
         2.0 * stieltjes_m(model, z1) * stieltjes_m(model, z2) / c;
}

ComplexPoint remark_covariance(double c, ComplexPoint z1, ComplexPoint z2) {
  const MpModel model(c);
  if (std::abs(z1 - z2) < 1e-6) {
    const ComplexPoint z = 0.5 * (z1 + z2);
    const ComplexPoint md = companion_m(model, z);
    const ComplexPoint dmd = companion_m_derivative(model, z);
    const ComplexPoint dh = md + z * dmd; // d(z md)/dz
    return 2.0 * dh * dh / (c * c * z * z * dmd);
  }
  const ComplexPoint md1 = companion_m(model, z1);
  const ComplexPoint md2 = companion_m(model, z2);
  const ComplexPoint h = z2 * md2 - z1 * md1;
  const ComplexPoint denom = c * c * z1 * z2 * (z1 - z2) * (md1 - md2);
  if (std::abs(denom) == 0.0) {
    throw SingularityError("remark covariance denominator vanishes");
  }
  return 2.0 * h * h / denom;
}

double covariance_identity_residual(double c, ComplexPoint z1, ComplexPoint z2) {
  const MpModel model(c);
  const ComplexPoint shift = 2.0 * stieltjes_m(model, z1) * stieltjes_m(model, z2) / c;
  return std::abs(process_covariance_leading_term(c, z1, z2) -
                  (remark_covariance(c, z1, z2) + shift));
}

double companion_quotient_residual(double c, ComplexPoint z1, ComplexPoint z2) {
  const MpModel model(c);
  const ComplexPoint md1 = companion_m(model, z1);
  const ComplexPoint md2 = companion_m(model, z2);
  const ComplexPoint prod = (1.0 + md1) * (1.0 + md2);
  const ComplexPoint rhs = md1 * md2 * prod / (prod - c * md1 * md2);
  if (std::abs(z1 - z2) < 1e-6) {
    return std::abs(companion_m_derivative(model, 0.5 * (z1 + z2)) - rhs);
  }
  return std::abs((md1 - md2) / (z1 - z2) - rhs);
}

double companion_reciprocal_residual(double c, ComplexPoint z) {
  const MpModel model(c);
  return std::abs(1.0 / (1.0 + c * stieltjes_m(model, z)) + z * companion_m(model, z));
}

CovarianceGrid covariance_grid(double c, const std::vector<ComplexPoint> &zpoints) {
  const auto k = static_cast<Eigen::Index>(zpoints.size());
  CovarianceGrid grid{zpoints, Eigen::MatrixXcd(k, k), Eigen::MatrixXcd(k, k)};
  for (Eigen::Index i = 0; i < k; ++i) {
    for (Eigen::Index j = 0; j < k; ++j) {
      grid.process_values(i, j) = process_covariance(c, zpoints[i], zpoints[j]);
      grid.remark_values(i, j) = remark_covariance(c, zpoints[i], zpoints[j]);
    }
  }
  return grid;
}

} // namespace hidim
