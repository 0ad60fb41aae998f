#ifndef HIDIM_CLT_INFERENCE_HPP_
#define HIDIM_CLT_INFERENCE_HPP_

#include <complex>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "hidim/mp_law.hpp"

namespace hidim {

enum class Alternative { two_sided, greater, less };

std::string_view to_string(Alternative alternative);
// Accepts "two_sided"/"two-sided", "greater", "less".
Alternative parse_alternative(std::string_view text);

// Dimension-corrected Hotelling T^2 test result. The centering and scaling
// are evaluated at the finite-sample ratio c_n = p/n.
struct TestReport {
  double t2 = 0.0;
  std::size_t n = 0;
  std::size_t p = 0;
  double c_n = 0.0;
  double centering = 0.0; // c_n * int x^{-1} dF_{c_n}
  double scaling = 0.0;   // sqrt(2 c_n int x^{-2} dF_{c_n})
  double zscore = 0.0;
  double p_value = 1.0;
  Alternative alternative = Alternative::two_sided;
};

// zscore = sqrt(n) (T^2/n - centering) / scaling. Requires 1 <= p < n.
TestReport standardize_t2(double t2, std::size_t n, std::size_t p,
                          Alternative alternative = Alternative::two_sided);

// Standard normal CDF.
double normal_cdf(double z);

double p_value(double zscore, Alternative alternative = Alternative::two_sided);

// (2/c) (int f^2 dF_c - (int f dF_c)^2)
double theorem2_variance(double c, const RealFunction &f,
                         const QuadratureSpec &spec = {});

// Asymptotic variance 2 c g'(c)^2 of sqrt(n) (g(|sbar|^2) - g(c_n)).
double mean_norm_variance(double c, double g_prime_at_c);

// Covariance of the limiting Gaussian process X(z) of the normalized
// resolvent quadratic form:
//   2 / (c z1 z2 [(1 + md1)(1 + md2) - c md1 md2]) - 2 m1 m2 / c.
// Throws SingularityError when the bracket is below 1e-13 in magnitude.
ComplexPoint process_covariance(double c, ComplexPoint z1, ComplexPoint z2);

// The first term alone, 2 / (c z1 z2 [(1 + md1)(1 + md2) - c md1 md2]).
ComplexPoint process_covariance_leading_term(double c, ComplexPoint z1, ComplexPoint z2);

// 2 (z2 md2 - z1 md1)^2 / (c^2 z1 z2 (z1 - z2)(md1 - md2)). For
// |z1 - z2| < 1e-6 the removable singularity is replaced by its limit
// 2 ((z md)')^2 / (c^2 z^2 md').
ComplexPoint remark_covariance(double c, ComplexPoint z1, ComplexPoint z2);

// |leading term - (remark_covariance + 2 m1 m2 / c)|. Since the process
// covariance is the leading term minus 2 m1 m2 / c, this is the same number
// as |process_covariance - remark_covariance|: the two kernels coincide.
double covariance_identity_residual(double c, ComplexPoint z1, ComplexPoint z2);

// Residual of the difference-quotient identity for the companion transform:
//   (md1 - md2)/(z1 - z2) = md1 md2 (1 + md1)(1 + md2) / [(1 + md1)(1 + md2) - c md1 md2].
double companion_quotient_residual(double c, ComplexPoint z1, ComplexPoint z2);

// |1/(1 + c m(z)) + z md(z)|
double companion_reciprocal_residual(double c, ComplexPoint z);

// Both covariance kernels tabulated over all ordered pairs of a z-list.
struct CovarianceGrid {
  std::vector<ComplexPoint> zpoints;
  Eigen::MatrixXcd process_values; // process_covariance(z_i, z_j)
  Eigen::MatrixXcd remark_values;  // remark_covariance(z_i, z_j)
};

CovarianceGrid covariance_grid(double c, const std::vector<ComplexPoint> &zpoints);

} // namespace hidim

#endif // HIDIM_CLT_INFERENCE_HPP_
