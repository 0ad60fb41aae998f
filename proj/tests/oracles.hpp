// Independent reference computations used only by the tests. Nothing here
// shares code paths with the library routines they check.
#ifndef HIDIM_TESTS_ORACLES_HPP_
#define HIDIM_TESTS_ORACLES_HPP_

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

// Integral of f against the Marchenko-Pastur law by the midpoint rule in
// phi, with x = (a + b)/2 + (b - a)/2 cos(phi). The integrand is smooth and
// periodic in phi, so the rule converges geometrically.
template <typename T, typename F>
T mp_integral(double c, F f, int points = 200000) {
  const double root = std::sqrt(c);
  const double a = (1 - root) * (1 - root);
  const double b = (1 + root) * (1 + root);
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double h = std::numbers::pi / points;
  T total{};
  for (int k = 0; k < points; ++k) {
    const double phi = (k + 0.5) * h;
    const double s = std::sin(phi);
    const double x = mid + half * std::cos(phi);
    total += f(x) * (half * half * s * s / (2 * std::numbers::pi * c * x));
  }
  total *= h;
  if (c > 1) {
    total += (1 - 1 / c) * f(0.0);
  }
  return total;
}

inline std::complex<double> stieltjes(double c, std::complex<double> z, int points = 200000) {
  return mp_integral<std::complex<double>>(
      c, [z](double x) { return 1.0 / (x - z); }, points);
}

inline Eigen::VectorXd row_means(const Eigen::MatrixXd &x) {
  Eigen::VectorXd mean(x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    double total = 0;
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      total += x(i, j);
    }
    mean(i) = total / static_cast<double>(x.cols());
  }
  return mean;
}

inline Eigen::MatrixXd gram(const Eigen::MatrixXd &x) {
  Eigen::MatrixXd g(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
      double total = 0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        total += x(i, j) * x(k, j);
      }
      g(i, k) = total / static_cast<double>(x.cols());
    }
  }
  return g;
}

inline Eigen::MatrixXd centered(const Eigen::MatrixXd &x) {
  const Eigen::VectorXd mean = row_means(x);
  Eigen::MatrixXd g(x.rows(), x.rows());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index k = 0; k < x.rows(); ++k) {
      double total = 0;
      for (Eigen::Index j = 0; j < x.cols(); ++j) {
        total += (x(i, j) - mean(i)) * (x(k, j) - mean(k));
      }
      g(i, k) = total / static_cast<double>(x.cols());
    }
  }
  return g;
}

// Deterministic pseudo-random matrix independent of the library RNG.
inline Eigen::MatrixXd lcg_matrix(Eigen::Index rows, Eigen::Index cols, unsigned seed) {
  std::uint64_t state = 0x9E3779B97F4A7C15ull ^ seed;
  Eigen::MatrixXd m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) {
      // Sum of uniforms: roughly normal, mean 0, variance 1.
      double total = 0;
      for (int k = 0; k < 12; ++k) {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        total += static_cast<double>(state >> 11) * 0x1.0p-53;
      }
      m(i, j) = total - 6.0;
    }
  }
  return m;
}

} // namespace oracle

#endif // HIDIM_TESTS_ORACLES_HPP_
