#ifndef HIDIM_QUADRATURE_HPP_
#define HIDIM_QUADRATURE_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <sstream>
#include <vector>

#include "hidim/errors.hpp"

namespace hidim {

struct QuadratureSpec {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::size_t max_subdivisions = 4000;

  void validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
      throw DomainError("quadrature tolerances must be positive");
    }
    if (max_subdivisions == 0) {
      throw DomainError("quadrature needs at least one subdivision");
    }
  }
};

template <typename T> struct QuadratureResult {
  T value{};
  double abs_error = 0.0;
  std::size_t intervals = 0;
};

namespace detail {

// 15-point Kronrod extension of the 7-point Gauss rule.
inline constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

inline constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

// Gauss weights for the odd-indexed Kronrod nodes (1, 3, 5, 7).
inline constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

inline double magnitude(double v) { return std::abs(v); }
inline double magnitude(const std::complex<double> &v) { return std::abs(v); }
inline bool finite(double v) { return std::isfinite(v); }
inline bool finite(const std::complex<double> &v) {
  return std::isfinite(v.real()) && std::isfinite(v.imag());
}
inline std::complex<double> widen(double v) { return {v, 0.0}; }
inline std::complex<double> widen(const std::complex<double> &v) { return v; }

template <typename T> struct Segment {
  double lo;
  double hi;
  T value;
  double error;
  bool operator<(const Segment &other) const { return error < other.error; }
};

template <typename T, typename F>
Segment<T> kronrod15(F &&f, double lo, double hi) {
  const double center = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  T kronrod = T{};
  T gauss = T{};
  for (std::size_t k = 0; k < kKronrodNodes.size(); ++k) {
    const double dx = half * kKronrodNodes[k];
    T fsum;
    if (k == 7) {
      fsum = f(center);
      if (!finite(fsum)) {
        std::ostringstream msg;
        msg << "integrand is not finite at x = " << center;
        throw EvaluationError(msg.str());
      }
    } else {
      const T left = f(center - dx);
      const T right = f(center + dx);
      if (!finite(left) || !finite(right)) {
        std::ostringstream msg;
        msg << "integrand is not finite near x = " << center << " +/- " << dx;
        throw EvaluationError(msg.str());
      }
      fsum = left + right;
    }
    kronrod += kKronrodWeights[k] * fsum;
    if (k % 2 == 1) {
      gauss += kGaussWeights[k / 2] * fsum;
    }
  }
  kronrod *= half;
  gauss *= half;
  return {lo, hi, kronrod, magnitude(kronrod - gauss)};
}

} // namespace detail

// Globally adaptive Gauss-Kronrod (7/15) integration of f over [lo, hi].
// T is double or std::complex<double>. The interval with the largest error
// estimate is bisected until the total error meets the tolerance; running out
// of subdivisions throws ConvergenceError carrying the best estimate.
template <typename T, typename F>
QuadratureResult<T> integrate_adaptive(F &&f, double lo, double hi,
                                       const QuadratureSpec &spec) {
  spec.validate();
  std::vector<detail::Segment<T>> heap;
  heap.reserve(spec.max_subdivisions + 1);
  heap.push_back(detail::kronrod15<T>(f, lo, hi));
  T total = heap.front().value;
  double error = heap.front().error;

  const auto resum = [&] {
    total = T{};
    error = 0.0;
    for (const auto &seg : heap) {
      total += seg.value;
      error += seg.error;
    }
  };

  std::size_t splits = 0;
  while (error > std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total))) {
    if (heap.size() >= spec.max_subdivisions) {
      resum();
      if (error <= std::max(spec.abs_tol, spec.rel_tol * detail::magnitude(total))) {
        break;
      }
      std::ostringstream msg;
      msg << "adaptive quadrature did not converge after " << heap.size()
          << " subdivisions (error estimate " << error << ")";
      throw ConvergenceError(msg.str(), detail::widen(total), error);
    }
    std::pop_heap(heap.begin(), heap.end());
    const auto worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      // Interval can no longer be split in floating point.
      heap.push_back(worst);
      std::push_heap(heap.begin(), heap.end());
      break;
    }
    auto left = detail::kronrod15<T>(f, worst.lo, mid);
    auto right = detail::kronrod15<T>(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push_back(left);
    std::push_heap(heap.begin(), heap.end());
    heap.push_back(right);
    std::push_heap(heap.begin(), heap.end());

    // Periodic re-summation keeps cancellation drift out of the running sums.
    if (++splits % 64 == 0) {
      resum();
    }
  }
  resum();
  return {total, error, heap.size()};
}

} // namespace hidim

#endif // HIDIM_QUADRATURE_HPP_
