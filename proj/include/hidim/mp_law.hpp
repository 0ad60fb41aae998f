#ifndef HIDIM_MP_LAW_HPP_
#define HIDIM_MP_LAW_HPP_

#include <complex>
#include <functional>
#include <utility>

#include "hidim/quadrature.hpp"

namespace hidim {

using ComplexPoint = std::complex<double>;
using RealFunction = std::function<double(double)>;

// Marchenko-Pastur law F_c for aspect ratio c = p/n with identity population
// covariance. For c > 1 the law also carries an atom of mass 1 - 1/c at 0.
class MpModel {
 public:
  explicit MpModel(double c);

  double c() const noexcept { return c_; }
  double lower_edge() const noexcept { return a_; }
  double upper_edge() const noexcept { return b_; }
  double atom_mass() const noexcept { return c_ > 1.0 ? 1.0 - 1.0 / c_ : 0.0; }

 private:
  double c_;
  double a_;
  double b_;
};

// (a, b) = ((1 - sqrt c)^2, (1 + sqrt c)^2). Throws DomainError for c <= 0.
std::pair<double, double> support_edges(double c);

// Continuous part of the density; zero outside [a, b]. The atom is not
// included.
double density(const MpModel &model, double x);

// Integral of f against F_c, including the atom contribution (1 - 1/c) f(0)
// when c > 1. The edge singularities of the density are removed by
// integrating in theta with x = a + (b - a) sin^2(theta).
double integral_f(const MpModel &model, const RealFunction &f,
                  const QuadratureSpec &spec = {});

// Complex-valued variant used for Stieltjes-type integrands.
std::complex<double>
integral_f_complex(const MpModel &model,
                   const std::function<std::complex<double>(double)> &f,
                   const QuadratureSpec &spec = {});

double cdf(const MpModel &model, double x, const QuadratureSpec &spec = {});

// Stieltjes transform m(z) of F_c: the root of c z m^2 + (z + c - 1) m + 1 = 0
// that is a Herglotz function (Im m * Im z > 0, m ~ -1/z at infinity).
// Throws DomainError for real z in [a, b] and for z = 0 when c > 1.
ComplexPoint stieltjes_m(const MpModel &model, ComplexPoint z);

// Companion transform: the limit Stieltjes transform of n^{-1} X^T X,
// mdot(z) = -(1 - c)/z + c m(z).
ComplexPoint companion_m(const MpModel &model, ComplexPoint z);

// d mdot / dz from implicit differentiation of z = -1/mdot + c/(1 + mdot).
ComplexPoint companion_m_derivative(const MpModel &model, ComplexPoint z);

// |m - 1/(1 - c - c z m - z)|
double fixed_point_residual(const MpModel &model, ComplexPoint z,
                            ComplexPoint m);

// |z - (-1/mdot + c/(1 + mdot))|
double inverse_map_residual(const MpModel &model, ComplexPoint z,
                            ComplexPoint mdot);

struct InverseMoments {
  double m1; // integral of x^{-1} dF_c
  double m2; // integral of x^{-2} dF_c
};

// Requires 0 < c < 1; both integrals diverge for c >= 1.
InverseMoments inverse_moments(const MpModel &model,
                               const QuadratureSpec &spec = {});

} // namespace hidim

#endif // HIDIM_MP_LAW_HPP_
