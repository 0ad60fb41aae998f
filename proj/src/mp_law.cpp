#include "hidim/mp_law.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hidim/errors.hpp"

namespace hidim {

namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;

// Density times dx in the theta variable, x = a + (b - a) sin^2(theta):
//   p_c(x) dx = (b - a)^2 sin^2 cos^2 / (pi c x) dtheta.
struct ThetaMap {
  double a;
  double width;
  double c;

  double x(double theta) const {
    const double s = std::sin(theta);
    return a + width * s * s;
  }
  double weight(double theta) const {
    const double s = std::sin(theta);
    const double co = std::cos(theta);
    const double xv = a + width * s * s;
    return width * width * s * s * co * co / (std::numbers::pi * c * xv);
  }
};

ThetaMap theta_map(const MpModel &model) {
  return {model.lower_edge(), model.upper_edge() - model.lower_edge(), model.c()};
}

void require_finite_at_zero(double value) {
  if (!std::isfinite(value)) {
    throw EvaluationError("f(0) must be finite to integrate against the atom at 0");
  }
}

} // namespace

MpModel::MpModel(double c) : c_(c) {
  const auto [a, b] = support_edges(c);
  a_ = a;
  b_ = b;
}

std::pair<double, double> support_edges(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    std::ostringstream msg;
    msg << "aspect ratio c must be positive and finite, got " << c;
    throw DomainError(msg.str());
  }
  const double root = std::sqrt(c);
  return {(1.0 - root) * (1.0 - root), (1.0 + root) * (1.0 + root)};
}

double density(const MpModel &model, double x) {
  const double a = model.lower_edge();
  const double b = model.upper_edge();
  if (!(x >= a && x <= b) || x <= 0.0) {
    return 0.0;
  }
  return std::sqrt((b - x) * (x - a)) / (2.0 * std::numbers::pi * model.c() * x);
}

double integral_f(const MpModel &model, const RealFunction &f,
                  const QuadratureSpec &spec) {
  const ThetaMap map = theta_map(model);
  const auto integrand = [&](double theta) {
    return f(map.x(theta)) * map.weight(theta);
  };
  double total = integrate_adaptive<double>(integrand, 0.0, kHalfPi, spec).value;
  if (model.c() > 1.0) {
    const double f0 = f(0.0);
    require_finite_at_zero(f0);
    total += model.atom_mass() * f0;
  }
  return total;
}

std::complex<double>
integral_f_complex(const MpModel &model,
                   const std::function<std::complex<double>(double)> &f,
                   const QuadratureSpec &spec) {
  const ThetaMap map = theta_map(model);
  const auto integrand = [&](double theta) {
    return f(map.x(theta)) * map.weight(theta);
  };
  auto total = integrate_adaptive<std::complex<double>>(integrand, 0.0, kHalfPi, spec).value;
  if (model.c() > 1.0) {
    const auto f0 = f(0.0);
    require_finite_at_zero(f0.real());
    require_finite_at_zero(f0.imag());
    total += model.atom_mass() * f0;
  }
  return total;
}

double cdf(const MpModel &model, double x, const QuadratureSpec &spec) {
  if (x < 0.0) {
    return 0.0;
  }
  const double a = model.lower_edge();
  const double b = model.upper_edge();
  if (x < a) {
    return model.atom_mass();
  }
  if (x >= b) {
    return 1.0;
  }
  const ThetaMap map = theta_map(model);
  const double upper = std::asin(std::sqrt((x - a) / (b - a)));
  const auto weight = [&](double theta) { return map.weight(theta); };
  const double mass = integrate_adaptive<double>(weight, 0.0, upper, spec).value;
  return std::min(1.0, model.atom_mass() + mass);
}

ComplexPoint stieltjes_m(const MpModel &model, ComplexPoint z) {
  const double c = model.c();
  const double a = model.lower_edge();
  const double b = model.upper_edge();
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
    throw DomainError("z must be finite");
  }
  if (z.imag() == 0.0) {
    if (z.real() >= a && z.real() <= b) {
      std::ostringstream msg;
      msg << "z = " << z.real() << " lies on the support [" << a << ", " << b
          << "]";
      throw DomainError(msg.str());
    }
    if (z.real() == 0.0 && c > 1.0) {
      throw DomainError("z = 0 is the atom of F_c for c > 1");
    }
  }

  // sqrt(z - a) sqrt(z - b) with principal branches is analytic off [a, b]
  // and behaves like z at infinity, which selects the Herglotz root. The
  // form 2 / (1 - c - z - s) equals (1 - c - z + s) / (2 c z) but never
  // divides by z and avoids cancellation for large |z|.
  const ComplexPoint s = std::sqrt(z - a) * std::sqrt(z - b);
  ComplexPoint m = 2.0 / (1.0 - c - z - s);

  // One Newton step on c z m^2 + (z + c - 1) m + 1 = 0.
  const ComplexPoint q = c * z * m * m + (z + c - 1.0) * m + 1.0;
  const ComplexPoint dq = 2.0 * c * z * m + (z + c - 1.0);
  if (std::abs(dq) > 0.0) {
    const ComplexPoint polished = m - q / dq;
    if (fixed_point_residual(model, z, polished) <
        fixed_point_residual(model, z, m)) {
      m = polished;
    }
  }
  return m;
}

ComplexPoint companion_m(const MpModel &model, ComplexPoint z) {
  if (z == ComplexPoint{0.0, 0.0}) {
    throw DomainError("companion transform is undefined at z = 0");
  }
  const double c = model.c();
  const ComplexPoint mdot = -(1.0 - c) / z + c * stieltjes_m(model, z);
  if (std::abs(mdot) == 0.0 || std::abs(1.0 + mdot) < 1e-14) {
    throw SingularityError("companion transform hit a singular branch (mdot = 0 or -1)");
  }
  return mdot;
}

ComplexPoint companion_m_derivative(const MpModel &model, ComplexPoint z) {
  const ComplexPoint mdot = companion_m(model, z);
  const ComplexPoint one_plus = 1.0 + mdot;
  const ComplexPoint dz_dmdot =
      1.0 / (mdot * mdot) - model.c() / (one_plus * one_plus);
  if (std::abs(dz_dmdot) == 0.0) {
    throw SingularityError("dz/dmdot vanishes; z sits at a branch point");
  }
  return 1.0 / dz_dmdot;
}

double fixed_point_residual(const MpModel &model, ComplexPoint z,
                            ComplexPoint m) {
  const double c = model.c();
  return std::abs(m - 1.0 / (1.0 - c - c * z * m - z));
}

double inverse_map_residual(const MpModel &model, ComplexPoint z,
                            ComplexPoint mdot) {
  return std::abs(z - (-1.0 / mdot + model.c() / (1.0 + mdot)));
}

InverseMoments inverse_moments(const MpModel &model, const QuadratureSpec &spec) {
  if (model.c() >= 1.0) {
    std::ostringstream msg;
    msg << "inverse moments of F_c diverge for c >= 1 (c = " << model.c() << ")";
    throw DomainError(msg.str());
  }
  const double m1 = integral_f(model, [](double x) { return 1.0 / x; }, spec);
  const double m2 = integral_f(model, [](double x) { return 1.0 / (x * x); }, spec);
  return {m1, m2};
}

} // namespace hidim
