#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rfm/radial_profile.hpp"

namespace rfm {

/// Radial multiplier profile m(|xi|). Carries its support, the largest
/// frequency it can be evaluated at (finite for tabulated data), and the
/// points where it loses smoothness (used to grade quadratures).
struct MultiplierSpec {
  std::string name;
  std::function<double(double)> fn;
  double support_lo = 0.0;
  double support_hi = std::numeric_limits<double>::infinity();
  double domain_max = std::numeric_limits<double>::infinity();
  std::vector<double> singular;

  double operator()(double u) const;

  /// (1 - u^2)_+^alpha
  static MultiplierSpec bochner_riesz(double alpha);
  /// alpha u^2 (1 - u^2)_+^{alpha-1}, the transform of the square-function kernel
  static MultiplierSpec k_alpha_hat(double alpha);
  /// C-infinity bump supported on (a, b), equal to 1 at the geometric center
  static MultiplierSpec smooth_bump(double a, double b);
  /// samples with spline interpolation; evaluation beyond the grid throws
  static MultiplierSpec tabulated(std::string name, RadialProfile profile);
  static MultiplierSpec from_function(std::string name, std::function<double(double)> fn,
                                      double lo, double hi, std::vector<double> singular = {});
};

/// Smooth transition, 1 on (-inf, a], 0 on [b, inf).
double smooth_step_down(double x, double a, double b);
/// The standard compactly supported bump exp(-1/(1-x^2)) on (-1,1), else 0.
double std_bump(double x);

}  // namespace rfm
