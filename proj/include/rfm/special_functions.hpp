#pragma once

#include <complex>

namespace rfm {

/// Gamma function for positive arguments; throws std::domain_error otherwise.
double gamma_fn(double x);

/// Parameters shared by the Bessel kernel family. nu = (d-2)/2 + alpha must be
/// >= 0 and the series/asymptotic switchover obeys regime_cut >= max(12, 2 nu).
struct BesselKernelParams {
  int d = 2;
  double alpha = 0.0;
  double regime_cut = 0.0;  // 0 -> max(12, 2 nu)

  double nu() const;
  double cut() const;
};

/// Bessel function J_nu(s) for nu >= 0, s >= 0. Power series up to the
/// regime cut, Hankel large-argument expansion beyond.
double bessel_j(double nu, double s, double regime_cut = 0.0);

/// Normalized sphere kernel: script_j(d, s) with script_j(d, 0) equal to the
/// surface area of S^{d-1}, so the transform of the radius-r sphere measure is
/// r^{d-1} * script_j(r * |xi|).
double script_j(int d, double s);

/// Per-dimension constant c(d) with script_j(d,s) = c(d) * s^{-(d-2)/2} J_{(d-2)/2}(s),
/// fixed by matching at s = 0 (never hard-coded).
double script_j_constant(int d);

/// Bare kernel script_j_alpha(d, alpha, s) = s^{-nu} J_nu(s), nu = (d-2)/2 + alpha.
/// Value at s = 0 is 2^{-nu} / Gamma(nu+1).
double script_j_alpha(int d, double alpha, double s);

/// Oscillatory form of the large-argument expansion,
///   script_j_alpha(u) ~ u^{-(d-1)/2-alpha} sum_{n<n_terms} u^{-n}
///                         (c+_{n} e^{iu} + c-_{n} e^{-iu}),
/// with c-_{n} = conj(c+_{n}).
struct AsymptoticValue {
  double value = 0.0;
  double error_bound = 0.0;  // magnitude O(u^{-(d-1)/2-alpha-n_terms})
};
AsymptoticValue bessel_asymptotic(int d, double alpha, double u, int n_terms);

/// Coefficient c+_{n,alpha} of e^{iu} u^{-(d-1)/2-alpha-n} in the expansion.
std::complex<double> bessel_asym_coeff(int d, double alpha, int n);

}  // namespace rfm
