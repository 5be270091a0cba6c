#pragma once

// Independent reference computations for the test suite. Everything here is
// deliberately dumb and slow -- plain Simpson / series evaluation with no code
// shared with the library's quadrature or Bessel paths.

#include <cmath>
#include <complex>
#include <functional>

namespace oracle {

inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  double h = (b - a) / n, acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * h / 3.0;
}

inline std::complex<double> simpson_c(const std::function<std::complex<double>(double)>& f,
                                      double a, double b, int n = 2000) {
  if (n % 2) ++n;
  double h = (b - a) / n;
  std::complex<double> acc = f(a) + f(b);
  for (int i = 1; i < n; ++i) acc += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  return acc * (h / 3.0);
}

/// 50-term alternating series for J_nu, nu >= 0 (small and moderate s only).
inline double bessel_series(double nu, double s, int terms = 50) {
  double term = std::pow(0.5 * s, nu) / std::tgamma(nu + 1.0);
  double sum = term;
  for (int k = 1; k < terms; ++k) {
    term *= -0.25 * s * s / (k * (nu + k));
    sum += term;
  }
  return sum;
}

/// Integral representation for integer order: (1/pi) int_0^pi cos(n t - s sin t) dt.
inline double bessel_integral(int n, double s) {
  return simpson([n, s](double t) { return std::cos(n * t - s * std::sin(t)); }, 0.0, M_PI,
                 4000) /
         M_PI;
}

}  // namespace oracle
