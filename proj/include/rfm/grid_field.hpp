#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace rfm {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using cplx = std::complex<double>;

/// Complex samples on the periodic box [-L/2, L/2)^dim, dim in {1,2},
/// n samples per axis (power of two). 2-D storage is row-major in y:
/// values[ix + n*iy] sits at (coord(ix), coord(iy)).
struct GridField {
  int dim = 1;
  double extent = 0.0;  // L
  int n = 0;
  ArrayXcd values;

  static GridField zeros(int dim, int n, double L);
  static GridField sample1(int n, double L, const std::function<cplx(double)>& f);
  static GridField sample2(int n, double L, const std::function<cplx(double, double)>& f);

  double spacing() const { return extent / n; }
  double cell_volume() const;
  Eigen::Index size() const { return values.size(); }
  double coord(int i) const { return -0.5 * extent + spacing() * i; }
  /// Signed frequency of the centered spectral index k: 2 pi (k - n/2) / L.
  double freq(int k) const { return 2.0 * M_PI * (k - n / 2) / extent; }
  /// Distance of cell center from the origin.
  double radius(Eigen::Index flat) const;

  void validate() const;  // n power of two, dims consistent, finite values
};

}  // namespace rfm
