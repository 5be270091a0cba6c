#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <memory>

namespace rfm {

using Eigen::ArrayXcd;
using Eigen::ArrayXd;
using cplx = std::complex<double>;

/// Radial function in dimension d sampled on a strictly increasing positive
/// radius grid (log-spaced by default). Evaluation between samples uses a
/// cubic spline in log r; outside the grid the profile is treated as zero.
struct RadialProfile {
  int d = 2;
  ArrayXd radii;
  ArrayXcd values;

  static ArrayXd log_radii(double r_lo = 1e-3, double r_hi = 1e3, int n = 8192);
  static RadialProfile sample(int d, const ArrayXd& radii, const std::function<cplx(double)>& f);

  cplx interp(double r) const;
  double support_min() const { return radii[0]; }
  double support_max() const { return radii[radii.size() - 1]; }
  void validate() const;

 private:
  struct Spline;
  mutable std::shared_ptr<const Spline> spline_;
  const Spline& ensure_spline() const;
};

}  // namespace rfm
