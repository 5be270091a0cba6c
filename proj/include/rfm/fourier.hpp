#pragma once

#include <functional>
#include <span>
#include <vector>

#include "rfm/grid_field.hpp"
#include "rfm/radial_profile.hpp"

namespace rfm {

/// Transform convention used everywhere:
///   forward  f^(xi) = int f(x) e^{-i<x,xi>} dx            (no prefactor)
///   inverse  f(x)   = (2 pi)^{-d} int f^(xi) e^{+i<x,xi>} dxi
/// so that ||f^||_2^2 = (2 pi)^d ||f||_2^2.
struct FourierConvention {
  static double plancherel_factor(int d) { return std::pow(2.0 * M_PI, d); }
  static double inverse_prefactor(int d) { return std::pow(2.0 * M_PI, -d); }
};

enum class Direction { forward, inverse };

/// Discrete transform scaled to approximate the continuum transform under the
/// convention above. Both sides use centered indexing: index k <-> frequency
/// f.freq(k). Forward multiplies by the cell volume; the inverse carries the
/// (2 pi)^{-d} and the frequency cell volume.
GridField grid_fft(const GridField& f, Direction dir);

struct RadialTransformResult {
  RadialProfile profile;
  /// True where the quadrature resolves the oscillation of the kernel at the
  /// output frequency (panel length <= pi / (2 rho)).
  std::vector<bool> reliable;
};

/// Exact d-dimensional transform of a radial function:
///   f^(rho) = int_0^inf f0(r) r^{d-1} script_j(r rho) dr,
/// composite Gauss-Legendre with panel length <= pi/(2 max rho). `singular`
/// lists radii where the integrand has limited smoothness (panels are graded
/// toward them). Inverse direction applies the (2 pi)^{-d} prefactor.
RadialTransformResult radial_fourier_fn(const std::function<cplx(double)>& f0, int d,
                                        double r_lo, double r_hi, const ArrayXd& out_rho,
                                        Direction dir = Direction::forward,
                                        std::span<const double> singular = {},
                                        double intrinsic_freq = 0.0);

/// Same, reading the integrand from a sampled profile (spline interpolation).
RadialTransformResult radial_fourier(const RadialProfile& f, const ArrayXd& out_rho,
                                     Direction dir = Direction::forward);

/// Samples kappa(r) = (2 pi)^{-d} int m(rho) rho^{d-1} script_j(r rho) drho for a
/// multiplier profile m supported in [lo, hi] c (0, inf), efficiently for large r:
/// below `r_switch` by direct panels, above by the Hankel asymptotics of script_j
/// with `corrections` subleading orders and Filon quadrature in rho.
class RadialKernelSampler {
 public:
  RadialKernelSampler(std::function<double(double)> m, int d, double lo, double hi,
                      std::vector<double> singular = {}, double r_switch = 48.0,
                      int corrections = 3);
  double operator()(double r) const;
  int dimension() const { return d_; }

 private:
  int d_;
  double lo_, hi_;
  double r_switch_;
  int corrections_;
  // direct branch: fixed panels, weights premultiplied by m(rho) rho^{d-1}
  ArrayXd dir_nodes_, dir_weighted_;
  // asymptotic branch: Filon panels (center, half-length) and amplitudes
  // g_m = m(rho) rho^{(d-1)/2 - m} at the three panel nodes, m = 0..corrections
  ArrayXd fil_center_, fil_half_;
  std::vector<Eigen::ArrayXXd> fil_amp_;  // [m](panel, node 0..2)
  ArrayXd a_coeff_;                       // Hankel a_m for nu = (d-2)/2
  double theta_ = 0.0, C_d_ = 0.0;
};

}  // namespace rfm
