#pragma once

#include "rfm/fourier.hpp"
#include "rfm/grid_field.hpp"
#include "rfm/multiplier.hpp"
#include "rfm/radial_profile.hpp"

namespace rfm {

/// Radial test function psi = Delta^{5d} g with g a fixed radial bump
/// supported in |x| <= bump_radius, so psi-hat(xi) = u(|xi|) = (-|xi|^2)^{5d}
/// g-hat(|xi|) vanishes to order 10d at the origin. g is the m-fold
/// self-convolution of a small ball indicator (a radial B-spline bump), whose
/// transform is a closed-form Bessel power; this keeps u evaluable across its
/// whole dynamic range, which quadrature against a C-infinity bump cannot do
/// in double precision. u is normalized to sup|u| = 1.
class PsiSpec {
 public:
  static const PsiSpec& make(int d, double bump_radius = 0.1);

  int dimension() const { return d_; }
  double bump_radius() const { return a_; }
  int vanishing_order() const { return 10 * d_; }
  int laplacian_count() const { return 5 * d_; }
  int convolution_order() const { return m_; }

  double u(double rho) const;              // normalized psi-hat profile
  double u_peak() const { return rho_peak_; }
  double u_lo() const { return rho_lo_; }   // |u| < 1e-9 sup outside [u_lo, u_hi]
  double u_hi() const { return rho_hi_; }
  const RadialProfile& u_profile() const;  // dense table over the support

 private:
  PsiSpec() = default;
  int d_ = 2;
  int m_ = 24;
  double a_ = 0.1, b_ = 0.1 / 24;  // g = m-fold convolution of chi_{|x|<=b}
  double log_norm_ = 0.0;          // log of the sup normalization
  double rho_peak_ = 0.0, rho_lo_ = 0.0, rho_hi_ = 0.0;
  mutable RadialProfile table_;
};

/// T_{m(t .)} f: multiply the transform by m(t |xi|) and invert.
GridField apply_radial_multiplier(const GridField& f, const MultiplierSpec& m, double t);
RadialProfile apply_radial_multiplier(const RadialProfile& f, const MultiplierSpec& m, double t);

/// Bochner-Riesz mean R^alpha_t (multiplier (1 - |xi|^2/t^2)_+^alpha).
GridField bochner_riesz(const GridField& f, double alpha, double t);

/// Generalized spherical mean A^beta_t, Fourier-side continuation through the
/// Bessel kernel: multiplier c_{d,beta} script_j_beta(t rho) with c fixed by the
/// value pi^{d/2}/Gamma(beta + d/2) at rho = 0.
GridField spherical_mean(const GridField& f, double beta, double t);
double spherical_mean_symbol(int d, double beta, double s);  // c_{d,beta} script_j_beta(s)
/// Analytic t-derivative d/dt A^beta_t f (multiplier -c t rho^2 script_j_{beta+1}(t rho)).
GridField spherical_mean_dt(const GridField& f, double beta, double t);

/// K_t^alpha * f for the square-function kernel; alpha <= 1/2 is rejected
/// unless allow_subcritical (the t-integral of G_alpha diverges there).
GridField k_alpha_convolve(const GridField& f, double alpha, double t,
                           bool allow_subcritical = false);

/// psi * sigma_r * f via the symbol u(|xi|) r^{d-1} script_j(r |xi|).
/// r beyond extent/4 wraps around the box and is rejected.
GridField sphere_convolve(const PsiSpec& psi, double r, const GridField& f);
RadialProfile sphere_convolve(const PsiSpec& psi, double r, const RadialProfile& f);

/// sup over rho > 0 of |u(rho) r^{d-1} script_j(r rho)| (dense sampling of the
/// symbol; the sup lives inside the tabulated support of u).
double sphere_symbol_sup(const PsiSpec& psi, double r);

}  // namespace rfm
