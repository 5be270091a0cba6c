#include "rfm/operators.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "rfm/quadrature.hpp"
#include "rfm/special_functions.hpp"

namespace rfm {

namespace {

GridField apply_symbol(const GridField& f, const std::function<double(double)>& sym) {
  f.validate();
  GridField F = grid_fft(f, Direction::forward);
  const int n = f.n;
  if (f.dim == 1) {
    for (int k = 0; k < n; ++k) F.values[k] *= sym(std::abs(F.freq(k)));
  } else {
    for (int ky = 0; ky < n; ++ky) {
      double fy = F.freq(ky);
      for (int kx = 0; kx < n; ++kx)
        F.values[kx + (Eigen::Index)n * ky] *= sym(std::hypot(F.freq(kx), fy));
    }
  }
  return grid_fft(F, Direction::inverse);
}

}  // namespace

namespace {

// log |u_raw(rho)| = 10 d log rho + m log |ghat-factor(b rho)| (+ const),
// sign tracked separately; closed form, no cancellation at any rho.
double psi_log_u_raw(int d, int m, double b, double rho, int& sign) {
  double bare = script_j_alpha(d, 1.0, b * rho);  // ball transform / (b^d (2pi)^{d/2})
  sign = ((5 * d) % 2 == 0 ? 1 : -1) * (bare < 0.0 && m % 2 != 0 ? -1 : 1);
  if (bare == 0.0) {
    sign = 0;
    return -std::numeric_limits<double>::infinity();
  }
  return 10.0 * d * std::log(rho) + m * std::log(std::abs(bare));
}

}  // namespace

const PsiSpec& PsiSpec::make(int d, double bump_radius) {
  static std::map<std::pair<int, double>, PsiSpec> cache;
  auto key = std::make_pair(d, bump_radius);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (d < 2) throw std::domain_error("PsiSpec: dimension must be >= 2");
  if (!(bump_radius > 0.0 && bump_radius <= 1.0))
    throw std::invalid_argument("PsiSpec: support radius must lie in (0, 1]");

  PsiSpec psi;
  psi.d_ = d;
  psi.a_ = bump_radius;
  psi.m_ = 24;  // keeps |u| ~ rho^{10d - 12(d+1)} integrable-decaying past the peak
  psi.b_ = bump_radius / psi.m_;

  // locate the sup of log|u_raw| on a dense log grid, then the 1e-9 support
  ArrayXd rho = RadialProfile::log_radii(0.05 / psi.b_, 400.0 / psi.b_, 16384);
  ArrayXd lg(rho.size());
  int sgn;
  for (Eigen::Index i = 0; i < rho.size(); ++i) lg[i] = psi_log_u_raw(d, psi.m_, psi.b_, rho[i], sgn);
  Eigen::Index ipk;
  psi.log_norm_ = lg.maxCoeff(&ipk);
  psi.rho_peak_ = rho[ipk];
  const double floor_lg = psi.log_norm_ + std::log(1e-9);
  Eigen::Index i_lo = 0, i_hi = rho.size() - 1;
  while (i_lo < ipk && lg[i_lo] < floor_lg) ++i_lo;
  while (i_hi > ipk && lg[i_hi] < floor_lg) --i_hi;
  psi.rho_lo_ = rho[i_lo];
  psi.rho_hi_ = rho[i_hi];

  return cache.emplace(key, std::move(psi)).first->second;
}

double PsiSpec::u(double rho) const {
  if (rho <= 0.0) return 0.0;
  int sign;
  double lg = psi_log_u_raw(d_, m_, b_, rho, sign);
  if (sign == 0) return 0.0;
  return sign * std::exp(lg - log_norm_);
}

const RadialProfile& PsiSpec::u_profile() const {
  if (table_.radii.size() == 0) {
    table_.d = d_;
    table_.radii = RadialProfile::log_radii(0.25 * rho_lo_, rho_hi_, 8192);
    table_.values.resize(table_.radii.size());
    for (Eigen::Index i = 0; i < table_.radii.size(); ++i)
      table_.values[i] = u(table_.radii[i]);
  }
  return table_;
}

GridField apply_radial_multiplier(const GridField& f, const MultiplierSpec& m, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("apply_radial_multiplier: scale must be positive");
  return apply_symbol(f, [&](double rho) { return m(t * rho); });
}

RadialProfile apply_radial_multiplier(const RadialProfile& f, const MultiplierSpec& m, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("apply_radial_multiplier: scale must be positive");
  RadialTransformResult hat = radial_fourier(f, f.radii, Direction::forward);
  for (Eigen::Index i = 0; i < hat.profile.radii.size(); ++i)
    hat.profile.values[i] *= m(t * hat.profile.radii[i]);
  return radial_fourier(hat.profile, f.radii, Direction::inverse).profile;
}

GridField bochner_riesz(const GridField& f, double alpha, double t) {
  if (alpha < 0.0) throw std::domain_error("bochner_riesz: analytic continuation to alpha < 0 is out of scope");
  if (!(t > 0.0)) throw std::invalid_argument("bochner_riesz: scale must be positive");
  MultiplierSpec m = MultiplierSpec::bochner_riesz(alpha);
  return apply_symbol(f, [&](double rho) { return m(rho / t); });
}

double spherical_mean_symbol(int d, double beta, double s) {
  // value at s = 0 matches Gamma(beta)^{-1} int_{|y|<=1} (1-|y|^2)^{beta-1} dy
  double nu = 0.5 * (d - 2) + beta;
  if (nu < 0.0) throw std::domain_error("spherical_mean: (d-2)/2 + beta must be >= 0");
  double c = std::pow(M_PI, 0.5 * d) / gamma_fn(beta + 0.5 * d) * std::exp2(nu) * gamma_fn(nu + 1.0);
  return c * script_j_alpha(d, beta, s);
}

GridField spherical_mean(const GridField& f, double beta, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("spherical_mean: scale must be positive");
  int d = f.dim;
  return apply_symbol(f, [=](double rho) { return spherical_mean_symbol(d, beta, t * rho); });
}

GridField spherical_mean_dt(const GridField& f, double beta, double t) {
  if (!(t > 0.0)) throw std::invalid_argument("spherical_mean_dt: scale must be positive");
  int d = f.dim;
  double nu = 0.5 * (d - 2) + beta;
  if (nu < 0.0) throw std::domain_error("spherical_mean_dt: (d-2)/2 + beta must be >= 0");
  double c = std::pow(M_PI, 0.5 * d) / gamma_fn(beta + 0.5 * d) * std::exp2(nu) * gamma_fn(nu + 1.0);
  // d/dt [script_j_beta(t rho)] = -t rho^2 script_j_{beta+1}(t rho)
  return apply_symbol(
      f, [=](double rho) { return -c * t * rho * rho * script_j_alpha(d, beta + 1.0, t * rho); });
}

GridField k_alpha_convolve(const GridField& f, double alpha, double t, bool allow_subcritical) {
  if (!(t > 0.0)) throw std::invalid_argument("k_alpha_convolve: scale must be positive");
  if (alpha <= 0.5 && !allow_subcritical)
    throw std::domain_error("k_alpha_convolve: alpha <= 1/2 makes the dt/t integral diverge");
  MultiplierSpec m = MultiplierSpec::k_alpha_hat(alpha);
  return apply_symbol(f, [&](double rho) { return m(rho / t); });
}

GridField sphere_convolve(const PsiSpec& psi, double r, const GridField& f) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere_convolve: radius must be positive");
  if (r > 0.25 * f.extent)
    throw std::invalid_argument("sphere_convolve: radius beyond extent/4 wraps around the box");
  if (f.dim != psi.dimension()) throw std::invalid_argument("sphere_convolve: dimension mismatch");
  int d = f.dim;
  double rd = std::pow(r, d - 1);
  return apply_symbol(f, [&, rd](double rho) { return psi.u(rho) * rd * script_j(d, r * rho); });
}

RadialProfile sphere_convolve(const PsiSpec& psi, double r, const RadialProfile& f) {
  if (!(r > 0.0)) throw std::invalid_argument("sphere_convolve: radius must be positive");
  int d = f.d;
  if (d != psi.dimension()) throw std::invalid_argument("sphere_convolve: dimension mismatch");
  double rd = std::pow(r, d - 1);
  RadialTransformResult hat = radial_fourier(f, f.radii, Direction::forward);
  for (Eigen::Index i = 0; i < hat.profile.radii.size(); ++i) {
    double rho = hat.profile.radii[i];
    hat.profile.values[i] *= psi.u(rho) * rd * script_j(d, r * rho);
  }
  return radial_fourier(hat.profile, f.radii, Direction::inverse).profile;
}

double sphere_symbol_sup(const PsiSpec& psi, double r) {
  // The symbol oscillates thousands of times across the support of u, so the
  // sup equals |u| times the Hankel envelope of script_j to high accuracy.
  const int d = psi.dimension();
  const double env_c = script_j_constant(d) * std::sqrt(2.0 / M_PI);
  const RadialProfile& tab = psi.u_profile();
  double best = 0.0;
  for (Eigen::Index i = 0; i < tab.radii.size(); ++i) {
    double rho = tab.radii[i];
    double s = r * rho;
    double env = s > 10.0 ? env_c * std::pow(s, -0.5 * (d - 1)) : std::abs(script_j(d, s));
    best = std::max(best, std::abs(tab.values[i]) * std::pow(r, d - 1) * env);
  }
  return best;
}

}  // namespace rfm
