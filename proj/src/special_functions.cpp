#include "rfm/special_functions.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

namespace rfm {

double gamma_fn(double x) {
  if (!(x > 0.0)) throw std::domain_error("gamma_fn: argument must be positive");
  return std::tgamma(x);
}

double BesselKernelParams::nu() const {
  double v = 0.5 * (d - 2) + alpha;
  if (v < 0.0) throw std::domain_error("BesselKernelParams: (d-2)/2 + alpha < 0");
  return v;
}

double BesselKernelParams::cut() const {
  double lo = std::max(12.0, 2.0 * nu());
  if (regime_cut == 0.0) return lo;
  if (regime_cut < lo) throw std::domain_error("BesselKernelParams: regime_cut below max(12, 2 nu)");
  return regime_cut;
}

namespace {

// Kahan-compensated sum of the ascending series
//   s^{-nu} J_nu(s) = sum_k (-1)^k s^{2k} / (2^{2k+nu} k! Gamma(nu+k+1)).
double bare_series(double nu, double s) {
  double term = std::exp2(-nu) / std::tgamma(nu + 1.0);
  double sum = term, comp = 0.0;
  const double s2 = s * s;
  for (int k = 1; k <= 256; ++k) {
    term *= -s2 / (4.0 * k * (nu + k));
    double y = term - comp;
    double t = sum + y;
    comp = (t - sum) - y;
    sum = t;
    if (std::abs(term) < 1e-18 * (std::abs(sum) + 1e-300)) break;
  }
  return sum;
}

// Hankel expansion: J_nu(s) = sqrt(2/(pi s)) (P cos w - Q sin w),
// w = s - nu pi/2 - pi/4, with P,Q summed to their smallest term.
double hankel_expansion(double nu, double s) {
  const double mu = 4.0 * nu * nu;
  double P = 1.0, Q = 0.0;
  double a = 1.0;  // a_k = prod_{i<=k} (mu - (2i-1)^2) / (k 8)
  double prev = 1.0;
  for (int k = 1; k <= 40; ++k) {
    a *= (mu - (2.0 * k - 1.0) * (2.0 * k - 1.0)) / (8.0 * k);
    double t = a / std::pow(s, k);
    if (std::abs(t) > prev) break;  // divergent tail reached
    prev = std::abs(t);
    int m = k % 4;
    if (m == 1) Q += t;
    else if (m == 2) P -= t;
    else if (m == 3) Q -= t;
    else P += t;
    if (std::abs(t) < 1e-18) break;
  }
  double w = s - (0.5 * nu + 0.25) * M_PI;
  return std::sqrt(2.0 / (M_PI * s)) * (P * std::cos(w) - Q * std::sin(w));
}

}  // namespace

double bessel_j(double nu, double s, double regime_cut) {
  if (nu < 0.0) throw std::domain_error("bessel_j: order must be >= 0");
  if (s < 0.0) throw std::domain_error("bessel_j: argument must be >= 0");
  double cut = regime_cut > 0.0 ? regime_cut : std::max(12.0, 2.0 * nu);
  if (s == 0.0) return nu == 0.0 ? 1.0 : 0.0;
  if (s <= cut) return std::pow(s, nu) * bare_series(nu, s);
  return hankel_expansion(nu, s);
}

double script_j_constant(int d) {
  if (d < 2) throw std::domain_error("script_j: dimension must be >= 2");
  static std::map<int, double> cache;
  auto it = cache.find(d);
  if (it == cache.end()) {
    // Matching rule at s = 0: script_j(d, 0) must equal |S^{d-1}| while the
    // bare kernel tends to 2^{-nu} / Gamma(nu+1), nu = (d-2)/2.
    double nu = 0.5 * (d - 2);
    double sphere_area = 2.0 * std::pow(M_PI, 0.5 * d) / gamma_fn(0.5 * d);
    double c = sphere_area * std::exp2(nu) * gamma_fn(nu + 1.0);
    it = cache.emplace(d, c).first;
  }
  return it->second;
}

double script_j(int d, double s) {
  return script_j_constant(d) * script_j_alpha(d, 0.0, s);
}

double script_j_alpha(int d, double alpha, double s) {
  BesselKernelParams p{d, alpha, 0.0};
  double nu = p.nu();
  if (s < 0.0) throw std::domain_error("script_j_alpha: argument must be >= 0");
  double cut = p.cut();
  if (s <= cut) return bare_series(nu, s);
  return std::pow(s, -nu) * hankel_expansion(nu, s);
}

std::complex<double> bessel_asym_coeff(int d, double alpha, int n) {
  BesselKernelParams p{d, alpha, 0.0};
  double nu = p.nu();
  double mu = 4.0 * nu * nu;
  std::complex<double> rot = std::polar(1.0, -(0.5 * nu + 0.25) * M_PI);
  double inv = 1.0 / std::sqrt(2.0 * M_PI);
  if (n == 0) return inv * rot;
  if (n == 1) {
    double a1 = (mu - 1.0) / 8.0;
    return std::complex<double>(0.0, 1.0) * a1 * inv * rot;
  }
  throw std::domain_error("bessel_asym_coeff: only n in {0,1} are tabulated");
}

AsymptoticValue bessel_asymptotic(int d, double alpha, double u, int n_terms) {
  if (u < 1.0) throw std::domain_error("bessel_asymptotic: expansion requires u >= 1");
  if (n_terms < 1 || n_terms > 2) throw std::domain_error("bessel_asymptotic: n_terms in {1,2}");
  BesselKernelParams p{d, alpha, 0.0};
  double nu = p.nu();
  double mu = 4.0 * nu * nu;
  double decay = 0.5 * (d - 1) + alpha;  // = nu + 1/2
  std::complex<double> eiu = std::polar(1.0, u);
  double sum = 0.0;
  for (int n = 0; n < n_terms; ++n)
    sum += 2.0 * std::real(bessel_asym_coeff(d, alpha, n) * eiu) * std::pow(u, -n);
  double a1 = (mu - 1.0) / 8.0;
  double a2 = a1 * (mu - 9.0) / 16.0;
  double next = (n_terms == 1) ? std::abs(a1) : std::abs(a2);
  AsymptoticValue r;
  r.value = std::pow(u, -decay) * sum;
  r.error_bound = std::sqrt(2.0 / M_PI) * (next + 1.0) * std::pow(u, -decay - n_terms);
  return r;
}

}  // namespace rfm
