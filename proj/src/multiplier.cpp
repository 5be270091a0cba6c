#include "rfm/multiplier.hpp"

#include <cmath>
#include <stdexcept>

namespace rfm {

double std_bump(double x) {
  double x2 = x * x;
  if (x2 >= 1.0) return 0.0;
  return std::exp(-1.0 / (1.0 - x2));
}

double smooth_step_down(double x, double a, double b) {
  if (x <= a) return 1.0;
  if (x >= b) return 0.0;
  double u = (x - a) / (b - a);
  double ra = std::exp(-1.0 / (1.0 - u));
  double rb = std::exp(-1.0 / u);
  return ra / (ra + rb);
}

double MultiplierSpec::operator()(double u) const {
  if (u < 0.0) throw std::domain_error("MultiplierSpec: negative frequency");
  if (u > domain_max)
    throw std::domain_error("multiplier '" + name + "' undefined at frequency " + std::to_string(u));
  if (u < support_lo || u > support_hi) return 0.0;
  return fn(u);
}

MultiplierSpec MultiplierSpec::bochner_riesz(double alpha) {
  if (alpha < 0.0) throw std::domain_error("bochner_riesz: alpha must be >= 0");
  MultiplierSpec m;
  m.name = "bochner_riesz";
  m.support_hi = 1.0;
  m.singular = {1.0};
  m.fn = [alpha](double u) {
    double w = 1.0 - u * u;
    return w <= 0.0 ? 0.0 : std::pow(w, alpha);
  };
  return m;
}

MultiplierSpec MultiplierSpec::k_alpha_hat(double alpha) {
  MultiplierSpec m;
  m.name = "k_alpha_hat";
  m.support_hi = 1.0;
  m.singular = {1.0};
  m.fn = [alpha](double u) {
    double w = 1.0 - u * u;
    return w <= 0.0 ? 0.0 : alpha * u * u * std::pow(w, alpha - 1.0);
  };
  return m;
}

MultiplierSpec MultiplierSpec::smooth_bump(double a, double b) {
  if (!(b > a && a >= 0.0)) throw std::invalid_argument("smooth_bump: bad support");
  MultiplierSpec m;
  m.name = "smooth_bump";
  m.support_lo = a;
  m.support_hi = b;
  double c = 0.5 * (a + b), h = 0.5 * (b - a);
  m.fn = [c, h](double u) { return std_bump((u - c) / h) * std::exp(1.0); };
  return m;
}

MultiplierSpec MultiplierSpec::tabulated(std::string name, RadialProfile profile) {
  profile.validate();
  MultiplierSpec m;
  m.name = std::move(name);
  m.support_lo = 0.0;
  m.support_hi = profile.support_max();
  m.domain_max = profile.support_max();
  m.fn = [p = std::move(profile)](double u) { return std::real(p.interp(u)); };
  return m;
}

MultiplierSpec MultiplierSpec::from_function(std::string name, std::function<double(double)> fn,
                                             double lo, double hi, std::vector<double> singular) {
  MultiplierSpec m;
  m.name = std::move(name);
  m.fn = std::move(fn);
  m.support_lo = lo;
  m.support_hi = hi;
  m.singular = std::move(singular);
  return m;
}

}  // namespace rfm
