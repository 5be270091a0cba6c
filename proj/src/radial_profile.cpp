#include "rfm/radial_profile.hpp"

#include <cmath>
#include <stdexcept>

namespace rfm {

ArrayXd RadialProfile::log_radii(double r_lo, double r_hi, int n) {
  if (!(r_lo > 0.0 && r_hi > r_lo && n >= 2)) throw std::invalid_argument("log_radii: bad range");
  ArrayXd r(n);
  double a = std::log(r_lo), b = std::log(r_hi);
  for (int i = 0; i < n; ++i) r[i] = std::exp(a + (b - a) * i / (n - 1.0));
  return r;
}

RadialProfile RadialProfile::sample(int d, const ArrayXd& radii, const std::function<cplx(double)>& f) {
  RadialProfile p;
  p.d = d;
  p.radii = radii;
  p.values.resize(radii.size());
  for (Eigen::Index i = 0; i < radii.size(); ++i) p.values[i] = f(radii[i]);
  p.validate();
  return p;
}

void RadialProfile::validate() const {
  if (d < 1) throw std::invalid_argument("RadialProfile: d must be >= 1");
  if (radii.size() != values.size() || radii.size() < 2)
    throw std::invalid_argument("RadialProfile: grid/value size mismatch");
  if (!(radii[0] > 0.0)) throw std::invalid_argument("RadialProfile: radii must be positive");
  for (Eigen::Index i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("RadialProfile: radii must increase");
}

// Natural cubic spline of (re, im) against log r.
struct RadialProfile::Spline {
  ArrayXd x;          // log radii
  ArrayXcd y, y2;     // values and second derivatives

  cplx eval(double r) const {
    double t = std::log(r);
    if (t < x[0] || t > x[x.size() - 1]) return {0.0, 0.0};
    Eigen::Index lo = 0, hi = x.size() - 1;
    while (hi - lo > 1) {
      Eigen::Index mid = (lo + hi) / 2;
      if (x[mid] > t) hi = mid;
      else lo = mid;
    }
    double h = x[hi] - x[lo];
    double a = (x[hi] - t) / h, b = (t - x[lo]) / h;
    return a * y[lo] + b * y[hi] +
           ((a * a * a - a) * y2[lo] + (b * b * b - b) * y2[hi]) * (h * h) / 6.0;
  }
};

const RadialProfile::Spline& RadialProfile::ensure_spline() const {
  if (!spline_) {
    auto s = std::make_shared<Spline>();
    s->x = radii.log();
    s->y = values;
    Eigen::Index n = radii.size();
    s->y2 = ArrayXcd::Zero(n);
    ArrayXcd u = ArrayXcd::Zero(n);
    for (Eigen::Index i = 1; i < n - 1; ++i) {
      double sig = (s->x[i] - s->x[i - 1]) / (s->x[i + 1] - s->x[i - 1]);
      cplx p = sig * s->y2[i - 1] + 2.0;
      s->y2[i] = (sig - 1.0) / p;
      u[i] = (s->y[i + 1] - s->y[i]) / (s->x[i + 1] - s->x[i]) -
             (s->y[i] - s->y[i - 1]) / (s->x[i] - s->x[i - 1]);
      u[i] = (6.0 * u[i] / (s->x[i + 1] - s->x[i - 1]) - sig * u[i - 1]) / p;
    }
    for (Eigen::Index k = n - 2; k >= 1; --k) s->y2[k] = s->y2[k] * s->y2[k + 1] + u[k];
    s->y2[0] = s->y2[n - 1] = cplx(0.0, 0.0);
    spline_ = std::move(s);
  }
  return *spline_;
}

cplx RadialProfile::interp(double r) const {
  if (r <= 0.0) return {0.0, 0.0};
  return ensure_spline().eval(r);
}

}  // namespace rfm
