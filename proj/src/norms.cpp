#include "rfm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "rfm/quadrature.hpp"

namespace rfm {

double lp_norm(const GridField& f, double p, std::optional<Region> region) {
  if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
  const double cv = f.cell_volume();
  const bool all = !region.has_value();
  double acc = 0.0, sup = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    if (!all) {
      double r = f.radius(i);
      if (r < region->r_lo || r >= region->r_hi) continue;
    }
    double a = std::abs(f.values[i]);
    if (std::isinf(p)) sup = std::max(sup, a);
    else acc += std::pow(a, p) * cv;
  }
  return std::isinf(p) ? sup : std::pow(acc, 1.0 / p);
}

double lorentz_norm(const GridField& f, LorentzExponents pq) {
  if (!(pq.p > 1.0 && std::isfinite(pq.p))) throw std::invalid_argument("lorentz_norm: p in (1, inf)");
  if (!(pq.q >= 1.0)) throw std::invalid_argument("lorentz_norm: q >= 1");
  const double cv = f.cell_volume();
  std::vector<double> a(f.size());
  for (Eigen::Index i = 0; i < f.size(); ++i) a[i] = std::abs(f.values[i]);
  std::sort(a.begin(), a.end(), std::greater<double>());

  if (std::isinf(pq.q)) {
    // sup_t t^{1/p} f*(t): on each layer the sup sits at the right endpoint
    double best = 0.0;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) break;
      best = std::max(best, std::pow((i + 1) * cv, 1.0 / pq.p) * a[i]);
    }
    return best;
  }
  // int (t^{1/p} f*)^q dt/t = sum_i f*_i^q * (p/q) [t_{i+1}^{q/p} - t_i^{q/p}]
  const double e = pq.q / pq.p;
  double acc = 0.0, prev = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) break;
    double next = std::pow((i + 1) * cv, e);
    acc += std::pow(a[i], pq.q) * (next - prev) / e;
    prev = next;
  }
  return std::pow(acc, 1.0 / pq.q);
}

std::vector<RingStat> annulus_profile(const GridField& f, const ArrayXd& edges, double p) {
  if (edges.size() < 2) throw std::invalid_argument("annulus_profile: need >= 2 edges");
  for (Eigen::Index i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1])) throw std::invalid_argument("annulus_profile: edges must increase");
  const int nr = (int)edges.size() - 1;
  std::vector<RingStat> out(nr);
  std::vector<double> sum2(nr, 0.0), sump(nr, 0.0);
  const double cv = f.cell_volume();
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    double r = f.radius(i);
    if (r < edges[0] || r >= edges[nr]) continue;
    int k = (int)(std::upper_bound(edges.data(), edges.data() + edges.size(), r) - edges.data()) - 1;
    k = std::clamp(k, 0, nr - 1);
    double a = std::abs(f.values[i]);
    sum2[k] += a * a;
    sump[k] += std::pow(a, p) * cv;
    out[k].cells++;
  }
  for (int k = 0; k < nr; ++k) {
    out[k].r_center = 0.5 * (edges[k] + edges[k + 1]);
    out[k].empty = out[k].cells == 0;
    if (!out[k].empty) {
      out[k].l2_mean = std::sqrt(sum2[k] / out[k].cells);
      out[k].lp_mass = std::pow(sump[k], 1.0 / p);
    }
  }
  return out;
}

FitReport loglog_fit(const ArrayXd& x, const ArrayXd& y) {
  if (x.size() != y.size() || x.size() < 3)
    throw std::invalid_argument("loglog_fit: need >= 3 points");
  for (Eigen::Index i = 0; i < x.size(); ++i)
    if (!(x[i] > 0.0 && y[i] > 0.0)) throw std::invalid_argument("loglog_fit: coordinates must be positive");
  LineFit lf = fit_line(x.log(), y.log());
  FitReport r;
  r.slope = lf.slope;
  r.intercept = lf.intercept;
  r.stderr_slope = lf.slope_stderr;
  r.x_lo = x.minCoeff();
  r.x_hi = x.maxCoeff();
  return r;
}

}  // namespace rfm
