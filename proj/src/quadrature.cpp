#include "rfm/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace rfm {

namespace {

// Newton iteration on P_n; nodes seeded from the Chebyshev approximation.
void compute_gl(int n, ArrayXd& x, ArrayXd& w) {
  x.resize(n);
  w.resize(n);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double pp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    x[i] = -z;
    x[n - 1 - i] = z;
    w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
    w[n - 1 - i] = w[i];
  }
}

const std::pair<ArrayXd, ArrayXd>& gl_rule(int order) {
  static std::map<int, std::pair<ArrayXd, ArrayXd>> cache;
  auto it = cache.find(order);
  if (it == cache.end()) {
    std::pair<ArrayXd, ArrayXd> rule;
    compute_gl(order, rule.first, rule.second);
    it = cache.emplace(order, std::move(rule)).first;
  }
  return it->second;
}

}  // namespace

const ArrayXd& gl_nodes(int order) { return gl_rule(order).first; }
const ArrayXd& gl_weights(int order) { return gl_rule(order).second; }

std::vector<double> panel_breakpoints(double a, double b, const PanelOptions& opt) {
  if (!(b > a)) throw std::invalid_argument("panel_breakpoints: empty interval");
  const double len = b - a;
  double h = len / opt.min_panels;
  if (opt.max_freq > 0.0) {
    // panel length such that order-`order` GL sees >= nodes_per_period nodes
    // per oscillation 2*pi/max_freq
    double per = 2.0 * M_PI / opt.max_freq;
    h = std::min(h, per * opt.order / opt.nodes_per_period);
  }
  int n = std::max(opt.min_panels, (int)std::ceil(len / h));
  std::vector<double> bp;
  bp.reserve(n + 1);
  for (int i = 0; i <= n; ++i) bp.push_back(a + len * i / n);

  // geometric refinement toward singular points (both sides where applicable)
  const double floor_len = std::max(opt.grade_rel * len, 1e-300);
  for (double s : opt.singular) {
    if (s < a - 1e-14 * len || s > b + 1e-14 * len) continue;
    std::vector<double> extra;
    for (double d = len; d > floor_len; d *= 0.5) {
      if (s + d > a && s + d < b) extra.push_back(s + d);
      if (s - d > a && s - d < b) extra.push_back(s - d);
    }
    if (s > a && s < b) extra.push_back(s);
    bp.insert(bp.end(), extra.begin(), extra.end());
  }
  std::sort(bp.begin(), bp.end());
  bp.erase(std::unique(bp.begin(), bp.end(),
                       [&](double u, double v) { return std::abs(u - v) < 1e-15 * len; }),
           bp.end());
  bp.front() = a;
  bp.back() = b;
  return bp;
}

Panels make_panels(std::span<const double> bp, int order) {
  const ArrayXd& xs = gl_nodes(order);
  const ArrayXd& ws = gl_weights(order);
  const int np = (int)bp.size() - 1;
  Panels p;
  p.nodes.resize((Eigen::Index)np * order);
  p.weights.resize((Eigen::Index)np * order);
  for (int i = 0; i < np; ++i) {
    double c = 0.5 * (bp[i] + bp[i + 1]);
    double h = 0.5 * (bp[i + 1] - bp[i]);
    p.panel_max = std::max(p.panel_max, 2.0 * h);
    for (int j = 0; j < order; ++j) {
      p.nodes[(Eigen::Index)i * order + j] = c + h * xs[j];
      p.weights[(Eigen::Index)i * order + j] = h * ws[j];
    }
  }
  return p;
}

Panels make_panels(double a, double b, const PanelOptions& opt) {
  auto bp = panel_breakpoints(a, b, opt);
  return make_panels(bp, opt.order);
}

namespace {

// s0 = sin(t)/t, s1 = (sin t - t cos t)/t^2, s2 = ((t^2-2) sin t + 2 t cos t)/t^3,
// with series fallbacks near t = 0.
void filon_s(double t, double& s0, double& s1, double& s2) {
  if (std::abs(t) < 0.5) {
    double t2 = t * t;
    s0 = 1.0 - t2 / 6 * (1.0 - t2 / 20 * (1.0 - t2 / 42 * (1.0 - t2 / 72)));
    s1 = t / 3 * (1.0 - t2 / 10 * (1.0 - t2 / 28 * (1.0 - t2 / 54)));
    s2 = 1.0 / 3.0 + t2 * (-1.0 / 10 + t2 * (1.0 / 168 + t2 * (-1.0 / 6480)));
  } else {
    double st = std::sin(t), ct = std::cos(t);
    s0 = st / t;
    s1 = (st - t * ct) / (t * t);
    s2 = ((t * t - 2.0) * st + 2.0 * t * ct) / (t * t * t);
  }
}

}  // namespace

cplx filon_exp(const std::function<cplx(double)>& g, double a, double b, double omega,
               const PanelOptions& opt) {
  auto bp = panel_breakpoints(a, b, opt);
  cplx acc{0.0, 0.0};
  for (size_t i = 0; i + 1 < bp.size(); ++i) {
    double c = 0.5 * (bp[i] + bp[i + 1]);
    double h = 0.5 * (bp[i + 1] - bp[i]);
    double th = omega * h;
    double s0, s1, s2;
    filon_s(th, s0, s1, s2);
    // weights for quadratic Lagrange interpolation at {c-h, c, c+h}
    cplx cm = h * cplx(s2, -s1);
    cplx c0 = 2.0 * h * (s0 - s2);
    cplx cp = h * cplx(s2, s1);
    cplx phase = std::polar(1.0, omega * c);
    acc += phase * (cm * g(c - h) + c0 * g(c) + cp * g(c + h));
  }
  return acc;
}

namespace {

double simpson_rec(const std::function<double(double)>& f, double a, double m, double b,
                   double fa, double fm, double fb, double whole, double tol, int depth) {
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, lm, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, rm, b, fm, frm, fb, right, tol / 2, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, m, b, fa, fm, fb, whole, tol, max_depth);
}

LineFit fit_line(const ArrayXd& x, const ArrayXd& y) {
  if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("fit_line: need >= 2 points");
  const double n = (double)x.size();
  double mx = x.mean(), my = y.mean();
  double sxx = ((x - mx) * (x - mx)).sum();
  double sxy = ((x - mx) * (y - my)).sum();
  LineFit r;
  r.slope = sxy / sxx;
  r.intercept = my - r.slope * mx;
  if (x.size() > 2) {
    ArrayXd res = y - (r.slope * x + r.intercept);
    double s2 = (res * res).sum() / (n - 2.0);
    r.slope_stderr = std::sqrt(s2 / sxx);
  }
  return r;
}

}  // namespace rfm
