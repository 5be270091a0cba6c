#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>
#include <span>
#include <vector>

namespace rfm {

using Eigen::ArrayXd;
using cplx = std::complex<double>;

/// Gauss-Legendre nodes/weights on [-1,1], computed once per order and cached.
const ArrayXd& gl_nodes(int order);
const ArrayXd& gl_weights(int order);

/// Composite Gauss-Legendre scheme over [a,b].
struct Panels {
  ArrayXd nodes;
  ArrayXd weights;
  double panel_max = 0.0;  // largest panel length used

  template <class F>
  auto integrate(F&& f) const {
    using R = decltype(f(0.0) * 1.0);
    R acc{};
    for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
    return acc;
  }
};

struct PanelOptions {
  double max_freq = 0.0;              // highest oscillation frequency of the integrand
  double nodes_per_period = 16.0;     // >= 4 nodes per oscillation with order-8 panels
  int order = 8;                      // GL order per panel
  std::vector<double> singular;       // points to refine toward geometrically
  double grade_rel = 1e-12;           // stop grading at |panel| ~ grade_rel*(b-a)
  int min_panels = 4;
};

/// Breakpoints for [a,b]: uniform panels sized for max_freq, geometrically
/// refined toward each singular point.
std::vector<double> panel_breakpoints(double a, double b, const PanelOptions& opt);

Panels make_panels(double a, double b, const PanelOptions& opt = {});
Panels make_panels(std::span<const double> breakpoints, int order);

/// Filon quadrature for I = \int_a^b g(x) e^{i omega x} dx with quadratic
/// interpolation of g per panel; exact in omega, so panel count depends only
/// on the smoothness of g.
cplx filon_exp(const std::function<cplx(double)>& g, double a, double b, double omega,
               const PanelOptions& opt = {});

/// Adaptive Simpson, used mostly by oracles and one-off constants.
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12, int max_depth = 40);

/// Least-squares fit of y = a*x + b. Returns (slope, intercept, stderr of slope).
struct LineFit {
  double slope = 0, intercept = 0, slope_stderr = 0;
};
LineFit fit_line(const ArrayXd& x, const ArrayXd& y);

}  // namespace rfm
