#include "rfm/square_functions.hpp"

#include <cmath>
#include <map>
#include <tuple>
#include <stdexcept>

#include "rfm/fourier.hpp"
#include "rfm/operators.hpp"
#include "rfm/quadrature.hpp"
#include "rfm/special_functions.hpp"

namespace rfm {

namespace {

// Shared driver: accumulate sum_i w_i t_i^{t_power} |F^{-1}[sym(rho; t_i) f^]|^2.
SquareFunctionResult accumulate_square(const GridField& f, const TGrid& tgrid, double t_power,
                                       const std::function<double(double, double)>& sym,
                                       bool spectrum_needs_cover) {
  f.validate();
  const int n = f.n;
  GridField F = grid_fft(f, Direction::forward);

  // coverage check: the dt/t integrand for frequency rho lives in t in
  // [rho/8, 8 rho] up to O(1e-4) mass; flag spectra sticking far outside.
  bool covered = true;
  if (spectrum_needs_cover) {
    double tot = 0.0, bad = 0.0;
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho;
      if (f.dim == 1) rho = std::abs(F.freq((int)i));
      else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
      double w = std::norm(F.values[i]);
      tot += w;
      if (rho > 1e-12 && (rho < tgrid.t_lo() * 4.0 || rho > tgrid.t_hi() / 4.0)) bad += w;
    }
    covered = bad <= 1e-4 * tot;
  }

  ArrayXd acc = ArrayXd::Zero(f.size());
  GridField slice = F;
  for (Eigen::Index it = 0; it < tgrid.nodes.size(); ++it) {
    const double t = tgrid.nodes[it];
    const double w = tgrid.weights[it] * std::pow(t, t_power);
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho;
      if (f.dim == 1) rho = std::abs(F.freq((int)i));
      else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
      slice.values[i] = F.values[i] * sym(rho, t);
    }
    GridField back = grid_fft(slice, Direction::inverse);
    for (Eigen::Index i = 0; i < acc.size(); ++i) acc[i] += w * std::norm(back.values[i]);
  }

  SquareFunctionResult res;
  res.field = f;
  for (Eigen::Index i = 0; i < acc.size(); ++i) res.field.values[i] = std::sqrt(acc[i]);
  res.tgrid = tgrid;
  res.convergence_flag = covered;
  return res;
}

}  // namespace

namespace {

// int_{t_lo}^{t_hi} [alpha u^2 (1-u^2)^{alpha-1}]^2 t^{pw} dt/t with u = rho/t.
// For pw = 0 the substitution v = u^2 gives the elementary antiderivative
//   (alpha^2/2) [ -v(1-v)^{2a-1}/(2a-1) - (1-v)^{2a}/((2a-1) 2a) ],
// so edge cells (u crossing 1) are exact. Other powers fall back to graded
// panels near the edge and midpoint evaluation away from it.
double cell_integral(double rho, double t_lo, double t_hi, double alpha, double pw) {
  double u_hi = std::min(rho / t_lo, 1.0);
  double u_lo = std::min(rho / t_hi, 1.0);
  if (u_hi <= u_lo) return 0.0;  // entirely above the edge (t <= rho)
  if (pw == 0.0) {
    double s1 = 2.0 * alpha - 1.0;
    auto F = [&](double v) {
      double om = 1.0 - v;
      return -v * std::pow(om, s1) / s1 - std::pow(om, s1 + 1.0) / (s1 * (s1 + 1.0));
    };
    return 0.5 * alpha * alpha * (F(u_hi * u_hi) - F(u_lo * u_lo));
  }
  auto h = [&](double t) {
    double u = rho / t, w = 1.0 - u * u;
    return w <= 0.0 ? 0.0
                    : alpha * alpha * u * u * u * u * std::pow(w, 2.0 * alpha - 2.0) *
                          std::pow(t, pw);
  };
  if (u_hi < 0.97)  // smooth across the cell: midpoint in log t
    return h(std::sqrt(t_lo * t_hi)) * std::log(t_hi / t_lo);
  PanelOptions opt;
  opt.min_panels = 8;
  opt.singular = {rho};
  double a = std::max(t_lo, rho * (1.0 + 1e-14)), b = t_hi;
  if (b <= a) return 0.0;
  Panels p = make_panels(a, b, opt);
  double acc = 0.0;
  for (Eigen::Index i = 0; i < p.nodes.size(); ++i)
    acc += p.weights[i] * h(p.nodes[i]) / p.nodes[i];
  return acc;
}

}  // namespace

SquareFunctionResult g_alpha(const GridField& f, double alpha, const TGrid& tgrid, double t_power,
                             bool allow_subcritical) {
  if (!(alpha > 0.5) && !allow_subcritical)
    throw std::domain_error("g_alpha: alpha must exceed 1/2");
  if (!(alpha > 0.0)) throw std::domain_error("g_alpha: alpha must be positive");
  if (t_power != 0.0) {
    // truncated variants keep the per-node kernels so the t-resolved edge
    // structure of K_t^alpha (and with it the spatial decay law) survives
    auto sym = [alpha](double rho, double t) {
      double u = rho / t, w = 1.0 - u * u;
      return w <= 0.0 ? 0.0 : alpha * u * u * std::pow(w, alpha - 1.0);
    };
    return accumulate_square(f, tgrid, t_power, sym, true);
  }

  f.validate();
  const int n = f.n;
  GridField F = grid_fft(f, Direction::forward);

  bool covered = true;
  {
    double tot = 0.0, bad = 0.0;
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho;
      if (f.dim == 1) rho = std::abs(F.freq((int)i));
      else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
      double w = std::norm(F.values[i]);
      tot += w;
      if (rho > 1e-12 && (rho < tgrid.t_lo() * 4.0 || rho > tgrid.t_hi() / 4.0)) bad += w;
    }
    covered = bad <= 1e-4 * tot;
  }

  // midpoint cells in log t over the dyadic block range; the per-cell
  // t-integral of the squared symbol is exact (see cell_integral), so
  // Plancherel gives the alpha/(4(2 alpha - 1)) constant up to the range
  // truncation alone, uniformly in alpha > 1/2.
  const int ncells = (tgrid.k_max - tgrid.k_min + 1) * tgrid.nodes_per_block;
  const double y0 = tgrid.k_min * std::log(2.0), y1 = (tgrid.k_max + 1) * std::log(2.0);
  ArrayXd acc = ArrayXd::Zero(f.size());
  GridField slice = F;
  for (int c = 0; c < ncells; ++c) {
    double t_lo = std::exp(y0 + (y1 - y0) * c / ncells);
    double t_hi = std::exp(y0 + (y1 - y0) * (c + 1) / ncells);
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho;
      if (f.dim == 1) rho = std::abs(F.freq((int)i));
      else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
      double w = rho > 1e-300 ? cell_integral(rho, t_lo, t_hi, alpha, 0.0) : 0.0;
      slice.values[i] = F.values[i] * std::sqrt(std::max(w, 0.0));
    }
    GridField back = grid_fft(slice, Direction::inverse);
    for (Eigen::Index i = 0; i < acc.size(); ++i) acc[i] += std::norm(back.values[i]);
  }

  SquareFunctionResult res;
  res.field = f;
  for (Eigen::Index i = 0; i < acc.size(); ++i) res.field.values[i] = std::sqrt(acc[i]);
  res.tgrid = tgrid;
  res.convergence_flag = covered;
  return res;
}

namespace {

// V(s) = int_0^s sigma^3 script_j_{beta+1}(sigma)^2 dsigma: with s = t rho the
// cell integrals of t^2 |d/dt A^beta_t|^2 dt/t become rho-independent
// increments of V, so the oscillatory Bessel tail is integrated exactly.
struct SphericalCellTable {
  double ds = 0.02;
  ArrayXd V;
  double s_max() const { return ds * (double)(V.size() - 1); }

  double at(double s) const {
    if (s <= 0.0) return 0.0;
    double x = std::min(s / ds, (double)(V.size() - 1));
    Eigen::Index i = (Eigen::Index)x;
    if (i + 1 >= V.size()) return V[V.size() - 1];
    double fr = x - (double)i;
    return V[i] * (1.0 - fr) + V[i + 1] * fr;
  }
};

const SphericalCellTable& spherical_cell_table(int d, double beta, double s_need) {
  static std::map<std::tuple<int, long long, long long>, SphericalCellTable> cache;
  long long smax_key = (long long)std::exp2(std::ceil(std::log2(std::max(s_need, 64.0))));
  auto key = std::make_tuple(d, (long long)(beta * (1ll << 40)), smax_key);
  auto it = cache.find(key);
  if (it == cache.end()) {
    SphericalCellTable tab;
    Eigen::Index npts = (Eigen::Index)((double)smax_key / tab.ds) + 2;
    tab.V.resize(npts);
    tab.V[0] = 0.0;
    const ArrayXd& xs = gl_nodes(8);
    const ArrayXd& ws = gl_weights(8);
    for (Eigen::Index i = 1; i < npts; ++i) {
      double a = (i - 1) * tab.ds, b = i * tab.ds;
      double inc = 0.0;
      for (int q = 0; q < 8; ++q) {
        double s = 0.5 * (a + b) + 0.5 * (b - a) * xs[q];
        double j = script_j_alpha(d, beta + 1.0, s);
        inc += 0.5 * (b - a) * ws[q] * s * s * s * j * j;
      }
      tab.V[i] = tab.V[i - 1] + inc;
    }
    it = cache.emplace(key, std::move(tab)).first;
  }
  return it->second;
}

}  // namespace

SquareFunctionResult g_beta_spherical(const GridField& f, double beta, const TGrid& tgrid) {
  const int d = f.dim;
  double nu1 = 0.5 * (d - 2) + beta + 1.0;
  if (nu1 < 0.0) throw std::domain_error("g_beta_spherical: (d-2)/2 + beta + 1 must be >= 0");
  f.validate();
  const int n = f.n;
  const double c = std::pow(M_PI, 0.5 * d) / gamma_fn(beta + 0.5 * d) *
                   std::exp2(0.5 * (d - 2) + beta) * gamma_fn(0.5 * (d - 2) + beta + 1.0);

  GridField F = grid_fft(f, Direction::forward);
  double rho_max = 1e-12;
  ArrayXd rho_of(F.size());
  for (Eigen::Index i = 0; i < F.size(); ++i) {
    double rho;
    if (f.dim == 1) rho = std::abs(F.freq((int)i));
    else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
    rho_of[i] = rho;
    rho_max = std::max(rho_max, rho);
  }
  bool covered = true;
  {
    double tot = 0.0, bad = 0.0;
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double w = std::norm(F.values[i]);
      tot += w;
      if (rho_of[i] > 1e-12 && (rho_of[i] < tgrid.t_lo() * 4.0 || rho_of[i] > tgrid.t_hi() / 4.0))
        bad += w;
    }
    covered = bad <= 1e-4 * tot;
  }
  const SphericalCellTable& tab = spherical_cell_table(d, beta, tgrid.t_hi() * rho_max);

  const int ncells = (tgrid.k_max - tgrid.k_min + 1) * tgrid.nodes_per_block;
  const double y0 = tgrid.k_min * std::log(2.0), y1 = (tgrid.k_max + 1) * std::log(2.0);
  ArrayXd acc = ArrayXd::Zero(f.size());
  GridField slice = F;
  for (int cidx = 0; cidx < ncells; ++cidx) {
    double t_lo = std::exp(y0 + (y1 - y0) * cidx / ncells);
    double t_hi = std::exp(y0 + (y1 - y0) * (cidx + 1) / ncells);
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho = rho_of[i];
      double w = rho > 1e-300 ? c * c * (tab.at(t_hi * rho) - tab.at(t_lo * rho)) : 0.0;
      slice.values[i] = F.values[i] * std::sqrt(std::max(w, 0.0));
    }
    GridField back = grid_fft(slice, Direction::inverse);
    for (Eigen::Index i = 0; i < acc.size(); ++i) acc[i] += std::norm(back.values[i]);
  }

  SquareFunctionResult res;
  res.field = f;
  for (Eigen::Index i = 0; i < acc.size(); ++i) res.field.values[i] = std::sqrt(acc[i]);
  res.tgrid = tgrid;
  res.convergence_flag = covered;
  return res;
}

EquivalenceReport equivalence_probe(const GridField& f, double alpha, const TGrid& tgrid,
                                    double floor_frac) {
  if (!(floor_frac > 0.0)) throw std::invalid_argument("equivalence_probe: floor must be positive");
  const double beta = alpha - 0.5 * (f.dim - 2);
  SquareFunctionResult g = g_alpha(f, alpha, tgrid);
  SquareFunctionResult gs = g_beta_spherical(f, beta, tgrid);

  double dmax = 0.0;
  for (Eigen::Index i = 0; i < gs.field.size(); ++i)
    dmax = std::max(dmax, std::real(gs.field.values[i]));
  const double floor = floor_frac * dmax;

  EquivalenceReport rep;
  rep.ratio = GridField::zeros(f.dim, f.n, f.extent);
  double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
  for (Eigen::Index i = 0; i < gs.field.size(); ++i) {
    double den = std::real(gs.field.values[i]);
    if (den < floor) continue;
    double r = std::real(g.field.values[i]) / den;
    rep.ratio.values[i] = r;
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
    rep.admissible_cells++;
  }
  if (rep.admissible_cells == 0) throw std::runtime_error("equivalence_probe: empty admissible region");
  rep.ratio_min = rmin;
  rep.ratio_max = rmax;
  return rep;
}

}  // namespace rfm
