#include "rfm/besov.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rfm/quadrature.hpp"
#include "rfm/special_functions.hpp"

namespace rfm {

double DyadicPartition::chi(double s) { return smooth_step_down(s, 1.0, 2.0); }

double DyadicPartition::p(int j, double tau) {
  double a = std::abs(tau);
  double sq;
  if (j == 0) sq = chi(a);
  else sq = chi(std::exp2(-j) * a) - chi(std::exp2(-j + 1) * a);
  return sq <= 0.0 ? 0.0 : std::sqrt(sq);
}

BesovBlocks besov_blocks(const std::function<double(double)>& m, double sup_lo, double sup_hi,
                         int j_max, int n_fft, double box) {
  if (!(sup_hi > sup_lo)) throw std::invalid_argument("besov_blocks: empty support");
  if (sup_hi > 0.5 * box) throw std::invalid_argument("besov_blocks: support exceeds analysis box");
  GridField f = GridField::zeros(1, n_fft, box);
  for (int i = 0; i < n_fft; ++i) {
    double x = f.coord(i);
    f.values[i] = (x >= sup_lo && x <= sup_hi) ? m(x) : 0.0;
  }
  GridField F = grid_fft(f, Direction::forward);
  const double nyquist = M_PI * n_fft / box;
  int j_hi = j_max;
  while (j_hi > 0 && std::exp2(j_hi + 1) > nyquist) --j_hi;

  BesovBlocks out;
  out.j_max = j_hi;
  out.box = box;
  out.n_fft = n_fft;
  out.block_norms = ArrayXd::Zero(j_hi + 1);
  const double dtau = 2.0 * M_PI / box;
  ArrayXd acc = ArrayXd::Zero(j_hi + 1);
  for (int k = 0; k < n_fft; ++k) {
    double tau = F.freq(k);
    double a = std::abs(tau);
    double w = std::norm(F.values[k]) * dtau;
    if (w == 0.0) continue;
    // locate the (at most two) blocks whose support contains tau
    int j_lo_blk = a <= 2.0 ? 0 : (int)std::floor(std::log2(a)) - 1;
    for (int j = std::max(0, j_lo_blk); j <= std::min(j_hi, j_lo_blk + 2); ++j) {
      double pj = DyadicPartition::p(j, tau);
      if (pj > 0.0) acc[j] += pj * pj * w;
    }
  }
  for (int j = 0; j <= j_hi; ++j)
    out.block_norms[j] = std::sqrt(acc[j] / (2.0 * M_PI));
  return out;
}

double besov_norm_from_blocks(const BesovBlocks& b, double alpha, double q) {
  if (!(alpha > 0.0)) throw std::invalid_argument("besov_norm: alpha must be positive");
  if (std::isinf(q)) {
    double best = 0.0;
    for (int j = 0; j <= b.j_max; ++j)
      best = std::max(best, std::exp2(j * alpha) * b.block_norms[j]);
    return best;
  }
  if (!(q >= 1.0)) throw std::invalid_argument("besov_norm: q must be >= 1");
  double acc = 0.0;
  for (int j = 0; j <= b.j_max; ++j)
    acc += std::pow(std::exp2(j * alpha) * b.block_norms[j], q);
  return std::pow(acc, 1.0 / q);
}

double besov_norm(const std::function<double(double)>& m, double sup_lo, double sup_hi,
                  double alpha, double q, int j_max, int n_fft, double box) {
  return besov_norm_from_blocks(besov_blocks(m, sup_lo, sup_hi, j_max, n_fft, box), alpha, q);
}

KernelSideNorm kernel_side_norm(const MultiplierSpec& m, double alpha, double q, int d,
                                int j_max) {
  if (!(m.support_lo > 0.0) || !std::isfinite(m.support_hi))
    throw std::invalid_argument("kernel_side_norm: multiplier must be compactly supported in (0, inf)");
  RadialKernelSampler kappa([&m](double u) { return m(u); }, d, m.support_lo, m.support_hi,
                            m.singular);
  KernelSideNorm out;
  out.block_integrals = ArrayXd::Zero(j_max + 1);
  const double wpow = 2.0 * alpha + d - 1.0;
  for (int j = 0; j <= j_max; ++j) {
    double a = j == 0 ? 1e-8 : std::exp2(j);
    double b = std::exp2(j + 1);
    PanelOptions opt;
    opt.max_freq = 2.0 * m.support_hi;  // |kappa|^2 beats at twice the top frequency
    opt.min_panels = 16;
    Panels p = make_panels(a, b, opt);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.nodes.size(); ++i) {
      double r = p.nodes[i];
      double k = kappa(r);
      acc += p.weights[i] * k * k * std::pow(r, wpow);
    }
    out.block_integrals[j] = acc;
  }
  if (std::isinf(q)) {
    double best = 0.0;
    for (int j = 0; j <= j_max; ++j) best = std::max(best, std::sqrt(out.block_integrals[j]));
    out.norm = best;
  } else {
    double acc = 0.0;
    for (int j = 0; j <= j_max; ++j) acc += std::pow(out.block_integrals[j], 0.5 * q);
    out.norm = std::pow(acc, 1.0 / q);
  }
  out.tail_resolved = j_max >= 1 &&
                      out.block_integrals[j_max] <= 1.05 * out.block_integrals[j_max - 1];
  return out;
}

namespace {

// Phi_1 of the construction: radial, 1 on [2^{-1/2}, 2^{1/2}], supported (1/2, 2).
double phi1(double r) {
  return (1.0 - smooth_step_down(r, 0.5, std::exp2(-0.5))) *
         smooth_step_down(r, std::exp2(0.5), 2.0);
}

struct Phi1Table {
  RadialProfile profile;  // forward transform of phi1 in dimension d
  double cut = 0.0;       // |Phi1-hat| below 1e-13 of peak beyond this
};

const Phi1Table& phi1_hat(int d) {
  static std::map<int, Phi1Table> cache;
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;
  const double s_max = 512.0;
  ArrayXd sigma(8192);
  for (int i = 0; i < 8192; ++i) sigma[i] = 1e-3 + (s_max - 1e-3) * i / 8191.0;
  auto f = [](double r) { return cplx(phi1(r), 0.0); };
  Phi1Table tab;
  tab.profile = radial_fourier_fn(f, d, 0.5, 2.0, sigma, Direction::forward).profile;
  double peak = tab.profile.values.abs().maxCoeff();
  Eigen::Index hi = sigma.size() - 1;
  while (hi > 0 && std::abs(tab.profile.values[hi]) < 1e-13 * peak) --hi;
  tab.cut = sigma[std::min(hi + 16, sigma.size() - 1)];
  return cache.emplace(d, std::move(tab)).first->second;
}

// Spherical average of the Bochner-Riesz profile (1-v^2)_+^lambda over the
// sphere of radius s centered at radius rho.
double br_sphere_average(int d, double lambda, double rho, double s) {
  if (rho <= 0.0 || s <= 0.0) {
    double v2 = std::max(rho, s) * std::max(rho, s);
    double w = 1.0 - v2;
    double area = 2.0 * std::pow(M_PI, 0.5 * d) / gamma_fn(0.5 * d);
    return w <= 0.0 ? 0.0 : area * std::pow(w, lambda);
  }
  double u0 = (rho * rho + s * s - 1.0) / (2.0 * rho * s);
  if (d == 2) {
    if (lambda == 0.0) return 2.0 * std::acos(std::clamp(u0, -1.0, 1.0));
    // 2 int_0^pi (1 - v(th)^2)_+^lambda dth with v^2 = rho^2+s^2-2 rho s cos th
    double th_star = std::acos(std::clamp(u0, -1.0, 1.0));
    if (th_star <= 0.0) return 0.0;
    PanelOptions opt;
    opt.min_panels = 12;
    opt.singular = {th_star};
    Panels p = make_panels(0.0, th_star, opt);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.nodes.size(); ++i) {
      double th = p.nodes[i];
      double v2 = rho * rho + s * s - 2.0 * rho * s * std::cos(th);
      double w = 1.0 - v2;
      if (w > 0.0) acc += p.weights[i] * std::pow(w, lambda);
    }
    return 2.0 * acc;
  }
  if (d == 3) {
    if (lambda == 0.0) return 2.0 * M_PI * (1.0 - std::clamp(u0, -1.0, 1.0));
    double ulo = std::clamp(u0, -1.0, 1.0);
    if (ulo >= 1.0) return 0.0;
    PanelOptions opt;
    opt.min_panels = 12;
    opt.singular = {ulo};
    Panels p = make_panels(ulo, 1.0, opt);
    double acc = 0.0;
    for (Eigen::Index i = 0; i < p.nodes.size(); ++i) {
      double u = p.nodes[i];
      double v2 = rho * rho + s * s - 2.0 * rho * s * u;
      double w = 1.0 - v2;
      if (w > 0.0) acc += p.weights[i] * std::pow(w, lambda);
    }
    return 2.0 * M_PI * acc;
  }
  throw std::domain_error("test_multiplier: only d in {2,3} implemented");
}

}  // namespace

double test_multiplier_chi(double rho) {
  return (1.0 - smooth_step_down(rho, 0.4, 0.6)) * smooth_step_down(rho, 1.4, 1.6);
}

ArrayXd test_multiplier_piece(int d, double p, int j, const ArrayXd& rho) {
  struct Key {
    int d, j; long long pbits; Eigen::Index n; double lo, hi;
    bool operator<(const Key& o) const {
      return std::tie(d, j, pbits, n, lo, hi) < std::tie(o.d, o.j, o.pbits, o.n, o.lo, o.hi);
    }
  };
  static std::map<Key, ArrayXd> cache;
  Key key{d, j, (long long)(p * (1ll << 40)), rho.size(), rho[0], rho[rho.size() - 1]};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;

  if (!(p > 1.0 && p < 2.0)) throw std::invalid_argument("test_multiplier: p must lie in (1,2)");
  const double lambda = d * (1.0 / p - 0.5) - 0.5;
  const Phi1Table& tab = phi1_hat(d);
  const double scale = std::exp2(-j);

  PanelOptions opt;
  opt.max_freq = 2.0;  // Phi1 supported in (1/2,2) bounds the oscillation of its transform
  opt.min_panels = 32;
  Panels pn = make_panels(1e-6, tab.cut, opt);
  ArrayXd w(pn.nodes.size());
  for (Eigen::Index i = 0; i < pn.nodes.size(); ++i) {
    double sg = pn.nodes[i];
    w[i] = pn.weights[i] * std::real(tab.profile.interp(sg)) * std::pow(sg, d - 1);
  }
  ArrayXd out = ArrayXd::Zero(rho.size());
  for (Eigen::Index k = 0; k < rho.size(); ++k) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < pn.nodes.size(); ++i)
      acc += w[i] * br_sphere_average(d, lambda, rho[k], scale * pn.nodes[i]);
    out[k] = acc;
  }
  return cache.emplace(std::move(key), std::move(out)).first->second;
}

std::function<double(double)> TestMultiplierProfile::as_function() const {
  double h = box / (2.0 * (double)rho.size());
  // uniform grid: rho[i] = i * (box/2) / n
  double step = rho.size() > 1 ? rho[1] - rho[0] : h;
  ArrayXd vals = values;
  Eigen::Index n = rho.size();
  return [vals, step, n](double r) {
    if (r < 0.0) return 0.0;
    double x = r / step;
    Eigen::Index i = (Eigen::Index)x;
    if (i + 1 >= n) return 0.0;
    double fr = x - (double)i;
    return vals[i] * (1.0 - fr) + vals[i + 1] * fr;
  };
}

TestMultiplierProfile test_multiplier(const TestMultiplierSpec& spec, int n_grid, double box) {
  if (!(spec.p > 1.0 && spec.p < 2.0)) throw std::invalid_argument("test_multiplier: p in (1,2)");
  if (spec.coeffs.size() > 20) throw std::invalid_argument("test_multiplier: J <= 20");
  TestMultiplierProfile prof;
  prof.box = box;
  Eigen::Index half = n_grid / 2;
  prof.rho.resize(half);
  double step = box / n_grid;
  for (Eigen::Index i = 0; i < half; ++i) prof.rho[i] = step * (double)i;
  prof.values = ArrayXd::Zero(half);
  for (Eigen::Index j = 0; j < spec.coeffs.size(); ++j) {
    double c = spec.coeffs[j];
    if (c == 0.0) continue;
    prof.values += c * test_multiplier_piece(spec.d, spec.p, (int)j + 1, prof.rho);
  }
  for (Eigen::Index i = 0; i < half; ++i) prof.values[i] *= test_multiplier_chi(prof.rho[i]);
  return prof;
}

EmbeddingReport radial_embedding_check(const std::function<double(double)>& g,
                                       const std::function<double(double)>& zeta,
                                       double sup_lo, double sup_hi, double alpha, double q,
                                       int d, std::vector<double> singular) {
  MultiplierSpec m = MultiplierSpec::from_function(
      "zeta*g", [g, zeta](double r) { return zeta(r) * g(r); }, sup_lo, sup_hi,
      std::move(singular));
  EmbeddingReport rep;
  rep.lhs = kernel_side_norm(m, alpha, q, d).norm;
  rep.rhs = besov_norm(g, sup_lo, sup_hi, alpha, q);
  rep.ratio = rep.lhs / rep.rhs;
  return rep;
}

}  // namespace rfm
