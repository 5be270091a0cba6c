#include "rfm/fourier.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

#include "rfm/quadrature.hpp"
#include "rfm/special_functions.hpp"

namespace rfm {

namespace {

// One centered axis transform:
//   forward: out_k = h * ph * (-1)^k DFT[(-1)^j in_j]_k
//   inverse: out_j = (1/h) * ph * (-1)^j IDFT[(-1)^k in_k]_j   (IDFT includes 1/n)
// with ph = (-1)^{n/2}, matching x_j = (j - n/2) h and xi_k = 2 pi (k - n/2)/L.
void axis_fft(Eigen::FFT<double>& fft, Eigen::VectorXcd& buf, double h, Direction dir) {
  const int n = (int)buf.size();
  const double ph = (n / 2) % 2 == 0 ? 1.0 : -1.0;
  for (int j = 1; j < n; j += 2) buf[j] = -buf[j];
  Eigen::VectorXcd out(n);
  if (dir == Direction::forward) {
    fft.fwd(out, buf);
    out *= (h * ph);
  } else {
    fft.inv(out, buf);
    out *= (ph / h);
  }
  for (int j = 1; j < n; j += 2) out[j] = -out[j];
  buf = out;
}

}  // namespace

GridField grid_fft(const GridField& f, Direction dir) {
  f.validate();
  GridField out = f;
  Eigen::FFT<double> fft;
  const int n = f.n;
  const double h = f.spacing();
  if (f.dim == 1) {
    Eigen::VectorXcd buf = f.values.matrix();
    axis_fft(fft, buf, h, dir);
    out.values = buf.array();
    return out;
  }
  Eigen::Map<Eigen::MatrixXcd> m(out.values.data(), n, n);
  Eigen::VectorXcd buf(n);
  for (int iy = 0; iy < n; ++iy) {  // transform in x
    buf = m.col(iy);
    axis_fft(fft, buf, h, dir);
    m.col(iy) = buf;
  }
  for (int ix = 0; ix < n; ++ix) {  // transform in y
    buf = m.row(ix).transpose();
    axis_fft(fft, buf, h, dir);
    m.row(ix) = buf.transpose();
  }
  return out;
}

RadialTransformResult radial_fourier_fn(const std::function<cplx(double)>& f0, int d,
                                        double r_lo, double r_hi, const ArrayXd& out_rho,
                                        Direction dir, std::span<const double> singular,
                                        double intrinsic_freq) {
  if (d < 2) throw std::domain_error("radial_fourier: dimension must be >= 2");
  if (!(r_hi > r_lo && r_lo >= 0.0)) throw std::invalid_argument("radial_fourier: bad support");
  const double rho_max = out_rho.maxCoeff();
  PanelOptions opt;
  opt.max_freq = rho_max + intrinsic_freq;
  opt.order = 8;
  opt.singular.assign(singular.begin(), singular.end());
  // panel length <= pi / (2 rho_max): >= 4 nodes per kernel oscillation
  Panels panels = make_panels(std::max(r_lo, 1e-12), r_hi, opt);
  if (panels.panel_max > 0.5 * M_PI / std::max(rho_max, 1e-12)) {
    // tighten explicitly; make_panels sizes off nodes_per_period which is looser
    PanelOptions o2 = opt;
    o2.nodes_per_period = 4.0 * opt.order;
    panels = make_panels(std::max(r_lo, 1e-12), r_hi, o2);
  }

  ArrayXcd weighted(panels.nodes.size());
  for (Eigen::Index i = 0; i < panels.nodes.size(); ++i) {
    double r = panels.nodes[i];
    weighted[i] = panels.weights[i] * f0(r) * std::pow(r, d - 1);
  }

  RadialTransformResult res;
  res.profile.d = d;
  res.profile.radii = out_rho;
  res.profile.values.resize(out_rho.size());
  res.reliable.assign(out_rho.size(), true);
  const double pref = dir == Direction::inverse ? FourierConvention::inverse_prefactor(d) : 1.0;
  for (Eigen::Index k = 0; k < out_rho.size(); ++k) {
    double rho = out_rho[k];
    cplx acc{0.0, 0.0};
    for (Eigen::Index i = 0; i < panels.nodes.size(); ++i)
      acc += weighted[i] * script_j(d, panels.nodes[i] * rho);
    res.profile.values[k] = pref * acc;
    res.reliable[k] = panels.panel_max <= 0.5 * M_PI / std::max(rho, 1e-12) * 1.0000001;
  }
  res.profile.validate();
  return res;
}

RadialTransformResult radial_fourier(const RadialProfile& f, const ArrayXd& out_rho, Direction dir) {
  f.validate();
  return radial_fourier_fn([&f](double r) { return f.interp(r); }, f.d, f.support_min(),
                           f.support_max(), out_rho, dir);
}

namespace {

// s0,s1,s2 of the quadratic Filon weights; shared with filon_exp's internals.
void filon_s_local(double t, double& s0, double& s1, double& s2) {
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

RadialKernelSampler::RadialKernelSampler(std::function<double(double)> m, int d, double lo,
                                         double hi, std::vector<double> singular,
                                         double r_switch, int corrections)
    : d_(d), lo_(lo), hi_(hi), r_switch_(r_switch),
      corrections_(std::clamp(corrections, 0, 7)) {
  if (d < 2) throw std::domain_error("RadialKernelSampler: dimension must be >= 2");
  if (!(lo > 0.0 && hi > lo)) throw std::invalid_argument("RadialKernelSampler: bad support");

  // direct branch panels, sized for the largest direct radius
  PanelOptions dopt;
  dopt.max_freq = r_switch;
  dopt.min_panels = 32;
  dopt.singular = singular;
  Panels p = make_panels(lo, hi, dopt);
  dir_nodes_ = p.nodes;
  dir_weighted_.resize(p.nodes.size());
  for (Eigen::Index i = 0; i < p.nodes.size(); ++i)
    dir_weighted_[i] = p.weights[i] * m(p.nodes[i]) * std::pow(p.nodes[i], d - 1);

  // Filon panels: oscillation handled exactly, panel count set by smoothness
  PanelOptions fopt;
  fopt.min_panels = 64;
  fopt.singular = singular;
  auto bp = panel_breakpoints(lo, hi, fopt);
  const int np = (int)bp.size() - 1;
  fil_center_.resize(np);
  fil_half_.resize(np);
  fil_amp_.assign(corrections + 1, Eigen::ArrayXXd(np, 3));
  const double half_pow = 0.5 * (d - 1);
  for (int i = 0; i < np; ++i) {
    double c = 0.5 * (bp[i] + bp[i + 1]), h = 0.5 * (bp[i + 1] - bp[i]);
    fil_center_[i] = c;
    fil_half_[i] = h;
    const double nodes[3] = {c - h, c, c + h};
    for (int mm = 0; mm <= corrections; ++mm)
      for (int k = 0; k < 3; ++k)
        fil_amp_[mm](i, k) = m(nodes[k]) * std::pow(nodes[k], half_pow - mm);
  }

  const double nu = 0.5 * (d - 2);
  const double mu = 4.0 * nu * nu;
  theta_ = (0.5 * nu + 0.25) * M_PI;
  C_d_ = script_j_constant(d) * std::sqrt(2.0 / M_PI);
  a_coeff_.resize(corrections + 1);
  a_coeff_[0] = 1.0;
  for (int mm = 1; mm <= corrections; ++mm)
    a_coeff_[mm] = a_coeff_[mm - 1] * (mu - (2.0 * mm - 1.0) * (2.0 * mm - 1.0)) / (8.0 * mm);
}

double RadialKernelSampler::operator()(double r) const {
  const double pref = FourierConvention::inverse_prefactor(d_);
  if (r <= r_switch_) {
    double acc = 0.0;
    for (Eigen::Index i = 0; i < dir_nodes_.size(); ++i)
      acc += dir_weighted_[i] * script_j(d_, r * dir_nodes_[i]);
    return pref * acc;
  }
  // script_j(s) ~ C_d s^{-(d-1)/2} Re[ e^{-i theta} (sum_m i^m a_m s^{-m}) e^{is} ]
  cplx sum{0.0, 0.0};
  double rm[8];
  rm[0] = 1.0;
  for (int mm = 1; mm <= corrections_; ++mm) rm[mm] = rm[mm - 1] / r;
  for (Eigen::Index i = 0; i < fil_center_.size(); ++i) {
    double h = fil_half_[i];
    double th = r * h;
    double s0, s1, s2;
    filon_s_local(th, s0, s1, s2);
    cplx cm = h * cplx(s2, -s1);
    cplx c0 = 2.0 * h * (s0 - s2);
    cplx cp = h * cplx(s2, s1);
    // fold the i^m a_m r^{-m} corrections into the amplitude at each node
    double g0 = 0, g1 = 0, g2 = 0, q0 = 0, q1 = 0, q2 = 0;  // real and imag parts
    for (int mm = 0; mm <= corrections_; ++mm) {
      double coef = a_coeff_[mm] * rm[mm];
      switch (mm % 4) {
        case 0: g0 += coef * fil_amp_[mm](i, 0); g1 += coef * fil_amp_[mm](i, 1); g2 += coef * fil_amp_[mm](i, 2); break;
        case 1: q0 += coef * fil_amp_[mm](i, 0); q1 += coef * fil_amp_[mm](i, 1); q2 += coef * fil_amp_[mm](i, 2); break;
        case 2: g0 -= coef * fil_amp_[mm](i, 0); g1 -= coef * fil_amp_[mm](i, 1); g2 -= coef * fil_amp_[mm](i, 2); break;
        case 3: q0 -= coef * fil_amp_[mm](i, 0); q1 -= coef * fil_amp_[mm](i, 1); q2 -= coef * fil_amp_[mm](i, 2); break;
      }
    }
    cplx phase = std::polar(1.0, r * fil_center_[i]);
    sum += phase * (cm * cplx(g0, q0) + c0 * cplx(g1, q1) + cp * cplx(g2, q2));
  }
  cplx rot = std::polar(1.0, -theta_);
  return pref * C_d_ * std::pow(r, -0.5 * (d_ - 1)) * std::real(rot * sum);
}

}  // namespace rfm
