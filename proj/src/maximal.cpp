#include "rfm/maximal.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <stdexcept>

#include "rfm/fourier.hpp"
#include "rfm/operators.hpp"

namespace rfm {

namespace {

// Plain circular convolution of two cell arrays (no continuum scaling).
ArrayXcd circular_convolve(const ArrayXcd& a, const ArrayXcd& b, int n, int dim) {
  Eigen::FFT<double> fft;
  auto dft2 = [&](ArrayXcd v, Direction dir) {
    Eigen::Map<Eigen::MatrixXcd> m(v.data(), n, n);
    Eigen::VectorXcd buf(n);
    for (int c = 0; c < n; ++c) {
      buf = m.col(c);
      Eigen::VectorXcd out(n);
      if (dir == Direction::forward) fft.fwd(out, buf);
      else fft.inv(out, buf);
      m.col(c) = out;
    }
    for (int r = 0; r < n; ++r) {
      buf = m.row(r).transpose();
      Eigen::VectorXcd out(n);
      if (dir == Direction::forward) fft.fwd(out, buf);
      else fft.inv(out, buf);
      m.row(r) = out.transpose();
    }
    return v;
  };
  if (dim == 1) {
    Eigen::VectorXcd fa(n), fb(n), out(n);
    fft.fwd(fa, Eigen::VectorXcd(a.matrix()));
    fft.fwd(fb, Eigen::VectorXcd(b.matrix()));
    Eigen::VectorXcd prod = fa.array().cwiseProduct(fb.array()).matrix();
    fft.inv(out, prod);
    return out.array();
  }
  ArrayXcd fa = dft2(a, Direction::forward);
  ArrayXcd fb = dft2(b, Direction::forward);
  return dft2(fa * fb, Direction::inverse);
}

}  // namespace

GridField hl_maximal_radii(const GridField& f, const std::vector<double>& radii,
                           bool include_global_mean) {
  f.validate();
  const int n = f.n;
  const double h = f.spacing();
  ArrayXcd absf(f.size());
  double mean = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) {
    absf[i] = std::abs(f.values[i]);
    mean += std::real(absf[i]);
  }
  mean /= (double)f.size();

  GridField out = GridField::zeros(f.dim, n, f.extent);
  if (include_global_mean)
    for (Eigen::Index i = 0; i < out.size(); ++i) out.values[i] = mean;

  for (double r : radii) {
    if (!(r > 0.0)) throw std::invalid_argument("hl_maximal: radius must be positive");
    // ball kernel, wrapped indexing: offset component ix -> ix > n/2 ? ix - n : ix
    ArrayXcd ker = ArrayXcd::Zero(f.size());
    long count = 0;
    if (f.dim == 1) {
      for (int ix = 0; ix < n; ++ix) {
        int dx = ix > n / 2 ? ix - n : ix;
        if (std::abs(dx) * h <= r) { ker[ix] = 1.0; ++count; }
      }
    } else {
      for (int iy = 0; iy < n; ++iy) {
        int dy = iy > n / 2 ? iy - n : iy;
        for (int ix = 0; ix < n; ++ix) {
          int dx = ix > n / 2 ? ix - n : ix;
          if (std::hypot(dx * h, dy * h) <= r) { ker[ix + (Eigen::Index)n * iy] = 1.0; ++count; }
        }
      }
    }
    if (count == 0) continue;
    ArrayXcd avg = circular_convolve(absf, ker, n, f.dim) / (double)count;
    for (Eigen::Index i = 0; i < out.size(); ++i)
      out.values[i] = std::max(std::real(out.values[i]), std::real(avg[i]));
  }
  return out;
}

GridField hl_maximal(const GridField& f) {
  std::vector<double> radii;
  for (double r = f.spacing(); r <= 0.5 * f.extent * 1.0000001; r *= 2.0) radii.push_back(r);
  return hl_maximal_radii(f, radii, false);
}

MaximalResult m_maximal(const GridField& f, const MultiplierSpec& m, const TGrid& tgrid,
                        bool check_refinement) {
  if (m.support_lo < 0.5 || m.support_hi > 2.0)
    throw std::invalid_argument("m_maximal: multiplier must be supported in (1/2, 2)");
  if (tgrid.nodes.size() == 0) throw std::invalid_argument("m_maximal: empty t-grid");

  auto sup_field = [&](const TGrid& g) {
    GridField out = GridField::zeros(f.dim, f.n, f.extent);
    for (Eigen::Index i = 0; i < g.nodes.size(); ++i) {
      GridField Tf = apply_radial_multiplier(f, m, g.nodes[i]);
      for (Eigen::Index j = 0; j < out.size(); ++j)
        out.values[j] = std::max(std::real(out.values[j]), std::abs(Tf.values[j]));
    }
    return out;
  };

  MaximalResult res;
  res.field = sup_field(tgrid);
  res.tgrid = tgrid;
  if (check_refinement) {
    GridField fine = sup_field(tgrid.refined(2));
    // adding nodes can only increase a supremum; allow roundoff slack
    GridField both = fine;
    for (Eigen::Index j = 0; j < both.size(); ++j)
      both.values[j] = std::max(std::real(both.values[j]), std::real(res.field.values[j]));
    res.monotone_flag = true;
    for (Eigen::Index j = 0; j < both.size(); ++j)
      if (std::real(both.values[j]) < std::real(res.field.values[j]) - 1e-12) res.monotone_flag = false;
  }
  return res;
}

double riesz_u_part(double lambda, double s) {
  double br = std::pow(std::max(1.0 - s * s, 0.0), lambda);
  return br * smooth_step_down(std::abs(s), 0.5, 0.75);
}

double riesz_m_part(double lambda, double s) {
  double br = std::pow(std::max(1.0 - s * s, 0.0), lambda);
  return br * (1.0 - smooth_step_down(std::abs(s), 0.5, 0.75));
}

RieszMaximalResult riesz_maximal(const GridField& f, double lambda, const TGrid& tgrid) {
  if (lambda < 0.0) throw std::domain_error("riesz_maximal: lambda must be >= 0");
  if (tgrid.nodes.size() == 0) throw std::invalid_argument("riesz_maximal: empty t-grid");

  RieszMaximalResult res;
  res.tgrid = tgrid;
  res.field = GridField::zeros(f.dim, f.n, f.extent);
  for (int i = 0; i <= 2000; ++i) {
    double s = 2.0 * i / 2000.0;
    double whole = std::pow(std::max(1.0 - s * s, 0.0), lambda);
    res.split_recombination_error = std::max(
        res.split_recombination_error,
        std::abs(riesz_u_part(lambda, s) + riesz_m_part(lambda, s) - whole));
  }

  GridField F = grid_fft(f, Direction::forward);
  const int n = f.n;
  GridField slice = F;
  for (Eigen::Index it = 0; it < tgrid.nodes.size(); ++it) {
    double t = tgrid.nodes[it];
    for (Eigen::Index i = 0; i < F.size(); ++i) {
      double rho;
      if (f.dim == 1) rho = std::abs(F.freq((int)i));
      else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
      double s = rho / t;
      slice.values[i] = F.values[i] * (riesz_u_part(lambda, s) + riesz_m_part(lambda, s));
    }
    GridField back = grid_fft(slice, Direction::inverse);
    for (Eigen::Index j = 0; j < res.field.size(); ++j)
      res.field.values[j] = std::max(std::real(res.field.values[j]), std::abs(back.values[j]));
  }
  return res;
}

}  // namespace rfm
