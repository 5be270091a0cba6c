#pragma once

#include <Eigen/Dense>
#include <complex>
#include <functional>

namespace rfm {

using Eigen::ArrayXd;

/// Quadrature for integrals against dt/t over dyadic blocks [2^k, 2^{k+1}],
/// k = k_min .. k_max, Gauss-Legendre in log t per block. The weights of one
/// block sum to ln 2, the dt/t measure of a dyadic block.
struct TGrid {
  int k_min = 0, k_max = 0, nodes_per_block = 16;
  ArrayXd nodes, weights;

  static TGrid dyadic(int k_min, int k_max, int nodes_per_block = 16);
  TGrid refined(int factor) const { return dyadic(k_min, k_max, nodes_per_block * factor); }
  double t_lo() const { return std::exp2(k_min); }
  double t_hi() const { return std::exp2(k_max + 1); }
};

std::complex<double> tgrid_integrate(const std::function<std::complex<double>(double)>& g,
                                     const TGrid& grid);

}  // namespace rfm
