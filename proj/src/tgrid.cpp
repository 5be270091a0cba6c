#include "rfm/tgrid.hpp"

#include <cmath>
#include <stdexcept>

#include "rfm/quadrature.hpp"

namespace rfm {

TGrid TGrid::dyadic(int k_min, int k_max, int nodes_per_block) {
  if (k_max < k_min) throw std::invalid_argument("TGrid: k_max < k_min");
  if (nodes_per_block < 1) throw std::invalid_argument("TGrid: need at least one node per block");
  const ArrayXd& xs = gl_nodes(nodes_per_block);
  const ArrayXd& ws = gl_weights(nodes_per_block);
  const int nb = k_max - k_min + 1;
  TGrid g;
  g.k_min = k_min;
  g.k_max = k_max;
  g.nodes_per_block = nodes_per_block;
  g.nodes.resize((Eigen::Index)nb * nodes_per_block);
  g.weights.resize((Eigen::Index)nb * nodes_per_block);
  const double ln2 = std::log(2.0);
  for (int b = 0; b < nb; ++b) {
    double y0 = (k_min + b) * ln2, y1 = (k_min + b + 1) * ln2;
    double c = 0.5 * (y0 + y1), h = 0.5 * (y1 - y0);
    for (int j = 0; j < nodes_per_block; ++j) {
      g.nodes[(Eigen::Index)b * nodes_per_block + j] = std::exp(c + h * xs[j]);
      g.weights[(Eigen::Index)b * nodes_per_block + j] = h * ws[j];
    }
  }
  return g;
}

std::complex<double> tgrid_integrate(const std::function<std::complex<double>(double)>& g,
                                     const TGrid& grid) {
  std::complex<double> acc{0.0, 0.0};
  for (Eigen::Index i = 0; i < grid.nodes.size(); ++i) acc += grid.weights[i] * g(grid.nodes[i]);
  return acc;
}

}  // namespace rfm
