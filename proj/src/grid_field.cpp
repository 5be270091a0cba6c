#include "rfm/grid_field.hpp"

#include <cmath>
#include <stdexcept>

namespace rfm {

GridField GridField::zeros(int dim, int n, double L) {
  GridField f;
  f.dim = dim;
  f.n = n;
  f.extent = L;
  f.values = ArrayXcd::Zero(dim == 1 ? n : (Eigen::Index)n * n);
  f.validate();
  return f;
}

GridField GridField::sample1(int n, double L, const std::function<cplx(double)>& fn) {
  GridField f = zeros(1, n, L);
  for (int i = 0; i < n; ++i) f.values[i] = fn(f.coord(i));
  return f;
}

GridField GridField::sample2(int n, double L, const std::function<cplx(double, double)>& fn) {
  GridField f = zeros(2, n, L);
  for (int iy = 0; iy < n; ++iy)
    for (int ix = 0; ix < n; ++ix) f.values[ix + (Eigen::Index)n * iy] = fn(f.coord(ix), f.coord(iy));
  return f;
}

double GridField::cell_volume() const {
  double h = spacing();
  return dim == 1 ? h : h * h;
}

double GridField::radius(Eigen::Index flat) const {
  if (dim == 1) return std::abs(coord((int)flat));
  int ix = (int)(flat % n), iy = (int)(flat / n);
  return std::hypot(coord(ix), coord(iy));
}

void GridField::validate() const {
  if (dim != 1 && dim != 2) throw std::invalid_argument("GridField: dim must be 1 or 2");
  if (n < 2 || (n & (n - 1)) != 0) throw std::invalid_argument("GridField: n must be a power of two");
  if (!(extent > 0.0)) throw std::invalid_argument("GridField: extent must be positive");
  Eigen::Index want = dim == 1 ? n : (Eigen::Index)n * n;
  if (values.size() != want) throw std::invalid_argument("GridField: value array size mismatch");
}

}  // namespace rfm
