#pragma once

#include "rfm/grid_field.hpp"
#include "rfm/tgrid.hpp"

namespace rfm {

struct SquareFunctionResult {
  GridField field;       // nonnegative values
  TGrid tgrid;
  bool convergence_flag = true;  // t-range covers the input's spectrum
};

/// G_alpha f = ( sum_i w_i t_i^{t_power} |K_{t_i}^alpha * f|^2 )^{1/2},
/// approximating ( int |K_t^alpha * f|^2 t^{t_power} dt/t )^{1/2}. The plain
/// square function uses t_power = 0; t_power = 1 turns the measure into dt
/// (used with a single-block grid for the [1,2] truncations).
SquareFunctionResult g_alpha(const GridField& f, double alpha, const TGrid& tgrid,
                             double t_power = 0.0, bool allow_subcritical = false);

/// Spherical-mean square function
///   ( sum_i w_i t_i^2 |d/dt A^beta_t f|_{t=t_i}|^2 )^{1/2}
/// (the measure t dt written against the dt/t grid), derivative taken
/// analytically through the Bessel kernel.
SquareFunctionResult g_beta_spherical(const GridField& f, double beta, const TGrid& tgrid);

struct EquivalenceReport {
  double ratio_min = 0.0, ratio_max = 0.0;
  GridField ratio;          // zero outside the admissible region
  long admissible_cells = 0;
};

/// Pointwise ratio G_alpha f / G^sph_{alpha-(d-2)/2} f over the region where the
/// denominator is at least floor_frac times its global max.
EquivalenceReport equivalence_probe(const GridField& f, double alpha, const TGrid& tgrid,
                                    double floor_frac = 1e-3);

}  // namespace rfm
