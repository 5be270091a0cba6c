#pragma once

#include <optional>
#include <vector>

#include "rfm/grid_field.hpp"
#include "rfm/multiplier.hpp"
#include "rfm/tgrid.hpp"

namespace rfm {

/// Centered Hardy-Littlewood maximal function over grid-aligned balls with the
/// dyadic radius set {cell, 2 cell, 4 cell, ..., extent/2}.
GridField hl_maximal(const GridField& f);

/// Same with an explicit radius set (physical units); optionally includes the
/// global mean as the limiting ball.
GridField hl_maximal_radii(const GridField& f, const std::vector<double>& radii,
                           bool include_global_mean = false);

struct MaximalResult {
  GridField field;  // nonnegative
  TGrid tgrid;
  bool monotone_flag = true;
};

/// M_m f: pointwise max over t-nodes of |T_{m(t .)} f|; m must be supported in
/// (1/2, 2). With check_refinement, verifies the value only grows when nodes
/// are added (suprema over larger sets) and stores the result in monotone_flag.
MaximalResult m_maximal(const GridField& f, const MultiplierSpec& m, const TGrid& tgrid,
                        bool check_refinement = false);

/// Smooth splitting (1 - s^2)_+^lambda = u_lambda(s) + m_lambda(s) with
/// m_lambda supported in (1/2, 1] and u_lambda smooth, crossover on [1/2, 3/4].
double riesz_u_part(double lambda, double s);
double riesz_m_part(double lambda, double s);

/// R^lambda_* f over the t-grid: max over nodes of |R^lambda_t f|, computed from
/// the u/m split with a recombination consistency check.
struct RieszMaximalResult {
  GridField field;
  TGrid tgrid;
  double split_recombination_error = 0.0;  // max |u+m - (1-s^2)_+^lambda| sampled
};
RieszMaximalResult riesz_maximal(const GridField& f, double lambda, const TGrid& tgrid);

}  // namespace rfm
