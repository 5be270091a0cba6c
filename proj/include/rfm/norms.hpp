#pragma once

#include <optional>
#include <vector>

#include "rfm/grid_field.hpp"

namespace rfm {

/// Annulus r_lo <= |x| < r_hi about the origin (ball when r_lo = 0).
struct Region {
  double r_lo = 0.0;
  double r_hi = std::numeric_limits<double>::infinity();
};

/// Riemann-sum L^p norm over the region (whole box if absent); p = inf gives
/// the sup of |f| over the region.
double lp_norm(const GridField& f, double p, std::optional<Region> region = {});

struct LorentzExponents {
  double p = 2.0;            // in (1, inf)
  double q = 2.0;            // in [1, inf]; inf -> supremum form
};

/// Lorentz norm ( int_0^inf (t^{1/p} f*(t))^q dt/t )^{1/q} with f* the
/// decreasing rearrangement of |values| weighted by cell volume. The layer
/// integrals over each constant piece of f* are evaluated in closed form, so
/// indicators come out exactly.
double lorentz_norm(const GridField& f, LorentzExponents pq);

struct RingStat {
  double r_center = 0.0;
  double l2_mean = 0.0;  // rms of |f| over the ring
  double lp_mass = 0.0;  // (sum |f|^p cellvol)^{1/p} over the ring
  long cells = 0;
  bool empty = true;
};

std::vector<RingStat> annulus_profile(const GridField& f, const ArrayXd& ring_edges, double p = 2.0);

struct FitReport {
  double slope = 0.0, intercept = 0.0, stderr_slope = 0.0;
  double x_lo = 0.0, x_hi = 0.0;  // usable range actually fitted
  bool reliable = true;
};

/// Least-squares line through (log x, log y); needs >= 3 positive points.
FitReport loglog_fit(const ArrayXd& x, const ArrayXd& y);

}  // namespace rfm
