#pragma once

#include <random>
#include <string>

#include "rfm/grid_field.hpp"
#include "rfm/norms.hpp"
#include "rfm/operators.hpp"
#include "rfm/square_functions.hpp"
#include "rfm/tgrid.hpp"

namespace rfm {

/// Exponent formulas shared by every probe (single source of truth).
namespace exponents {
/// necessity threshold for 1 < p < 2: alpha~(p) = d(1/p - 1/2) + 1/2
double necessity_alpha(int d, double p);
/// duality threshold for p > 2: d(1/2 - 1/p)
double duality_alpha(int d, double p);
/// radial decay of the truncated square kernel: -((d-1)/2 + alpha)
double kernel_decay(int d, double alpha);
/// growth of the truncated L^p mass: max(0, d - p((d-1)/2 + alpha))
double mass_growth(int d, double p, double alpha);
}  // namespace exponents

struct ExperimentConfig {
  std::string experiment;
  int d = 2;
  int n = 512;
  double extent = 64.0;
  double alpha = 1.0, beta = 1.0, lambda = 0.5, p = 4.0 / 3.0, q = 2.0, t = 1.0;
  int tgrid_kmin = -6, tgrid_kmax = 6, tgrid_nodes = 16;
  std::uint64_t seed = 1;
  std::string output;
  std::string plot;  // optional SVG path
};

/// Cone-localized Schwartz-type test input: Gaussian radial factor centered at
/// |xi| = 1 times a smooth angular cutoff of aperture pi/8, vanishing near 0;
/// sampled spectrally on the grid and inverted.
GridField cone_test_input(int n, double extent, double aperture = M_PI / 8.0);
/// Modulated Gaussian with spectrum inside [2^-4, 2^4] (center frequency 1).
GridField modulated_gaussian(int dim, int n, double extent, double width = 1.0);
/// Ring-spectrum input: smooth annulus bump at |xi| in [1/2, 2].
GridField ring_spectrum_input(int n, double extent);
/// Seeded random band-limited input with spectrum in |xi| in [lo, hi].
GridField random_band_limited(int dim, int n, double extent, double lo, double hi,
                              std::uint64_t seed);

struct DecayFitReport {
  FitReport fit;
  double expected = 0.0;
  ArrayXd ring_r, ring_val;
  bool conclusive = true;  // >= 1.5 decades of usable rings
};

/// Radial decay exponent of ( int_1^2 |K_t^alpha * eta|^2 dt )^{1/2} via ring
/// profiles of the 2-D field; expected slope -((d-1)/2 + alpha).
DecayFitReport kernel_decay_experiment(const ExperimentConfig& cfg);

struct ThresholdReport {
  ArrayXd alphas, growth;   // measured growth exponent per alpha
  double crossing = 0.0;    // alpha where the fitted growth line hits 0
  double expected = 0.0;
  bool conclusive = true;
};

/// Truncated L^p mass growth of the square kernel field over |x| <= R; the
/// zero-crossing in alpha estimates the necessity threshold alpha~(p).
ThresholdReport necessity_probe(const ExperimentConfig& cfg);

/// Dual probe: || int_1^2 b(t) K_t^alpha * eta dt ||-type truncated L^{p'}
/// mass growth; b is a seeded random trigonometric polynomial whose line
/// transform has no decay beyond L^2 across the fitted range (the worst case
/// the duality argument quantifies over). Crossing compared to d(1/2 - 1/p).
ThresholdReport duality_probe(const ExperimentConfig& cfg);

struct OrthogonalityReport {
  ArrayXd separations, pairings;  // |<psi*sigma_{r1}*f1, psi*sigma_{r2}*f2>| integrated
  FitReport fit;
  double expected = 0.0;
};

/// Separation decay of sphere-convolution pairings for inputs supported in
/// M-separated balls, r1 ranging over a window [M-4, M+4] with an L^2(H)
/// normalized resonant profile and r2 in [1,2]. Computed by exact polar
/// reduction (1-D quadrature); expected log-log slope -(d-1)/2.
OrthogonalityReport orthogonality_decay(const ExperimentConfig& cfg);
/// Raw pairing for arbitrary configuration (used for the control cases).
cplx sphere_pairing(int d, double separation, double r1_lo, double r1_hi, double rho0,
                    double r2_lo, double r2_hi, double bump_radius = 0.5);

struct ConstantReport {
  ArrayXd per_j_max;       // max ratio per shell index j
  double overall_max = 0.0;
  double spread = 0.0;     // max/min across j
};

/// Plancherel-step constant of the restriction estimate: ratio of
///   int |u|^2 rho^{2d/p - d - 1} | int_{I_j} r^{d-1} script_j(r t rho) F(r) dr |^2 drho
/// to int_{I_j} |F|^2 r^{d-1} dr, maximized over seeded random F (trig
/// polynomials), t in [1,2] and j in {3..7}; p = 2(d+1)/(d+3).
ConstantReport plancherel_step_check(const ExperimentConfig& cfg);

}  // namespace rfm
