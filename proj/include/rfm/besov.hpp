#pragma once

#include <functional>

#include "rfm/fourier.hpp"
#include "rfm/multiplier.hpp"

namespace rfm {

/// Fixed smooth dyadic partition on the frequency line: p_0^2 + sum_{j>=1}
/// p_j^2 = 1 with p_j supported in 2^j [1/2, 2] (p_0 on [0, 2]). Built by
/// telescoping a smooth transition chi, so the squares sum to one identically.
struct DyadicPartition {
  static double chi(double s);          // 1 for s <= 1, 0 for s >= 2, smooth
  static double p(int j, double tau);   // block j >= 0 at line frequency tau
};

struct BesovBlocks {
  ArrayXd block_norms;   // ||Delta_j m||_{L^2(R)}, j = 0..j_max
  int j_max = 0;
  double box = 0.0;      // analysis box and grid size actually used
  int n_fft = 0;
};

/// Littlewood-Paley block norms of a compactly supported profile on the line,
/// computed spectrally on a uniform grid over [-box/2, box/2).
BesovBlocks besov_blocks(const std::function<double(double)>& m, double sup_lo, double sup_hi,
                         int j_max = 13, int n_fft = 1 << 16, double box = 8.0);

/// B^2_{alpha,q} norm: ( sum_j (2^{j alpha} ||Delta_j m||_2)^q )^{1/q},
/// supremum form for q = inf.
double besov_norm_from_blocks(const BesovBlocks& b, double alpha, double q);
double besov_norm(const std::function<double(double)>& m, double sup_lo, double sup_hi,
                  double alpha, double q, int j_max = 13, int n_fft = 1 << 16, double box = 8.0);

struct KernelSideNorm {
  ArrayXd block_integrals;  // int_{I_j} |kappa|^2 r^{2 alpha + d - 1} dr, I_0 = (0,2]
  double norm = 0.0;        // ( sum_j B_j^{q/2} )^{1/q}
  bool tail_resolved = true;
};

/// Kernel-side polar norm of a radial multiplier: kappa is the d-dimensional
/// inverse transform of m(|.|), integrated over the dyadic shells I_j.
KernelSideNorm kernel_side_norm(const MultiplierSpec& m, double alpha, double q, int d,
                                int j_max = 12);

struct TestMultiplierSpec {
  double p = 4.0 / 3.0;   // in (1, 2)
  ArrayXd coeffs;         // c_j, j = 1..J (J <= 20)
  int d = 2;
};

/// Test multiplier of Bochner-Riesz type:
///   m(xi) = chi(xi) sum_j c_j (BR_{d(1/p-1/2)-1/2} * 2^{jd} Phi1-hat(2^j .))(xi)
/// realized radially; each piece is a Littlewood-Paley localization of the
/// Bochner-Riesz profile at scale 2^{-j}. Returned on a uniform rho-grid.
struct TestMultiplierProfile {
  ArrayXd rho;      // uniform grid on [0, box/2)
  ArrayXd values;
  double box = 8.0;
  std::function<double(double)> as_function() const;
};
TestMultiplierProfile test_multiplier(const TestMultiplierSpec& spec, int n_grid = 1 << 17,
                                      double box = 8.0);

/// One smoothed piece (coefficient 1, no chi cutoff); cached per (d, p, j, grid).
ArrayXd test_multiplier_piece(int d, double p, int j, const ArrayXd& rho);

/// The chi cutoff of the construction: radial, 1 near the unit sphere,
/// supported in [0.4, 1.6].
double test_multiplier_chi(double rho);

struct EmbeddingReport {
  double lhs = 0.0;   // d-dimensional Besov norm of zeta(|.|) g(|.|), kernel side
  double rhs = 0.0;   // line Besov norm of g
  double ratio = 0.0;
};

/// Radial embedding check: compares the d-dimensional kernel-side norm of
/// zeta(|.|) g(|.|) with the line Besov norm of g.
EmbeddingReport radial_embedding_check(const std::function<double(double)>& g,
                                       const std::function<double(double)>& zeta,
                                       double sup_lo, double sup_hi, double alpha, double q,
                                       int d, std::vector<double> singular = {});

}  // namespace rfm
