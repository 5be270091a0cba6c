#pragma once

#include <cstdint>
#include <vector>

#include "rfm/grid_field.hpp"

namespace rfm {

using Mask = std::vector<uint8_t>;  // one flag per grid cell

/// Dyadic cube in cell units: corner (x, y), side 2^level cells (y = 0 in 1-D).
struct DyadicCube {
  int level = 0;
  int x = 0, y = 0;
};

/// Frequency piece L_k f = phi_k * f with phi-hat supported in 2^k (1/5, 5).
GridField lk_field(const GridField& f, int k);

/// Cube level (cells) <-> Littlewood-Paley index k for a grid whose spacing is
/// a power of two: a cube of side 2^level cells has physical side 2^{-k}.
int cube_level_for_k(const GridField& f, int k);
int k_for_cube_level(const GridField& f, int level);

struct PeetreResult {
  GridField field;
  int k_lo = 0, k_hi = 0;
  bool truncated = false;  // some requested k exceeded the grid resolution
};

/// Peetre maximal square function
///   ( sum_k sup_{|y| <= 100 d 2^{-k}} |L_k f(x+y)|^2 )^{1/2},
/// discrete sup over grid points in the Euclidean ball.
PeetreResult peetre_square(const GridField& f, int k_lo, int k_hi);

struct LevelSets {
  std::vector<int> ns;       // ascending; Omega_{ns[i+1]} c Omega_{ns[i]}
  std::vector<Mask> omega;
  std::vector<Mask> omega_star;
  std::vector<double> meas_omega, meas_omega_star;
};

/// Omega_n = { Sf > 2^n } for n in the dynamic range (top max_levels levels),
/// Omega_n* = { M chi_{Omega_n} > 100^{-d} } with the maximal function taken
/// over balls dense enough for the cube geometry (plus the global mean).
LevelSets level_sets(const GridField& sq, int max_levels = 12);

/// Maximal dyadic cubes whose 50-fold dilate (cube grown by floor(24.5 side)
/// cells on each side) is contained in the mask.
std::vector<DyadicCube> whitney(const Mask& omega_star, int n_axis, int dim);

struct ClassifiedCube {
  DyadicCube q;
  int n_index = -1;  // index into LevelSets::ns
  int k = 0;         // matching Littlewood-Paley index
  int w_index = -1;  // containing Whitney cube (index into that n's list)
};

/// Q in Q^n_{-k} iff |Q cap Omega_n| >= |Q|/2 and |Q cap Omega_{n+1}| < |Q|/2;
/// each cube lands in at most one n. Only levels matching k in [k_lo, k_hi]
/// are classified.
std::vector<ClassifiedCube> classify_cubes(const GridField& f, const LevelSets& ls,
                                           const std::vector<std::vector<DyadicCube>>& whitney_per_n,
                                           int k_lo, int k_hi);

struct AtomRecord {
  int n = 0;      // level-set index value
  int k = 0;
  DyadicCube w;   // owning Whitney cube
  double l2_sq = 0.0;
};

struct DecompositionResult {
  int k_lo = 0, k_hi = 0;
  PeetreResult peetre;
  LevelSets levels;
  std::vector<std::vector<DyadicCube>> whitney_per_n;
  std::vector<ClassifiedCube> cubes;
  std::vector<GridField> lk;  // aligned with k = k_lo..k_hi
  std::vector<AtomRecord> atoms;
  std::vector<double> atom_energy_per_n;  // sum_{W,k} ||a_{k,W,n}||_2^2
  std::vector<double> ratio_per_n;        // energy / (2^{2n} meas(Omega_n))
};

/// Full pipeline: Peetre square function, level sets, Whitney decomposition,
/// cube classification and the atomic l2 estimate report.
DecompositionResult decompose(const GridField& f, int k_lo, int k_hi, int max_levels = 12);

}  // namespace rfm
