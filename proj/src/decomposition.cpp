#include "rfm/decomposition.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "rfm/fourier.hpp"
#include "rfm/maximal.hpp"
#include "rfm/multiplier.hpp"

namespace rfm {

namespace {

// phi-hat: smooth bump in log frequency, support exactly (1/5, 5), value 1 at rho=1.
double phi_hat(double rho) {
  if (rho <= 0.2 || rho >= 5.0) return 0.0;
  return std::exp(1.0) * std_bump(std::log(rho) / std::log(5.0));
}

void require_dyadic_spacing(const GridField& f) {
  double l2 = std::log2(f.spacing());
  if (std::abs(l2 - std::round(l2)) > 1e-9)
    throw std::invalid_argument("decomposition: grid spacing must be a power of two");
}

// circular sliding max with half-width w (cells) over a row of length n
void running_max(const double* src, double* dst, int n, int w) {
  if (2 * w + 1 >= n) {
    double m = src[0];
    for (int i = 1; i < n; ++i) m = std::max(m, src[i]);
    for (int i = 0; i < n; ++i) dst[i] = m;
    return;
  }
  std::vector<double> ext(n + 2 * w);
  for (int i = 0; i < n + 2 * w; ++i) ext[i] = src[((i - w) % n + n) % n];
  // van Herk: prefix/suffix maxima over blocks of length (2w+1)
  const int k = 2 * w + 1;
  const int ne = (int)ext.size();
  std::vector<double> pre(ne), suf(ne);
  for (int i = 0; i < ne; ++i) pre[i] = (i % k == 0) ? ext[i] : std::max(pre[i - 1], ext[i]);
  for (int i = ne - 1; i >= 0; --i)
    suf[i] = (i % k == k - 1 || i == ne - 1) ? ext[i] : std::max(suf[i + 1], ext[i]);
  for (int i = 0; i < n; ++i) {
    int lo = i, hi = i + 2 * w;  // window in ext coordinates
    dst[i] = std::max(suf[lo], pre[hi]);
  }
}

// sup over the Euclidean ball of radius R cells (discrete offsets), periodic
void ball_sup(const ArrayXd& absf, ArrayXd& out, int n, int dim, int R) {
  if (dim == 1) {
    if (2 * R + 1 >= n) {
      out.setConstant(absf.maxCoeff());
      return;
    }
    running_max(absf.data(), out.data(), n, R);
    return;
  }
  if (2 * R + 1 >= n) {
    out.setConstant(absf.maxCoeff());
    return;
  }
  out.setConstant(-1.0);
  std::vector<double> rowmax(n);
  for (int dy = -R; dy <= R; ++dy) {
    int w = (int)std::floor(std::sqrt((double)R * R - (double)dy * dy));
    for (int iy = 0; iy < n; ++iy) {
      int src = ((iy + dy) % n + n) % n;
      running_max(absf.data() + (Eigen::Index)n * src, rowmax.data(), n, w);
      double* o = out.data() + (Eigen::Index)n * iy;
      for (int ix = 0; ix < n; ++ix) o[ix] = std::max(o[ix], rowmax[ix]);
    }
  }
}

// periodic summed-area rectangle counts of a mask
struct RectCount {
  int n, dim;
  std::vector<long long> sat;  // (n+1)^dim prefix sums (dim==1: length n+1)

  RectCount(const Mask& m, int n_axis, int d) : n(n_axis), dim(d) {
    if (dim == 1) {
      sat.assign(n + 1, 0);
      for (int i = 0; i < n; ++i) sat[i + 1] = sat[i] + m[i];
    } else {
      sat.assign((size_t)(n + 1) * (n + 1), 0);
      for (int y = 0; y < n; ++y)
        for (int x = 0; x < n; ++x)
          at(x + 1, y + 1) = m[x + (size_t)n * y] + at(x, y + 1) + at(x + 1, y) - at(x, y);
    }
  }
  long long& at(int x, int y) { return sat[(size_t)y * (n + 1) + x]; }
  long long at(int x, int y) const { return sat[(size_t)y * (n + 1) + x]; }

  long long seg(int a, int len) const {  // 1-D wrapped segment [a, a+len)
    if (len >= n) return sat[n];
    a = ((a % n) + n) % n;
    int b = a + len;
    if (b <= n) return sat[b] - sat[a];
    return (sat[n] - sat[a]) + sat[b - n];
  }
  long long rect(int x, int y, int w, int h) const {  // wrapped rectangle
    if (dim == 1) return seg(x, w);
    if (w >= n && h >= n) return at(n, n);
    w = std::min(w, n);
    h = std::min(h, n);
    x = ((x % n) + n) % n;
    y = ((y % n) + n) % n;
    auto plain = [&](int x0, int y0, int x1, int y1) {
      return at(x1, y1) - at(x0, y1) - at(x1, y0) + at(x0, y0);
    };
    int x1 = x + w, y1 = y + h;
    long long total = 0;
    int xs0[2] = {x, 0}, xs1[2] = {std::min(x1, n), x1 > n ? x1 - n : 0};
    int ys0[2] = {y, 0}, ys1[2] = {std::min(y1, n), y1 > n ? y1 - n : 0};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (xs1[i] > xs0[i] && ys1[j] > ys0[j]) total += plain(xs0[i], ys0[j], xs1[i], ys1[j]);
    return total;
  }
};

int dilate_margin(int level, int factor) {
  // cube grown by floor((factor-1)/2 * side) cells on each side
  return (int)(((long long)(factor - 1) << level) / 2);
}

}  // namespace

GridField lk_field(const GridField& f, int k) {
  GridField F = grid_fft(f, Direction::forward);
  const int n = f.n;
  const double s = std::exp2(-k);
  for (Eigen::Index i = 0; i < F.size(); ++i) {
    double rho;
    if (f.dim == 1) rho = std::abs(F.freq((int)i));
    else rho = std::hypot(F.freq((int)(i % n)), F.freq((int)(i / n)));
    F.values[i] *= phi_hat(s * rho);
  }
  return grid_fft(F, Direction::inverse);
}

int cube_level_for_k(const GridField& f, int k) {
  require_dyadic_spacing(f);
  int lh = (int)std::round(std::log2(f.spacing()));
  return -k - lh;
}

int k_for_cube_level(const GridField& f, int level) {
  require_dyadic_spacing(f);
  int lh = (int)std::round(std::log2(f.spacing()));
  return -level - lh;
}

PeetreResult peetre_square(const GridField& f, int k_lo, int k_hi) {
  f.validate();
  if (k_hi < k_lo) throw std::invalid_argument("peetre_square: empty k range");
  const int n = f.n;
  const double h = f.spacing();
  const double nyq = M_PI * n / f.extent;

  PeetreResult res;
  res.k_lo = k_lo;
  res.k_hi = k_hi;
  res.truncated = 5.0 * std::exp2(k_hi) > nyq;

  ArrayXd acc = ArrayXd::Zero(f.size());
  ArrayXd absf(f.size()), sup(f.size());
  for (int k = k_lo; k <= k_hi; ++k) {
    GridField Lk = lk_field(f, k);
    for (Eigen::Index i = 0; i < absf.size(); ++i) absf[i] = std::abs(Lk.values[i]);
    double radius = 100.0 * f.dim * std::exp2(-k);
    int R = (int)std::floor(radius / h);
    ball_sup(absf, sup, n, f.dim, R);
    acc += sup * sup;
  }
  res.field = GridField::zeros(f.dim, n, f.extent);
  for (Eigen::Index i = 0; i < acc.size(); ++i) res.field.values[i] = std::sqrt(acc[i]);
  return res;
}

LevelSets level_sets(const GridField& sq, int max_levels) {
  sq.validate();
  const int n = sq.n;
  double smax = 0.0;
  for (Eigen::Index i = 0; i < sq.size(); ++i) smax = std::max(smax, std::real(sq.values[i]));
  if (!(smax > 0.0)) throw std::invalid_argument("level_sets: square function vanishes");
  int n_max = (int)std::ceil(std::log2(smax)) - 1;
  int n_min = n_max - max_levels + 1;

  // radii that make M chi_Q exceed 100^{-d} near any substantially-filled cube
  std::vector<double> radii;
  for (double r = sq.spacing(); r <= 0.5 * sq.extent * 1.0000001; r *= 2.0) radii.push_back(r);
  for (int m = 0; (1 << m) <= n; ++m) {
    double r = (std::ceil(25.5 * std::sqrt((double)sq.dim) * (1 << m)) + 1.0) * sq.spacing();
    if (r <= 0.5 * sq.extent) radii.push_back(r);
  }

  LevelSets ls;
  const double cv = sq.cell_volume();
  const double thresh = std::pow(100.0, -sq.dim);
  for (int nv = n_min; nv <= n_max; ++nv) {
    double cut = std::exp2(nv);
    Mask om(sq.size(), 0);
    long cnt = 0;
    GridField ind = GridField::zeros(sq.dim, n, sq.extent);
    for (Eigen::Index i = 0; i < sq.size(); ++i) {
      if (std::real(sq.values[i]) > cut) {
        om[i] = 1;
        ind.values[i] = 1.0;
        ++cnt;
      }
    }
    GridField mx = hl_maximal_radii(ind, radii, true);
    Mask oms(sq.size(), 0);
    long cnts = 0;
    for (Eigen::Index i = 0; i < sq.size(); ++i)
      if (std::real(mx.values[i]) > thresh) {
        oms[i] = 1;
        ++cnts;
      }
    ls.ns.push_back(nv);
    ls.omega.push_back(std::move(om));
    ls.omega_star.push_back(std::move(oms));
    ls.meas_omega.push_back(cnt * cv);
    ls.meas_omega_star.push_back(cnts * cv);
  }
  return ls;
}

std::vector<DyadicCube> whitney(const Mask& omega_star, int n_axis, int dim) {
  RectCount rc(omega_star, n_axis, dim);
  int top = (int)std::round(std::log2((double)n_axis));
  const int ny = dim == 2 ? n_axis : 1;

  auto ok = [&](int level, int cx, int cy) {
    int side = 1 << level;
    int e = dilate_margin(level, 50);
    long long want = dim == 1 ? (long long)std::min(side + 2 * e, n_axis)
                              : (long long)std::min(side + 2 * e, n_axis) *
                                    std::min(side + 2 * e, n_axis);
    return rc.rect(cx - e, cy - e, side + 2 * e, side + 2 * e) == want;
  };

  std::vector<DyadicCube> out;
  for (int level = top; level >= 0; --level) {
    int side = 1 << level;
    for (int cy = 0; cy < (dim == 2 ? ny : 1); cy += (dim == 2 ? side : 1)) {
      if (dim == 1 && cy > 0) break;
      for (int cx = 0; cx < n_axis; cx += side) {
        if (!ok(level, cx, cy)) continue;
        if (level < top) {
          int ps = side * 2;
          if (ok(level + 1, (cx / ps) * ps, (cy / ps) * ps)) continue;  // not maximal
        }
        out.push_back({level, cx, dim == 2 ? cy : 0});
      }
    }
  }
  return out;
}

std::vector<ClassifiedCube> classify_cubes(const GridField& f, const LevelSets& ls,
                                           const std::vector<std::vector<DyadicCube>>& wh,
                                           int k_lo, int k_hi) {
  const int n = f.n;
  const int dim = f.dim;
  std::vector<RectCount> counts;
  counts.reserve(ls.omega.size());
  for (const auto& m : ls.omega) counts.emplace_back(m, n, dim);

  // Whitney lookup per n: (level, corner) -> index
  std::vector<std::map<std::tuple<int, int, int>, int>> lut(wh.size());
  int top = (int)std::round(std::log2((double)n));
  for (size_t i = 0; i < wh.size(); ++i)
    for (size_t w = 0; w < wh[i].size(); ++w)
      lut[i][{wh[i][w].level, wh[i][w].x, wh[i][w].y}] = (int)w;

  std::vector<ClassifiedCube> out;
  for (int k = k_lo; k <= k_hi; ++k) {
    int level = cube_level_for_k(f, k);
    if (level < 0 || (1 << level) > n) continue;
    int side = 1 << level;
    long long area = dim == 1 ? side : (long long)side * side;
    for (int cy = 0; cy < (dim == 2 ? n : 1); cy += (dim == 2 ? side : 1)) {
      if (dim == 1 && cy > 0) break;
      for (int cx = 0; cx < n; cx += side) {
        // find the unique n with |Q cap Omega_n| >= |Q|/2 > |Q cap Omega_{n+1}|
        int pick = -1;
        for (int i = (int)ls.ns.size() - 1; i >= 0; --i) {
          long long c = counts[i].rect(cx, cy, side, side);
          if (2 * c >= area) {
            long long cnext = (i + 1 < (int)ls.ns.size())
                                  ? counts[i + 1].rect(cx, cy, side, side)
                                  : 0;
            if (2 * cnext < area) pick = i;
            break;  // deeper i have even larger counts; by nesting this i is the candidate
          }
        }
        if (pick < 0) continue;
        ClassifiedCube cc;
        cc.q = {level, cx, dim == 2 ? cy : 0};
        cc.n_index = pick;
        cc.k = k;
        cc.w_index = -1;
        for (int lv = level; lv <= top && cc.w_index < 0; ++lv) {
          int s2 = 1 << lv;
          auto it = lut[pick].find({lv, (cx / s2) * s2, dim == 2 ? (cy / s2) * s2 : 0});
          if (it != lut[pick].end()) cc.w_index = it->second;
        }
        out.push_back(cc);
      }
    }
  }
  return out;
}

DecompositionResult decompose(const GridField& f, int k_lo, int k_hi, int max_levels) {
  DecompositionResult res;
  res.k_lo = k_lo;
  res.k_hi = k_hi;
  res.peetre = peetre_square(f, k_lo, k_hi);
  res.levels = level_sets(res.peetre.field, max_levels);
  res.whitney_per_n.reserve(res.levels.omega_star.size());
  for (const auto& m : res.levels.omega_star) res.whitney_per_n.push_back(whitney(m, f.n, f.dim));
  res.cubes = classify_cubes(f, res.levels, res.whitney_per_n, k_lo, k_hi);
  for (int k = k_lo; k <= k_hi; ++k) res.lk.push_back(lk_field(f, k));

  const double cv = f.cell_volume();
  std::map<std::tuple<int, int, int>, double> energy;  // (n_index, k, w_index) -> sum
  for (const auto& cc : res.cubes) {
    if (cc.w_index < 0) continue;
    const GridField& Lk = res.lk[cc.k - k_lo];
    int side = 1 << cc.q.level;
    double e = 0.0;
    for (int gy = 0; gy < (f.dim == 2 ? side : 1); ++gy)
      for (int gx = 0; gx < side; ++gx) {
        Eigen::Index idx = (cc.q.x + gx) + (f.dim == 2 ? (Eigen::Index)f.n * (cc.q.y + gy) : 0);
        e += std::norm(Lk.values[idx]) * cv;
      }
    energy[{cc.n_index, cc.k, cc.w_index}] += e;
  }
  res.atom_energy_per_n.assign(res.levels.ns.size(), 0.0);
  for (const auto& [key, e] : energy) {
    auto [ni, k, wi] = key;
    AtomRecord a;
    a.n = res.levels.ns[ni];
    a.k = k;
    a.w = res.whitney_per_n[ni][wi];
    a.l2_sq = e;
    res.atoms.push_back(a);
    res.atom_energy_per_n[ni] += e;
  }
  res.ratio_per_n.assign(res.levels.ns.size(), 0.0);
  for (size_t i = 0; i < res.levels.ns.size(); ++i) {
    double denom = std::exp2(2.0 * res.levels.ns[i]) * res.levels.meas_omega[i];
    res.ratio_per_n[i] = denom > 0.0 ? res.atom_energy_per_n[i] / denom : 0.0;
  }
  return res;
}

}  // namespace rfm
