#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "rfm/fourier.hpp"
#include "rfm/multiplier.hpp"
#include "rfm/norms.hpp"
#include "rfm/operators.hpp"
#include "rfm/special_functions.hpp"

using namespace rfm;

TEST_CASE("radial_fourier: gaussian, ball indicator, inversion") {
  ArrayXd rho = RadialProfile::log_radii(1e-2, 20.0, 400);

  // gaussian in d = 2: transform is 2 pi e^{-rho^2/2}
  auto gauss = [](double r) { return cplx(std::exp(-0.5 * r * r), 0.0); };
  auto got = radial_fourier_fn(gauss, 2, 0.0, 14.0, rho, Direction::forward);
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    double expect = 2.0 * M_PI * std::exp(-0.5 * rho[i] * rho[i]);
    CHECK(std::abs(std::real(got.profile.values[i]) - expect) < 1e-8);
    CHECK(std::abs(std::imag(got.profile.values[i])) < 1e-12);
  }

  // unit ball indicator in d = 3: 4 pi (sin rho - rho cos rho) / rho^3
  auto ball = [](double r) { return cplx(r <= 1.0 ? 1.0 : 0.0, 0.0); };
  auto got3 = radial_fourier_fn(ball, 3, 0.0, 1.0, rho, Direction::forward);
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    double x = rho[i];
    double expect = 4.0 * M_PI * (std::sin(x) - x * std::cos(x)) / (x * x * x);
    CHECK(std::abs(std::real(got3.profile.values[i]) - expect) < 1e-6);
  }

  // forward then inverse returns the input on a smooth decaying profile
  ArrayXd r_back = RadialProfile::log_radii(5e-2, 8.0, 200);
  auto fwd = radial_fourier_fn(gauss, 2, 0.0, 14.0, RadialProfile::log_radii(1e-3, 40.0, 2000),
                               Direction::forward);
  auto back = radial_fourier(fwd.profile, r_back, Direction::inverse);
  for (Eigen::Index i = 0; i < r_back.size(); ++i)
    CHECK(std::abs(back.profile.values[i] - gauss(r_back[i])) < 1e-6);
}

TEST_CASE("radial_fourier scaling law and quadrature stability") {
  ArrayXd rho = RadialProfile::log_radii(0.1, 8.0, 120);
  auto f = [](double r) { return cplx(std::exp(-r * r), 0.0); };
  for (double lam : {0.5, 2.0}) {
    auto fl = [lam](double r) { return cplx(std::exp(-lam * lam * r * r), 0.0); };
    auto lhs = radial_fourier_fn(fl, 2, 0.0, 20.0, rho, Direction::forward);
    ArrayXd rho_scaled = rho / lam;
    auto rhs = radial_fourier_fn(f, 2, 0.0, 20.0, rho_scaled, Direction::forward);
    for (Eigen::Index i = 0; i < rho.size(); ++i)
      CHECK(std::abs(lhs.profile.values[i] - rhs.profile.values[i] / (lam * lam)) < 1e-8);
  }
}

TEST_CASE("grid_fft: parseval, shift theorem, cross-engine agreement") {
  const int n = 256;
  const double L = 32.0;
  GridField f = GridField::sample2(n, L, [](double x, double y) {
    return cplx(std::exp(-0.7 * (x * x + y * y)), 0.0);
  });
  GridField F = grid_fft(f, Direction::forward);

  // Parseval with the (2 pi)^d factor
  double nf = 0.0, nF = 0.0;
  double dxi = 2.0 * M_PI / L;
  for (Eigen::Index i = 0; i < f.size(); ++i) nf += std::norm(f.values[i]) * f.cell_volume();
  for (Eigen::Index i = 0; i < F.size(); ++i) nF += std::norm(F.values[i]) * dxi * dxi;
  CHECK(nF == doctest::Approx(std::pow(2.0 * M_PI, 2) * nf).epsilon(1e-10));

  // round trip
  GridField g = grid_fft(F, Direction::inverse);
  double err = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) err = std::max(err, std::abs(g.values[i] - f.values[i]));
  CHECK(err < 1e-12);

  // shift theorem: translating by one cell multiplies the transform by a phase
  GridField fs = GridField::sample2(n, L, [&](double x, double y) {
    double h = L / n;
    return cplx(std::exp(-0.7 * ((x - h) * (x - h) + y * y)), 0.0);
  });
  GridField Fs = grid_fft(fs, Direction::forward);
  double h = L / n;
  double maxdev = 0.0;
  for (int ky = 0; ky < n; ++ky)
    for (int kx = 0; kx < n; ++kx) {
      cplx phase = std::polar(1.0, -h * F.freq(kx));
      maxdev = std::max(maxdev,
                        std::abs(Fs.values[kx + (Eigen::Index)n * ky] -
                                 phase * F.values[kx + (Eigen::Index)n * ky]));
    }
  CHECK(maxdev < 1e-10);

  // cross-engine: centered gaussian against the radial engine on a ray
  ArrayXd ray(64);
  for (int i = 0; i < 64; ++i) ray[i] = (i + 1) * dxi;
  auto rad = radial_fourier_fn([](double r) { return cplx(std::exp(-0.7 * r * r), 0.0); }, 2, 0.0,
                               12.0, ray, Direction::forward);
  for (int i = 0; i < 64; ++i) {
    int kx = n / 2 + (i + 1);
    cplx grid_val = F.values[kx + (Eigen::Index)n * (n / 2)];
    CHECK(std::abs(grid_val - rad.profile.values[i]) < 1e-5);
  }
}

TEST_CASE("grid_fft 1-D parseval and roundtrip") {
  const int n = 1024;
  const double L = 64.0;
  GridField f = GridField::sample1(n, L, [](double x) {
    return std::exp(-0.5 * x * x) * std::polar(1.0, 2.0 * x);
  });
  GridField F = grid_fft(f, Direction::forward);
  double nf = 0.0, nF = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) nf += std::norm(f.values[i]) * f.cell_volume();
  for (Eigen::Index i = 0; i < F.size(); ++i) nF += std::norm(F.values[i]) * (2.0 * M_PI / L);
  CHECK(nF == doctest::Approx(2.0 * M_PI * nf).epsilon(1e-10));
  GridField g = grid_fft(F, Direction::inverse);
  for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(std::abs(g.values[i] - f.values[i]) < 1e-12);
}

TEST_CASE("RadialKernelSampler agrees with direct quadrature across the switch") {
  // smooth bump multiplier on (1/2, 2)
  MultiplierSpec m = MultiplierSpec::smooth_bump(0.5, 2.0);
  for (int d : {2, 3}) {
    RadialKernelSampler kap([&m](double u) { return m(u); }, d, 0.5, 2.0, {});
    for (double r : {1.0, 10.0, 47.0, 49.0, 80.0, 400.0}) {
      // dumb oracle: very fine Simpson on the full integrand
      double ref = oracle::simpson(
                       [&](double rho) {
                         return m(rho) * std::pow(rho, d - 1) * script_j(d, r * rho);
                       },
                       0.5, 2.0, 20000) *
                   std::pow(2.0 * M_PI, -d);
      CHECK(kap(r) == doctest::Approx(ref).epsilon(2e-5));
    }
  }
}

TEST_CASE("apply_radial_multiplier: identity, band-limited, composition") {
  const int n = 128;
  const double L = 32.0;
  GridField f = GridField::sample2(n, L, [](double x, double y) {
    return cplx(std::exp(-0.4 * (x * x + y * y)) * std::cos(0.7 * x), 0.0);
  });
  MultiplierSpec one = MultiplierSpec::from_function("one", [](double) { return 1.0; }, 0.0,
                                                     std::numeric_limits<double>::infinity());
  GridField id = apply_radial_multiplier(f, one, 1.0);
  for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(std::abs(id.values[i] - f.values[i]) < 1e-10);

  // band-limited input under the unit-ball cutoff
  MultiplierSpec ball = MultiplierSpec::from_function(
      "ball", [](double u) { return u <= 1.0 ? 1.0 : 0.0; }, 0.0, 1e9);
  // build an input whose spectrum sits inside |xi| <= 1
  GridField F = grid_fft(f, Direction::forward);
  for (int ky = 0; ky < n; ++ky)
    for (int kx = 0; kx < n; ++kx)
      if (std::hypot(F.freq(kx), F.freq(ky)) > 0.9) F.values[kx + (Eigen::Index)n * ky] = 0.0;
  GridField inside = grid_fft(F, Direction::inverse);
  GridField cut = apply_radial_multiplier(inside, ball, 1.0);
  for (Eigen::Index i = 0; i < inside.size(); ++i)
    CHECK(std::abs(cut.values[i] - inside.values[i]) < 1e-10);

  // composition T_{m1} T_{m2} = T_{m1 m2}
  MultiplierSpec m1 = MultiplierSpec::smooth_bump(0.2, 1.5);
  MultiplierSpec m2 = MultiplierSpec::bochner_riesz(1.0);
  GridField lhs = apply_radial_multiplier(apply_radial_multiplier(f, m1, 1.0), m2, 1.0);
  MultiplierSpec prod = MultiplierSpec::from_function(
      "prod", [m1, m2](double u) { return m1(u) * m2(u); }, 0.0, 1e9);
  GridField rhs = apply_radial_multiplier(f, prod, 1.0);
  for (Eigen::Index i = 0; i < f.size(); ++i) CHECK(std::abs(lhs.values[i] - rhs.values[i]) < 1e-9);

  // undefined frequency reported with the frequency in the message
  MultiplierSpec tab = MultiplierSpec::tabulated(
      "tab", RadialProfile::sample(2, RadialProfile::log_radii(0.1, 1.0, 32),
                                   [](double) { return cplx(1.0, 0.0); }));
  bool threw = false;
  try {
    apply_radial_multiplier(f, tab, 1.0);
  } catch (const std::domain_error& e) {
    threw = true;
    CHECK(std::string(e.what()).find("undefined at frequency") != std::string::npos);
  }
  CHECK(threw);
}

TEST_CASE("apply_radial_multiplier commutes with grid rotations") {
  const int n = 64;
  const double L = 16.0;
  GridField f = GridField::sample2(n, L, [](double x, double y) {
    return cplx(std::exp(-0.5 * (x * x + y * y)) * (x + 0.3 * y * y), 0.0);
  });
  MultiplierSpec m = MultiplierSpec::bochner_riesz(1.5);
  GridField Tf = apply_radial_multiplier(f, m, 1.0);

  // rotate the grid by 90 degrees: (x, y) -> (-y, x) maps index (i,j) -> (j, n-i)
  auto rot = [n](const GridField& g) {
    GridField out = g;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i) {
        int si = j, sj = (n - i) % n;
        out.values[i + (Eigen::Index)n * j] = g.values[si + (Eigen::Index)n * sj];
      }
    return out;
  };
  GridField fr = rot(f);
  GridField Tfr = apply_radial_multiplier(fr, m, 1.0);
  GridField rTf = rot(Tf);
  double dev = 0.0;
  for (Eigen::Index i = 0; i < f.size(); ++i) dev = std::max(dev, std::abs(Tfr.values[i] - rTf.values[i]));
  CHECK(dev < 1e-10);
}
