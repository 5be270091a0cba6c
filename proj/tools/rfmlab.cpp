#include <CLI11.hpp>

#include <cmath>
#include <iostream>

#include "rfm/besov.hpp"
#include "rfm/decomposition.hpp"
#include "rfm/io.hpp"
#include "rfm/maximal.hpp"
#include "rfm/norms.hpp"
#include "rfm/special_functions.hpp"

namespace {

using namespace rfm;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitUsage = 64;

void maybe_plot(const std::string& plot, const ArrayXd& x, const ArrayXd& y,
                const std::string& title) {
  if (!plot.empty()) write_svg_plot(plot, x, y, title);
}

int run_bessel_table(const ExperimentConfig& cfg, const std::string& plot) {
  CsvWriter csv(cfg.output, {"s", "j_nu", "script_j", "script_j_alpha"});
  ArrayXd s = RadialProfile::log_radii(1e-2, 1e3, 500);
  ArrayXd y(s.size());
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    double jn = bessel_j(std::max(cfg.alpha, 0.0), s[i]);
    double sj = script_j(cfg.d, s[i]);
    double sja = script_j_alpha(cfg.d, cfg.alpha, s[i]);
    y[i] = std::abs(sja);
    csv.row({s[i], jn, sj, sja});
  }
  maybe_plot(plot, s, y, "script_j_alpha magnitude");
  return kExitOk;
}

int run_transform(const ExperimentConfig& cfg, const std::string& plot) {
  ArrayXd rho = RadialProfile::log_radii(1e-2, 64.0, 600);
  auto gauss = [](double r) { return cplx(std::exp(-0.5 * r * r), 0.0); };
  RadialTransformResult res =
      radial_fourier_fn(gauss, cfg.d, 0.0, 12.0, rho, Direction::forward);
  CsvWriter csv(cfg.output, {"rho", "re", "im", "reliable"});
  bool all_ok = true;
  ArrayXd mag(rho.size());
  for (Eigen::Index i = 0; i < rho.size(); ++i) {
    csv.row({rho[i], std::real(res.profile.values[i]), std::imag(res.profile.values[i]),
             (long long)(res.reliable[i] ? 1 : 0)});
    mag[i] = std::abs(res.profile.values[i]);
    all_ok = all_ok && res.reliable[i];
  }
  maybe_plot(plot, rho, mag, "radial transform of the gaussian");
  return all_ok ? kExitOk : kExitNumerical;
}

int run_squarefn(const ExperimentConfig& cfg, const std::string& plot) {
  GridField f = modulated_gaussian(cfg.d, cfg.n, cfg.extent, 3.0);
  TGrid tg = TGrid::dyadic(cfg.tgrid_kmin, cfg.tgrid_kmax, cfg.tgrid_nodes);
  SquareFunctionResult res = g_alpha(f, cfg.alpha, tg);
  double num = lp_norm(res.field, 2.0), den = lp_norm(f, 2.0);
  double ratio = num * num / (den * den);
  CsvWriter csv(cfg.output, {"x1", "x2", "g_alpha"});
  const int n = cfg.n;
  for (Eigen::Index i = 0; i < res.field.size(); ++i) {
    double x1 = res.field.coord((int)(i % n));
    double x2 = cfg.d == 2 ? res.field.coord((int)(i / n)) : 0.0;
    csv.row({x1, x2, std::real(res.field.values[i])});
  }
  csv.row({std::string("summary:l2_ratio"), ratio, std::string("")});
  if (!plot.empty()) {
    ArrayXd idx(res.field.size()), val(res.field.size());
    for (Eigen::Index i = 0; i < res.field.size(); ++i) {
      idx[i] = (double)(i + 1);
      val[i] = std::real(res.field.values[i]);
    }
    write_svg_plot(plot, idx, val, "g_alpha field", false);
  }
  return res.convergence_flag ? kExitOk : kExitNumerical;
}

int run_equiv_probe(const ExperimentConfig& cfg, const std::string&) {
  GridField f = modulated_gaussian(cfg.d, cfg.n, cfg.extent, 3.0);
  TGrid tg = TGrid::dyadic(cfg.tgrid_kmin, cfg.tgrid_kmax, cfg.tgrid_nodes);
  EquivalenceReport rep = equivalence_probe(f, cfg.alpha, tg);
  CsvWriter csv(cfg.output, {"x1", "x2", "ratio"});
  const int n = cfg.n;
  for (Eigen::Index i = 0; i < rep.ratio.size(); ++i) {
    double v = std::real(rep.ratio.values[i]);
    if (v == 0.0) continue;
    csv.row({rep.ratio.coord((int)(i % n)), cfg.d == 2 ? rep.ratio.coord((int)(i / n)) : 0.0, v});
  }
  csv.row({std::string("summary:ratio_min"), rep.ratio_min, std::string("")});
  csv.row({std::string("summary:ratio_max"), rep.ratio_max, std::string("")});
  csv.row({std::string("summary:spread"), rep.ratio_max / rep.ratio_min, std::string("")});
  return kExitOk;
}

int run_maximal(const ExperimentConfig& cfg, const std::string&) {
  GridField f = modulated_gaussian(cfg.d, cfg.n, cfg.extent, 3.0);
  TGrid tg = TGrid::dyadic(cfg.tgrid_kmin, cfg.tgrid_kmax, cfg.tgrid_nodes);
  RieszMaximalResult rep = riesz_maximal(f, cfg.lambda, tg);
  GridField hl = hl_maximal(f);
  CsvWriter csv(cfg.output, {"x1", "x2", "riesz_max", "hl_max"});
  const int n = cfg.n;
  for (Eigen::Index i = 0; i < rep.field.size(); ++i)
    csv.row({rep.field.coord((int)(i % n)), cfg.d == 2 ? rep.field.coord((int)(i / n)) : 0.0,
             std::real(rep.field.values[i]), std::real(hl.values[i])});
  csv.row({std::string("summary:split_recombination_error"), rep.split_recombination_error,
           std::string(""), std::string("")});
  return rep.split_recombination_error < 1e-10 ? kExitOk : kExitNumerical;
}

int run_besov_norm(const ExperimentConfig& cfg, const std::string& plot) {
  auto m = [&](double s) { return riesz_m_part(cfg.lambda, s); };
  BesovBlocks blocks = besov_blocks(m, 0.5, 1.0, 12);
  MultiplierSpec spec = MultiplierSpec::from_function("m_lambda", m, 0.5, 1.0, {1.0});
  KernelSideNorm ker = kernel_side_norm(spec, cfg.alpha, cfg.q, cfg.d, 12);
  CsvWriter csv(cfg.output, {"j", "block_norm", "kernel_block_sq"});
  for (int j = 0; j <= blocks.j_max; ++j)
    csv.row({(long long)j, blocks.block_norms[j],
             j < ker.block_integrals.size() ? ker.block_integrals[j] : 0.0});
  double bn = besov_norm_from_blocks(blocks, cfg.alpha, cfg.q);
  csv.row({std::string("summary:besov_norm"), bn, std::string("")});
  csv.row({std::string("summary:kernel_side_norm"), ker.norm, std::string("")});
  csv.row({std::string("summary:ratio"), ker.norm / bn, std::string("")});
  if (!plot.empty()) {
    ArrayXd j(blocks.j_max + 1), v(blocks.j_max + 1);
    for (int i = 0; i <= blocks.j_max; ++i) {
      j[i] = i + 1.0;
      v[i] = std::max(blocks.block_norms[i], 1e-300);
    }
    write_svg_plot(plot, j, v, "besov block norms");
  }
  return ker.tail_resolved ? kExitOk : kExitNumerical;
}

int run_test_multiplier(const ExperimentConfig& cfg, const std::string& plot) {
  TestMultiplierSpec spec;
  spec.d = cfg.d;
  spec.p = cfg.p;
  int J = 8;
  spec.coeffs = ArrayXd(J);
  for (int j = 1; j <= J; ++j) spec.coeffs[j - 1] = std::exp2(-0.5 * j);
  TestMultiplierProfile prof = test_multiplier(spec, 1 << 16, 8.0);
  const double alpha = cfg.d * (1.0 / cfg.p - 0.5);
  double bn = besov_norm(prof.as_function(), 0.3, 1.7, alpha, cfg.q, 13, 1 << 16, 8.0);
  CsvWriter csv(cfg.output, {"rho", "m"});
  for (Eigen::Index i = 0; i < prof.rho.size(); i += 8) csv.row({prof.rho[i], prof.values[i]});
  csv.row({std::string("summary:besov_norm"), bn});
  maybe_plot(plot, prof.rho.max(1e-9), prof.values.abs().max(1e-300), "test multiplier");
  return kExitOk;
}

int run_atoms(const ExperimentConfig& cfg, const std::string&) {
  GridField f = random_band_limited(cfg.d, cfg.n, cfg.extent, 0.5, 4.0, cfg.seed);
  int k_hi = k_for_cube_level(f, 0);
  int k_lo = k_hi - 4;
  DecompositionResult res = decompose(f, k_lo, k_hi);
  CsvWriter master(cfg.output, {"n", "meas_omega", "meas_omega_star", "atom_energy", "ratio"});
  for (size_t i = 0; i < res.levels.ns.size(); ++i) {
    master.row({(long long)res.levels.ns[i], res.levels.meas_omega[i],
                res.levels.meas_omega_star[i], res.atom_energy_per_n[i], res.ratio_per_n[i]});
    std::string part = cfg.output + ".n" + std::to_string(res.levels.ns[i]) + ".csv";
    CsvWriter sub(part, {"k", "w_level", "w_x", "w_y", "atom_l2_sq"});
    for (const auto& a : res.atoms)
      if (a.n == res.levels.ns[i])
        sub.row({(long long)a.k, (long long)a.w.level, (long long)a.w.x, (long long)a.w.y,
                 a.l2_sq});
  }
  return kExitOk;
}

int run_kernel_decay(const ExperimentConfig& cfg, const std::string& plot) {
  DecayFitReport rep = kernel_decay_experiment(cfg);
  CsvWriter csv(cfg.output, {"r", "ring_l2_mean"});
  for (Eigen::Index i = 0; i < rep.ring_r.size(); ++i) csv.row({rep.ring_r[i], rep.ring_val[i]});
  csv.row({std::string("summary:slope"), rep.fit.slope});
  csv.row({std::string("summary:stderr"), rep.fit.stderr_slope});
  csv.row({std::string("summary:expected"), rep.expected});
  maybe_plot(plot, rep.ring_r, rep.ring_val, "kernel decay");
  return rep.conclusive ? kExitOk : kExitNumerical;
}

int run_threshold(const ExperimentConfig& cfg, const std::string& plot, bool duality) {
  ThresholdReport rep = duality ? duality_probe(cfg) : necessity_probe(cfg);
  CsvWriter csv(cfg.output, {"alpha", "growth_exponent"});
  for (Eigen::Index i = 0; i < rep.alphas.size(); ++i) csv.row({rep.alphas[i], rep.growth[i]});
  csv.row({std::string("summary:crossing"), rep.crossing});
  csv.row({std::string("summary:expected"), rep.expected});
  if (!plot.empty()) write_svg_plot(plot, rep.alphas, rep.growth.max(-10.0), "growth vs alpha", false);
  return rep.conclusive ? kExitOk : kExitNumerical;
}

int run_orthogonality(const ExperimentConfig& cfg, const std::string& plot) {
  OrthogonalityReport rep = orthogonality_decay(cfg);
  CsvWriter csv(cfg.output, {"M", "pairing"});
  for (Eigen::Index i = 0; i < rep.separations.size(); ++i)
    csv.row({rep.separations[i], rep.pairings[i]});
  csv.row({std::string("summary:slope"), rep.fit.slope});
  csv.row({std::string("summary:expected"), rep.expected});
  maybe_plot(plot, rep.separations, rep.pairings, "separation decay");
  return kExitOk;
}

int run_plancherel_step(const ExperimentConfig& cfg, const std::string&) {
  ConstantReport rep = plancherel_step_check(cfg);
  CsvWriter csv(cfg.output, {"j", "max_ratio"});
  for (Eigen::Index i = 0; i < rep.per_j_max.size(); ++i)
    csv.row({(long long)(i + 3), rep.per_j_max[i]});
  csv.row({std::string("summary:overall_max"), rep.overall_max});
  csv.row({std::string("summary:spread"), rep.spread});
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"numerical workbench for radial Fourier multiplier operators"};
  app.require_subcommand(1);

  static const std::vector<std::string> names = {
      "bessel-table", "transform",  "squarefn",     "equiv-probe",  "maximal",
      "besov-norm",   "test-multiplier", "atoms",   "kernel-decay", "necessity",
      "duality",      "orthogonality",   "plancherel-step"};

  std::string config_path, plot_path;
  int threads = 1;
  std::string chosen;
  for (const auto& name : names) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--config", config_path, "experiment config (JSON)")->required();
    sub->add_option("--plot", plot_path, "optional SVG output");
    sub->add_option("--threads", threads, "thread count (results are identical for any value)");
    sub->callback([&chosen, name]() { chosen = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }
  if (threads < 1) {
    std::cerr << "invalid thread count\n";
    return kExitUsage;
  }

  ExperimentConfig cfg;
  try {
    cfg = rfm::load_config(config_path);
    if (cfg.experiment != chosen)
      throw std::runtime_error("config: experiment '" + cfg.experiment +
                               "' does not match subcommand '" + chosen + "'");
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return kExitConfig;
  }

  try {
    if (chosen == "bessel-table") return run_bessel_table(cfg, plot_path);
    if (chosen == "transform") return run_transform(cfg, plot_path);
    if (chosen == "squarefn") return run_squarefn(cfg, plot_path);
    if (chosen == "equiv-probe") return run_equiv_probe(cfg, plot_path);
    if (chosen == "maximal") return run_maximal(cfg, plot_path);
    if (chosen == "besov-norm") return run_besov_norm(cfg, plot_path);
    if (chosen == "test-multiplier") return run_test_multiplier(cfg, plot_path);
    if (chosen == "atoms") return run_atoms(cfg, plot_path);
    if (chosen == "kernel-decay") return run_kernel_decay(cfg, plot_path);
    if (chosen == "necessity") return run_threshold(cfg, plot_path, false);
    if (chosen == "duality") return run_threshold(cfg, plot_path, true);
    if (chosen == "orthogonality") return run_orthogonality(cfg, plot_path);
    if (chosen == "plancherel-step") return run_plancherel_step(cfg, plot_path);
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
