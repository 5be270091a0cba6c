#include "rfm/io.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <set>
#include <stdexcept>

namespace rfm {

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), width_(header.size()) {
  if (!out_) throw std::runtime_error("cannot open output file: " + path);
  for (size_t i = 0; i < header.size(); ++i) out_ << (i ? "," : "") << header[i];
  out_ << "\n";
}

std::string CsvWriter::format(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void CsvWriter::row(const std::vector<Cell>& cells) {
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ",";
    if (std::holds_alternative<double>(cells[i])) out_ << format(std::get<double>(cells[i]));
    else if (std::holds_alternative<long long>(cells[i])) out_ << std::get<long long>(cells[i]);
    else out_ << std::get<std::string>(cells[i]);
  }
  out_ << "\n";
}

void write_svg_plot(const std::string& path, const ArrayXd& x, const ArrayXd& y,
                    const std::string& title, bool loglog) {
  std::ofstream svg(path, std::ios::binary);
  if (!svg) throw std::runtime_error("cannot open plot file: " + path);
  const int W = 640, H = 480, M = 56;
  ArrayXd px = x, py = y;
  if (loglog) {
    px = x.log();
    py = y.max(1e-300).log();
  }
  double x0 = px.minCoeff(), x1 = px.maxCoeff(), y0 = py.minCoeff(), y1 = py.maxCoeff();
  if (x1 <= x0) x1 = x0 + 1;
  if (y1 <= y0) y1 = y0 + 1;
  svg << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H << "'>\n";
  svg << "<rect width='100%' height='100%' fill='white'/>\n";
  svg << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='14'>" << title
      << (loglog ? " (log-log)" : "") << "</text>\n";
  svg << "<rect x='" << M << "' y='" << M << "' width='" << W - 2 * M << "' height='"
      << H - 2 * M << "' fill='none' stroke='black'/>\n";
  svg << "<polyline fill='none' stroke='steelblue' stroke-width='1.5' points='";
  for (Eigen::Index i = 0; i < px.size(); ++i) {
    double sx = M + (px[i] - x0) / (x1 - x0) * (W - 2 * M);
    double sy = H - M - (py[i] - y0) / (y1 - y0) * (H - 2 * M);
    svg << CsvWriter::format(sx) << "," << CsvWriter::format(sy) << " ";
  }
  svg << "'/>\n</svg>\n";
}

namespace {

using nlohmann::json;

void check_keys(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (auto it = obj.begin(); it != obj.end(); ++it)
    if (!allowed.count(it.key()))
      throw std::runtime_error("config: unknown key '" + where + it.key() + "'");
}

}  // namespace

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw std::runtime_error(std::string("config: parse error: ") + e.what());
  }
  if (!j.is_object()) throw std::runtime_error("config: top level must be an object");
  check_keys(j, {"version", "experiment", "d", "grid", "params", "tgrid", "seed", "output"}, "");
  for (const char* req : {"version", "experiment", "d", "grid", "output"})
    if (!j.contains(req)) throw std::runtime_error(std::string("config: missing key '") + req + "'");
  if (j["version"].get<int>() != 1) throw std::runtime_error("config: unsupported version");

  ExperimentConfig cfg;
  cfg.experiment = j["experiment"].get<std::string>();
  cfg.d = j["d"].get<int>();
  check_keys(j["grid"], {"n", "L"}, "grid.");
  cfg.n = j["grid"]["n"].get<int>();
  cfg.extent = j["grid"]["L"].get<double>();
  cfg.output = j["output"].get<std::string>();
  if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tgrid")) {
    check_keys(j["tgrid"], {"k_min", "k_max", "nodes_per_block"}, "tgrid.");
    const auto& t = j["tgrid"];
    if (t.contains("k_min")) cfg.tgrid_kmin = t["k_min"].get<int>();
    if (t.contains("k_max")) cfg.tgrid_kmax = t["k_max"].get<int>();
    if (t.contains("nodes_per_block")) cfg.tgrid_nodes = t["nodes_per_block"].get<int>();
  }
  if (j.contains("params")) {
    check_keys(j["params"], {"alpha", "beta", "lambda", "p", "q", "t"}, "params.");
    const auto& p = j["params"];
    if (p.contains("alpha")) cfg.alpha = p["alpha"].get<double>();
    if (p.contains("beta")) cfg.beta = p["beta"].get<double>();
    if (p.contains("lambda")) cfg.lambda = p["lambda"].get<double>();
    if (p.contains("p")) cfg.p = p["p"].get<double>();
    if (p.contains("q")) cfg.q = p["q"].get<double>();
    if (p.contains("t")) cfg.t = p["t"].get<double>();
  }
  return cfg;
}

}  // namespace rfm
