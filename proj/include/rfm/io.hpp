#pragma once

#include <fstream>
#include <string>
#include <variant>
#include <vector>

#include "rfm/experiments.hpp"

namespace rfm {

/// CSV with a header row, '.' decimal point, LF line endings and fixed %.17g
/// number formatting, so identical runs produce identical bytes.
class CsvWriter {
 public:
  CsvWriter(const std::string& path, const std::vector<std::string>& header);
  using Cell = std::variant<double, long long, std::string>;
  void row(const std::vector<Cell>& cells);
  void flush() { out_.flush(); }
  static std::string format(double v);

 private:
  std::ofstream out_;
  size_t width_;
};

/// Minimal polyline chart (optionally log-log) with no renderer dependency.
void write_svg_plot(const std::string& path, const ArrayXd& x, const ArrayXd& y,
                    const std::string& title, bool loglog = true);

/// Strict config loader: JSON object with required keys {version, experiment,
/// d, grid:{n,L}, params, output}; unknown keys anywhere are rejected.
/// Throws std::runtime_error with a message naming the offending key.
ExperimentConfig load_config(const std::string& path);

}  // namespace rfm
