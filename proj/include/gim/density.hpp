#pragma once

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gim/sample.hpp"

namespace gim {

struct DensityOptions {
  std::size_t bins = 50;
  std::optional<double> bandwidth;  // Silverman's rule when empty
  int threads = 0;
};

/// Histogram and Gaussian kernel density on the same equal-width grid over
/// [min, max]; the KDE is evaluated at the bin midpoints.
struct DensityTable {
  std::vector<double> bin_low;
  std::vector<double> bin_high;
  std::vector<double> midpoint;
  std::vector<std::size_t> count;
  std::vector<double> hist_density;
  std::vector<double> kde;
  double bandwidth = 0.0;
};

/// 0.9 * min(sd, IQR / 1.34) * n^{-1/5}; falls back to sd when the IQR is 0.
[[nodiscard]] double silverman_bandwidth(const IncomeSample& s);

/// Throws InvalidBandwidth for a non-positive bandwidth (given or derived)
/// and InvalidParameter for zero bins.
[[nodiscard]] DensityTable density_table(const IncomeSample& s, const DensityOptions& options);

/// Columns bin_low,bin_high,midpoint,count,hist_density,kde_density; one row per bin.
void write_density_csv(const DensityTable& table, std::ostream& out);

/// Self-contained SVG: histogram bars with the KDE line on top.
void write_density_svg(const DensityTable& table, std::ostream& out, const std::string& title);

/// Writes the CSV to `csv_path` and, when given, the SVG to `svg_path`.
void emit_density(const IncomeSample& s, const DensityOptions& options, const std::filesystem::path& csv_path,
                  const std::optional<std::filesystem::path>& svg_path = std::nullopt);

}  // namespace gim
