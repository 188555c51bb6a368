#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gim/distributions.hpp"
#include "gim/measures.hpp"

namespace gim {

/// One (family, n, v) Monte Carlo cell.
struct SimCell {
  DistributionSpec dist = DistributionSpec::exponential(1.0);
  std::size_t n = 20;
  int v = 2;
  std::size_t replications = 10'000;
  std::uint64_t base_seed = 20240101;
};

/// Bias/MSE summary of one estimator over the replications of a cell.
struct EstimatorSummary {
  double bias = 0.0;          // mean(estimate) - truth
  double mse = 0.0;           // mean((estimate - truth)^2)
  double mc_std_error = 0.0;  // sd(estimate) / sqrt(R): Monte Carlo error of the bias
  double mse_std_error = 0.0; // sd((estimate - truth)^2) / sqrt(R)
};

struct SimResult {
  SimCell cell;
  double truth = 0.0;
  EstimatorSummary ustat;
  EstimatorSummary edf;
};

struct RunOptions {
  int threads = 0;  // <= 0: OpenMP default
};

/// Throws InvalidParameter for replications == 0 and OrderExceedsSample for v > n.
[[nodiscard]] SimResult run_cell(const SimCell& cell, RunOptions options = {});

/// Results in input order. Throws EmptyGrid for an empty list.
[[nodiscard]] std::vector<SimResult> run_grid(const std::vector<SimCell>& cells, RunOptions options = {});

/// Summary of already-computed estimates against `truth`, reduced in index order.
[[nodiscard]] EstimatorSummary summarize(std::span<const double> estimates, double truth);

/// Default families for the study: exponential(1), Pareto(3, 1), lognormal(0, 0.5).
[[nodiscard]] std::vector<DistributionSpec> default_families();

/// Cartesian grid ordered family, then v, then n.
[[nodiscard]] std::vector<SimCell> make_grid(const std::vector<DistributionSpec>& families,
                                             const std::vector<std::size_t>& ns, const std::vector<int>& vs,
                                             std::size_t replications, std::uint64_t base_seed);

/// 3 families x v in {2, 3} x n in {20, 40, 60, 80, 100, 200}.
[[nodiscard]] std::vector<SimCell> default_grid(std::size_t replications = 10'000,
                                                std::uint64_t base_seed = 20240101);

/// Grid description read from a text file, one directive per line:
///
///   family exponential rate=1
///   family pareto shape=3 scale=1
///   family lognormal meanlog=0 sdlog=0.5
///   n 20 40 60 80 100 200
///   v 2 3
///   reps 10000
///   seed 20240101
///
/// `#` starts a comment. Omitted directives take the defaults of default_grid.
struct GridConfig {
  std::vector<DistributionSpec> families;
  std::vector<std::size_t> ns;
  std::vector<int> vs;
  std::size_t replications = 10'000;
  std::uint64_t base_seed = 20240101;

  [[nodiscard]] std::vector<SimCell> cells() const;
};

/// Throws ParseError naming the offending line.
[[nodiscard]] GridConfig parse_grid_config(std::string_view text);

enum class TableFormat { Csv, Markdown };

/// Two rows per result (ustat, edf) with columns
/// family, params, v, n, estimator, bias, mse, mc_se, truth.
/// `decimals` applies to bias, mse, mc_se and truth.
[[nodiscard]] std::string emit_table(const std::vector<SimResult>& results, TableFormat format, int decimals = 3);

}  // namespace gim
