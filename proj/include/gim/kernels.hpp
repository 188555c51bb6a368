#pragma once

// Data-parallel hot loops. Every OpenMP kernel here has a serial reference
// next to it; the tests pin the two together and bench/ times them.
//
// `threads <= 0` means the OpenMP default. Results never depend on the thread
// count: each parallel iteration writes its own slot and reductions run
// afterwards in index order.

#include <cstdint>
#include <span>
#include <vector>

#include "gim/distributions.hpp"
#include "gim/measures.hpp"

namespace gim::kernels {

/// Leave-one-out estimates theta_(k), k = 0..n-1, of the chosen estimator.
/// Prefix/suffix sums over the order statistics give every deleted-sample
/// estimate in O(n) total. Requires n - 1 >= v for the U-statistic.
[[nodiscard]] std::vector<double> leave_one_out(const IncomeSample& s, Order v, EstimatorKind kind,
                                                int threads = 0);

/// Brute force: rebuild and re-estimate each deleted sample. O(n^2).
[[nodiscard]] std::vector<double> leave_one_out_reference(const IncomeSample& s, Order v, EstimatorKind kind);

struct ReplicateEstimates {
  std::vector<double> ustat;
  std::vector<double> edf;
};

/// Both estimators on `replications` samples of size n; replication r
/// (1-based) draws from SeededStream{base_seed, r}.
[[nodiscard]] ReplicateEstimates replicate(const DistributionSpec& d, std::size_t n, Order v,
                                           std::size_t replications, std::uint64_t base_seed, int threads = 0);

[[nodiscard]] ReplicateEstimates replicate_serial(const DistributionSpec& d, std::size_t n, Order v,
                                                  std::size_t replications, std::uint64_t base_seed);

/// Gaussian kernel density estimate at each grid point.
[[nodiscard]] std::vector<double> kde(std::span<const double> data, std::span<const double> grid, double bandwidth,
                                      int threads = 0);

[[nodiscard]] std::vector<double> kde_serial(std::span<const double> data, std::span<const double> grid,
                                             double bandwidth);

/// Worker count a kernel will use for `threads`.
[[nodiscard]] int resolve_threads(int threads) noexcept;

}  // namespace gim::kernels
