#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "gim/sample.hpp"

namespace gim {

enum class EstimatorKind { UStatistic, Edf };

[[nodiscard]] std::string_view to_string(EstimatorKind kind) noexcept;

/// Point estimate of GIM(v) = E(max - min) / E(max + min), with the two
/// components kept so callers can inspect or combine them.
struct GimEstimate {
  double value = 0.0;
  double numerator = 0.0;
  double denominator = 0.0;
  EstimatorKind kind = EstimatorKind::UStatistic;
  std::size_t n = 0;
  int v = 0;
};

/// Extended Gini premia and the auction quantities built from them.
struct PremiaReport {
  double mean = 0.0;
  double risk_premium = 0.0;        // mean - E(min of v)
  double gain_premium = 0.0;        // E(max of v) - mean
  double starting_bid = 0.0;        // E(min of v)
  double bin_price = 0.0;           // E(max of v)
  double price_spread_width = 0.0;  // bin_price - starting_bid
};

struct SubsetWeights {
  std::vector<double> max;  // max[i]: share of v-subsets whose maximum is X_{(i+1):n}
  std::vector<double> min;  // min[i]: share of v-subsets whose minimum is X_{(i+1):n}
};

/// Weights C(i-1, v-1)/C(n, v) and C(n-i, v-1)/C(n, v), i = 1..n, built by a
/// downward ratio recurrence from max[n-1] = v/n. Entries that underflow are 0.
/// Throws OrderExceedsSample if v > n.
[[nodiscard]] SubsetWeights subset_weights(std::size_t n, Order v);

/// U-statistic estimate of E max(X_1..X_v).
[[nodiscard]] double max_moment_u(const IncomeSample& s, Order v);
/// U-statistic estimate of E min(X_1..X_v).
[[nodiscard]] double min_moment_u(const IncomeSample& s, Order v);

/// Gini mean difference: average |X_i - X_j| over all pairs. Requires n >= 2.
[[nodiscard]] double gmd(const IncomeSample& s);

/// Gini index gmd / (2 * mean). Throws ZeroMean for an all-zero sample.
[[nodiscard]] double gini_ustat(const IncomeSample& s);

[[nodiscard]] PremiaReport extended_gini(const IncomeSample& s, Order v);

/// Ratio of the U-statistics for E(max - min) and E(max + min).
/// Numerator and denominator are exactly max_moment_u -/+ min_moment_u.
[[nodiscard]] GimEstimate gim_ustat(const IncomeSample& s, Order v);

inline constexpr std::uint64_t kMaxEnumeratedSubsets = 1'000'000;

/// Same contract as gim_ustat, by explicit enumeration of every v-subset.
/// Test oracle only. Throws EnumerationTooLarge when C(n, v) > 10^6.
[[nodiscard]] GimEstimate gim_ustat_naive(const IncomeSample& s, Order v);

/// Max and min moments by subset enumeration (oracle for max_moment_u / min_moment_u).
struct EnumeratedMoments {
  double max_moment = 0.0;
  double min_moment = 0.0;
  std::uint64_t subsets = 0;
};
[[nodiscard]] EnumeratedMoments enumerate_moments(const IncomeSample& s, Order v);

/// Plug-in estimator from the empirical distribution function:
///   N = (v/n^v) sum (i^{v-1} - (n-i)^{v-1}) X_{i:n}
///   D = (v/n^v) sum (i^{v-1} + (n-i)^{v-1}) X_{i:n}
/// evaluated through powers of i/n. For a constant sample the value is
/// n^{v-1} / (n^{v-1} + 2 sum_{i<n} i^{v-1}), which vanishes only as n grows.
[[nodiscard]] GimEstimate gim_edf(const IncomeSample& s, Order v);

/// Dispatches on `kind`.
[[nodiscard]] GimEstimate estimate(const IncomeSample& s, Order v, EstimatorKind kind);

/// C(n, k) as a double, exact while it fits in 53 bits.
[[nodiscard]] double binomial(std::uint64_t n, std::uint64_t k) noexcept;

}  // namespace gim
