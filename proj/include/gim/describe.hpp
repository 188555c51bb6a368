#pragma once

#include <optional>

#include "gim/sample.hpp"

namespace gim {

/// Summary columns of a descriptive-statistics table. Statistics that are
/// undefined for the sample (sd for n < 2; skewness and kurtosis for n < 3
/// or zero spread) are empty rather than NaN.
struct DescriptiveStats {
  std::size_t n = 0;
  double mean = 0.0;
  std::optional<double> sd;  // divisor n - 1
  double min = 0.0;
  double max = 0.0;
  double range = 0.0;
  std::optional<double> skewness;  // m3 / m2^{3/2}
  std::optional<double> kurtosis;  // m4 / m2^2, not excess
};

[[nodiscard]] DescriptiveStats describe(const IncomeSample& s);

}  // namespace gim
