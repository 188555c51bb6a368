#pragma once

#include <string>
#include <vector>

#include "gim/inference.hpp"
#include "gim/measures.hpp"

namespace gim {

struct GimInterval {
  int v = 0;
  double value = 0.0;
  double std_error = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  VarianceMethod se_method = VarianceMethod::Jackknife;
};

/// One dataset's row of the inequality report.
struct ReportRow {
  std::string label;
  std::size_t n = 0;
  double gini = 0.0;
  std::vector<GimInterval> gim;  // same order as the requested orders
};

struct ReportOptions {
  std::vector<int> orders{2, 3};
  double ci_level = 0.95;
  VarianceMethod se_method = VarianceMethod::Jackknife;
  int threads = 0;
};

/// Gini index plus the U-statistic GIM(v) with a confidence interval for
/// every requested order. Throws InvalidParameter for an empty order list.
[[nodiscard]] ReportRow report(const IncomeSample& s, std::string label, const ReportOptions& options);

}  // namespace gim
