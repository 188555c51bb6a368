#include "gim/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "gim/summation.hpp"

namespace gim {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptySample: return "EmptySample";
    case ErrorCode::NegativeIncome: return "NegativeIncome";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::OrderExceedsSample: return "OrderExceedsSample";
    case ErrorCode::SampleTooSmall: return "SampleTooSmall";
    case ErrorCode::ZeroMean: return "ZeroMean";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::InvalidOrder: return "InvalidOrder";
    case ErrorCode::InvalidLevel: return "InvalidLevel";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::OutOfSupport: return "OutOfSupport";
    case ErrorCode::InvalidProbability: return "InvalidProbability";
    case ErrorCode::QuadratureNoConvergence: return "QuadratureNoConvergence";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::FileNotFound: return "FileNotFound";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::EmptyColumn: return "EmptyColumn";
    case ErrorCode::InvalidBandwidth: return "InvalidBandwidth";
  }
  return "Unknown";
}

std::string_view to_string(EstimatorKind kind) noexcept {
  return kind == EstimatorKind::UStatistic ? "ustat" : "edf";
}

namespace {

void require_order_fits(std::size_t n, Order v) {
  if (v.size() > n) {
    throw Error(ErrorCode::OrderExceedsSample,
                "order " + std::to_string(v.value()) + " exceeds sample size " + std::to_string(n));
  }
}

void require_positive_mass(const IncomeSample& s) {
  if (s.max() <= 0.0) {
    throw Error(ErrorCode::ZeroMean, "all incomes are zero");
  }
}

double dot(std::span<const double> w, std::span<const double> x) {
  CompensatedSum sum;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (w[i] != 0.0) sum += w[i] * x[i];
  }
  return sum.value();
}

// sum_i w_min[i] x[i], visiting w_max in the same order as dot(w.max, x) so a
// constant sample yields bit-identical max and min moments.
double dot_min(const SubsetWeights& w, std::span<const double> x) {
  CompensatedSum sum;
  const std::size_t n = x.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (w.max[j] != 0.0) sum += w.max[j] * x[n - 1 - j];
  }
  return sum.value();
}

}  // namespace

double binomial(std::uint64_t n, std::uint64_t k) noexcept {
  if (k > n) return 0.0;
  k = std::min(k, n - k);
  double c = 1.0;
  for (std::uint64_t j = 1; j <= k; ++j) {
    c = c * static_cast<double>(n - k + j) / static_cast<double>(j);
  }
  return std::round(c);
}

SubsetWeights subset_weights(std::size_t n, Order v) {
  require_order_fits(n, v);
  const auto order = v.size();
  SubsetWeights w{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};

  // With i one-based, w_max(n) = C(n-1, v-1)/C(n, v) = v/n and
  // w_max(i-1) = w_max(i) * (i-v)/(i-1).
  double current = static_cast<double>(order) / static_cast<double>(n);
  for (std::size_t i = n; i >= order; --i) {
    w.max[i - 1] = current;
    if (i == order) break;
    current *= static_cast<double>(i - order) / static_cast<double>(i - 1);
  }
  // The minimum weights are the maximum weights read backwards.
  for (std::size_t i = 0; i < n; ++i) {
    w.min[i] = w.max[n - 1 - i];
  }
  return w;
}

double max_moment_u(const IncomeSample& s, Order v) {
  const auto w = subset_weights(s.size(), v);
  return dot(w.max, s.values());
}

double min_moment_u(const IncomeSample& s, Order v) {
  const auto w = subset_weights(s.size(), v);
  return dot_min(w, s.values());
}

double gmd(const IncomeSample& s) {
  const std::size_t n = s.size();
  if (n < 2) {
    throw Error(ErrorCode::SampleTooSmall, "Gini mean difference needs at least 2 incomes");
  }
  // sum_{i<j} (X_(j) - X_(i)) = sum_i (2i - n - 1) X_(i), i one-based.
  CompensatedSum sum;
  for (std::size_t i = 0; i < n; ++i) {
    const double coef = 2.0 * static_cast<double>(i + 1) - static_cast<double>(n) - 1.0;
    sum += coef * s[i];
  }
  const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
  return sum.value() / pairs;
}

double gini_ustat(const IncomeSample& s) {
  const double diff = gmd(s);
  require_positive_mass(s);
  return diff / (2.0 * s.mean());
}

PremiaReport extended_gini(const IncomeSample& s, Order v) {
  const auto w = subset_weights(s.size(), v);
  const double hi = dot(w.max, s.values());
  const double lo = dot_min(w, s.values());
  const double mean = s.mean();

  PremiaReport r;
  r.mean = mean;
  r.risk_premium = std::max(0.0, mean - lo);
  r.gain_premium = std::max(0.0, hi - mean);
  r.starting_bid = lo;
  r.bin_price = hi;
  r.price_spread_width = hi - lo;
  return r;
}

GimEstimate gim_ustat(const IncomeSample& s, Order v) {
  const auto w = subset_weights(s.size(), v);
  require_positive_mass(s);
  const double hi = dot(w.max, s.values());
  const double lo = dot_min(w, s.values());

  GimEstimate e;
  e.kind = EstimatorKind::UStatistic;
  e.n = s.size();
  e.v = v.value();
  e.numerator = hi - lo;
  e.denominator = hi + lo;
  e.value = e.numerator / e.denominator;
  return e;
}

EnumeratedMoments enumerate_moments(const IncomeSample& s, Order v) {
  const std::size_t n = s.size();
  const std::size_t k = v.size();
  require_order_fits(n, v);
  if (binomial(n, k) > static_cast<double>(kMaxEnumeratedSubsets)) {
    throw Error(ErrorCode::EnumerationTooLarge,
                "C(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds enumeration limit");
  }

  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  CompensatedSum max_sum;
  CompensatedSum min_sum;
  std::uint64_t count = 0;
  const auto x = s.values();
  while (true) {
    double hi = x[idx[0]];
    double lo = x[idx[0]];
    for (std::size_t j = 1; j < k; ++j) {
      hi = std::max(hi, x[idx[j]]);
      lo = std::min(lo, x[idx[j]]);
    }
    max_sum += hi;
    min_sum += lo;
    ++count;

    // Advance to the next k-combination in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    ++idx[pos - 1];
    for (std::size_t j = pos; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }

  return {max_sum.value() / static_cast<double>(count), min_sum.value() / static_cast<double>(count), count};
}

GimEstimate gim_ustat_naive(const IncomeSample& s, Order v) {
  const auto m = enumerate_moments(s, v);
  require_positive_mass(s);
  GimEstimate e;
  e.kind = EstimatorKind::UStatistic;
  e.n = s.size();
  e.v = v.value();
  e.numerator = m.max_moment - m.min_moment;
  e.denominator = m.max_moment + m.min_moment;
  e.value = e.numerator / e.denominator;
  return e;
}

GimEstimate gim_edf(const IncomeSample& s, Order v) {
  require_positive_mass(s);
  const std::size_t n = s.size();
  const double nd = static_cast<double>(n);
  const double scale = static_cast<double>(v.value()) / nd;
  const double power = static_cast<double>(v.value() - 1);

  CompensatedSum num;
  CompensatedSum den;
  for (std::size_t i = 1; i <= n; ++i) {
    const double up = std::pow(static_cast<double>(i) / nd, power);
    const double down = std::pow(static_cast<double>(n - i) / nd, power);
    const double x = s[i - 1];
    num += (up - down) * x;
    den += (up + down) * x;
  }

  GimEstimate e;
  e.kind = EstimatorKind::Edf;
  e.n = n;
  e.v = v.value();
  e.numerator = scale * num.value();
  e.denominator = scale * den.value();
  e.value = e.numerator / e.denominator;
  return e;
}

GimEstimate estimate(const IncomeSample& s, Order v, EstimatorKind kind) {
  return kind == EstimatorKind::UStatistic ? gim_ustat(s, v) : gim_edf(s, v);
}

}  // namespace gim
