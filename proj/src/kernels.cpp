#include "gim/kernels.hpp"

#include <omp.h>

#include <cmath>
#include <exception>
#include <numbers>
#include <string>

#include "gim/summation.hpp"

namespace gim::kernels {

int resolve_threads(int threads) noexcept {
  return threads > 0 ? threads : omp_get_max_threads();
}

namespace {

// Numerator and denominator weights of the estimator on a sample of size m.
struct RankWeights {
  std::vector<double> num;
  std::vector<double> den;
};

RankWeights rank_weights(std::size_t m, Order v, EstimatorKind kind) {
  RankWeights w{std::vector<double>(m), std::vector<double>(m)};
  if (kind == EstimatorKind::UStatistic) {
    const auto sw = subset_weights(m, v);
    for (std::size_t r = 0; r < m; ++r) {
      w.num[r] = sw.max[r] - sw.min[r];
      w.den[r] = sw.max[r] + sw.min[r];
    }
    return w;
  }
  const double md = static_cast<double>(m);
  const double scale = v.value() / md;
  const double power = v.value() - 1.0;
  for (std::size_t r = 0; r < m; ++r) {
    const double up = std::pow(static_cast<double>(r + 1) / md, power);
    const double down = std::pow(static_cast<double>(m - r - 1) / md, power);
    w.num[r] = scale * (up - down);
    w.den[r] = scale * (up + down);
  }
  return w;
}

// Rethrows the first exception raised inside a parallel region.
class ExceptionSlot {
 public:
  template <class F>
  void run(F&& f) noexcept {
    try {
      f();
    } catch (...) {
#pragma omp critical(gim_exception_slot)
      if (!error_) error_ = std::current_exception();
    }
  }
  void rethrow() const {
    if (error_) std::rethrow_exception(error_);
  }

 private:
  std::exception_ptr error_;
};

}  // namespace

std::vector<double> leave_one_out(const IncomeSample& s, Order v, EstimatorKind kind, int threads) {
  const std::size_t n = s.size();
  if (n < 2) {
    throw Error(ErrorCode::SampleTooSmall, "leave-one-out needs at least 2 incomes");
  }
  const auto w = rank_weights(n - 1, v, kind);
  const auto x = s.values();

  // pre[k] = sum_{j<k} w[j] x_j ; suf[k] = sum_{j>k} w[j-1] x_j
  std::vector<double> pre_num(n), pre_den(n), suf_num(n), suf_den(n);
  {
    CompensatedSum a, b;
    for (std::size_t k = 0; k < n; ++k) {
      pre_num[k] = a.value();
      pre_den[k] = b.value();
      if (k + 1 < n) {
        a += w.num[k] * x[k];
        b += w.den[k] * x[k];
      }
    }
  }
  {
    CompensatedSum a, b;
    for (std::size_t k = n; k-- > 0;) {
      suf_num[k] = a.value();
      suf_den[k] = b.value();
      if (k > 0) {
        a += w.num[k - 1] * x[k];
        b += w.den[k - 1] * x[k];
      }
    }
  }

  std::vector<double> out(n);
  bool zero_mass = false;
  const auto count = static_cast<std::int64_t>(n);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static) reduction(|| : zero_mass)
  for (std::int64_t k = 0; k < count; ++k) {
    const double den = pre_den[k] + suf_den[k];
    if (!(den > 0.0)) zero_mass = true;
    out[k] = (pre_num[k] + suf_num[k]) / den;
  }
  if (zero_mass) {
    throw Error(ErrorCode::ZeroMean, "a leave-one-out sample has all incomes zero");
  }
  return out;
}

std::vector<double> leave_one_out_reference(const IncomeSample& s, Order v, EstimatorKind kind) {
  const std::size_t n = s.size();
  if (n < 2) {
    throw Error(ErrorCode::SampleTooSmall, "leave-one-out needs at least 2 incomes");
  }
  std::vector<double> out(n);
  std::vector<double> reduced;
  reduced.reserve(n - 1);
  for (std::size_t k = 0; k < n; ++k) {
    reduced.clear();
    for (std::size_t j = 0; j < n; ++j) {
      if (j != k) reduced.push_back(s[j]);
    }
    out[k] = estimate(make_sample(reduced), v, kind).value;
  }
  return out;
}

ReplicateEstimates replicate(const DistributionSpec& d, std::size_t n, Order v, std::size_t replications,
                             std::uint64_t base_seed, int threads) {
  ReplicateEstimates out{std::vector<double>(replications), std::vector<double>(replications)};
  ExceptionSlot slot;
  const auto count = static_cast<std::int64_t>(replications);
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(dynamic, 16)
  for (std::int64_t r = 0; r < count; ++r) {
    slot.run([&] {
      const auto x = sample(d, n, SeededStream{base_seed, static_cast<std::uint64_t>(r) + 1});
      out.ustat[r] = gim_ustat(x, v).value;
      out.edf[r] = gim_edf(x, v).value;
    });
  }
  slot.rethrow();
  return out;
}

ReplicateEstimates replicate_serial(const DistributionSpec& d, std::size_t n, Order v, std::size_t replications,
                                    std::uint64_t base_seed) {
  ReplicateEstimates out;
  out.ustat.reserve(replications);
  out.edf.reserve(replications);
  for (std::size_t r = 1; r <= replications; ++r) {
    const auto x = sample(d, n, SeededStream{base_seed, r});
    out.ustat.push_back(gim_ustat(x, v).value);
    out.edf.push_back(gim_edf(x, v).value);
  }
  return out;
}

namespace {

double kde_point(std::span<const double> data, double at, double bandwidth) {
  const double norm = 1.0 / (static_cast<double>(data.size()) * bandwidth * std::sqrt(2.0 * std::numbers::pi));
  CompensatedSum sum;
  for (double xi : data) {
    const double z = (at - xi) / bandwidth;
    sum += std::exp(-0.5 * z * z);
  }
  return norm * sum.value();
}

}  // namespace

std::vector<double> kde(std::span<const double> data, std::span<const double> grid, double bandwidth, int threads) {
  std::vector<double> out(grid.size());
  const auto count = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for num_threads(resolve_threads(threads)) schedule(static)
  for (std::int64_t g = 0; g < count; ++g) {
    out[g] = kde_point(data, grid[g], bandwidth);
  }
  return out;
}

std::vector<double> kde_serial(std::span<const double> data, std::span<const double> grid, double bandwidth) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double g : grid) out.push_back(kde_point(data, g, bandwidth));
  return out;
}

}  // namespace gim::kernels
