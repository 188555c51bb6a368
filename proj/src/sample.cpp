#include "gim/sample.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "gim/summation.hpp"

namespace gim {

Order::Order(int v) : v_(v) {
  if (v < 1) {
    throw Error(ErrorCode::InvalidOrder, "order must be >= 1, got " + std::to_string(v));
  }
}

namespace {

void validate(std::span<const double> raw) {
  if (raw.empty()) {
    throw Error(ErrorCode::EmptySample, "sample has no elements");
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (!std::isfinite(raw[i])) {
      throw Error(ErrorCode::NonFinite, "value at position " + std::to_string(i) + " is not finite");
    }
    if (raw[i] < 0.0) {
      throw Error(ErrorCode::NegativeIncome, "value at position " + std::to_string(i) + " is negative");
    }
  }
}

}  // namespace

IncomeSample make_sample(std::span<const double> raw) {
  validate(raw);
  std::vector<double> sorted(raw.begin(), raw.end());
  std::stable_sort(sorted.begin(), sorted.end());
  return IncomeSample(std::move(sorted));
}

IncomeSample IncomeSample::from_sorted(std::vector<double> sorted) {
  validate(sorted);
  if (!std::is_sorted(sorted.begin(), sorted.end())) {
    throw Error(ErrorCode::InvalidParameter, "from_sorted requires ascending input");
  }
  return IncomeSample(std::move(sorted));
}

double IncomeSample::mean() const noexcept {
  CompensatedSum sum;
  for (double x : values_) sum += x;
  return sum.value() / static_cast<double>(values_.size());
}

IncomeSample IncomeSample::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw Error(ErrorCode::InvalidParameter, "scale factor must be positive and finite");
  }
  std::vector<double> out(values_);
  for (double& x : out) x *= factor;
  return IncomeSample(std::move(out));
}

}  // namespace gim
