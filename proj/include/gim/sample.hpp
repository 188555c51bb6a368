#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "gim/error.hpp"

namespace gim {

/// Order v of the inequality measure: the number of iid incomes whose
/// maximum and minimum are compared. Always >= 1.
class Order {
 public:
  explicit Order(int v);

  [[nodiscard]] int value() const noexcept { return v_; }
  [[nodiscard]] std::size_t size() const noexcept { return static_cast<std::size_t>(v_); }

  friend bool operator==(Order, Order) = default;

 private:
  int v_;
};

/// Immutable, validated income sample held in ascending order, so that
/// `values()[i]` is the (i+1)-th order statistic.
class IncomeSample {
 public:
  [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
  [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
  [[nodiscard]] double operator[](std::size_t i) const noexcept { return values_[i]; }
  [[nodiscard]] double min() const noexcept { return values_.front(); }
  [[nodiscard]] double max() const noexcept { return values_.back(); }

  /// Arithmetic mean with compensated summation.
  [[nodiscard]] double mean() const noexcept;

  /// Sample with every income multiplied by `factor` (> 0).
  [[nodiscard]] IncomeSample scaled(double factor) const;

  /// Wraps values that are already validated and sorted ascending. Used by
  /// the samplers, which produce sorted output directly.
  static IncomeSample from_sorted(std::vector<double> sorted);

 private:
  explicit IncomeSample(std::vector<double> sorted) : values_(std::move(sorted)) {}

  friend IncomeSample make_sample(std::span<const double> raw);

  std::vector<double> values_;
};

/// Validates and sorts raw incomes.
/// Throws EmptySample, NonFinite, or NegativeIncome.
[[nodiscard]] IncomeSample make_sample(std::span<const double> raw);

inline IncomeSample make_sample(const std::vector<double>& raw) {
  return make_sample(std::span<const double>(raw));
}

inline IncomeSample make_sample(std::initializer_list<double> raw) {
  return make_sample(std::span<const double>(raw.begin(), raw.size()));
}

}  // namespace gim
