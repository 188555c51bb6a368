#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "gim/sample.hpp"

// Oracles and generators used across the unit tests. Everything here is
// written independently of the library: std::mt19937_64 instead of the
// Philox streams, direct subset enumeration instead of rank weights.
namespace gim_test {

enum class Shape { Exponential, Pareto, Lognormal, Uniform, SmallIntegers };

inline std::vector<double> draw(std::mt19937_64& rng, Shape shape, std::size_t n) {
  std::vector<double> out(n);
  std::exponential_distribution<double> ex(1.0);
  std::lognormal_distribution<double> ln(0.0, 0.75);
  std::uniform_real_distribution<double> un(0.0, 10.0);
  std::uniform_int_distribution<int> small(0, 4);
  for (auto& x : out) {
    switch (shape) {
      case Shape::Exponential: x = ex(rng); break;
      case Shape::Pareto: x = std::pow(1.0 - std::generate_canonical<double, 53>(rng), -1.0 / 3.0); break;
      case Shape::Lognormal: x = ln(rng); break;
      case Shape::Uniform: x = un(rng); break;
      case Shape::SmallIntegers: x = small(rng); break;
    }
  }
  return out;
}

inline Shape pick_shape(std::mt19937_64& rng) {
  return static_cast<Shape>(std::uniform_int_distribution<int>(0, 4)(rng));
}

// Random raw data with at least one positive value.
inline std::vector<double> random_raw(std::mt19937_64& rng, std::size_t n) {
  auto raw = draw(rng, pick_shape(rng), n);
  if (*std::max_element(raw.begin(), raw.end()) <= 0.0) raw[0] = 1.0;
  return raw;
}

struct Moments {
  double max_moment = 0.0;
  double min_moment = 0.0;
};

// Averages max and min over every v-subset, found by walking index
// combinations directly.
inline Moments brute_moments(const std::vector<double>& raw, int v) {
  const int n = static_cast<int>(raw.size());
  std::vector<int> idx(v);
  for (int i = 0; i < v; ++i) idx[i] = i;
  long double sum_max = 0.0L;
  long double sum_min = 0.0L;
  long count = 0;
  while (true) {
    double hi = raw[idx[0]];
    double lo = raw[idx[0]];
    for (int i = 1; i < v; ++i) {
      hi = std::max(hi, raw[idx[i]]);
      lo = std::min(lo, raw[idx[i]]);
    }
    sum_max += hi;
    sum_min += lo;
    ++count;
    int k = v - 1;
    while (k >= 0 && idx[k] == n - v + k) --k;
    if (k < 0) break;
    ++idx[k];
    for (int j = k + 1; j < v; ++j) idx[j] = idx[j - 1] + 1;
  }
  return {static_cast<double>(sum_max / count), static_cast<double>(sum_min / count)};
}

inline double brute_gim(const std::vector<double>& raw, int v) {
  const auto m = brute_moments(raw, v);
  return (m.max_moment - m.min_moment) / (m.max_moment + m.min_moment);
}

// Pairwise definition of the Gini mean difference.
inline double brute_gmd(const std::vector<double>& raw) {
  long double acc = 0.0L;
  const std::size_t n = raw.size();
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) acc += std::fabs(raw[i] - raw[j]);
  return static_cast<double>(acc / (0.5L * n * (n - 1)));
}

inline double mean_of(const std::vector<double>& x) {
  long double s = 0.0L;
  for (double a : x) s += a;
  return static_cast<double>(s / x.size());
}

inline double var_of(const std::vector<double>& x) {
  const double m = mean_of(x);
  long double s = 0.0L;
  for (double a : x) s += (a - m) * (a - m);
  return static_cast<double>(s / (x.size() - 1));
}

// Standard normal cdf via erfc; kept separate from the library's version.
inline double phi_cdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

}  // namespace gim_test
