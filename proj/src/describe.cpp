#include "gim/describe.hpp"

#include <cmath>

#include "gim/summation.hpp"

namespace gim {

DescriptiveStats describe(const IncomeSample& s) {
  DescriptiveStats d;
  d.n = s.size();
  d.mean = s.mean();
  d.min = s.min();
  d.max = s.max();
  d.range = d.max - d.min;

  CompensatedSum m2, m3, m4;
  for (double x : s.values()) {
    const double dev = x - d.mean;
    const double sq = dev * dev;
    m2 += sq;
    m3 += sq * dev;
    m4 += sq * sq;
  }
  const double n = static_cast<double>(d.n);
  if (d.n >= 2) {
    d.sd = d.range == 0.0 ? 0.0 : std::sqrt(m2.value() / (n - 1.0));
  }
  const double c2 = m2.value() / n;
  if (d.n >= 3 && d.range > 0.0 && c2 > 0.0) {
    d.skewness = (m3.value() / n) / std::pow(c2, 1.5);
    d.kurtosis = (m4.value() / n) / (c2 * c2);
  }
  return d;
}

}  // namespace gim
