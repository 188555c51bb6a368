#pragma once

namespace gim {

/// Standard normal cdf.
[[nodiscard]] double normal_cdf(double z) noexcept;

/// Standard normal density.
[[nodiscard]] double normal_pdf(double z) noexcept;

/// Standard normal quantile. Acklam's rational approximation followed by one
/// Halley step against erfc, giving close to full double precision on (0, 1).
/// Throws InvalidProbability outside the open unit interval.
[[nodiscard]] double normal_quantile(double p);

}  // namespace gim
