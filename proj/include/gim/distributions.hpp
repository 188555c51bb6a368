#pragma once

#include <string>
#include <utility>

#include "gim/random.hpp"
#include "gim/sample.hpp"

namespace gim {

enum class Family { Exponential, Pareto, Lognormal };

[[nodiscard]] std::string_view to_string(Family family) noexcept;

/// Parametric income distribution used by the simulation and the theory
/// routines. Construct through the named factories, which validate the
/// parameters (finite mean is required throughout).
class DistributionSpec {
 public:
  static DistributionSpec exponential(double rate);
  static DistributionSpec pareto(double shape, double scale);
  static DistributionSpec lognormal(double meanlog, double sdlog);

  [[nodiscard]] Family family() const noexcept { return family_; }

  // Exponential: rate. Pareto: shape alpha, scale x_m. Lognormal: meanlog, sdlog.
  [[nodiscard]] double first() const noexcept { return p1_; }
  [[nodiscard]] double second() const noexcept { return p2_; }

  [[nodiscard]] double rate() const noexcept { return p1_; }
  [[nodiscard]] double shape() const noexcept { return p1_; }
  [[nodiscard]] double scale() const noexcept { return p2_; }
  [[nodiscard]] double meanlog() const noexcept { return p1_; }
  [[nodiscard]] double sdlog() const noexcept { return p2_; }

  [[nodiscard]] double mean() const noexcept;
  [[nodiscard]] double lower_support() const noexcept;

  /// "rate=1", "shape=3;scale=1", "meanlog=0;sdlog=0.5"
  [[nodiscard]] std::string params_string() const;

  friend bool operator==(const DistributionSpec&, const DistributionSpec&) = default;

 private:
  DistributionSpec(Family f, double a, double b) : family_(f), p1_(a), p2_(b) {}

  Family family_;
  double p1_;
  double p2_;
};

/// Throws OutOfSupport below the support.
[[nodiscard]] double cdf(const DistributionSpec& d, double x);
[[nodiscard]] double density(const DistributionSpec& d, double x);

/// Throws InvalidProbability unless 0 < u < 1.
[[nodiscard]] double quantile(const DistributionSpec& d, double u);

/// dQ/du = 1 / f(Q(u)).
[[nodiscard]] double quantile_derivative(const DistributionSpec& d, double u);

/// Q(1 - tail) and Q'(1 - tail), computed from the upper-tail probability so
/// that points near u = 1 keep their precision. Throws InvalidProbability
/// unless 0 < tail < 1.
[[nodiscard]] double upper_quantile(const DistributionSpec& d, double tail);
[[nodiscard]] double upper_quantile_derivative(const DistributionSpec& d, double tail);

/// n inverse-transform draws from the counter-based stream.
[[nodiscard]] IncomeSample sample(const DistributionSpec& d, std::size_t n, SeededStream stream);

struct Extremes {
  double e_max = 0.0;  // E max(X_1..X_v)
  double e_min = 0.0;  // E min(X_1..X_v)
};

/// Expected maximum and minimum of v iid draws. Closed forms for the
/// exponential (harmonic numbers) and Pareto (inclusion-exclusion, v <= 20);
/// quadrature otherwise.
[[nodiscard]] Extremes theoretical_extremes(const DistributionSpec& d, Order v);

/// Same moments by adaptive Gauss-Legendre on v * int_0^1 Q(u) {u^{v-1}, (1-u)^{v-1}} du,
/// after u = 1 - (1-s)^p grading (exponential, Pareto) or u = Phi(z) (lognormal).
[[nodiscard]] Extremes theoretical_extremes_quadrature(const DistributionSpec& d, Order v,
                                                       double rel_tol = 1e-10);

/// Population GIM(v) from theoretical_extremes.
[[nodiscard]] double theoretical_gim(const DistributionSpec& d, Order v);

/// Population GIM(v) from theoretical_extremes_quadrature.
[[nodiscard]] double theoretical_gim_quadrature(const DistributionSpec& d, Order v);

}  // namespace gim
