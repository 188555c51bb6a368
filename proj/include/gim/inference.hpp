#pragma once

#include <optional>
#include <string_view>

#include "gim/distributions.hpp"
#include "gim/measures.hpp"

namespace gim {

enum class VarianceMethod { PluginPaper, Jackknife };

[[nodiscard]] std::string_view to_string(VarianceMethod method) noexcept;

/// Variance of a GIM point estimate (not of the sqrt(n)-scaled statistic),
/// optionally with a normal-approximation confidence interval.
struct VarianceEstimate {
  double variance = 0.0;
  VarianceMethod method = VarianceMethod::Jackknife;
  double std_error = 0.0;
  std::optional<double> level;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
};

/// Exponent applied to F and 1-F inside the two integral terms of the
/// U-statistic projection. Conditioning the kernel on one argument leaves
/// v-1 free draws whose max has density (v-1) F^{v-2} f, so `Derived` uses
/// v-2. `AsPrinted` uses v-1 and exists only for comparison runs.
enum class ProjectionExponent { Derived, AsPrinted };

/// Estimated projection g(X_i) of the max-minus-min kernel for each order
/// statistic, with the right-continuous ECDF F(X_{i:n}) = i/n (ties share the
/// value of their block).
[[nodiscard]] std::vector<double> projection_values(const IncomeSample& s, Order v,
                                                    ProjectionExponent exponent = ProjectionExponent::Derived);

/// Sample variance (divisor n-1) of projection_values, the plug-in estimate
/// of sigma_1^2. O(n) on the sorted sample. Requires n >= 2.
[[nodiscard]] double sigma1_plugin(const IncomeSample& s, Order v,
                                   ProjectionExponent exponent = ProjectionExponent::Derived);

/// v^2 sigma1_plugin / (D^2 n), D the U-statistic denominator. This omits the
/// numerator/denominator covariance of the ratio.
[[nodiscard]] VarianceEstimate var_gim_paper(const IncomeSample& s, Order v,
                                             ProjectionExponent exponent = ProjectionExponent::Derived);

/// Delete-1 jackknife: (n-1)/n * sum_k (theta_(k) - mean theta)^2.
/// Requires n >= max(v + 1, 3).
[[nodiscard]] VarianceEstimate var_gim_jackknife(const IncomeSample& s, Order v, EstimatorKind kind,
                                                 int threads = 0);

/// point -/+ z_{(1+level)/2} * std_error, clamped to [0, 1].
/// Throws InvalidLevel unless 0 < level < 1.
[[nodiscard]] VarianceEstimate confidence_interval(double point, VarianceEstimate ve, double level);

/// Asymptotic variance of sqrt(n) (N_hat - N) for the EDF numerator:
///   v^2 * iint [min(F(x),F(z)) - F(x)F(z)] J(F(x)) J(F(z)) dx dz,
///   J(u) = u^{v-1} - (1-u)^{v-1}.
/// Evaluated in the probability domain with dx = Q'(u) du. The symmetric
/// square is folded onto one triangle and written in upper-tail coordinates
/// (A = 1-u, B = 1-w, B = A^{1-tau}); the outer axis is graded towards both
/// ends and a tensor Gauss-Legendre rule covers the unit square. Panels
/// double until two successive values agree to `rel_tol`;
/// QuadratureNoConvergence after 12 doublings.
[[nodiscard]] double sigma2_numeric(const DistributionSpec& d, Order v, double rel_tol = 1e-6);

}  // namespace gim
