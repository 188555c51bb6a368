#pragma once

#include <functional>
#include <vector>

namespace gim {

/// Gauss-Legendre rule on [-1, 1].
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;

  /// Nodes by Newton iteration on P_m from the Chebyshev initial guess.
  explicit GaussLegendre(int points);

  [[nodiscard]] int points() const noexcept { return static_cast<int>(nodes.size()); }
};

using Integrand = std::function<double(double)>;

/// Composite rule: `panels` equal panels on [a, b], each with `rule`.
[[nodiscard]] double integrate_composite(const Integrand& f, double a, double b, int panels,
                                         const GaussLegendre& rule);

/// Globally adaptive 15-point Gauss-Legendre: starting from 8 panels, the
/// panel whose halves disagree most with its whole is bisected until the
/// summed disagreement is below `rel_tol * |estimate|`. Throws
/// QuadratureNoConvergence when a panel would be split past `max_depth`.
[[nodiscard]] double integrate_adaptive(const Integrand& f, double a, double b, double rel_tol = 1e-10,
                                        int max_depth = 48);

}  // namespace gim
