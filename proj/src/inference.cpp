#include "gim/inference.hpp"

#include <algorithm>
#include <cmath>

#include "gim/kernels.hpp"
#include "gim/normal.hpp"
#include "gim/quadrature.hpp"
#include "gim/summation.hpp"

namespace gim {

std::string_view to_string(VarianceMethod method) noexcept {
  return method == VarianceMethod::PluginPaper ? "plugin" : "jackknife";
}

namespace {

// Sample variance with divisor n-1; exactly 0 when all values coincide.
double sample_variance(std::span<const double> values) {
  const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  if (*lo == *hi) return 0.0;
  CompensatedSum sum;
  for (double g : values) sum += g;
  const double mean = sum.value() / static_cast<double>(values.size());
  CompensatedSum ss;
  for (double g : values) ss += (g - mean) * (g - mean);
  return ss.value() / static_cast<double>(values.size() - 1);
}

}  // namespace

std::vector<double> projection_values(const IncomeSample& s, Order v, ProjectionExponent exponent) {
  const std::size_t n = s.size();
  if (n < 2) {
    throw Error(ErrorCode::SampleTooSmall, "projection variance needs at least 2 incomes");
  }
  const double nd = static_cast<double>(n);
  const double order = v.value();
  const double inner = exponent == ProjectionExponent::Derived ? order - 2.0 : order - 1.0;
  const auto x = s.values();

  // Block boundaries for ties: first[i] and last[i] index the run of values equal to x[i].
  std::vector<std::size_t> first(n), last(n);
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && x[j + 1] == x[i]) ++j;
    for (std::size_t k = i; k <= j; ++k) {
      first[k] = i;
      last[k] = j;
    }
    i = j + 1;
  }
  std::vector<double> cdf(n), surv(n);
  for (std::size_t i = 0; i < n; ++i) {
    cdf[i] = static_cast<double>(last[i] + 1) / nd;
    surv[i] = static_cast<double>(n - last[i] - 1) / nd;
  }

  // upper[i] = sum_{j>=i} x_j F_j^inner ; lower[i] = sum_{j<i} x_j S_j^inner
  std::vector<double> upper(n + 1, 0.0), lower(n + 1, 0.0);
  if (v.value() > 1) {
    CompensatedSum acc;
    for (std::size_t i = n; i-- > 0;) {
      acc += x[i] * std::pow(cdf[i], inner);
      upper[i] = acc.value();
    }
    CompensatedSum low;
    for (std::size_t i = 0; i < n; ++i) {
      lower[i] = low.value();
      low += x[i] * std::pow(surv[i], inner);
    }
    lower[n] = low.value();
  }

  std::vector<double> g(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double own = x[i] * (std::pow(cdf[i], order - 1.0) - std::pow(surv[i], order - 1.0));
    const double above = upper[last[i] + 1];
    const double below = lower[first[i]];
    g[i] = own + (order - 1.0) / nd * (above - below);
  }
  return g;
}

double sigma1_plugin(const IncomeSample& s, Order v, ProjectionExponent exponent) {
  const auto g = projection_values(s, v, exponent);
  return sample_variance(g);
}

VarianceEstimate var_gim_paper(const IncomeSample& s, Order v, ProjectionExponent exponent) {
  const double sigma1 = sigma1_plugin(s, v, exponent);
  const auto est = gim_ustat(s, v);
  const double order = v.value();
  VarianceEstimate ve;
  ve.method = VarianceMethod::PluginPaper;
  ve.variance = order * order * sigma1 / (est.denominator * est.denominator * static_cast<double>(s.size()));
  ve.std_error = std::sqrt(ve.variance);
  return ve;
}

VarianceEstimate var_gim_jackknife(const IncomeSample& s, Order v, EstimatorKind kind, int threads) {
  const std::size_t n = s.size();
  if (n < std::max<std::size_t>(v.size() + 1, 3)) {
    throw Error(ErrorCode::SampleTooSmall, "jackknife needs n >= max(v + 1, 3)");
  }
  const auto loo = kernels::leave_one_out(s, v, kind, threads);
  const double nd = static_cast<double>(n);
  VarianceEstimate ve;
  ve.method = VarianceMethod::Jackknife;
  ve.variance = sample_variance(loo) * (nd - 1.0) * (nd - 1.0) / nd;
  ve.std_error = std::sqrt(ve.variance);
  return ve;
}

VarianceEstimate confidence_interval(double point, VarianceEstimate ve, double level) {
  if (!(level > 0.0 && level < 1.0)) {
    throw Error(ErrorCode::InvalidLevel, "confidence level must lie in (0, 1)");
  }
  const double z = normal_quantile(0.5 * (1.0 + level));
  ve.level = level;
  ve.ci_low = std::clamp(point - z * ve.std_error, 0.0, 1.0);
  ve.ci_high = std::clamp(point + z * ve.std_error, 0.0, 1.0);
  return ve;
}

namespace {

constexpr int kMaxDoublings = 12;
constexpr double kGrading = 6.0;

// s -> a = s^p / (s^p + (1-s)^p), flattening the integrand at both ends.
struct Graded {
  double a;
  double jacobian;
};

Graded grade(double s) {
  const double lo = std::pow(s, kGrading);
  const double hi = std::pow(1.0 - s, kGrading);
  const double denom = lo + hi;
  const double jac = kGrading * std::pow(s, kGrading - 1.0) * std::pow(1.0 - s, kGrading - 1.0) / (denom * denom);
  return {lo / denom, jac};
}

// Composite Gauss-Legendre nodes and weights on (0, 1).
void composite_nodes(int panels, const GaussLegendre& rule, std::vector<double>& nodes, std::vector<double>& weights) {
  const double h = 1.0 / panels;
  nodes.clear();
  weights.clear();
  for (int p = 0; p < panels; ++p) {
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      nodes.push_back((p + 0.5 * (1.0 + rule.nodes[i])) * h);
      weights.push_back(0.5 * h * rule.weights[i]);
    }
  }
}

// In upper-tail coordinates A = 1 - u, B = 1 - w, the triangle w < u becomes
// B > A and the kernel min(u, w) - u w becomes A (1 - B):
//   sigma2 = 2 v^2 int_0^1 A phi(1-A) int_A^1 (1-B) phi(1-B) dB dA,
// phi(u) = J(u) Q'(u). The inner axis uses B = A^{1-tau}, which turns the
// spike of phi near B = A into a smooth exponential in tau.
double sigma2_tensor(const DistributionSpec& d, double order, int panels, const GaussLegendre& rule) {
  auto phi = [&](double u, double tail) {
    if (!(u > 0.0 && tail > 0.0)) return 0.0;
    const double j = std::pow(u, order - 1.0) - std::pow(tail, order - 1.0);
    return j * (u < 0.5 ? quantile_derivative(d, u) : upper_quantile_derivative(d, tail));
  };

  std::vector<double> s_nodes, s_weights;
  composite_nodes(panels, rule, s_nodes, s_weights);

  CompensatedSum total;
  for (std::size_t a = 0; a < s_nodes.size(); ++a) {
    const auto g = grade(s_nodes[a]);
    const double tail_a = g.a;
    const double log_a = std::log(tail_a);
    if (!(tail_a > 0.0 && tail_a < 1.0)) continue;
    const double outer = tail_a * phi(-std::expm1(log_a), tail_a);
    if (outer == 0.0) continue;
    CompensatedSum inner;
    for (std::size_t b = 0; b < s_nodes.size(); ++b) {
      const double exponent = (1.0 - s_nodes[b]) * log_a;
      const double tail_b = std::exp(exponent);
      const double u_b = -std::expm1(exponent);
      inner += s_weights[b] * (-log_a) * tail_b * u_b * phi(u_b, tail_b);
    }
    total += s_weights[a] * g.jacobian * outer * inner.value();
  }
  return 2.0 * order * order * total.value();
}

}  // namespace

double sigma2_numeric(const DistributionSpec& d, Order v, double rel_tol) {
  static const GaussLegendre rule(10);
  const double order = v.value();
  if (v.value() == 1) return 0.0;
  double previous = sigma2_tensor(d, order, 1, rule);
  int panels = 1;
  for (int doubling = 1; doubling <= kMaxDoublings; ++doubling) {
    panels *= 2;
    const double current = sigma2_tensor(d, order, panels, rule);
    if (std::fabs(current - previous) <= rel_tol * std::fabs(current)) {
      return current;
    }
    previous = current;
  }
  throw Error(ErrorCode::QuadratureNoConvergence, "sigma2 quadrature did not settle after 12 doublings");
}

}  // namespace gim
