#include "gim/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>
#include <utility>
#include <vector>

#include "gim/error.hpp"

namespace gim {

GaussLegendre::GaussLegendre(int points) : nodes(static_cast<std::size_t>(points)), weights(nodes.size()) {
  if (points < 1) {
    throw Error(ErrorCode::InvalidParameter, "Gauss-Legendre rule needs at least one point");
  }
  const int m = points;
  for (int i = 0; i < (m + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (m + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = x;
      for (int k = 2; k <= m; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      // p1 = P_m(x), p0 = P_{m-1}(x)
      dp = m * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::fabs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes[static_cast<std::size_t>(i)] = -x;
    nodes[static_cast<std::size_t>(m - 1 - i)] = x;
    weights[static_cast<std::size_t>(i)] = w;
    weights[static_cast<std::size_t>(m - 1 - i)] = w;
  }
  if (m % 2 == 1) nodes[static_cast<std::size_t>(m / 2)] = 0.0;
}

namespace {

double apply_rule(const Integrand& f, double a, double b, const GaussLegendre& rule) {
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    sum += rule.weights[i] * f(mid + half * rule.nodes[i]);
  }
  return half * sum;
}

struct Segment {
  double a;
  double b;
  double value;  // sum of the two half-interval rules
  double error;  // |value - whole-interval rule|
  int depth;
};

Segment make_segment(const Integrand& f, double a, double b, double whole, int depth, const GaussLegendre& rule) {
  const double mid = 0.5 * (a + b);
  const double value = apply_rule(f, a, mid, rule) + apply_rule(f, mid, b, rule);
  return {a, b, value, std::fabs(value - whole), depth};
}

}  // namespace

double integrate_composite(const Integrand& f, double a, double b, int panels, const GaussLegendre& rule) {
  const double h = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    sum += apply_rule(f, a + p * h, a + (p + 1) * h, rule);
  }
  return sum;
}

double integrate_adaptive(const Integrand& f, double a, double b, double rel_tol, int max_depth) {
  static const GaussLegendre rule(15);
  constexpr int kInitialPanels = 8;
  constexpr std::size_t kMaxSegments = 200'000;

  auto worse = [](const Segment& x, const Segment& y) { return x.error < y.error; };
  std::vector<Segment> heap;
  const double h = (b - a) / kInitialPanels;
  for (int p = 0; p < kInitialPanels; ++p) {
    const double lo = a + p * h;
    const double hi = p + 1 == kInitialPanels ? b : a + (p + 1) * h;
    heap.push_back(make_segment(f, lo, hi, apply_rule(f, lo, hi, rule), 0, rule));
  }
  std::make_heap(heap.begin(), heap.end(), worse);

  auto totals = [&heap] {
    double value = 0.0;
    double error = 0.0;
    for (const auto& seg : heap) {
      value += seg.value;
      error += seg.error;
    }
    return std::pair{value, error};
  };
  auto settled = [rel_tol](double value, double error) {
    return error <= std::max(rel_tol * std::fabs(value), 1e-300) || error <= 1e-14 * std::fabs(value);
  };

  // Always split the segment with the largest error estimate. Running totals
  // drift, so they are re-summed before accepting.
  auto [value, error] = totals();
  while (true) {
    if (settled(value, error)) {
      std::tie(value, error) = totals();
      if (settled(value, error)) return value;
    }
    std::pop_heap(heap.begin(), heap.end(), worse);
    const Segment worst = heap.back();
    heap.pop_back();
    if (worst.depth >= max_depth || heap.size() + 2 > kMaxSegments) {
      throw Error(ErrorCode::QuadratureNoConvergence, "adaptive Gauss-Legendre exceeded its depth limit");
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Segment left = make_segment(f, worst.a, mid, apply_rule(f, worst.a, mid, rule), worst.depth + 1, rule);
    const Segment right = make_segment(f, mid, worst.b, apply_rule(f, mid, worst.b, rule), worst.depth + 1, rule);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    for (const auto& seg : {left, right}) {
      heap.push_back(seg);
      std::push_heap(heap.begin(), heap.end(), worse);
    }
  }
}

}  // namespace gim
