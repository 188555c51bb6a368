#include "gim/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "gim/measures.hpp"
#include "gim/normal.hpp"
#include "gim/quadrature.hpp"

namespace gim {

std::string_view to_string(Family family) noexcept {
  switch (family) {
    case Family::Exponential: return "exponential";
    case Family::Pareto: return "pareto";
    case Family::Lognormal: return "lognormal";
  }
  return "unknown";
}

namespace {

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidParameter, what);
}

void require_probability(double u) {
  if (!(u > 0.0 && u < 1.0)) {
    throw Error(ErrorCode::InvalidProbability, "probability must lie in (0, 1), got " + std::to_string(u));
  }
}

}  // namespace

DistributionSpec DistributionSpec::exponential(double rate) {
  require(std::isfinite(rate) && rate > 0.0, "exponential rate must be positive");
  return {Family::Exponential, rate, 0.0};
}

DistributionSpec DistributionSpec::pareto(double shape, double scale) {
  require(std::isfinite(shape) && shape > 1.0, "Pareto shape must exceed 1 for a finite mean");
  require(std::isfinite(scale) && scale > 0.0, "Pareto scale must be positive");
  return {Family::Pareto, shape, scale};
}

DistributionSpec DistributionSpec::lognormal(double meanlog, double sdlog) {
  require(std::isfinite(meanlog), "lognormal meanlog must be finite");
  require(std::isfinite(sdlog) && sdlog > 0.0, "lognormal sdlog must be positive");
  return {Family::Lognormal, meanlog, sdlog};
}

double DistributionSpec::mean() const noexcept {
  switch (family_) {
    case Family::Exponential: return 1.0 / p1_;
    case Family::Pareto: return p2_ * p1_ / (p1_ - 1.0);
    case Family::Lognormal: return std::exp(p1_ + 0.5 * p2_ * p2_);
  }
  return 0.0;
}

double DistributionSpec::lower_support() const noexcept {
  return family_ == Family::Pareto ? p2_ : 0.0;
}

std::string DistributionSpec::params_string() const {
  std::ostringstream out;
  out.precision(15);
  switch (family_) {
    case Family::Exponential: out << "rate=" << p1_; break;
    case Family::Pareto: out << "shape=" << p1_ << ";scale=" << p2_; break;
    case Family::Lognormal: out << "meanlog=" << p1_ << ";sdlog=" << p2_; break;
  }
  return out.str();
}

double cdf(const DistributionSpec& d, double x) {
  if (!(x >= d.lower_support())) {
    throw Error(ErrorCode::OutOfSupport, "x = " + std::to_string(x) + " lies below the support");
  }
  switch (d.family()) {
    case Family::Exponential: return -std::expm1(-d.rate() * x);
    case Family::Pareto: return -std::expm1(-d.shape() * std::log(x / d.scale()));
    case Family::Lognormal:
      if (x == 0.0) return 0.0;
      return normal_cdf((std::log(x) - d.meanlog()) / d.sdlog());
  }
  return 0.0;
}

double density(const DistributionSpec& d, double x) {
  if (!(x >= d.lower_support())) {
    throw Error(ErrorCode::OutOfSupport, "x = " + std::to_string(x) + " lies below the support");
  }
  switch (d.family()) {
    case Family::Exponential: return d.rate() * std::exp(-d.rate() * x);
    case Family::Pareto: return d.shape() / d.scale() * std::pow(d.scale() / x, d.shape() + 1.0);
    case Family::Lognormal: {
      if (x == 0.0) return 0.0;
      const double z = (std::log(x) - d.meanlog()) / d.sdlog();
      return normal_pdf(z) / (x * d.sdlog());
    }
  }
  return 0.0;
}

double quantile(const DistributionSpec& d, double u) {
  require_probability(u);
  switch (d.family()) {
    case Family::Exponential: return -std::log1p(-u) / d.rate();
    case Family::Pareto: return d.scale() * std::exp(-std::log1p(-u) / d.shape());
    case Family::Lognormal: return std::exp(d.meanlog() + d.sdlog() * normal_quantile(u));
  }
  return 0.0;
}

double quantile_derivative(const DistributionSpec& d, double u) {
  require_probability(u);
  switch (d.family()) {
    case Family::Exponential: return 1.0 / (d.rate() * (1.0 - u));
    case Family::Pareto:
      return d.scale() / d.shape() * std::exp(-(1.0 / d.shape() + 1.0) * std::log1p(-u));
    case Family::Lognormal: {
      const double z = normal_quantile(u);
      // Q(u) * sdlog / phi(z), folded into one exponent.
      return d.sdlog() * std::sqrt(2.0 * std::numbers::pi) *
             std::exp(d.meanlog() + d.sdlog() * z + 0.5 * z * z);
    }
  }
  return 0.0;
}

double upper_quantile(const DistributionSpec& d, double tail) {
  require_probability(tail);
  switch (d.family()) {
    case Family::Exponential: return -std::log(tail) / d.rate();
    case Family::Pareto: return d.scale() * std::pow(tail, -1.0 / d.shape());
    case Family::Lognormal: return std::exp(d.meanlog() - d.sdlog() * normal_quantile(tail));
  }
  return 0.0;
}

double upper_quantile_derivative(const DistributionSpec& d, double tail) {
  require_probability(tail);
  switch (d.family()) {
    case Family::Exponential: return 1.0 / (d.rate() * tail);
    case Family::Pareto: return d.scale() / d.shape() * std::pow(tail, -1.0 / d.shape() - 1.0);
    case Family::Lognormal: {
      const double z = -normal_quantile(tail);
      return d.sdlog() * std::sqrt(2.0 * std::numbers::pi) *
             std::exp(d.meanlog() + d.sdlog() * z + 0.5 * z * z);
    }
  }
  return 0.0;
}

IncomeSample sample(const DistributionSpec& d, std::size_t n, SeededStream stream) {
  if (n == 0) {
    throw Error(ErrorCode::EmptySample, "cannot draw an empty sample");
  }
  const CounterUniform uniform(stream);
  std::vector<double> draws(n);
  for (std::size_t k = 0; k < n; ++k) {
    draws[k] = quantile(d, uniform.at(k));
  }
  std::sort(draws.begin(), draws.end());
  return IncomeSample::from_sorted(std::move(draws));
}

namespace {

constexpr int kParetoClosedFormMaxOrder = 20;

Extremes exponential_extremes(const DistributionSpec& d, int v) {
  double harmonic = 0.0;
  for (int k = v; k >= 1; --k) harmonic += 1.0 / k;
  return {harmonic / d.rate(), 1.0 / (v * d.rate())};
}

Extremes pareto_extremes(const DistributionSpec& d, int v) {
  const double a = d.shape();
  const double xm = d.scale();
  // E max_v = sum_k C(v,k) (-1)^{k+1} E min_k, with E min_k = xm k a / (k a - 1).
  double e_max = 0.0;
  for (int k = 1; k <= v; ++k) {
    const double sign = (k % 2 == 1) ? 1.0 : -1.0;
    e_max += sign * binomial(static_cast<std::uint64_t>(v), static_cast<std::uint64_t>(k)) * xm * k * a / (k * a - 1.0);
  }
  return {e_max, xm * v * a / (v * a - 1.0)};
}

// Grading exponent for u = 1 - (1 - s)^p, chosen so the mapped integrand
// Q(u) (1-s)^{p-1} vanishes at s = 1 even for Pareto tails.
double grading_power(const DistributionSpec& d) {
  if (d.family() == Family::Pareto) {
    return std::max(4.0, std::ceil(2.0 * d.shape() / (d.shape() - 1.0)));
  }
  return 4.0;
}

}  // namespace

Extremes theoretical_extremes_quadrature(const DistributionSpec& d, Order v, double rel_tol) {
  const double order = v.value();

  if (d.family() == Family::Lognormal) {
    // Probit map u = Phi(z): the integrand exp(m + sdlog z) w(Phi(z)) phi(z)
    // decays like a Gaussian, so [-40, 40] loses nothing in double precision.
    auto probit = [&](double z, bool upper) {
      const double u = normal_cdf(z);
      const double tail = normal_cdf(-z);
      const double weight = upper ? std::pow(u, order - 1.0) : std::pow(tail, order - 1.0);
      return order * std::exp(d.meanlog() + d.sdlog() * z) * weight * normal_pdf(z);
    };
    const double e_max = integrate_adaptive([&](double z) { return probit(z, true); }, -40.0, 40.0, rel_tol);
    const double e_min = integrate_adaptive([&](double z) { return probit(z, false); }, -40.0, 40.0, rel_tol);
    return {e_max, e_min};
  }

  const double p = grading_power(d);
  auto mapped = [&](double s, bool upper) {
    if (s <= 0.0 || s >= 1.0) return 0.0;
    const double log_tail = p * std::log1p(-s);
    const double tail = std::exp(log_tail);  // 1 - u
    const double u = -std::expm1(log_tail);
    if (!(tail > 0.0 && u > 0.0)) return 0.0;
    const double jac = p * std::pow(1.0 - s, p - 1.0);
    const double weight = upper ? std::pow(u, order - 1.0) : std::pow(tail, order - 1.0);
    const double q = u < 0.5 ? quantile(d, u) : upper_quantile(d, tail);
    return order * q * weight * jac;
  };
  const double e_max = integrate_adaptive([&](double s) { return mapped(s, true); }, 0.0, 1.0, rel_tol);
  const double e_min = integrate_adaptive([&](double s) { return mapped(s, false); }, 0.0, 1.0, rel_tol);
  return {e_max, e_min};
}

Extremes theoretical_extremes(const DistributionSpec& d, Order v) {
  switch (d.family()) {
    case Family::Exponential: return exponential_extremes(d, v.value());
    case Family::Pareto:
      if (v.value() <= kParetoClosedFormMaxOrder) return pareto_extremes(d, v.value());
      break;
    case Family::Lognormal: break;
  }
  return theoretical_extremes_quadrature(d, v);
}

double theoretical_gim(const DistributionSpec& d, Order v) {
  const auto e = theoretical_extremes(d, v);
  return (e.e_max - e.e_min) / (e.e_max + e.e_min);
}

double theoretical_gim_quadrature(const DistributionSpec& d, Order v) {
  const auto e = theoretical_extremes_quadrature(d, v);
  return (e.e_max - e.e_min) / (e.e_max + e.e_min);
}

}  // namespace gim
