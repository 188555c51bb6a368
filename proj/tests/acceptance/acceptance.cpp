// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Oracles here are written from scratch on purpose (tanh-sinh
// and trapezoid quadrature, erfc-based normal cdf, Kolmogorov tail series).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gim/cli.hpp"
#include "gim/distributions.hpp"
#include "gim/inference.hpp"
#include "gim/measures.hpp"
#include "gim/simulation.hpp"

namespace fs = std::filesystem;
using gim::DistributionSpec;
using gim::Order;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* pattern, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

double phi(double z) { return 0.5 * std::erfc(-z / std::numbers::sqrt2); }

double variance(const std::vector<double>& x) {
  double m = 0.0;
  for (double a : x) m += a;
  m /= static_cast<double>(x.size());
  double s = 0.0;
  for (double a : x) s += (a - m) * (a - m);
  return s / static_cast<double>(x.size() - 1);
}

// --- criterion 1 -----------------------------------------------------------

DistributionSpec random_family(std::mt19937_64& rng) {
  switch (rng() % 3) {
    case 0: return DistributionSpec::exponential(0.1 + 5.0 * std::generate_canonical<double, 53>(rng));
    case 1: return DistributionSpec::pareto(1.2 + 4.0 * std::generate_canonical<double, 53>(rng), 1.0 + (rng() % 50));
    default: return DistributionSpec::lognormal(-2.0 + 6.0 * std::generate_canonical<double, 53>(rng),
                                                0.1 + 1.5 * std::generate_canonical<double, 53>(rng));
  }
}

Outcome gini_identity() {
  std::mt19937_64 rng(1);
  double worst = 0.0;
  for (std::uint64_t i = 1; i <= 1000; ++i) {
    const std::size_t n = 2 + rng() % 199;
    const auto s = gim::sample(random_family(rng), n, {101, i});
    const double diff = std::fabs(gim::gim_ustat(s, Order(2)).value - gim::gmd(s) / (2.0 * s.mean()));
    worst = std::max(worst, diff);
  }
  return {worst <= 1e-12, fmt("max |GIM(2) - GMD/(2 mean)| = %.2e over 1000 samples", worst)};
}

// --- criterion 2 -----------------------------------------------------------

Outcome oracle_equivalence() {
  std::mt19937_64 rng(2);
  double worst_value = 0.0;
  double worst_moment = 0.0;
  std::size_t pairs = 0;
  for (std::uint64_t i = 1; i <= 200; ++i) {
    const std::size_t n = 1 + (i - 1) % 12;
    const auto s = gim::sample(random_family(rng), n, {202, i});
    for (int v = 1; v <= static_cast<int>(n); ++v) {
      const auto e = gim::enumerate_moments(s, Order(v));
      const double scale = std::max(1.0, e.max_moment);
      worst_moment = std::max(worst_moment, std::fabs(gim::max_moment_u(s, Order(v)) - e.max_moment) / scale);
      worst_moment = std::max(worst_moment, std::fabs(gim::min_moment_u(s, Order(v)) - e.min_moment) / scale);
      worst_value = std::max(worst_value, std::fabs(gim::gim_ustat(s, Order(v)).value -
                                                    gim::gim_ustat_naive(s, Order(v)).value));
      ++pairs;
    }
  }
  return {worst_value <= 1e-10 && worst_moment <= 1e-10,
          fmt("%zu (sample, v) pairs; max value gap %.2e, max relative moment gap %.2e", pairs, worst_value,
              worst_moment)};
}

// --- criterion 3 -----------------------------------------------------------

// Tanh-sinh rule on (0,1); f receives (u, 1-u) computed without cancellation.
double tanh_sinh(const std::function<double(double, double)>& f) {
  const double h = 1.0 / 64.0;
  double total = 0.0;
  for (int k = -256; k <= 256; ++k) {
    const double t = k * h;
    const double s = 0.5 * std::numbers::pi * std::sinh(t);
    const double tail = 1.0 / (1.0 + std::exp(2.0 * s));
    const double u = 1.0 / (1.0 + std::exp(-2.0 * s));
    const double c = std::cosh(s);
    const double w = 0.5 * std::numbers::pi * std::cosh(t) / (2.0 * c * c);
    if (u <= 0.0 || tail <= 0.0) continue;
    total += w * f(u, tail);
  }
  return h * total;
}

// GIM(v) from E max = int Q v u^{v-1}, E min = int Q v (1-u)^{v-1}.
double gim_from_quantile(const std::function<double(double, double)>& q, int v) {
  const double hi = tanh_sinh([&](double u, double tail) { return q(u, tail) * v * std::pow(u, v - 1); });
  const double lo = tanh_sinh([&](double u, double tail) { return q(u, tail) * v * std::pow(tail, v - 1); });
  return (hi - lo) / (hi + lo);
}

// Lognormal(0, sigma), v = 2, on the normal scale by the trapezoid rule.
double lognormal_gim2(double sigma) {
  const double h = 1e-3;
  double hi = 0.0;
  double lo = 0.0;
  for (int k = -14000; k <= 14000; ++k) {
    const double z = k * h;
    const double dens = std::exp(-0.5 * z * z) / std::sqrt(2.0 * std::numbers::pi);
    const double x = std::exp(sigma * z);
    hi += x * 2.0 * phi(z) * dens;
    lo += x * 2.0 * phi(-z) * dens;
  }
  return (hi - lo) / (hi + lo);
}

Outcome theoretical_anchors() {
  auto exp_q = [](double, double tail) { return -std::log(tail); };
  auto pareto_q = [](double, double tail) { return std::pow(tail, -1.0 / 3.0); };
  struct Anchor {
    const char* name;
    double library;
    double quadrature;
    double closed;
  };
  const Anchor anchors[] = {
      {"exp v=2", gim::theoretical_gim(DistributionSpec::exponential(1.0), Order(2)), gim_from_quantile(exp_q, 2), 0.5},
      {"exp v=3", gim::theoretical_gim(DistributionSpec::exponential(1.0), Order(3)), gim_from_quantile(exp_q, 3),
       9.0 / 13.0},
      {"pareto(3,1) v=2", gim::theoretical_gim(DistributionSpec::pareto(3.0, 1.0), Order(2)),
       gim_from_quantile(pareto_q, 2), 0.2},
      {"lognormal(0,1) v=2", gim::theoretical_gim(DistributionSpec::lognormal(0.0, 1.0), Order(2)), lognormal_gim2(1.0),
       2.0 * phi(1.0 / std::numbers::sqrt2) - 1.0},
  };
  bool ok = true;
  std::string detail;
  for (const auto& a : anchors) {
    const double gap = std::max(std::fabs(a.library - a.quadrature), std::fabs(a.library - a.closed));
    ok = ok && gap <= 1e-7;
    detail += fmt("%s%s %.10f (gap %.1e)", detail.empty() ? "" : "; ", a.name, a.library, gap);
  }
  return {ok, detail};
}

// --- criterion 4 -----------------------------------------------------------

Outcome table1() {
  const auto d = DistributionSpec::exponential(1.0);
  const auto t0 = std::chrono::steady_clock::now();
  const auto small = gim::run_cell({d, 20, 2, 10'000, 20240101}, {1});
  const auto big = gim::run_cell({d, 200, 2, 10'000, 20240101}, {1});
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool ok = std::fabs(small.ustat.bias) <= 0.005 && small.ustat.mse >= 0.003 && small.ustat.mse <= 0.005 &&
                  small.edf.bias >= 0.020 && small.edf.bias <= 0.030 && std::fabs(big.ustat.bias) <= 0.003 &&
                  std::fabs(big.edf.bias) <= 0.003 && big.ustat.mse <= 0.001 && big.edf.mse <= 0.001 && secs < 120.0;
  return {ok, fmt("n=20: U bias %+.4f mse %.4f, EDF bias %+.4f; n=200: U bias %+.4f mse %.4f, EDF bias %+.4f mse "
                  "%.4f; %.1f s on one thread",
                  small.ustat.bias, small.ustat.mse, small.edf.bias, big.ustat.bias, big.ustat.mse, big.edf.bias,
                  big.edf.mse, secs)};
}

// --- criterion 5 -----------------------------------------------------------

Outcome tables23_pattern() {
  const auto results = gim::run_grid(gim::default_grid());
  int violations = 0;
  int comparisons = 0;
  std::string first_violation;
  for (std::size_t i = 1; i < results.size(); ++i) {
    const auto& prev = results[i - 1];
    const auto& cur = results[i];
    if (!(prev.cell.dist == cur.cell.dist) || prev.cell.v != cur.cell.v) continue;
    for (int which = 0; which < 2; ++which) {
      const auto& a = which == 0 ? prev.ustat : prev.edf;
      const auto& b = which == 0 ? cur.ustat : cur.edf;
      const double bias_slack = 2.0 * std::hypot(a.mc_std_error, b.mc_std_error);
      const double mse_slack = 2.0 * std::hypot(a.mse_std_error, b.mse_std_error);
      comparisons += 2;
      const bool bias_ok = std::fabs(b.bias) <= std::fabs(a.bias) + bias_slack;
      const bool mse_ok = b.mse <= a.mse + mse_slack;
      if (!bias_ok || !mse_ok) {
        violations += !bias_ok + !mse_ok;
        if (first_violation.empty()) {
          first_violation = fmt(" first: %s v=%d n=%zu->%zu %s", std::string(to_string(cur.cell.dist.family())).c_str(),
                                cur.cell.v, prev.cell.n, cur.cell.n, which == 0 ? "ustat" : "edf");
        }
      }
    }
  }
  int pareto_cells = 0;
  int pareto_negative = 0;
  for (const auto& r : results) {
    if (r.cell.dist.family() == gim::Family::Pareto && r.cell.n <= 100) {
      ++pareto_cells;
      pareto_negative += r.ustat.bias < 0.0;
    }
  }
  return {violations == 0 && pareto_negative == pareto_cells,
          fmt("%d/%d monotone comparisons hold within 2 MC SE; Pareto U bias negative in %d/%d cells with n<=100%s",
              comparisons - violations, comparisons, pareto_negative, pareto_cells, first_violation.c_str())};
}

// --- criterion 6 -----------------------------------------------------------

// P(sqrt(m) D > x) for the Kolmogorov distribution.
double kolmogorov_tail(double x) {
  if (x < 0.2) return 1.0;
  double sum = 0.0;
  for (int k = 1; k <= 100; ++k) {
    sum += (k % 2 ? 2.0 : -2.0) * std::exp(-2.0 * k * k * x * x);
  }
  return std::clamp(sum, 0.0, 1.0);
}

Outcome asymptotic_normality() {
  const auto d = DistributionSpec::exponential(1.0);
  const int reps = 5000;
  const std::size_t n = 500;
  std::vector<double> z;
  z.reserve(reps);
  for (int r = 1; r <= reps; ++r) {
    const auto s = gim::sample(d, n, {606, static_cast<std::uint64_t>(r)});
    const double g = gim::gim_ustat(s, Order(2)).value;
    const double se = gim::var_gim_jackknife(s, Order(2), gim::EstimatorKind::UStatistic).std_error;
    z.push_back((g - 0.5) / se);
  }
  std::sort(z.begin(), z.end());
  double dmax = 0.0;
  for (int i = 0; i < reps; ++i) {
    const double f = phi(z[i]);
    dmax = std::max({dmax, (i + 1.0) / reps - f, f - static_cast<double>(i) / reps});
  }
  const double p = kolmogorov_tail(std::sqrt(static_cast<double>(reps)) * dmax);
  return {p > 0.01, fmt("KS D = %.4f, p = %.3f over %d standardized estimates", dmax, p, reps)};
}

// --- criterion 7 -----------------------------------------------------------

Outcome variance_oracle() {
  const auto d = DistributionSpec::exponential(1.0);
  const double s1 = gim::sigma1_plugin(gim::sample(d, 100'000, {707, 0}), Order(2));
  const double s2 = gim::sigma2_numeric(d, Order(2));
  const std::size_t n = 10'000;
  const int reps = 10'000;
  std::vector<double> scaled;
  scaled.reserve(reps);
  for (int r = 1; r <= reps; ++r) {
    const auto s = gim::sample(d, n, {708, static_cast<std::uint64_t>(r)});
    scaled.push_back(std::sqrt(static_cast<double>(n)) * gim::gim_ustat(s, Order(2)).numerator);
  }
  const double mc = variance(scaled);
  const double rel1 = std::fabs(s1 - 1.0 / 3.0) / (1.0 / 3.0);
  const double rel2 = std::fabs(s2 - mc) / mc;
  return {rel1 <= 0.03 && rel2 <= 0.05,
          fmt("sigma1^2 = %.5f (%.2f%% from 1/3); sigma2^2 = %.6f vs MC Var(sqrt(n) N) = %.5f (%.2f%%)", s1,
              100.0 * rel1, s2, mc, 100.0 * rel2)};
}

// --- criterion 8 -----------------------------------------------------------

Outcome ci_coverage() {
  const auto d = DistributionSpec::exponential(1.0);
  int covered = 0;
  const int reps = 2000;
  for (int r = 1; r <= reps; ++r) {
    const auto s = gim::sample(d, 500, {808, static_cast<std::uint64_t>(r)});
    const double g = gim::gim_ustat(s, Order(2)).value;
    const auto ci = gim::confidence_interval(
        g, gim::var_gim_jackknife(s, Order(2), gim::EstimatorKind::UStatistic), 0.95);
    covered += *ci.ci_low <= 0.5 && 0.5 <= *ci.ci_high;
  }
  const double rate = static_cast<double>(covered) / reps;
  return {rate >= 0.93 && rate <= 0.97, fmt("coverage %.4f (%d/%d)", rate, covered, reps)};
}

// --- criteria 9 and 10 ---------------------------------------------------------

int run_cli(std::vector<std::string> args, std::string* out_text = nullptr) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = gim::cli::run(args, out, err);
  if (out_text) *out_text = out.str();
  return code;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome determinism() {
  const auto dir = fs::temp_directory_path() / "gim_acceptance";
  fs::create_directories(dir);
  const std::string cfg = fs::path(GIM_TEST_DATA_DIR) / "grid_small.cfg";
  const auto a = dir / "run_a.csv";
  const auto b = dir / "run_b.csv";
  const auto c = dir / "run_c.csv";
  int codes = 0;
  codes += run_cli({"simulate", "--config", cfg, "--seed", "4242", "--threads", "1", "--out", a.string()});
  codes += run_cli({"simulate", "--config", cfg, "--seed", "4242", "--threads", "1", "--out", b.string()});
  codes += run_cli({"simulate", "--config", cfg, "--seed", "4242", "--threads", "8", "--out", c.string()});
  const auto ta = slurp(a);
  const bool ok = codes == 0 && !ta.empty() && ta == slurp(b) && ta == slurp(c);
  return {ok, fmt("%zu-byte CSV; rerun %s, 1 vs 8 threads %s", ta.size(), ta == slurp(b) ? "identical" : "DIFFERS",
                  ta == slurp(c) ? "identical" : "DIFFERS")};
}

Outcome cli_fixture() {
  std::string text;
  const int code =
      run_cli({"describe", "--input", (fs::path(GIM_TEST_DATA_DIR) / "describe_fixture.csv").string(), "--format",
               "csv"},
              &text);
  const char* expected[] = {"Mean,2.00", "SD,1.58", "Range,4.00", "Skewness,0.00"};
  int found = 0;
  for (const char* e : expected) found += text.find(e) != std::string::npos;
  return {code == 0 && found == 4, fmt("exit %d; %d/4 expected fields present (mean 2.00, SD 1.58, range 4.00, "
                                       "skewness 0.00)",
                                       code, found)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    Outcome (*check)();
    double budget_seconds;  // 0: no runtime bound
  };
  const Criterion criteria[] = {
      {1, "Gini identity", gini_identity, 5.0},
      {2, "oracle equivalence", oracle_equivalence, 30.0},
      {3, "theoretical anchors", theoretical_anchors, 0.0},
      {4, "exponential bias/MSE table", table1, 120.0},
      {5, "bias/MSE patterns across families", tables23_pattern, 0.0},
      {6, "asymptotic normality", asymptotic_normality, 0.0},
      {7, "variance oracle", variance_oracle, 0.0},
      {8, "CI coverage", ci_coverage, 0.0},
      {9, "simulate determinism", determinism, 0.0},
      {10, "CLI describe fixture", cli_fixture, 0.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (c.budget_seconds > 0.0 && secs >= c.budget_seconds) {
      o.pass = false;
      o.detail += fmt(" [over the %.0f s budget]", c.budget_seconds);
    }
    failed += !o.pass;
    std::printf("%s %d %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
