#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "gim/distributions.hpp"
#include "gim/error.hpp"
#include "gim/kernels.hpp"
#include "gim/measures.hpp"
#include "gim/simulation.hpp"
#include "support.hpp"

using namespace gim;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected gim::Error");
  return ErrorCode::EmptySample;
}

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

bool same_bits(const EstimatorSummary& a, const EstimatorSummary& b) {
  return same_bits(a.bias, b.bias) && same_bits(a.mse, b.mse) && same_bits(a.mc_std_error, b.mc_std_error) &&
         same_bits(a.mse_std_error, b.mse_std_error);
}

}  // namespace

TEST_CASE("summarize") {
  const std::vector<double> est{1.0, 2.0, 3.0};
  const auto s = summarize(est, 2.0);
  CHECK(s.bias == doctest::Approx(0.0));
  CHECK(s.mse == doctest::Approx(2.0 / 3.0));
  CHECK(s.mc_std_error == doctest::Approx(1.0 / std::sqrt(3.0)));

  const auto shifted = summarize(est, 1.5);
  CHECK(shifted.bias == doctest::Approx(0.5));
  // mse = population variance + bias^2.
  CHECK(shifted.mse == doctest::Approx(2.0 / 3.0 + 0.25));
  CHECK(shifted.mse >= shifted.bias * shifted.bias - 4.0 * shifted.mc_std_error);

  CHECK(code_of([] { (void)summarize(std::vector<double>{}, 0.0); }) == ErrorCode::InvalidParameter);
}

TEST_CASE("a single replication reproduces its own estimate") {
  for (const auto& d : default_families()) {
    const SimCell cell{d, 30, 3, 1, 4242};
    const auto r = run_cell(cell);
    const auto s = sample(d, 30, {4242, 1});
    const double u = gim_ustat(s, Order(3)).value;
    const double e = gim_edf(s, Order(3)).value;
    CHECK(r.truth == theoretical_gim(d, Order(3)));
    CHECK(r.ustat.bias == u - r.truth);
    CHECK(r.ustat.mse == (u - r.truth) * (u - r.truth));
    CHECK(r.edf.bias == e - r.truth);
    CHECK(r.edf.mse == (e - r.truth) * (e - r.truth));
  }
}

TEST_CASE("cell validation") {
  CHECK(code_of([] { (void)run_cell(SimCell{DistributionSpec::exponential(1.0), 5, 6, 10, 1}); }) ==
        ErrorCode::OrderExceedsSample);
  CHECK(code_of([] { (void)run_cell(SimCell{DistributionSpec::exponential(1.0), 5, 2, 0, 1}); }) ==
        ErrorCode::InvalidParameter);
  CHECK(code_of([] { (void)run_grid({}); }) == ErrorCode::EmptyGrid);
}

TEST_CASE("default grid has 36 cells ordered by family, v, n") {
  const auto grid = default_grid();
  REQUIRE(grid.size() == 36);
  CHECK(grid.front().dist == DistributionSpec::exponential(1.0));
  CHECK(grid.front().n == 20);
  CHECK(grid.front().v == 2);
  CHECK(grid[5].n == 200);
  CHECK(grid[6].v == 3);
  CHECK(grid.back().dist == DistributionSpec::lognormal(0.0, 0.5));
  CHECK(grid.back().replications == 10'000);
}

TEST_CASE("parallel and serial replication kernels agree bit for bit") {
  for (const auto& d : default_families()) {
    const auto serial = kernels::replicate_serial(d, 40, Order(2), 500, 99);
    for (int threads : {1, 2, 8}) {
      const auto par = kernels::replicate(d, 40, Order(2), 500, 99, threads);
      REQUIRE(par.ustat.size() == serial.ustat.size());
      for (std::size_t i = 0; i < par.ustat.size(); ++i) {
        CHECK(same_bits(par.ustat[i], serial.ustat[i]));
        CHECK(same_bits(par.edf[i], serial.edf[i]));
      }
    }
  }
}

TEST_CASE("run_cell does not depend on the worker count") {
  const SimCell cell{DistributionSpec::pareto(3.0, 1.0), 60, 3, 2000, 8};
  const auto one = run_cell(cell, {1});
  const auto eight = run_cell(cell, {8});
  CHECK(same_bits(one.ustat, eight.ustat));
  CHECK(same_bits(one.edf, eight.edf));
  CHECK(emit_table({one}, TableFormat::Csv) == emit_table({eight}, TableFormat::Csv));
}

TEST_CASE("exponential bias and MSE at n=20 and n=200") {
  const auto d = DistributionSpec::exponential(1.0);
  const auto small = run_cell({d, 20, 2, 10'000, 20240101});
  CHECK(std::fabs(small.ustat.bias) < 0.005);
  CHECK(small.ustat.mse == doctest::Approx(0.004).epsilon(0.25));
  CHECK(small.edf.bias == doctest::Approx(0.025).epsilon(0.2));
  CHECK(small.edf.mse == doctest::Approx(0.004).epsilon(0.25));

  const auto big = run_cell({d, 200, 3, 10'000, 20240101});
  CHECK(std::fabs(big.ustat.bias) <= 0.002);
  CHECK(std::fabs(big.edf.bias) <= 0.002);
  CHECK(big.ustat.mse <= 0.001);
  CHECK(big.edf.mse <= 0.001);
}

TEST_CASE("exponential v=2 bias pattern along n") {
  const auto d = DistributionSpec::exponential(1.0);
  for (std::size_t n : {20u, 40u, 60u, 80u, 100u, 200u}) {
    const auto r = run_cell({d, n, 2, 10'000, 20240101});
    CHECK(std::fabs(r.ustat.bias) <= 0.005);
    CHECK(r.edf.bias > 0.0);
    // Per sample, EDF = U (n-1)/n + 1/n at v = 2, so the averages obey the
    // same identity and the EDF bias is (1 - truth)/n plus a shrunken U bias.
    const double nd = static_cast<double>(n);
    CHECK(r.edf.bias == doctest::Approx(r.ustat.bias * (nd - 1.0) / nd + (1.0 - r.truth) / nd).epsilon(1e-9));
    if (n >= 100) CHECK(r.edf.bias <= 0.005 + 2.0 * r.edf.mc_std_error);
  }
}

TEST_CASE("grid config parsing") {
  const auto cfg = parse_grid_config(
      "# comment line\n"
      "family exponential rate=2\n"
      "family pareto shape=2.5 scale=3   # trailing comment\n"
      "family lognormal sdlog=0.7\n"
      "\n"
      "n 10 20 40\n"
      "v 2\n"
      "reps 123\n"
      "seed 9\n");
  REQUIRE(cfg.families.size() == 3);
  CHECK(cfg.families[0] == DistributionSpec::exponential(2.0));
  CHECK(cfg.families[1] == DistributionSpec::pareto(2.5, 3.0));
  CHECK(cfg.families[2] == DistributionSpec::lognormal(0.0, 0.7));
  CHECK(cfg.ns == std::vector<std::size_t>{10, 20, 40});
  CHECK(cfg.vs == std::vector<int>{2});
  CHECK(cfg.replications == 123);
  CHECK(cfg.base_seed == 9);
  CHECK(cfg.cells().size() == 9);

  const auto empty = parse_grid_config("");
  CHECK(empty.cells().size() == 36);

  auto line_of = [](const char* text) {
    try {
      (void)parse_grid_config(text);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ParseError);
      return std::string(e.what());
    }
    return std::string("no error");
  };
  CHECK(line_of("n 10\nfamily weibull\n").find("line 2") != std::string::npos);
  CHECK(line_of("reps 0\n").find("line 1") != std::string::npos);
  CHECK(line_of("v 2\n\nn ten\n").find("line 3") != std::string::npos);
  CHECK(line_of("family pareto shape=0.5\n").find("line 1") != std::string::npos);
  CHECK(line_of("colour blue\n").find("unknown directive") != std::string::npos);
}

TEST_CASE("emit_table") {
  const auto results = run_grid(make_grid({DistributionSpec::exponential(1.0)}, {10, 20}, {2}, 50, 1));
  const auto csv = emit_table(results, TableFormat::Csv);
  CHECK(csv.rfind("family,params,v,n,estimator,bias,mse,mc_se,truth\n", 0) == 0);
  std::size_t lines = 0;
  for (char c : csv) lines += c == '\n';
  CHECK(lines == 1 + 2 * results.size());
  CHECK(csv.find("exponential,rate=1,2,10,ustat,") != std::string::npos);
  CHECK(csv.find("exponential,rate=1,2,20,edf,") != std::string::npos);
  CHECK(csv.find(",0.500\n") != std::string::npos);

  const auto md = emit_table(results, TableFormat::Markdown, 4);
  CHECK(md.rfind("| family | params |", 0) == 0);
  CHECK(md.find("| 0.5000 |") != std::string::npos);

  CHECK(emit_table(results, TableFormat::Csv) == emit_table(run_grid(make_grid({DistributionSpec::exponential(1.0)},
                                                                               {10, 20}, {2}, 50, 1)),
                                                            TableFormat::Csv));
}
