#include "gim/simulation.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gim/format.hpp"
#include "gim/kernels.hpp"
#include "gim/summation.hpp"

namespace gim {

EstimatorSummary summarize(std::span<const double> estimates, double truth) {
  const std::size_t count = estimates.size();
  if (count == 0) {
    throw Error(ErrorCode::InvalidParameter, "no estimates to summarize");
  }
  const double r = static_cast<double>(count);
  CompensatedSum dev, sq;
  for (double e : estimates) {
    const double d = e - truth;
    dev += d;
    sq += d * d;
  }
  EstimatorSummary out;
  out.bias = dev.value() / r;
  out.mse = sq.value() / r;
  if (count > 1) {
    CompensatedSum var_est, var_sq;
    for (double e : estimates) {
      const double d = e - truth;
      var_est += (d - out.bias) * (d - out.bias);
      var_sq += (d * d - out.mse) * (d * d - out.mse);
    }
    out.mc_std_error = std::sqrt(var_est.value() / (r - 1.0) / r);
    out.mse_std_error = std::sqrt(var_sq.value() / (r - 1.0) / r);
  }
  return out;
}

SimResult run_cell(const SimCell& cell, RunOptions options) {
  if (cell.replications == 0) {
    throw Error(ErrorCode::InvalidParameter, "a cell needs at least one replication");
  }
  const Order v(cell.v);
  if (v.size() > cell.n) {
    throw Error(ErrorCode::OrderExceedsSample, "cell order exceeds its sample size");
  }
  SimResult result;
  result.cell = cell;
  result.truth = theoretical_gim(cell.dist, v);
  const auto draws = kernels::replicate(cell.dist, cell.n, v, cell.replications, cell.base_seed, options.threads);
  result.ustat = summarize(draws.ustat, result.truth);
  result.edf = summarize(draws.edf, result.truth);
  return result;
}

std::vector<SimResult> run_grid(const std::vector<SimCell>& cells, RunOptions options) {
  if (cells.empty()) {
    throw Error(ErrorCode::EmptyGrid, "simulation grid has no cells");
  }
  std::vector<SimResult> out;
  out.reserve(cells.size());
  for (const auto& cell : cells) out.push_back(run_cell(cell, options));
  return out;
}

std::vector<DistributionSpec> default_families() {
  return {DistributionSpec::exponential(1.0), DistributionSpec::pareto(3.0, 1.0),
          DistributionSpec::lognormal(0.0, 0.5)};
}

std::vector<SimCell> make_grid(const std::vector<DistributionSpec>& families, const std::vector<std::size_t>& ns,
                               const std::vector<int>& vs, std::size_t replications, std::uint64_t base_seed) {
  std::vector<SimCell> cells;
  for (const auto& d : families) {
    for (int v : vs) {
      for (std::size_t n : ns) {
        cells.push_back(SimCell{d, n, v, replications, base_seed});
      }
    }
  }
  return cells;
}

std::vector<SimCell> default_grid(std::size_t replications, std::uint64_t base_seed) {
  return make_grid(default_families(), {20, 40, 60, 80, 100, 200}, {2, 3}, replications, base_seed);
}

std::vector<SimCell> GridConfig::cells() const {
  return make_grid(families.empty() ? default_families() : families,
                   ns.empty() ? std::vector<std::size_t>{20, 40, 60, 80, 100, 200} : ns,
                   vs.empty() ? std::vector<int>{2, 3} : vs, replications, base_seed);
}

namespace {

[[noreturn]] void parse_fail(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "grid config line " + std::to_string(line) + ": " + what);
}

template <class T>
T parse_number(const std::string& token, std::size_t line) {
  std::istringstream in(token);
  T value{};
  in >> value;
  if (in.fail() || !in.eof()) parse_fail(line, "bad number '" + token + "'");
  return value;
}

DistributionSpec parse_family(const std::vector<std::string>& tokens, std::size_t line) {
  if (tokens.size() < 2) parse_fail(line, "family needs a name");
  double rate = 1.0, shape = 3.0, scale = 1.0, meanlog = 0.0, sdlog = 0.5;
  for (std::size_t i = 2; i < tokens.size(); ++i) {
    const auto eq = tokens[i].find('=');
    if (eq == std::string::npos) parse_fail(line, "expected key=value, got '" + tokens[i] + "'");
    const std::string key = tokens[i].substr(0, eq);
    const double value = parse_number<double>(tokens[i].substr(eq + 1), line);
    if (key == "rate") rate = value;
    else if (key == "shape") shape = value;
    else if (key == "scale") scale = value;
    else if (key == "meanlog") meanlog = value;
    else if (key == "sdlog") sdlog = value;
    else parse_fail(line, "unknown parameter '" + key + "'");
  }
  try {
    if (tokens[1] == "exponential") return DistributionSpec::exponential(rate);
    if (tokens[1] == "pareto") return DistributionSpec::pareto(shape, scale);
    if (tokens[1] == "lognormal") return DistributionSpec::lognormal(meanlog, sdlog);
  } catch (const Error& e) {
    parse_fail(line, e.what());
  }
  parse_fail(line, "unknown family '" + tokens[1] + "'");
}

}  // namespace

GridConfig parse_grid_config(std::string_view text) {
  GridConfig config;
  std::istringstream in{std::string(text)};
  std::string raw;
  std::size_t line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
    std::istringstream words(raw);
    std::vector<std::string> tokens;
    for (std::string t; words >> t;) tokens.push_back(t);
    if (tokens.empty()) continue;

    const std::string& key = tokens[0];
    if (key == "family") {
      config.families.push_back(parse_family(tokens, line));
    } else if (key == "n") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto n = parse_number<long long>(tokens[i], line);
        if (n < 1) parse_fail(line, "sample sizes must be positive");
        config.ns.push_back(static_cast<std::size_t>(n));
      }
    } else if (key == "v") {
      for (std::size_t i = 1; i < tokens.size(); ++i) {
        const auto v = parse_number<int>(tokens[i], line);
        if (v < 1) parse_fail(line, "orders must be >= 1");
        config.vs.push_back(v);
      }
    } else if (key == "reps") {
      if (tokens.size() != 2) parse_fail(line, "reps takes one value");
      const auto reps = parse_number<long long>(tokens[1], line);
      if (reps < 1) parse_fail(line, "reps must be positive");
      config.replications = static_cast<std::size_t>(reps);
    } else if (key == "seed") {
      if (tokens.size() != 2) parse_fail(line, "seed takes one value");
      config.base_seed = parse_number<std::uint64_t>(tokens[1], line);
    } else {
      parse_fail(line, "unknown directive '" + key + "'");
    }
  }
  return config;
}

std::string emit_table(const std::vector<SimResult>& results, TableFormat format, int decimals) {
  std::ostringstream out;
  const char* header[] = {"family", "params", "v", "n", "estimator", "bias", "mse", "mc_se", "truth"};
  if (format == TableFormat::Csv) {
    for (int i = 0; i < 9; ++i) out << (i ? "," : "") << header[i];
    out << '\n';
  } else {
    out << '|';
    for (const char* h : header) out << ' ' << h << " |";
    out << "\n|";
    for (int i = 0; i < 9; ++i) out << (i < 5 ? "---|" : "---:|");
    out << '\n';
  }
  for (const auto& r : results) {
    for (const auto* est : {&r.ustat, &r.edf}) {
      const std::string fields[] = {
          std::string(to_string(r.cell.dist.family())),
          r.cell.dist.params_string(),
          std::to_string(r.cell.v),
          std::to_string(r.cell.n),
          est == &r.ustat ? "ustat" : "edf",
          fixed(est->bias, decimals),
          fixed(est->mse, decimals),
          fixed(est->mc_std_error, decimals),
          fixed(r.truth, decimals)};
      if (format == TableFormat::Csv) {
        for (int i = 0; i < 9; ++i) out << (i ? "," : "") << fields[i];
        out << '\n';
      } else {
        out << '|';
        for (const auto& f : fields) out << ' ' << f << " |";
        out << '\n';
      }
    }
  }
  return out.str();
}

}  // namespace gim
