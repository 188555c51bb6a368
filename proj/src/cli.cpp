#include "gim/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "gim/csv_input.hpp"
#include "gim/density.hpp"
#include "gim/describe.hpp"
#include "gim/format.hpp"
#include "gim/random.hpp"
#include "gim/report.hpp"
#include "gim/simulation.hpp"

namespace gim::cli {

namespace {

struct InputOptions {
  std::vector<std::string> inputs;
  std::vector<std::string> labels;
  std::string column;
  std::string delimiter = ",";
  bool no_header = false;
};

void add_input_options(CLI::App* cmd, InputOptions& o, bool many) {
  auto* opt = cmd->add_option("--input", o.inputs, "CSV file with one income per row")->required();
  if (!many) opt->expected(1);
  cmd->add_option("--column", o.column, "Column name, or 1-based column number");
  cmd->add_option("--delimiter", o.delimiter, "Field delimiter")->check([](const std::string& d) {
    return d.size() == 1 ? std::string() : std::string("delimiter must be one character");
  });
  cmd->add_flag("--no-header", o.no_header, "The file has no header row");
  if (many) cmd->add_option("--label", o.labels, "Row label per input (defaults to the file stem)");
}

struct Dataset {
  std::string label;
  IncomeSample sample;
};

std::vector<Dataset> load(const InputOptions& o, std::ostream& err) {
  std::vector<Dataset> out;
  for (std::size_t i = 0; i < o.inputs.size(); ++i) {
    const std::filesystem::path path = o.inputs[i];
    auto r = ingest_csv(path, CsvOptions{o.column, o.delimiter[0], !o.no_header});
    if (r.skipped_blank > 0) {
      err << "warning: skipped " << r.skipped_blank << " blank cell(s) in " << path.string() << '\n';
    }
    std::string label = i < o.labels.size() ? o.labels[i] : path.stem().string();
    out.push_back(Dataset{std::move(label), std::move(r.sample)});
  }
  return out;
}

// Writes to --out when given, otherwise to `out`.
void deliver(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw Error(ErrorCode::FileNotFound, "cannot write " + path);
  file << text;
}

std::string table(const std::vector<std::vector<std::string>>& rows, bool csv) {
  std::ostringstream s;
  if (csv) {
    for (const auto& r : rows) {
      for (std::size_t i = 0; i < r.size(); ++i) s << (i ? "," : "") << r[i];
      s << '\n';
    }
    return s.str();
  }
  for (std::size_t k = 0; k < rows.size(); ++k) {
    s << '|';
    for (const auto& c : rows[k]) s << ' ' << c << " |";
    s << '\n';
    if (k == 0) {
      s << '|';
      for (std::size_t i = 0; i < rows[k].size(); ++i) s << (i == 0 ? "---|" : "---:|");
      s << '\n';
    }
  }
  return s.str();
}

std::string opt_fixed(const std::optional<double>& x, int decimals) {
  return x ? fixed(*x, decimals) : "NA";
}

std::string describe_table(const std::vector<Dataset>& data, bool csv) {
  std::vector<std::vector<std::string>> rows(9);
  rows[0] = {"statistic"};
  const char* names[] = {"n", "Mean", "SD", "Min", "Max", "Range", "Skewness", "Kurtosis"};
  for (int i = 0; i < 8; ++i) rows[static_cast<std::size_t>(i + 1)] = {names[i]};
  for (const auto& d : data) {
    const auto st = describe(d.sample);
    rows[0].push_back(d.label);
    rows[1].push_back(std::to_string(st.n));
    rows[2].push_back(fixed(st.mean, 2));
    rows[3].push_back(opt_fixed(st.sd, 2));
    rows[4].push_back(fixed(st.min, 2));
    rows[5].push_back(fixed(st.max, 2));
    rows[6].push_back(fixed(st.range, 2));
    rows[7].push_back(opt_fixed(st.skewness, 2));
    rows[8].push_back(opt_fixed(st.kurtosis, 2));
  }
  return table(rows, csv);
}

std::string report_table(const std::vector<ReportRow>& rows, bool csv) {
  std::vector<std::vector<std::string>> cells;
  cells.push_back({"label", "n", "gini", "v", "gim", "se", "ci_low", "ci_high", "se_method"});
  for (const auto& r : rows) {
    for (const auto& g : r.gim) {
      cells.push_back({r.label, std::to_string(r.n), fixed(r.gini, 3), std::to_string(g.v), fixed(g.value, 3),
                       fixed(g.std_error, 4), fixed(g.ci_low, 3), fixed(g.ci_high, 3),
                       std::string(to_string(g.se_method))});
    }
  }
  return table(cells, csv);
}

bool parse_format(const std::string& f) { return f == "csv"; }

}  // namespace

int selftest(std::uint64_t seed, int samples, std::ostream& out) {
  CounterUniform u(SeededStream{seed, 0x5e1f7e57});
  int failures = 0;
  int checks = 0;
  for (int k = 0; k < samples; ++k) {
    const auto n = 1 + static_cast<std::size_t>(u() * 12.0);
    std::vector<double> raw(n);
    for (auto& x : raw) x = std::floor(u() * 50.0) * (u() < 0.9 ? 1.0 : 0.0) + u();
    const auto s = make_sample(raw);
    for (int v = 1; v <= static_cast<int>(n); ++v) {
      const Order order(v);
      const auto fast = gim_ustat(s, order);
      const auto slow = gim_ustat_naive(s, order);
      const auto m = enumerate_moments(s, order);
      ++checks;
      const bool ok = std::fabs(fast.value - slow.value) <= 1e-10 &&
                      std::fabs(max_moment_u(s, order) - m.max_moment) <= 1e-10 * std::max(1.0, m.max_moment) &&
                      std::fabs(min_moment_u(s, order) - m.min_moment) <= 1e-10 * std::max(1.0, m.min_moment);
      if (!ok) {
        ++failures;
        out << "FAIL oracle n=" << n << " v=" << v << " fast=" << fast.value << " naive=" << slow.value << '\n';
      }
    }
    if (n >= 2) {
      ++checks;
      const double identity = std::fabs(gim_ustat(s, Order(2)).value - gmd(s) / (2.0 * s.mean()));
      if (identity > 1e-12) {
        ++failures;
        out << "FAIL gini identity n=" << n << " diff=" << identity << '\n';
      }
    }
  }
  out << (failures == 0 ? "PASS" : "FAIL") << " selftest: " << checks - failures << "/" << checks
      << " oracle checks passed\n";
  return failures;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gini-family and generalized inequality measures for income samples", "gim"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  std::string format = "md";
  std::string out_path;
  auto format_check = CLI::IsMember({"csv", "md"});

  // describe
  InputOptions describe_in;
  auto* describe_cmd = app.add_subcommand("describe", "Descriptive statistics per dataset");
  add_input_options(describe_cmd, describe_in, true);
  describe_cmd->add_option("--format", format, "csv or md")->check(format_check);
  describe_cmd->add_option("--out", out_path, "Write to a file instead of stdout");

  // report
  InputOptions report_in;
  ReportOptions report_opts;
  std::string se = "jackknife";
  auto* report_cmd = app.add_subcommand("report", "Gini index and GIM(v) with confidence intervals");
  add_input_options(report_cmd, report_in, true);
  report_cmd->add_option("--v", report_opts.orders, "Orders, comma separated")->delimiter(',');
  report_cmd->add_option("--ci", report_opts.ci_level, "Confidence level")->check(CLI::Range(0.0, 1.0));
  report_cmd->add_option("--se", se, "jackknife or plugin")->check(CLI::IsMember({"jackknife", "plugin"}));
  report_cmd->add_option("--threads", report_opts.threads, "Worker threads (0 = default)");
  report_cmd->add_option("--format", format, "csv or md")->check(format_check);
  report_cmd->add_option("--out", out_path, "Write to a file instead of stdout");

  // density
  InputOptions density_in;
  DensityOptions density_opts;
  double bandwidth = 0.0;
  std::string svg_path;
  auto* density_cmd = app.add_subcommand("density", "Histogram and kernel density data for plotting");
  add_input_options(density_cmd, density_in, false);
  density_cmd->add_option("--bins", density_opts.bins, "Number of bins / grid points")->check(CLI::PositiveNumber);
  density_cmd->add_option("--bandwidth", bandwidth, "Kernel bandwidth (default: Silverman's rule)");
  density_cmd->add_option("--svg", svg_path, "Also write an SVG plot");
  density_cmd->add_option("--threads", density_opts.threads, "Worker threads (0 = default)");
  density_cmd->add_option("--out", out_path, "CSV output path")->required();

  // simulate
  std::string config_path;
  std::size_t reps = 0;
  std::uint64_t seed = 0;
  int threads = 0;
  int decimals = 3;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo bias/MSE study of both estimators");
  sim_cmd->add_option("--config", config_path, "Grid config file");
  auto* reps_opt = sim_cmd->add_option("--reps", reps, "Replications per cell (overrides config)");
  auto* seed_opt = sim_cmd->add_option("--seed", seed, "Base seed (overrides config)");
  sim_cmd->add_option("--threads", threads, "Worker threads (0 = default)");
  sim_cmd->add_option("--decimals", decimals, "Decimals for bias/MSE columns")->check(CLI::Range(0, 17));
  std::string sim_format = "csv";
  sim_cmd->add_option("--format", sim_format, "csv (default) or md")->check(format_check);
  sim_cmd->add_option("--out", out_path, "Write to a file instead of stdout");

  // selftest
  std::uint64_t selftest_seed = 1;
  int selftest_samples = 200;
  auto* self_cmd = app.add_subcommand("selftest", "Check the fast estimators against enumeration oracles");
  self_cmd->add_option("--seed", selftest_seed, "Seed for the random samples");
  self_cmd->add_option("--samples", selftest_samples, "Number of random samples")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    const bool csv = parse_format(format);
    if (describe_cmd->parsed()) {
      deliver(describe_table(load(describe_in, err), csv), out_path, out);
    } else if (report_cmd->parsed()) {
      report_opts.se_method = se == "plugin" ? VarianceMethod::PluginPaper : VarianceMethod::Jackknife;
      std::vector<ReportRow> rows;
      for (const auto& d : load(report_in, err)) rows.push_back(report(d.sample, d.label, report_opts));
      deliver(report_table(rows, csv), out_path, out);
    } else if (density_cmd->parsed()) {
      if (density_cmd->count("--bandwidth") > 0) density_opts.bandwidth = bandwidth;
      const auto data = load(density_in, err);
      emit_density(data.front().sample, density_opts, out_path,
                   svg_path.empty() ? std::nullopt : std::optional<std::filesystem::path>(svg_path));
    } else if (sim_cmd->parsed()) {
      GridConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error(ErrorCode::FileNotFound, "cannot open " + config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        config = parse_grid_config(buf.str());
      }
      if (*reps_opt) config.replications = reps;
      if (*seed_opt) config.base_seed = seed;
      const auto results = run_grid(config.cells(), RunOptions{threads});
      deliver(emit_table(results, parse_format(sim_format) ? TableFormat::Csv : TableFormat::Markdown, decimals),
              out_path, out);
    } else if (self_cmd->parsed()) {
      return selftest(selftest_seed, selftest_samples, out) == 0 ? 0 : 1;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

}  // namespace gim::cli
