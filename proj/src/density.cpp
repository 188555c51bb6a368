#include "gim/density.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include "gim/describe.hpp"
#include "gim/kernels.hpp"

namespace gim {

namespace {

// Linear-interpolation quantile of sorted data (type 7).
double sorted_quantile(std::span<const double> x, double p) {
  const double pos = p * static_cast<double>(x.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, x.size() - 1);
  return x[lo] + (pos - static_cast<double>(lo)) * (x[hi] - x[lo]);
}

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

}  // namespace

double silverman_bandwidth(const IncomeSample& s) {
  if (s.size() < 2) return 0.0;
  const double sd = describe(s).sd.value_or(0.0);
  const double iqr = sorted_quantile(s.values(), 0.75) - sorted_quantile(s.values(), 0.25);
  const double spread = iqr > 0.0 ? std::min(sd, iqr / 1.34) : sd;
  return 0.9 * spread * std::pow(static_cast<double>(s.size()), -0.2);
}

DensityTable density_table(const IncomeSample& s, const DensityOptions& options) {
  if (options.bins == 0) {
    throw Error(ErrorCode::InvalidParameter, "density needs at least one bin");
  }
  const double h = options.bandwidth.value_or(silverman_bandwidth(s));
  if (!(h > 0.0) || !std::isfinite(h)) {
    throw Error(ErrorCode::InvalidBandwidth, "bandwidth must be positive; the sample may have no spread");
  }

  DensityTable t;
  t.bandwidth = h;
  const std::size_t bins = options.bins;
  double lo = s.min();
  double hi = s.max();
  if (hi == lo) {
    lo -= h;
    hi += h;
  }
  const double width = (hi - lo) / static_cast<double>(bins);
  for (std::size_t b = 0; b < bins; ++b) {
    t.bin_low.push_back(lo + width * static_cast<double>(b));
    t.bin_high.push_back(b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1));
    t.midpoint.push_back(0.5 * (t.bin_low.back() + t.bin_high.back()));
  }
  t.count.assign(bins, 0);
  for (double x : s.values()) {
    auto b = static_cast<std::size_t>((x - lo) / width);
    t.count[std::min(b, bins - 1)] += 1;
  }
  const double n = static_cast<double>(s.size());
  for (std::size_t b = 0; b < bins; ++b) {
    t.hist_density.push_back(static_cast<double>(t.count[b]) / (n * width));
  }
  t.kde = kernels::kde(s.values(), t.midpoint, h, options.threads);
  return t;
}

void write_density_csv(const DensityTable& t, std::ostream& out) {
  out << "bin_low,bin_high,midpoint,count,hist_density,kde_density\n";
  for (std::size_t b = 0; b < t.count.size(); ++b) {
    out << num(t.bin_low[b]) << ',' << num(t.bin_high[b]) << ',' << num(t.midpoint[b]) << ',' << t.count[b] << ','
        << num(t.hist_density[b]) << ',' << num(t.kde[b]) << '\n';
  }
}

void write_density_svg(const DensityTable& t, std::ostream& out, const std::string& title) {
  constexpr double W = 640, H = 400, pad = 40;
  const double x0 = t.bin_low.front();
  const double x1 = t.bin_high.back();
  double ymax = 0.0;
  for (std::size_t b = 0; b < t.count.size(); ++b) ymax = std::max({ymax, t.hist_density[b], t.kde[b]});
  if (ymax <= 0.0) ymax = 1.0;
  auto sx = [&](double x) { return pad + (x - x0) / (x1 - x0) * (W - 2 * pad); };
  auto sy = [&](double y) { return H - pad - y / ymax * (H - 2 * pad); };

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  out << "<text x=\"" << W / 2 << "\" y=\"20\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
      << "</text>\n";
  for (std::size_t b = 0; b < t.count.size(); ++b) {
    const double top = sy(t.hist_density[b]);
    out << "<rect x=\"" << num(sx(t.bin_low[b])) << "\" y=\"" << num(top) << "\" width=\""
        << num(sx(t.bin_high[b]) - sx(t.bin_low[b])) << "\" height=\"" << num(H - pad - top)
        << "\" fill=\"#c6dbef\" stroke=\"#6baed6\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#08519c\" stroke-width=\"2\" points=\"";
  for (std::size_t b = 0; b < t.count.size(); ++b) {
    out << (b ? " " : "") << num(sx(t.midpoint[b])) << ',' << num(sy(t.kde[b]));
  }
  out << "\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad << "\" y2=\"" << H - pad
      << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << pad << "\" y=\"" << H - 10 << "\" font-family=\"sans-serif\" font-size=\"11\">"
      << num(x0) << "</text>\n";
  out << "<text x=\"" << W - pad << "\" y=\"" << H - 10
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(x1) << "</text>\n";
  out << "</svg>\n";
}

void emit_density(const IncomeSample& s, const DensityOptions& options, const std::filesystem::path& csv_path,
                  const std::optional<std::filesystem::path>& svg_path) {
  const auto table = density_table(s, options);
  std::ofstream csv(csv_path);
  if (!csv) throw Error(ErrorCode::FileNotFound, "cannot write " + csv_path.string());
  write_density_csv(table, csv);
  if (svg_path) {
    std::ofstream svg(*svg_path);
    if (!svg) throw Error(ErrorCode::FileNotFound, "cannot write " + svg_path->string());
    write_density_svg(table, svg, csv_path.stem().string());
  }
}

}  // namespace gim
