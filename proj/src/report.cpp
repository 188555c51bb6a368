#include "gim/report.hpp"

namespace gim {

ReportRow report(const IncomeSample& s, std::string label, const ReportOptions& options) {
  if (options.orders.empty()) {
    throw Error(ErrorCode::InvalidParameter, "report needs at least one order v");
  }
  ReportRow row;
  row.label = std::move(label);
  row.n = s.size();
  row.gini = gini_ustat(s);
  for (int order : options.orders) {
    const Order v(order);
    const auto est = gim_ustat(s, v);
    auto ve = options.se_method == VarianceMethod::PluginPaper
                  ? var_gim_paper(s, v)
                  : var_gim_jackknife(s, v, EstimatorKind::UStatistic, options.threads);
    ve = confidence_interval(est.value, ve, options.ci_level);
    row.gim.push_back(GimInterval{order, est.value, ve.std_error, *ve.ci_low, *ve.ci_high, ve.method});
  }
  return row;
}

}  // namespace gim
