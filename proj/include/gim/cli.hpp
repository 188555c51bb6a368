#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace gim::cli {

/// Entry point of the `gim` tool. Returns the process exit code; normal
/// output goes to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Randomized oracle checks: U-statistic weights against subset enumeration
/// (n <= 12, every v <= n) and the Gini identity. Returns the failure count.
int selftest(std::uint64_t seed, int samples, std::ostream& out);

}  // namespace gim::cli
