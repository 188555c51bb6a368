#pragma once

#include <cstdio>
#include <string>

namespace gim {

/// Fixed-point rendering that never prints a negative zero ("-0.00").
inline std::string fixed(double x, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, x);
  std::string s(buf);
  if (!s.empty() && s.front() == '-' && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

}  // namespace gim
