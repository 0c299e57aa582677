#pragma once

#include <cstdio>
#include <string>

namespace axisym::detail {

// Decimal text that round-trips a double.
inline std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace axisym::detail
