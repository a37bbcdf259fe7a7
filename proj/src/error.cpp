#include "cottonlab/error.hpp"

#include <cstdio>

namespace cottonlab {

std::string format_point(const std::array<double, 3>& p) {
  char buf[128];
  std::snprintf(buf, sizeof buf, "(%.17g, %.17g, %.17g)", p[0], p[1], p[2]);
  return buf;
}

std::string format_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

}  // namespace cottonlab
