#include "phaseshor/format.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>

namespace phaseshor {

std::string format_significant(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

std::string format_exact(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double round_significant(double v, int digits) {
  return std::strtod(format_significant(v, digits).c_str(), nullptr);
}

}  // namespace phaseshor
