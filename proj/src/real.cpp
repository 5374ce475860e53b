#include "qpavg/real.hpp"

#include <charconv>
#include <cstdio>
#include <string>

#include "qpavg/errors.hpp"

namespace qpavg {

template <>
double parse_real<double>(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '+')) text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    throw ConfigError("invalid decimal literal: '" + std::string(text) + "'");
  }
  return value;
}

std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string format_real(const DD& x, int digits) { return to_string(x, digits); }

}  // namespace qpavg
