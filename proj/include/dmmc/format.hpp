#pragma once

#include <cstdio>
#include <optional>
#include <string>

namespace dmmc {

/// Fixed-point rendering with a locale-independent '.' separator.
inline std::string format_fixed(double value, int digits = 6) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, value);
  return buf;
}

inline std::string format_fixed(const std::optional<double>& value, int digits = 6) {
  return value ? format_fixed(*value, digits) : std::string("NA");
}

}  // namespace dmmc
