#pragma once

#include <cstdio>
#include <string>

namespace gmeef {

// Nine significant digits, '.' separator regardless of locale ("%g" under
// the C locale, which the library never changes).
inline std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace gmeef
