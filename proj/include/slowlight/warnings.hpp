#pragma once

#include <functional>
#include <iostream>
#include <string>

namespace slowlight {

// Non-fatal diagnostics (precondition soft limits). Replaceable so tests and
// batch runs can capture or silence them.
inline std::function<void(const std::string&)>& warning_sink() {
  static std::function<void(const std::string&)> sink =
      [](const std::string& msg) { std::cerr << "warning: " << msg << "\n"; };
  return sink;
}

inline void warn(const std::string& msg) { warning_sink()(msg); }

} // namespace slowlight
