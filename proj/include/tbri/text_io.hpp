#pragma once

#include <cstdio>
#include <filesystem>
#include <string>

namespace tbri {

/// Shortest exact decimal for a double: 17 significant digits round-trip.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace tbri
