#include "tbri/text_io.hpp"

#include <fstream>
#include <sstream>

#include "tbri/errors.hpp"

namespace tbri {

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ComputationError("cannot open for writing: " + path.string());
  out << content;
  if (!out) throw ComputationError("write failed: " + path.string());
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ComputationError("cannot open for reading: " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace tbri
