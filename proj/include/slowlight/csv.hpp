#pragma once

#include <charconv>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace slowlight {

inline std::string format_number(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, ptr);
}

/// Writes content atomically: temp file in the same directory, then rename.
inline void write_file_atomic(const std::filesystem::path& path,
                              const std::string& content) {
  std::filesystem::create_directories(path.parent_path().empty()
                                          ? "."
                                          : path.parent_path());
  const std::filesystem::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + tmp.string() + "'");
    out << content;
  }
  std::filesystem::rename(tmp, path);
}

inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& columns,
                      const std::vector<std::vector<double>>& rows) {
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (i) out += ',';
    out += columns[i];
  }
  out += '\n';
  for (const auto& row : rows) {
    if (row.size() != columns.size())
      throw std::invalid_argument("csv row width mismatch");
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) out += ',';
      out += format_number(row[i]);
    }
    out += '\n';
  }
  write_file_atomic(path, out);
}

} // namespace slowlight
