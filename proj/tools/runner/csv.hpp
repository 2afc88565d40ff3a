#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

#include <fmt/format.h>

namespace waveguard::runner {

/// Round-trip decimal form used in every CSV cell.
inline std::string fmt_double(double x) { return fmt::format("{:.17g}", x); }

class CsvWriter {
 public:
  CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header) : out_(path) {
    if (!out_) throw std::runtime_error("cannot open " + path.string() + " for writing");
    cells(header);
  }

  void row(std::initializer_list<double> values) {
    std::string line;
    for (double v : values) {
      if (!line.empty()) line += ',';
      line += fmt_double(v);
    }
    out_ << line << '\n';
  }

  void cells(const std::vector<std::string>& values) {
    std::string line;
    for (const auto& v : values) {
      if (!line.empty()) line += ',';
      line += quote(v);
    }
    out_ << line << '\n';
  }

 private:
  static std::string quote(std::string_view v) {
    if (v.find_first_of(",\"\n") == std::string_view::npos) return std::string(v);
    std::string q = "\"";
    for (char c : v) {
      if (c == '"') q += '"';
      q += c;
    }
    return q + '"';
  }

  std::ofstream out_;
};

}  // namespace waveguard::runner
