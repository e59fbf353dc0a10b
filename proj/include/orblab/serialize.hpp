#pragma once

#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace orblab {

// Shortest round-trip decimal for a double (delegates to the JSON dumper so
// CSV and JSON agree byte-for-byte).
inline std::string format_double(double v) { return nlohmann::json(v).dump(); }

// FNV-1a over the canonical (sorted-key) JSON dump; platform-independent.
inline std::string config_hash(const nlohmann::json& j) {
  const std::string s = j.dump();
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Minimal CSV table: comma-separated, header row, UTF-8, LF line endings.
class CsvTable {
 public:
  explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}
  void add_row(std::vector<std::string> row) {
    if (row.size() != header_.size())
      throw std::invalid_argument("CsvTable: row width mismatch");
    rows_.push_back(std::move(row));
  }
  std::string body() const {
    std::string out = join(header_);
    for (const auto& r : rows_) out += join(r);
    return out;
  }
  void write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("CsvTable: cannot open " + path);
    f << body();
  }

 private:
  static std::string join(const std::vector<std::string>& cells) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) line += ',';
      line += cells[i];
    }
    line += '\n';
    return line;
  }
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace orblab
