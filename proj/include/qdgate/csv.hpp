#pragma once

#include <string>
#include <vector>

namespace qdgate {

// Shortest round-trip decimal representation of a double (via
// std::to_chars), so that repeated runs produce byte-identical files.
std::string format_double(double v);

// Minimal CSV emitter: '#'-prefixed comment block, one header row, data rows.
class CsvWriter {
 public:
  void comment(const std::string& line);
  void header(const std::vector<std::string>& columns);
  void row(const std::vector<std::string>& cells);
  void row_numeric(const std::vector<double>& cells);

  const std::string& str() const { return buf_; }
  void write_file(const std::string& path) const;

 private:
  std::string buf_;
};

}  // namespace qdgate
