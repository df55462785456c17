#pragma once

#include <string>
#include <vector>

namespace spincycle {

// 12 significant digits, '.' decimal point, locale-independent.
std::string format_number(double v);

// Minimal CSV emitter: header row, LF line endings, deterministic output.
class CsvWriter {
 public:
  explicit CsvWriter(std::vector<std::string> columns);

  void add_row(std::vector<std::string> cells);  // throws on column mismatch

  std::string str() const;
  void write(const std::string& path) const;  // throws std::runtime_error on I/O failure

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace spincycle
