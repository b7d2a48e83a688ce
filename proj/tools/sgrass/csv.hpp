#pragma once

#include <filesystem>
#include <ostream>
#include <string>
#include <vector>

namespace sgrass::cli {

/// Comma-separated rows with LF endings. Doubles use 17 significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out) : out_(out) {}

  void header(const std::vector<std::string>& names);
  CsvWriter& cell(const std::string& v);
  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::size_t v) { return cell(static_cast<long long>(v)); }
  CsvWriter& cell(int v) { return cell(static_cast<long long>(v)); }
  void end_row();

 private:
  std::ostream& out_;
  bool first_ = true;
};

std::string format_double(double v);

}  // namespace sgrass::cli
