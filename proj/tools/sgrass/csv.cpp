#include "sgrass/csv.hpp"

#include <cmath>

#include <fmt/format.h>

namespace sgrass::cli {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

void CsvWriter::header(const std::vector<std::string>& names) {
  for (const auto& n : names) cell(n);
  end_row();
}

CsvWriter& CsvWriter::cell(const std::string& v) {
  if (!first_) out_ << ',';
  out_ << v;
  first_ = false;
  return *this;
}

CsvWriter& CsvWriter::cell(double v) { return cell(format_double(v)); }

CsvWriter& CsvWriter::cell(long long v) { return cell(fmt::format("{}", v)); }

void CsvWriter::end_row() {
  out_ << '\n';
  first_ = true;
}

}  // namespace sgrass::cli
