#include "kign/csv.hpp"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace kign {

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header)
    : out_(out), columns_(header.size()) {
  for (auto h : header) cell(h);
  end_row();
}

void CsvWriter::sep() {
  if (filled_ == columns_) throw std::logic_error("CsvWriter: too many cells in row");
  if (filled_ > 0) out_ << ',';
  ++filled_;
}

CsvWriter& CsvWriter::cell(double v) {
  sep();
  out_ << format_double(v);
  return *this;
}

CsvWriter& CsvWriter::cell(long long v) {
  sep();
  out_ << v;
  return *this;
}

CsvWriter& CsvWriter::cell(std::string_view v) {
  sep();
  out_ << v;
  return *this;
}

void CsvWriter::end_row() {
  if (filled_ != columns_) throw std::logic_error("CsvWriter: row has missing cells");
  out_ << '\n';
  filled_ = 0;
}

}  // namespace kign
