#pragma once

#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace kign {

// 17 significant digits, '.' decimal point regardless of the global locale.
std::string format_double(double v);

class CsvWriter {
 public:
  CsvWriter(std::ostream& out, std::initializer_list<std::string_view> header);

  CsvWriter& cell(double v);
  CsvWriter& cell(long long v);
  CsvWriter& cell(std::string_view v);
  void end_row();

 private:
  void sep();
  std::ostream& out_;
  std::size_t columns_;
  std::size_t filled_ = 0;
};

}  // namespace kign
