#include <doctest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <sstream>

#include "kign/csv.hpp"

using namespace kign;

TEST_SUITE("csv") {

TEST_CASE("format_double round-trips") {
  for (double v : {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0}) {
    CHECK(std::stod(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(std::numeric_limits<double>::quiet_NaN()) == "nan");
}

TEST_CASE("writer emits header and rows") {
  std::ostringstream os;
  CsvWriter w(os, {"t", "x", "label"});
  w.cell(0.25).cell(3LL).cell("a");
  w.end_row();
  CHECK(os.str() == "t,x,label\n0.25,3,a\n");
}

TEST_CASE("writer rejects ragged rows") {
  std::ostringstream os;
  CsvWriter w(os, {"a", "b"});
  w.cell(1.0);
  CHECK_THROWS_AS(w.end_row(), std::logic_error);
  w.cell(2.0);
  CHECK_THROWS_AS(w.cell(3.0), std::logic_error);
}

}
