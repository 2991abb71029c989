#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "latdiff/error.hpp"
#include "latdiff/output.hpp"

using namespace latdiff;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path scratch(const char* name) {
  const auto dir = fs::temp_directory_path() / "latdiff_test_output";
  fs::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_CASE("number formatting") {
  CHECK(format_number(0.0) == "0");
  CHECK(format_number(-0.0) == "0");
  CHECK(format_number(1.0 / 3.0) == "0.333333333333");
  CHECK(format_number(-2.5e-17) == "-2.5e-17");
  CHECK(format_number(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_number(42.0) == "42");
}

TEST_CASE("CSV rows") {
  const auto path = scratch("rows.csv");
  {
    CsvWriter w(path, {"a", "b", "c"});
    w.cell(1.5).cell(7).cell("x").end_row();
    w.cell(-0.0).cell(std::size_t{3}).cell(2.0 / 3.0).end_row();
    CHECK_THROWS_AS(w.end_row(), Error);
    w.cell(1.0).cell(2.0).cell(3.0);
    CHECK_THROWS_AS(w.cell(4.0), Error);
    w.end_row();
    w.close();
  }
  CHECK(slurp(path) == "a,b,c\n1.5,7,x\n0,3,0.666666666667\n1,2,3\n");
}

TEST_CASE("PGM layout") {
  const auto path = scratch("img.pgm");
  write_pgm(path, 3, 2, {0, 1, 2, 253, 254, 255});
  const auto bytes = slurp(path);
  CHECK(bytes.substr(0, 11) == "P5\n3 2\n255\n");
  REQUIRE(bytes.size() == 17);
  CHECK(static_cast<unsigned char>(bytes[11]) == 0);
  CHECK(static_cast<unsigned char>(bytes[16]) == 255);
  CHECK_THROWS_AS(write_pgm(path, 3, 3, {0}), Error);
}
