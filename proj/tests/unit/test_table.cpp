#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "masr/common/error.hpp"
#include "masr/dse/report.hpp"
#include "masr/dse/table.hpp"

using namespace masr;
using namespace masr::dse;

namespace {

Table sample() {
  Table t;
  t.name = "sample";
  t.columns = {"id", "n", "x", "note"};
  t.add_row({std::string("h32v02p02-q1-b1-none"), std::int64_t{42}, 0.1, std::monostate{}});
  t.add_row({std::string("with, comma \"quoted\""), std::int64_t{-3}, 3.0, std::string("")});
  t.add_row({std::string("x"), std::monostate{}, 1e-300, std::string("z")});
  return t;
}

}  // namespace

TEST_SUITE("table") {
  TEST_CASE("cells print shortest round-trip text") {
    CHECK(format_cell(Cell{0.1}) == "0.1");
    CHECK(format_cell(Cell{3.0}) == "3.0");
    CHECK(format_cell(Cell{std::int64_t{7}}) == "7");
    CHECK(format_cell(Cell{}) == "");
  }

  TEST_CASE("csv and json round trip") {
    const Table t = sample();
    std::stringstream c;
    write_csv(t, c);
    CHECK(c.str().rfind("# masr-report schema=1 table=sample\n", 0) == 0);
    CHECK(read_csv(c) == t);
    std::stringstream j;
    write_json(t, j);
    CHECK(read_json(j) == t);
  }

  TEST_CASE("empty tables keep their header") {
    Table t;
    t.name = "fig9-left";
    t.columns = {"banks", "category", "fraction"};
    std::stringstream c;
    write_csv(t, c);
    CHECK(c.str() == "# masr-report schema=1 table=fig9-left\nbanks,category,fraction\n");
    CHECK(read_csv(c) == t);
    CHECK(bank_table({}).columns == t.columns);
  }

  TEST_CASE("files") {
    const auto dir = std::filesystem::temp_directory_path() / "masr_table_test";
    std::filesystem::remove_all(dir);
    const Table t = sample();
    for (auto f : {ReportFormat::csv, ReportFormat::json}) {
      const auto p = write_table(t, dir, f);
      CHECK(p.extension().string() == std::string(extension(f)));
      CHECK(read_table(p) == t);
    }
    std::filesystem::remove_all(dir);
    CHECK_THROWS_AS((void)read_table(dir / "nope.csv"), IoError);
    CHECK_THROWS_AS((void)parse_report_format("xml"), ConfigError);
  }

  TEST_CASE("row width is checked") {
    Table t;
    t.columns = {"a"};
    CHECK_THROWS_AS(t.add_row({std::int64_t{1}, std::int64_t{2}}), ParameterError);
  }
}
