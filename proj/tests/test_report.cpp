#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "banachlab/report.hpp"
#include "banachlab/schlumprecht.hpp"
#include "banachlab/seq_vector.hpp"
#include "doctest.h"

using namespace banachlab;

namespace {

ExperimentReport sample_report() {
  ExperimentReport r;
  r.name = "sample";
  r.columns = {"n", "label", "value"};
  r.add_row({1.0, std::string("plain"), 2.0 / 3.0});
  r.add_row({2.0, std::string("with, comma"), 1e-20});
  r.add_row({3.0, std::string("quote \"x\" and space"), -12345.678901234});
  r.metadata["seed"] = 7;
  r.metadata["tolerance"] = 1e-9;
  return r;
}

void check_same_cells(const ExperimentReport& a, const ExperimentReport& b) {
  REQUIRE(a.columns == b.columns);
  REQUIRE(a.rows.size() == b.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    REQUIRE(a.rows[i].size() == b.rows[i].size());
    for (std::size_t j = 0; j < a.rows[i].size(); ++j) {
      if (const auto* d = std::get_if<double>(&a.rows[i][j])) {
        REQUIRE(std::holds_alternative<double>(b.rows[i][j]));
        CHECK(round_to_printed(*d) == std::get<double>(b.rows[i][j]));
      } else {
        CHECK(std::get<std::string>(a.rows[i][j]) == std::get<std::string>(b.rows[i][j]));
      }
    }
  }
}

std::size_t line_count(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("csv has a header and one line per row") {
  const auto table = summing_norm_table(3, GaugeFunction::log2p1());
  const auto csv = to_csv(table);
  CHECK(line_count(csv) == 4);
  CHECK(csv.rfind("n,dp_value", 0) == 0);
}

TEST_CASE("csv round trip at printed precision") {
  const auto r = sample_report();
  const auto parsed = parse_csv(to_csv(r));
  check_same_cells(r, parsed);
  CHECK(to_csv(parsed) == to_csv(r));
}

TEST_CASE("json round trip keeps metadata") {
  const auto r = sample_report();
  const auto parsed = parse_json(to_json(r));
  check_same_cells(r, parsed);
  CHECK(parsed.name == r.name);
  CHECK(parsed.metadata == r.metadata);
  CHECK(to_json(parsed) == to_json(r));
}

TEST_CASE("plotdata round trip and layout") {
  const auto r = sample_report();
  const auto text = to_plotdata(r);
  CHECK(text.front() == '#');
  check_same_cells(r, parse_plotdata(text));
}

TEST_CASE("emit_report writes files and reports unwritable paths") {
  const auto dir = std::filesystem::temp_directory_path() / "banachlab_report_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "out.csv").string();
  emit_report(sample_report(), ReportFormat::kCsv, path);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == to_csv(sample_report()));
  CHECK_THROWS_AS(emit_report(sample_report(), ReportFormat::kCsv, (dir / "missing" / "x.csv").string()),
                  std::ios_base::failure);
  std::filesystem::remove_all(dir);
}

TEST_CASE("format names") {
  CHECK(parse_report_format("csv") == ReportFormat::kCsv);
  CHECK(parse_report_format("json") == ReportFormat::kJson);
  CHECK(parse_report_format("plotdata") == ReportFormat::kPlotData);
  CHECK_THROWS(parse_report_format("xml"));
}
