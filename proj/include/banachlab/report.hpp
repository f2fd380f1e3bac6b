#ifndef BANACHLAB_REPORT_HPP
#define BANACHLAB_REPORT_HPP

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "json.hpp"

namespace banachlab {

using Cell = std::variant<double, std::string>;

// Tabular experiment output. Metadata carries the config echo, seed and the
// tolerances actually used; it is emitted in JSON only so CSV stays byte-stable.
struct ExperimentReport {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
  nlohmann::ordered_json metadata = nlohmann::ordered_json::object();

  void add_row(std::vector<Cell> row);
  std::size_t column_index(std::string_view column) const;
  double number(std::size_t row, std::string_view column) const;
  const std::string& text(std::size_t row, std::string_view column) const;
};

enum class ReportFormat { kCsv, kJson, kPlotData };

ReportFormat parse_report_format(std::string_view name);

std::string to_csv(const ExperimentReport& report);
std::string to_json(const ExperimentReport& report);
std::string to_plotdata(const ExperimentReport& report);
std::string render(const ExperimentReport& report, ReportFormat format);

ExperimentReport parse_csv(std::string_view text);
ExperimentReport parse_json(std::string_view text);
ExperimentReport parse_plotdata(std::string_view text);

// Writes to `path`; throws std::ios_base::failure when the file cannot be written.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path);

// Rounds to the 12 significant digits every emitter prints.
double round_to_printed(double v);

}  // namespace banachlab

#endif  // BANACHLAB_REPORT_HPP
