#include "banachlab/report.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "banachlab/errors.hpp"
#include "banachlab/seq_vector.hpp"

namespace banachlab {

void ExperimentReport::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) throw ArgumentError("report row width does not match header");
  rows.push_back(std::move(row));
}

std::size_t ExperimentReport::column_index(std::string_view column) const {
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (columns[k] == column) return k;
  }
  throw ArgumentError("report has no column '" + std::string(column) + "'");
}

double ExperimentReport::number(std::size_t row, std::string_view column) const {
  return std::get<double>(rows.at(row).at(column_index(column)));
}

const std::string& ExperimentReport::text(std::size_t row, std::string_view column) const {
  return std::get<std::string>(rows.at(row).at(column_index(column)));
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "csv") return ReportFormat::kCsv;
  if (name == "json") return ReportFormat::kJson;
  if (name == "plotdata") return ReportFormat::kPlotData;
  throw ArgumentError("unknown output format '" + std::string(name) + "'");
}

double round_to_printed(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_real(v).c_str(), nullptr);
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string plot_escape(const std::string& s) {
  if (!s.empty() && s.find_first_of(" \t\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string cell_text(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_real(*d);
  return std::get<std::string>(cell);
}

// A token that reads fully as a number is a number; anything else is text.
Cell classify(const std::string& token, bool quoted) {
  if (!quoted && !token.empty()) {
    if (token == "inf") return kInf;
    if (token == "-inf") return -kInf;
    char* end = nullptr;
    const double v = std::strtod(token.c_str(), &end);
    if (end == token.c_str() + token.size()) return v;
  }
  return token;
}

std::vector<std::pair<std::string, bool>> split_csv_line(std::string_view line) {
  std::vector<std::pair<std::string, bool>> out;
  std::string cur;
  bool quoted = false;
  bool in_quotes = false;
  for (std::size_t k = 0; k < line.size(); ++k) {
    const char c = line[k];
    if (in_quotes) {
      if (c == '"') {
        if (k + 1 < line.size() && line[k + 1] == '"') {
          cur += '"';
          ++k;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = true;
      quoted = true;
    } else if (c == ',') {
      out.emplace_back(cur, quoted);
      cur.clear();
      quoted = false;
    } else {
      cur += c;
    }
  }
  if (in_quotes) throw ArgumentError("unterminated quote in CSV");
  out.emplace_back(cur, quoted);
  return out;
}

std::vector<std::pair<std::string, bool>> split_plot_line(std::string_view line) {
  std::vector<std::pair<std::string, bool>> out;
  std::size_t k = 0;
  while (k < line.size()) {
    while (k < line.size() && (line[k] == ' ' || line[k] == '\t')) ++k;
    if (k >= line.size()) break;
    std::string cur;
    bool quoted = false;
    if (line[k] == '"') {
      quoted = true;
      ++k;
      while (k < line.size() && line[k] != '"') {
        if (line[k] == '\\' && k + 1 < line.size()) ++k;
        cur += line[k++];
      }
      if (k >= line.size()) throw ArgumentError("unterminated quote in plot data");
      ++k;
    } else {
      while (k < line.size() && line[k] != ' ' && line[k] != '\t') cur += line[k++];
    }
    out.emplace_back(cur, quoted);
  }
  return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    auto line = text.substr(0, nl);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return lines;
}

nlohmann::ordered_json cell_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (std::isinf(*d)) return *d > 0 ? "inf" : "-inf";
    if (std::isnan(*d)) return "nan";
    return round_to_printed(*d);
  }
  return std::get<std::string>(cell);
}

}  // namespace

std::string to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  for (std::size_t k = 0; k < report.columns.size(); ++k) {
    os << (k ? "," : "") << csv_escape(report.columns[k]);
  }
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const bool text = std::holds_alternative<std::string>(row[k]);
      std::string s = cell_text(row[k]);
      // Quote text that would otherwise re-read as a number.
      if (text && std::holds_alternative<double>(classify(s, false))) s = "\"" + s + "\"";
      else s = csv_escape(s);
      os << (k ? "," : "") << s;
    }
    os << '\n';
  }
  return os.str();
}

std::string to_json(const ExperimentReport& report) {
  nlohmann::ordered_json doc;
  doc["name"] = report.name;
  doc["metadata"] = report.metadata;
  doc["columns"] = report.columns;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : report.rows) {
    auto r = nlohmann::ordered_json::array();
    for (const auto& cell : row) r.push_back(cell_json(cell));
    rows.push_back(std::move(r));
  }
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

std::string to_plotdata(const ExperimentReport& report) {
  std::ostringstream os;
  os << "#";
  for (const auto& c : report.columns) os << ' ' << plot_escape(c);
  os << '\n';
  for (const auto& row : report.rows) {
    for (std::size_t k = 0; k < row.size(); ++k) {
      const bool text = std::holds_alternative<std::string>(row[k]);
      std::string s = cell_text(row[k]);
      if (text && std::holds_alternative<double>(classify(s, false))) s = "\"" + s + "\"";
      else if (text) s = plot_escape(s);
      os << (k ? " " : "") << s;
    }
    os << '\n';
  }
  return os.str();
}

std::string render(const ExperimentReport& report, ReportFormat format) {
  switch (format) {
    case ReportFormat::kCsv: return to_csv(report);
    case ReportFormat::kJson: return to_json(report);
    case ReportFormat::kPlotData: return to_plotdata(report);
  }
  return {};
}

ExperimentReport parse_csv(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw ArgumentError("CSV report has no header");
  ExperimentReport report;
  for (auto& [name, q] : split_csv_line(lines[0])) report.columns.push_back(name);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty()) continue;
    std::vector<Cell> row;
    for (auto& [tok, q] : split_csv_line(lines[k])) row.push_back(classify(tok, q));
    report.add_row(std::move(row));
  }
  return report;
}

ExperimentReport parse_json(std::string_view text) {
  const auto doc = nlohmann::ordered_json::parse(text);
  ExperimentReport report;
  report.name = doc.value("name", "");
  if (doc.contains("metadata")) report.metadata = doc["metadata"];
  for (const auto& c : doc.at("columns")) report.columns.push_back(c.get<std::string>());
  for (const auto& r : doc.at("rows")) {
    std::vector<Cell> row;
    for (const auto& cell : r) {
      if (cell.is_number()) {
        row.emplace_back(cell.get<double>());
      } else {
        const auto s = cell.get<std::string>();
        if (s == "inf") row.emplace_back(kInf);
        else if (s == "-inf") row.emplace_back(-kInf);
        else row.emplace_back(s);
      }
    }
    report.add_row(std::move(row));
  }
  return report;
}

ExperimentReport parse_plotdata(std::string_view text) {
  const auto lines = split_lines(text);
  if (lines.empty() || lines[0].empty() || lines[0][0] != '#') {
    throw ArgumentError("plot data must start with a '#' header");
  }
  ExperimentReport report;
  for (auto& [name, q] : split_plot_line(lines[0].substr(1))) report.columns.push_back(name);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    if (lines[k].empty() || lines[k][0] == '#') continue;
    std::vector<Cell> row;
    for (auto& [tok, q] : split_plot_line(lines[k])) row.push_back(classify(tok, q));
    report.add_row(std::move(row));
  }
  return report;
}

void emit_report(const ExperimentReport& report, ReportFormat format, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open '" + path + "' for writing");
  out << render(report, format);
  out.flush();
  if (!out) throw std::ios_base::failure("write to '" + path + "' failed");
}

}  // namespace banachlab
