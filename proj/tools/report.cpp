#include "report.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace photonlab::cli {

using nlohmann::ordered_json;

const std::vector<std::string> kCheckColumns = {"suite",     "identity", "anchor",  "residual",
                                                "tolerance", "pass",     "fd_step", "samples"};

namespace {

bool same_number(double a, double b) { return a == b || (std::isnan(a) && std::isnan(b)); }

bool same_cell(const Cell& a, const Cell& b) {
  if (a.index() != b.index()) return false;
  if (const auto* x = std::get_if<double>(&a)) return same_number(*x, std::get<double>(b));
  return a == b;
}

ordered_json number_json(double v) {
  return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr);
}

double json_number(const ordered_json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

ordered_json cell_json(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return *s;
  if (const auto* d = std::get_if<double>(&c)) return number_json(*d);
  return std::get<std::int64_t>(c);
}

Cell json_cell(const ordered_json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return v.get<std::int64_t>();
  return json_number(v);
}

std::string cell_text(const Cell& c) {
  if (const auto* s = std::get_if<std::string>(&c)) return csv_field(*s);
  if (const auto* d = std::get_if<double>(&c)) return format_number(*d);
  return std::to_string(std::get<std::int64_t>(c));
}

void write_line(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << "\r\n";
}

}  // namespace

bool CheckRow::operator==(const CheckRow& o) const {
  return suite == o.suite && identity == o.identity && anchor == o.anchor &&
         same_number(residual, o.residual) && same_number(tolerance, o.tolerance) &&
         pass == o.pass && same_number(fd_step, o.fd_step) && samples == o.samples;
}

bool DataTable::operator==(const DataTable& o) const {
  if (name != o.name || columns != o.columns || rows.size() != o.rows.size()) return false;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != o.rows[r].size()) return false;
    for (std::size_t c = 0; c < rows[r].size(); ++c) {
      if (!same_cell(rows[r][c], o.rows[r][c])) return false;
    }
  }
  return true;
}

Summary SuiteReport::summary() const {
  Summary s;
  for (const CheckRow& row : checks) {
    ++s.total;
    ++(row.pass ? s.passed : s.failed);
  }
  return s;
}

void SuiteReport::add(CheckRow row) {
  if (row.suite.empty()) row.suite = suite;
  // A NaN residual never passes.
  row.pass = std::isfinite(row.residual) && row.residual <= row.tolerance;
  checks.push_back(std::move(row));
}

bool SuiteReport::operator==(const SuiteReport& o) const {
  return suite == o.suite && config == o.config && checks == o.checks && tables == o.tables;
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\r\n") == std::string::npos) return text;
  std::string out = "\"";
  for (char c : text) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

ordered_json to_json(const SuiteReport& report) {
  ordered_json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["suite"] = report.suite;
  ordered_json config = ordered_json::object();
  for (const auto& [key, value] : report.config) config[key] = value;
  doc["config"] = config;

  const Summary s = report.summary();
  doc["summary"] = {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}};

  ordered_json checks = ordered_json::array();
  for (const CheckRow& row : report.checks) {
    checks.push_back({{"suite", row.suite},
                      {"identity", row.identity},
                      {"anchor", row.anchor},
                      {"residual", number_json(row.residual)},
                      {"tolerance", number_json(row.tolerance)},
                      {"pass", row.pass},
                      {"fd_step", number_json(row.fd_step)},
                      {"samples", row.samples}});
  }
  doc["checks"] = checks;

  ordered_json tables = ordered_json::array();
  for (const DataTable& t : report.tables) {
    ordered_json rows = ordered_json::array();
    for (const auto& r : t.rows) {
      ordered_json line = ordered_json::array();
      for (const Cell& c : r) line.push_back(cell_json(c));
      rows.push_back(line);
    }
    tables.push_back({{"name", t.name}, {"columns", t.columns}, {"rows", rows}});
  }
  doc["tables"] = tables;
  return doc;
}

SuiteReport report_from_json(const ordered_json& doc) {
  if (doc.value("schema_version", 0) != kSchemaVersion) {
    throw std::runtime_error("unsupported report schema version");
  }
  SuiteReport report;
  report.suite = doc.at("suite").get<std::string>();
  for (const auto& [key, value] : doc.at("config").items()) {
    report.config.emplace_back(key, value.get<std::string>());
  }
  for (const auto& row : doc.at("checks")) {
    CheckRow c;
    c.suite = row.at("suite").get<std::string>();
    c.identity = row.at("identity").get<std::string>();
    c.anchor = row.at("anchor").get<std::string>();
    c.residual = json_number(row.at("residual"));
    c.tolerance = json_number(row.at("tolerance"));
    c.pass = row.at("pass").get<bool>();
    c.fd_step = json_number(row.at("fd_step"));
    c.samples = row.at("samples").get<std::int64_t>();
    report.checks.push_back(std::move(c));
  }
  for (const auto& t : doc.at("tables")) {
    DataTable table;
    table.name = t.at("name").get<std::string>();
    table.columns = t.at("columns").get<std::vector<std::string>>();
    for (const auto& r : t.at("rows")) {
      std::vector<Cell> cells;
      for (const auto& v : r) cells.push_back(json_cell(v));
      table.rows.push_back(std::move(cells));
    }
    report.tables.push_back(std::move(table));
  }
  return report;
}

void write_csv_checks(const SuiteReport& report, std::ostream& out) {
  write_line(out, kCheckColumns);
  for (const CheckRow& row : report.checks) {
    write_line(out, {csv_field(row.suite), csv_field(row.identity), csv_field(row.anchor),
                     format_number(row.residual), format_number(row.tolerance),
                     row.pass ? "true" : "false", format_number(row.fd_step),
                     std::to_string(row.samples)});
  }
}

void write_csv_table(const DataTable& table, std::ostream& out) {
  std::vector<std::string> header;
  for (const std::string& c : table.columns) header.push_back(csv_field(c));
  write_line(out, header);
  for (const auto& r : table.rows) {
    std::vector<std::string> fields;
    for (const Cell& c : r) fields.push_back(cell_text(c));
    write_line(out, fields);
  }
}

void write_csv(const SuiteReport& report, std::ostream& out) {
  if (report.tables.size() == 1 && report.tables.front().name == report.suite) {
    write_csv_table(report.tables.front(), out);
  } else {
    write_csv_checks(report, out);
  }
}

void write_json(const SuiteReport& report, std::ostream& out) {
  out << to_json(report).dump(2) << '\n';
}

}  // namespace photonlab::cli
