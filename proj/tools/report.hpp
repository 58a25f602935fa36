#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

namespace photonlab::cli {

inline constexpr int kSchemaVersion = 1;

struct CheckRow {
  std::string suite;
  std::string identity;
  std::string anchor;
  double residual = 0;
  double tolerance = 0;
  bool pass = false;
  double fd_step = 0;  // relative to |p|; 0 when nothing is differenced
  std::int64_t samples = 0;

  bool operator==(const CheckRow& other) const;
};

using Cell = std::variant<std::string, double, std::int64_t>;

struct DataTable {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  bool operator==(const DataTable& other) const;
};

struct Summary {
  std::int64_t total = 0;
  std::int64_t passed = 0;
  std::int64_t failed = 0;

  bool operator==(const Summary&) const = default;
};

struct SuiteReport {
  std::string suite;
  std::vector<std::pair<std::string, std::string>> config;  // echo, in flag order
  std::vector<CheckRow> checks;
  std::vector<DataTable> tables;

  Summary summary() const;
  bool all_pass() const { return summary().failed == 0; }
  void add(CheckRow row);
  bool operator==(const SuiteReport& other) const;
};

/// printf %.17g; non-finite values as nan, inf, -inf.
std::string format_number(double value);
/// RFC 4180 field quoting.
std::string csv_field(const std::string& text);

nlohmann::ordered_json to_json(const SuiteReport& report);
SuiteReport report_from_json(const nlohmann::ordered_json& doc);

/// The suite's own data table (berry, gauge-field), otherwise the check rows.
void write_csv(const SuiteReport& report, std::ostream& out);
void write_csv_checks(const SuiteReport& report, std::ostream& out);
void write_csv_table(const DataTable& table, std::ostream& out);
void write_json(const SuiteReport& report, std::ostream& out);

extern const std::vector<std::string> kCheckColumns;

}  // namespace photonlab::cli
