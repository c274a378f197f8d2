#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace masr::dse {

inline constexpr int kReportSchemaVersion = 1;

/// monostate is an absent value: empty CSV field, JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws ParameterError if the row width differs from the column count.
  void add_row(std::vector<Cell> row);
  [[nodiscard]] std::size_t column(std::string_view name) const;
  friend bool operator==(const Table&, const Table&) = default;
};

enum class ReportFormat { csv, json };

[[nodiscard]] ReportFormat parse_report_format(std::string_view s);
[[nodiscard]] std::string_view extension(ReportFormat f) noexcept;

/// Shortest text that parses back to the same value.
[[nodiscard]] std::string format_cell(const Cell& c);

/// CSV starts with "# masr-report schema=N table=NAME", then the header. Strings are
/// always quoted so numbers and text stay distinguishable on re-read.
void write_csv(const Table& t, std::ostream& os);
[[nodiscard]] Table read_csv(std::istream& is);

void write_json(const Table& t, std::ostream& os);
[[nodiscard]] Table read_json(std::istream& is);

/// Writes dir/NAME.csv or dir/NAME.json, creating dir. IoError when it cannot.
std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, ReportFormat f);
[[nodiscard]] Table read_table(const std::filesystem::path& path);

}  // namespace masr::dse
