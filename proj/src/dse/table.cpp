#include "masr/dse/table.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <nlohmann/json.hpp>
#include <ostream>
#include <sstream>

#include "masr/common/error.hpp"

namespace masr::dse {

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw ParameterError("table '" + name + "': row has " + std::to_string(row.size()) + " cells, expected " +
                         std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

std::size_t Table::column(std::string_view n) const {
  for (std::size_t i = 0; i < columns.size(); ++i) {
    if (columns[i] == n) return i;
  }
  throw ParameterError("table '" + name + "' has no column '" + std::string(n) + "'");
}

ReportFormat parse_report_format(std::string_view s) {
  if (s == "csv") return ReportFormat::csv;
  if (s == "json") return ReportFormat::json;
  throw ConfigError("unknown report format '" + std::string(s) + "' (csv|json)");
}

std::string_view extension(ReportFormat f) noexcept { return f == ReportFormat::csv ? ".csv" : ".json"; }

namespace {

std::string format_double(double d) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, d);
  std::string s(buf, end);
  // keep a marker so the value reads back as floating point
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Cell parse_unquoted(const std::string& field) {
  if (field.empty()) return std::monostate{};
  std::int64_t i = 0;
  auto [p, ec] = std::from_chars(field.data(), field.data() + field.size(), i);
  if (ec == std::errc{} && p == field.data() + field.size()) return i;
  double d = 0.0;
  auto [q, ec2] = std::from_chars(field.data(), field.data() + field.size(), d);
  if (ec2 == std::errc{} && q == field.data() + field.size()) return d;
  return field;
}

// Splits one CSV record; the bool marks quoted fields.
std::vector<std::pair<std::string, bool>> split_record(std::istream& is, std::size_t& line) {
  std::vector<std::pair<std::string, bool>> out;
  std::string cur;
  bool quoted = false, in_quotes = false;
  char c;
  while (is.get(c)) {
    if (in_quotes) {
      if (c == '"') {
        if (is.peek() == '"') {
          is.get(c);
          cur += '"';
        } else {
          in_quotes = false;
        }
      } else {
        if (c == '\n') ++line;
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = quoted = true;
    } else if (c == ',') {
      out.emplace_back(std::move(cur), quoted);
      cur.clear();
      quoted = false;
    } else if (c == '\n') {
      ++line;
      out.emplace_back(std::move(cur), quoted);
      return out;
    } else if (c != '\r') {
      cur += c;
    }
  }
  if (in_quotes) throw IoError("CSV line " + std::to_string(line) + ": unterminated quote");
  if (!cur.empty() || quoted || !out.empty()) out.emplace_back(std::move(cur), quoted);
  return out;
}

}  // namespace

std::string format_cell(const Cell& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) return "";
        else if constexpr (std::is_same_v<T, std::int64_t>) return std::to_string(v);
        else if constexpr (std::is_same_v<T, double>) return format_double(v);
        else return v;
      },
      c);
}

void write_csv(const Table& t, std::ostream& os) {
  os << "# masr-report schema=" << kReportSchemaVersion << " table=" << t.name << '\n';
  for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << t.columns[i];
  os << '\n';
  for (const auto& row : t.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (const auto* s = std::get_if<std::string>(&row[i])) os << quote(*s);
      else os << format_cell(row[i]);
    }
    os << '\n';
  }
}

Table read_csv(std::istream& is) {
  Table t;
  std::string first;
  if (!std::getline(is, first)) throw IoError("empty report file");
  const std::string prefix = "# masr-report schema=";
  if (first.rfind(prefix, 0) != 0) throw IoError("not a masr report: missing header comment");
  std::istringstream hs(first.substr(prefix.size()));
  int schema = 0;
  std::string rest;
  hs >> schema >> rest;
  if (schema != kReportSchemaVersion) throw IoError("unsupported report schema " + std::to_string(schema));
  if (rest.rfind("table=", 0) == 0) t.name = rest.substr(6);
  std::size_t line = 2;
  for (auto& [name, q] : split_record(is, line)) t.columns.push_back(name);
  while (is.peek() != std::char_traits<char>::eof()) {
    auto rec = split_record(is, line);
    if (rec.empty()) continue;
    if (rec.size() != t.columns.size()) {
      throw IoError("CSV line " + std::to_string(line - 1) + ": " + std::to_string(rec.size()) + " fields, expected " +
                    std::to_string(t.columns.size()));
    }
    std::vector<Cell> row;
    for (auto& [f, quoted] : rec) row.push_back(quoted ? Cell(std::move(f)) : parse_unquoted(f));
    t.rows.push_back(std::move(row));
  }
  return t;
}

void write_json(const Table& t, std::ostream& os) {
  nlohmann::ordered_json j;
  j["schema_version"] = kReportSchemaVersion;
  j["table"] = t.name;
  j["columns"] = t.columns;
  auto records = nlohmann::ordered_json::array();
  for (const auto& row : t.rows) {
    nlohmann::ordered_json r = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) r[t.columns[i]] = nullptr;
            else r[t.columns[i]] = v;
          },
          row[i]);
    }
    records.push_back(std::move(r));
  }
  j["records"] = std::move(records);
  os << j.dump(1) << '\n';
}

Table read_json(std::istream& is) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(is);
  } catch (const nlohmann::json::parse_error& e) {
    throw IoError(std::string("report is not valid JSON: ") + e.what());
  }
  try {
    if (j.at("schema_version").get<int>() != kReportSchemaVersion) throw IoError("unsupported report schema");
    Table t;
    t.name = j.at("table").get<std::string>();
    t.columns = j.at("columns").get<std::vector<std::string>>();
    for (const auto& r : j.at("records")) {
      std::vector<Cell> row;
      for (const auto& c : t.columns) {
        const auto& v = r.at(c);
        if (v.is_null()) row.emplace_back(std::monostate{});
        else if (v.is_number_integer()) row.emplace_back(v.get<std::int64_t>());
        else if (v.is_number()) row.emplace_back(v.get<double>());
        else row.emplace_back(v.get<std::string>());
      }
      t.rows.push_back(std::move(row));
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("malformed report: ") + e.what());
  }
}

std::filesystem::path write_table(const Table& t, const std::filesystem::path& dir, ReportFormat f) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir.string() + ": " + ec.message());
  const auto path = dir / (t.name + std::string(extension(f)));
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot write " + path.string());
  if (f == ReportFormat::csv) write_csv(t, os);
  else write_json(t, os);
  if (!os) throw IoError("write failed for " + path.string());
  return path;
}

Table read_table(const std::filesystem::path& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw IoError("cannot open " + path.string());
  return path.extension() == ".json" ? read_json(is) : read_csv(is);
}

}  // namespace masr::dse
