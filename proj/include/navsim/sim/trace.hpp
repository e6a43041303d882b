#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace nav {

/// Column-major names, row-major values. Column 0 is "t" and strictly
/// increasing.
struct TraceTable {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  TraceTable() = default;
  explicit TraceTable(std::vector<std::string> cols) : columns(std::move(cols)) {}

  void add_row(std::vector<double> row);
  std::size_t column(const std::string& name) const;  // throws InvalidInput if missing
  std::vector<double> values(const std::string& name) const;
  void validate() const;
};

/// Header line, then one line per row; %.17g values, LF line endings.
std::string trace_to_csv(const TraceTable& t);
/// Same format without the leading-t check, for auxiliary tables.
std::string table_to_csv(const TraceTable& t);
void write_trace_csv(const TraceTable& t, const std::filesystem::path& path);

/// Write `content` verbatim; throws IoError on failure.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace nav
