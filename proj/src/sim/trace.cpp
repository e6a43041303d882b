#include "navsim/sim/trace.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>

#include "navsim/core/error.hpp"

namespace nav {

void TraceTable::add_row(std::vector<double> row) {
  require(row.size() == columns.size(), "row width does not match the column count");
  rows.push_back(std::move(row));
}

std::size_t TraceTable::column(const std::string& name) const {
  const auto it = std::find(columns.begin(), columns.end(), name);
  require(it != columns.end(), "no column named " + name);
  return static_cast<std::size_t>(it - columns.begin());
}

std::vector<double> TraceTable::values(const std::string& name) const {
  const std::size_t c = column(name);
  std::vector<double> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back(r[c]);
  return out;
}

void TraceTable::validate() const {
  require(!columns.empty() && columns.front() == "t", "first column must be t");
  for (std::size_t i = 0; i < rows.size(); ++i) {
    require(rows[i].size() == columns.size(), "ragged trace row");
    require(i == 0 || rows[i][0] > rows[i - 1][0], "t must be strictly increasing");
  }
}

std::string trace_to_csv(const TraceTable& t) {
  t.validate();
  return table_to_csv(t);
}

std::string table_to_csv(const TraceTable& t) {
  for (const auto& r : t.rows) require(r.size() == t.columns.size(), "ragged table row");
  std::string out;
  for (std::size_t c = 0; c < t.columns.size(); ++c) {
    if (c) out += ',';
    out += t.columns[c];
  }
  out += '\n';
  char buf[40];
  for (const auto& row : t.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) fail(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) fail(ErrorCode::IoError, "failed writing " + path.string());
}

void write_trace_csv(const TraceTable& t, const std::filesystem::path& path) { write_text_file(path, trace_to_csv(t)); }

}  // namespace nav
