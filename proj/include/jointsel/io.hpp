#pragma once

// CSV plumbing. Numbers are printed with std::to_chars (shortest form that
// round-trips), so emitted files are locale-independent and byte-stable
// across runs, and every row parses back to the exact source values.

#include <charconv>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <vector>

namespace jointsel {

inline std::string format_double(double value) {
  char buffer[64];
  const auto result =
      std::to_chars(buffer, buffer + sizeof(buffer), value);
  if (result.ec != std::errc())
    throw std::runtime_error("format_double: to_chars failed");
  return std::string(buffer, result.ptr);
}

inline double parse_double(const std::string& text) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc() || result.ptr != text.data() + text.size())
    throw std::invalid_argument("parse_double: bad number '" + text + "'");
  return value;
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cell);
      cell.clear();
    } else if (c != '\r') {
      cell.push_back(c);
    }
  }
  cells.push_back(cell);
  return cells;
}

// Reads a whole CSV stream; '#'-prefixed lines are metadata comments and are
// returned separately from data rows (the first data row is the header).
struct CsvDocument {
  std::vector<std::string> comments;
  std::vector<std::vector<std::string>> rows;
};

inline CsvDocument read_csv(std::istream& in) {
  CsvDocument doc;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      doc.comments.push_back(line);
    } else {
      doc.rows.push_back(split_csv_line(line));
    }
  }
  return doc;
}

inline void write_csv_row(std::ostream& out,
                          const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i > 0) out << ',';
    out << cells[i];
  }
  out << '\n';
}

}  // namespace jointsel
