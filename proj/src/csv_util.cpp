#include "csv_util.hpp"

#include <ostream>

#include "dfp/errors.hpp"

namespace dfp::detail {

void write_csv_cell(std::ostream& out, const std::string& cell) {
  if (cell.find_first_of(",\"\r\n") == std::string::npos) {
    out << cell;
    return;
  }
  out << '"';
  for (char c : cell) {
    if (c == '"') out << '"';
    out << c;
  }
  out << '"';
}

std::vector<std::string> split_csv_record(const std::string& line, std::size_t row) {
  std::vector<std::string> cells;
  std::string cell;
  bool quoted = false;
  std::size_t i = 0;
  while (i < line.size()) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cell.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cell.push_back(c);
      }
    } else if (c == '"' && cell.empty()) {
      quoted = true;
    } else if (c == ',') {
      cells.push_back(std::move(cell));
      cell.clear();
    } else {
      cell.push_back(c);
    }
    ++i;
  }
  if (quoted) {
    throw ParseError("row " + std::to_string(row) + ": unterminated quote", row);
  }
  cells.push_back(std::move(cell));
  return cells;
}

}  // namespace dfp::detail
