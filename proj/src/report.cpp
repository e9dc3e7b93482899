#include "dfp/report.hpp"

#include <cstdio>
#include <istream>
#include <sstream>

#include "csv_util.hpp"
#include "dfp/errors.hpp"

namespace dfp {

std::vector<ReportRow> load_literature_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("literature CSV: empty input", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "source,fingerprint,devices_dataset,performance") {
    throw ParseError("literature CSV: unexpected header '" + line + "'", 0);
  }
  std::vector<ReportRow> rows;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = detail::split_csv_record(line, row);
    if (cells.size() != 4) {
      throw ParseError("literature CSV row " + std::to_string(row) + ": expected 4 cells",
                       row);
    }
    rows.push_back({std::move(cells[0]), std::move(cells[1]), std::move(cells[2]),
                    std::move(cells[3])});
  }
  return rows;
}

ReportRow measured_row(const Metrics& metrics, std::size_t feature_count) {
  char acc[32];
  std::snprintf(acc, sizeof(acc), "%.2f", metrics.accuracy * 100.0);
  ReportRow row;
  row.source = "Measured (" + metrics.model_kind + ")";
  row.fingerprint = "1^Pkt x " + std::to_string(feature_count) + "^Feat";
  row.devices_dataset =
      std::to_string(metrics.classes.size()) + " " + metrics.dataset_name;
  row.performance = std::string(acc) + "% " + metrics.dataset_name;
  return row;
}

std::string comparison_markdown(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw DataError("comparison report: no rows");
  std::ostringstream out;
  out << "| Source | Fingerprint | Devices/Dataset | Performance |\n";
  out << "| --- | --- | --- | --- |\n";
  for (const ReportRow& row : rows) {
    out << "| " << row.source << " | " << row.fingerprint << " | " << row.devices_dataset
        << " | " << row.performance << " |\n";
  }
  return out.str();
}

std::string comparison_csv(const std::vector<ReportRow>& rows) {
  if (rows.empty()) throw DataError("comparison report: no rows");
  std::ostringstream out;
  out << "source,fingerprint,devices_dataset,performance\n";
  for (const ReportRow& row : rows) {
    detail::write_csv_cell(out, row.source);
    out << ',';
    detail::write_csv_cell(out, row.fingerprint);
    out << ',';
    detail::write_csv_cell(out, row.devices_dataset);
    out << ',';
    detail::write_csv_cell(out, row.performance);
    out << '\n';
  }
  return out.str();
}

}  // namespace dfp
