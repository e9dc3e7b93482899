#ifndef DFP_REPORT_HPP
#define DFP_REPORT_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "dfp/eval.hpp"

namespace dfp {

// One line of the model-comparison table. Literature rows come verbatim from
// the constants CSV shipped under data/; measured rows are rendered from a
// Metrics document.
struct ReportRow {
  std::string source;
  std::string fingerprint;
  std::string devices_dataset;
  std::string performance;

  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

// Constants CSV: header "source,fingerprint,devices_dataset,performance".
std::vector<ReportRow> load_literature_csv(std::istream& in);

// "Measured (<kind>)", "1^Pkt x F^Feat", "<classes> <dataset>", accuracy to
// two decimals.
ReportRow measured_row(const Metrics& metrics, std::size_t feature_count);

std::string comparison_markdown(const std::vector<ReportRow>& rows);
std::string comparison_csv(const std::vector<ReportRow>& rows);

}  // namespace dfp

#endif
