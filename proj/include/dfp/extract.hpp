#ifndef DFP_EXTRACT_HPP
#define DFP_EXTRACT_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "dfp/dataset.hpp"
#include "dfp/dissect.hpp"

namespace dfp {

struct ExtractOptions {
  bool strict = false;  // strict: a broken capture fails the whole run
};

struct FileDiagnostics {
  std::string path;
  DissectStats stats;
  std::uint64_t unknown_mac = 0;  // dissected fine, source MAC not mapped
  std::string error;              // non-empty when the file failed mid-read
};

struct ExtractReport {
  std::vector<FileDiagnostics> files;

  DissectStats totals() const;
  std::uint64_t unknown_mac_total() const;
};

// Dissects each capture with its own ConversationTracker (stream ordinals
// reset per file), keeps packets whose source MAC is in `devices`, and
// projects the full-24 fields onto `schema` order. Schema names outside the
// full-24 set are tolerated and stay Missing. Under strict=false a broken
// capture contributes what it yielded before the error and the run carries
// on; under strict the error propagates.
Dataset extract_dataset(const std::vector<std::filesystem::path>& captures,
                        const DeviceMap& devices, const FeatureSchema& schema,
                        const ExtractOptions& options = {},
                        ExtractReport* report = nullptr);

void write_extract_report_json(const ExtractReport& report, std::ostream& out);
void print_extract_summary(const ExtractReport& report, std::ostream& out);

}  // namespace dfp

#endif
