#include "dfp/extract.hpp"

#include <fstream>
#include <ostream>

#include <json.hpp>

#include "dfp/errors.hpp"
#include "dfp/pcap.hpp"

namespace dfp {

DissectStats ExtractReport::totals() const {
  DissectStats t;
  for (const FileDiagnostics& f : files) {
    t.total += f.stats.total;
    t.emitted += f.stats.emitted;
    t.non_ethernet += f.stats.non_ethernet;
    t.vlan += f.stats.vlan;
    t.non_ipv4 += f.stats.non_ipv4;
    t.non_tcp_udp += f.stats.non_tcp_udp;
    t.fragment += f.stats.fragment;
    t.malformed += f.stats.malformed;
  }
  return t;
}

std::uint64_t ExtractReport::unknown_mac_total() const {
  std::uint64_t n = 0;
  for (const FileDiagnostics& f : files) n += f.unknown_mac;
  return n;
}

Dataset extract_dataset(const std::vector<std::filesystem::path>& captures,
                        const DeviceMap& devices, const FeatureSchema& schema,
                        const ExtractOptions& options, ExtractReport* report) {
  // schema position -> full-24 field position; npos keeps the cell Missing.
  constexpr std::size_t kUnmapped = static_cast<std::size_t>(-1);
  const FeatureSchema full = canonical_schema(SchemaMode::kFull24);
  std::vector<std::size_t> field_of(schema.size(), kUnmapped);
  for (std::size_t i = 0; i < schema.size(); ++i) {
    if (auto idx = full.index_of(schema.at(i).name)) field_of[i] = *idx;
  }

  std::vector<LabeledInstance> instances;
  ExtractReport local_report;
  ExtractReport& rep = report != nullptr ? *report : local_report;
  rep.files.clear();

  for (const std::filesystem::path& path : captures) {
    FileDiagnostics diag;
    diag.path = path.string();
    try {
      std::ifstream in(path, std::ios::binary);
      if (!in) throw DataError("cannot open capture file: " + path.string());

      PcapReader reader(in);
      ConversationTracker tracker;  // per-file: stream ordinals restart at 0
      while (auto packet = reader.next()) {
        auto fields = dissect_packet(*packet, tracker, diag.stats);
        if (!fields) continue;
        auto device = devices.device_for(mac_to_string(fields->src_mac));
        if (!device) {
          ++diag.unknown_mac;
          continue;
        }
        LabeledInstance inst;
        inst.values.reserve(schema.size());
        for (std::size_t i = 0; i < schema.size(); ++i) {
          inst.values.push_back(field_of[i] == kUnmapped ? FeatureValue::missing()
                                                         : fields->values[field_of[i]]);
        }
        inst.label = *device;
        instances.push_back(std::move(inst));
      }
    } catch (const DataError& e) {
      if (options.strict) {
        rep.files.push_back(std::move(diag));
        throw;
      }
      diag.error = e.what();
    }
    rep.files.push_back(std::move(diag));
  }
  return Dataset(schema, std::move(instances));
}

namespace {

nlohmann::json stats_json(const DissectStats& s) {
  return {{"total", s.total},         {"emitted", s.emitted},
          {"non_ethernet", s.non_ethernet}, {"vlan", s.vlan},
          {"non_ipv4", s.non_ipv4},   {"non_tcp_udp", s.non_tcp_udp},
          {"fragment", s.fragment},   {"malformed", s.malformed}};
}

}  // namespace

void write_extract_report_json(const ExtractReport& report, std::ostream& out) {
  nlohmann::json files = nlohmann::json::array();
  for (const FileDiagnostics& f : report.files) {
    nlohmann::json entry{{"path", f.path},
                         {"stats", stats_json(f.stats)},
                         {"unknown_mac", f.unknown_mac}};
    if (!f.error.empty()) entry["error"] = f.error;
    files.push_back(std::move(entry));
  }
  nlohmann::json doc{{"format", "dfp-extract-report"},
                     {"version", 1},
                     {"files", files},
                     {"totals", stats_json(report.totals())},
                     {"unknown_mac", report.unknown_mac_total()}};
  out << doc.dump(2) << '\n';
}

void print_extract_summary(const ExtractReport& report, std::ostream& out) {
  const DissectStats t = report.totals();
  out << "extract: " << report.files.size() << " file(s), " << t.total << " packet(s), "
      << t.emitted << " dissected, " << report.unknown_mac_total() << " unknown-MAC, "
      << t.malformed << " malformed, "
      << (t.non_ethernet + t.vlan + t.non_ipv4 + t.non_tcp_udp + t.fragment)
      << " out-of-scope\n";
  for (const FileDiagnostics& f : report.files) {
    if (!f.error.empty()) out << "extract: " << f.path << ": " << f.error << '\n';
  }
}

}  // namespace dfp
