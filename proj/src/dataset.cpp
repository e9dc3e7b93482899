#include "dfp/dataset.hpp"

#include <algorithm>
#include <cctype>
#include <istream>
#include <set>

#include "dfp/errors.hpp"

namespace dfp {

Dataset::Dataset(FeatureSchema schema, std::vector<LabeledInstance> instances)
    : schema_(std::move(schema)), instances_(std::move(instances)) {
  std::set<std::string> labels;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    const LabeledInstance& inst = instances_[i];
    if (inst.values.size() != schema_.size()) {
      throw DataError("instance " + std::to_string(i) + " has " +
                      std::to_string(inst.values.size()) + " values, schema has " +
                      std::to_string(schema_.size()));
    }
    if (!(inst.weight > 0.0)) {
      throw DataError("instance " + std::to_string(i) + " has non-positive weight");
    }
    labels.insert(inst.label);
  }
  classes_.assign(labels.begin(), labels.end());  // std::set is already sorted
}

std::optional<std::size_t> Dataset::class_index(std::string_view label) const {
  auto it = std::lower_bound(classes_.begin(), classes_.end(), label);
  if (it == classes_.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - classes_.begin());
}

Dataset project(const Dataset& dataset, const FeatureSchema& subset) {
  std::vector<std::size_t> from;
  from.reserve(subset.size());
  for (const FeatureDef& def : subset.features()) {
    auto idx = dataset.schema().index_of(def.name);
    if (!idx) throw DataError("projection feature not in dataset schema: '" + def.name + "'");
    from.push_back(*idx);
  }
  std::vector<LabeledInstance> out;
  out.reserve(dataset.size());
  for (const LabeledInstance& inst : dataset.instances()) {
    FeatureVector values;
    values.reserve(from.size());
    for (std::size_t idx : from) values.push_back(inst.values[idx]);
    out.push_back({std::move(values), inst.label, inst.weight});
  }
  return Dataset(subset, std::move(out));
}

std::optional<std::string> canonical_mac(std::string_view text) {
  // Expect six hex octets separated by ':' or '-'.
  std::string out;
  out.reserve(17);
  int octets = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    if (i + 2 > text.size() || !std::isxdigit(static_cast<unsigned char>(text[i])) ||
        !std::isxdigit(static_cast<unsigned char>(text[i + 1]))) {
      return std::nullopt;
    }
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i]))));
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(text[i + 1]))));
    ++octets;
    i += 2;
    if (i < text.size()) {
      if (text[i] != ':' && text[i] != '-') return std::nullopt;
      out.push_back(':');
      ++i;
    }
  }
  if (octets != 6) return std::nullopt;
  return out;
}

DeviceMap::DeviceMap(std::map<std::string, std::string> entries)
    : entries_(std::move(entries)) {
  for (const auto& [mac, device] : entries_) {
    auto canon = canonical_mac(mac);
    if (!canon || *canon != mac) throw DataError("device map: bad MAC key '" + mac + "'");
    if (device.empty()) throw DataError("device map: empty device name for " + mac);
  }
}

DeviceMap DeviceMap::from_csv(std::istream& in) {
  std::map<std::string, std::string> entries;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (row == 1 && line == "mac,device") continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw ParseError("device map row " + std::to_string(row) + ": expected 'mac,device'", row);
    }
    auto mac = canonical_mac(std::string_view(line).substr(0, comma));
    std::string device = line.substr(comma + 1);
    if (!mac) {
      throw ParseError("device map row " + std::to_string(row) + ": bad MAC '" +
                           line.substr(0, comma) + "'",
                       row);
    }
    if (device.empty()) {
      throw ParseError("device map row " + std::to_string(row) + ": empty device name", row);
    }
    entries[*mac] = std::move(device);
  }
  return DeviceMap(std::move(entries));
}

std::optional<std::string> DeviceMap::device_for(std::string_view mac) const {
  auto it = entries_.find(std::string(mac));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

}  // namespace dfp
