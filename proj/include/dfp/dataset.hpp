#ifndef DFP_DATASET_HPP
#define DFP_DATASET_HPP

#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dfp/feature_value.hpp"
#include "dfp/schema.hpp"

namespace dfp {

// One packet's fingerprint plus its device label. weight is 1.0 for rows as
// loaded; tree induction hands fractional weights to instances whose split
// feature is missing.
struct LabeledInstance {
  FeatureVector values;
  std::string label;
  double weight = 1.0;

  friend bool operator==(const LabeledInstance&, const LabeledInstance&) = default;
};

// Immutable after construction: schema + instances + the lexicographically
// sorted class catalog derived from the instance labels.
class Dataset {
 public:
  Dataset() = default;
  // Throws DataError if an instance length disagrees with the schema or a
  // weight is not positive.
  Dataset(FeatureSchema schema, std::vector<LabeledInstance> instances);

  const FeatureSchema& schema() const { return schema_; }
  const std::vector<LabeledInstance>& instances() const { return instances_; }
  const std::vector<std::string>& classes() const { return classes_; }

  std::size_t size() const { return instances_.size(); }
  bool empty() const { return instances_.empty(); }

  std::optional<std::size_t> class_index(std::string_view label) const;

  friend bool operator==(const Dataset& a, const Dataset& b) {
    return a.schema_ == b.schema_ && a.instances_ == b.instances_ &&
           a.classes_ == b.classes_;
  }

 private:
  FeatureSchema schema_;
  std::vector<LabeledInstance> instances_;
  std::vector<std::string> classes_;
};

// Keeps the named features (order per `subset`) and drops the rest.
// Throws DataError when subset names are absent from the dataset schema.
Dataset project(const Dataset& dataset, const FeatureSchema& subset);

// MAC address (canonical lowercase colon-hex) -> device name.
class DeviceMap {
 public:
  DeviceMap() = default;
  explicit DeviceMap(std::map<std::string, std::string> entries);

  // CSV rows "mac,device"; an optional leading "mac,device" header is
  // skipped; MACs are canonicalized, device names must be non-empty.
  static DeviceMap from_csv(std::istream& in);

  std::optional<std::string> device_for(std::string_view mac) const;
  const std::map<std::string, std::string>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, std::string> entries_;
};

// "AA:BB:cc:dd:ee:ff" or "aa-bb-cc-dd-ee-ff" -> "aa:bb:cc:dd:ee:ff";
// nullopt when not a 6-octet hex address.
std::optional<std::string> canonical_mac(std::string_view text);

}  // namespace dfp

#endif
