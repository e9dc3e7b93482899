// Small hand-written datasets shared across suites.
#ifndef DFP_TESTS_TOY_DATA_HPP
#define DFP_TESTS_TOY_DATA_HPP

#include <optional>
#include <string>
#include <vector>

#include "dfp/dataset.hpp"

namespace dfp::toy {

inline FeatureSchema schema_of(const std::vector<std::string>& names) {
  std::vector<FeatureDef> defs;
  defs.reserve(names.size());
  for (const std::string& n : names) defs.push_back(feature_def_from_name(n));
  return FeatureSchema(std::move(defs));
}

using Cell = std::optional<std::int64_t>;

inline Dataset make(const std::vector<std::string>& names,
                    const std::vector<std::pair<std::vector<Cell>, std::string>>& rows) {
  std::vector<LabeledInstance> instances;
  instances.reserve(rows.size());
  for (const auto& [cells, label] : rows) {
    LabeledInstance inst;
    for (const Cell& c : cells) {
      inst.values.push_back(c ? FeatureValue(*c) : FeatureValue::missing());
    }
    inst.label = label;
    instances.push_back(std::move(inst));
  }
  return Dataset(schema_of(names), std::move(instances));
}

// The classic 14-row play/don't-play table, nominal columns encoded as
// integers: outlook sunny=0 overcast=1 rain=2, windy false=0 true=1.
inline Dataset golf() {
  return make({"outlook", "temperature", "humidity", "windy"},
              {
                  {{0, 85, 85, 0}, "no"},
                  {{0, 80, 90, 1}, "no"},
                  {{1, 83, 86, 0}, "yes"},
                  {{2, 70, 96, 0}, "yes"},
                  {{2, 68, 80, 0}, "yes"},
                  {{2, 65, 70, 1}, "no"},
                  {{1, 64, 65, 1}, "yes"},
                  {{0, 72, 95, 0}, "no"},
                  {{0, 69, 70, 0}, "yes"},
                  {{2, 75, 80, 0}, "yes"},
                  {{0, 75, 70, 1}, "yes"},
                  {{1, 72, 90, 1}, "yes"},
                  {{1, 81, 75, 0}, "yes"},
                  {{2, 71, 91, 1}, "no"},
              });
}

// golf() with a few cells knocked out, for missing-value paths.
inline Dataset golf_with_missing() {
  return make({"outlook", "temperature", "humidity", "windy"},
              {
                  {{0, 85, 85, 0}, "no"},
                  {{0, std::nullopt, 90, 1}, "no"},
                  {{1, 83, 86, 0}, "yes"},
                  {{std::nullopt, 70, 96, 0}, "yes"},
                  {{2, 68, std::nullopt, 0}, "yes"},
                  {{2, 65, 70, 1}, "no"},
                  {{1, 64, 65, std::nullopt}, "yes"},
                  {{0, 72, 95, 0}, "no"},
                  {{0, 69, 70, 0}, "yes"},
                  {{2, 75, 80, std::nullopt}, "yes"},
                  {{0, 75, 70, 1}, "yes"},
                  {{1, 72, 90, 1}, "yes"},
                  {{std::nullopt, 81, 75, 0}, "yes"},
                  {{2, 71, 91, 1}, "no"},
              });
}

// Three-class toy with interleaved value ranges.
inline Dataset three_class() {
  return make({"f1", "f2"},
              {
                  {{1, 10}, "a"},
                  {{2, 11}, "a"},
                  {{3, 30}, "b"},
                  {{4, 31}, "b"},
                  {{5, 50}, "c"},
                  {{6, 51}, "c"},
                  {{1, 32}, "a"},
                  {{4, 12}, "b"},
                  {{6, 33}, "c"},
                  {{2, 52}, "a"},
                  {{3, 13}, "b"},
                  {{5, 34}, "c"},
              });
}

}  // namespace dfp::toy

#endif
