// Seeded random dataset generators for the property suites.
#ifndef DFP_TESTS_GENERATORS_HPP
#define DFP_TESTS_GENERATORS_HPP

#include <random>
#include <string>
#include <vector>

#include "dfp/dataset.hpp"

namespace dfp::testgen {

struct DatasetShape {
  std::size_t min_instances = 2, max_instances = 30;
  std::size_t min_features = 1, max_features = 4;
  std::size_t max_classes = 4;
  std::int64_t min_value = -3, max_value = 9;
  double missing_prob = 0.15;
  bool fractional_weights = false;
};

inline Dataset random_dataset(std::mt19937_64& rng, const DatasetShape& shape = {}) {
  std::uniform_int_distribution<std::size_t> n_inst(shape.min_instances, shape.max_instances);
  std::uniform_int_distribution<std::size_t> n_feat(shape.min_features, shape.max_features);
  std::uniform_int_distribution<std::size_t> n_cls(2, shape.max_classes);
  const std::size_t instances = n_inst(rng);
  const std::size_t features = n_feat(rng);
  const std::size_t classes = n_cls(rng);

  std::vector<FeatureDef> defs;
  for (std::size_t f = 0; f < features; ++f) {
    defs.push_back(feature_def_from_name("f" + std::to_string(f + 1)));
  }

  std::uniform_int_distribution<std::int64_t> value(shape.min_value, shape.max_value);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::size_t> cls(0, classes - 1);

  std::vector<LabeledInstance> rows;
  rows.reserve(instances);
  for (std::size_t i = 0; i < instances; ++i) {
    LabeledInstance inst;
    for (std::size_t f = 0; f < features; ++f) {
      if (unit(rng) < shape.missing_prob) {
        inst.values.push_back(FeatureValue::missing());
      } else {
        inst.values.push_back(FeatureValue(value(rng)));
      }
    }
    inst.label = std::string(1, static_cast<char>('a' + cls(rng)));
    inst.weight = shape.fractional_weights ? 0.25 + unit(rng) : 1.0;
    rows.push_back(std::move(inst));
  }
  return Dataset(FeatureSchema(std::move(defs)), std::move(rows));
}

}  // namespace dfp::testgen

#endif
