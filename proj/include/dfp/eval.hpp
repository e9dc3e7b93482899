#ifndef DFP_EVAL_HPP
#define DFP_EVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "dfp/dataset.hpp"
#include "dfp/model_io.hpp"

namespace dfp {

struct SplitSpec {
  double train_fraction = 0.8;  // the published 80:20 protocol
  std::uint64_t seed = 0;
  bool stratified = false;
};

// Seeded Fisher-Yates shuffle (mt19937_64, explicit index arithmetic so the
// partition is identical across platforms), then a prefix split at
// floor(fraction * N). Stratified mode shuffles and splits per class before
// merging. Throws DataError when a partition would be empty.
std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset, const SplitSpec& spec);

struct PerClassMetrics {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

struct Metrics {
  std::string model_kind;
  std::string dataset_name;
  std::uint64_t instance_count = 0;
  std::uint64_t feature_count = 0;  // fingerprint width of the evaluated schema
  double accuracy = 0.0;
  std::vector<std::string> classes;  // union of model and test classes, sorted
  std::vector<std::vector<std::uint64_t>> confusion;  // [actual][predicted]
  std::vector<PerClassMetrics> per_class;             // aligned to classes
};

// Classifies every test instance (argmax, lexicographic tie-break) and fills
// the confusion matrix. Throws DataError when the test schema does not match
// the model's schema fingerprint.
Metrics evaluate(const AnyModel& model, const Dataset& test, std::string_view dataset_name);
Metrics evaluate(const DecisionTreeModel& model, const Dataset& test,
                 std::string_view dataset_name);
Metrics evaluate(const DecisionTableModel& model, const Dataset& test,
                 std::string_view dataset_name);

// Versioned machine-readable metrics document.
void write_metrics_json(const Metrics& metrics, std::ostream& out);
Metrics read_metrics_json(std::istream& in);

}  // namespace dfp

#endif
