#ifndef DFP_DECISION_TABLE_HPP
#define DFP_DECISION_TABLE_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "dfp/c45_tree.hpp"  // ClassDistribution
#include "dfp/dataset.hpp"

namespace dfp {

struct SearchParams {
  int stale_limit = 5;  // consecutive non-improving best-first expansions
};

// Exact-match rule table over a searched feature subset. Keys are the
// selected features' values in subset order; Missing is its own key symbol.
// Lookups that miss fall back to the training majority class.
class DecisionTableModel {
 public:
  using Table = std::unordered_map<FeatureVector, std::vector<double>, FeatureVectorHash>;

  DecisionTableModel() = default;
  DecisionTableModel(std::vector<std::string> schema_names, std::uint64_t fingerprint,
                     std::vector<std::string> classes,
                     std::vector<std::string> selected_features,
                     std::vector<std::size_t> selected_indices, Table table,
                     std::string majority_class);

  const std::vector<std::string>& schema_names() const { return schema_names_; }
  std::uint64_t schema_fingerprint() const { return fingerprint_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& selected_features() const { return selected_features_; }
  const std::vector<std::size_t>& selected_indices() const { return selected_indices_; }
  const Table& table() const { return table_; }
  const std::string& majority_class() const { return majority_class_; }

 private:
  std::vector<std::string> schema_names_;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::string> classes_;
  std::vector<std::string> selected_features_;  // subset, schema order
  std::vector<std::size_t> selected_indices_;   // same subset as schema indices
  Table table_;
  std::string majority_class_;
};

// Leave-one-out accuracy of the table induced by the given subset: each
// instance is classified by the majority of its key cell with itself
// removed, falling back to the global majority of the remainder when the
// cell empties. An empty subset is legal and scores LOO majority accuracy.
double loo_merit(const Dataset& dataset, const std::vector<std::string>& subset);

// Best-first forward selection scored by loo_merit, stopping after
// params.stale_limit consecutive expansions that fail to improve the best
// merit; the final table is built from the full training data.
DecisionTableModel train_decision_table(const Dataset& dataset,
                                        const SearchParams& params = {});

ClassDistribution classify(const DecisionTableModel& model, const FeatureVector& values);

}  // namespace dfp

#endif
