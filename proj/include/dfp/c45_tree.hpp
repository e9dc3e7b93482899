#ifndef DFP_C45_TREE_HPP
#define DFP_C45_TREE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dfp/dataset.hpp"

namespace dfp {

struct TreeParams {
  double min_leaf_weight = 2.0;   // minimum known weight per split child
  double confidence = 0.25;       // pruning confidence, in (0, 0.5]
  bool pruning = true;
  std::optional<int> max_depth;   // root is depth 0
};

// Normalized class probabilities aligned to the owning model's classes().
struct ClassDistribution {
  std::vector<double> probs;
  std::size_t predicted = 0;  // argmax; ties resolve to the lexicographically
                              // first class (classes are sorted)
};

struct SplitCandidate {
  std::size_t feature = 0;  // schema index
  double threshold = 0.0;
  double info_gain = 0.0;
  double split_info = 0.0;
  double gain_ratio = 0.0;
};

// Flat-array tree: nodes_[0] is the root, children link by index. A node
// with feature < 0 is a leaf. Split nodes keep their training class weights
// so the tree can be re-pruned after the fact.
class DecisionTreeModel {
 public:
  struct Node {
    std::int32_t feature = -1;  // schema index; -1 marks a leaf
    double threshold = 0.0;
    double frac_le = 0.0;       // known-weight fractions used when the split
    double frac_gt = 0.0;       // feature is missing at classification time
    std::int32_t le_child = -1;
    std::int32_t gt_child = -1;
    std::vector<double> class_weights;  // training weight per class
    double weight = 0.0;                // total training weight
    std::uint32_t predicted = 0;        // argmax of class_weights

    bool is_leaf() const { return feature < 0; }
  };

  DecisionTreeModel() = default;
  DecisionTreeModel(std::vector<std::string> schema_names, std::uint64_t fingerprint,
                    std::vector<std::string> classes, std::vector<Node> nodes);

  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<std::string>& classes() const { return classes_; }
  const std::vector<std::string>& schema_names() const { return schema_names_; }
  std::uint64_t schema_fingerprint() const { return fingerprint_; }

  std::size_t node_count() const;  // reachable nodes
  std::size_t leaf_count() const;
  int depth() const;

 private:
  std::vector<std::string> schema_names_;
  std::uint64_t fingerprint_ = 0;
  std::vector<std::string> classes_;
  std::vector<Node> nodes_;
};

// Gain-ratio split selection with C4.5's average-gain guard: among features
// whose info gain reaches the mean positive info gain, pick the best gain
// ratio; ties fall back to schema order. Returns nothing when no feature
// yields positive gain or every admissible split starves a child below
// min_leaf_weight.
std::optional<SplitCandidate> best_split(const std::vector<LabeledInstance>& instances,
                                         const FeatureSchema& schema,
                                         const TreeParams& params = {});

// Recursive induction with fractional missing-value distribution, then
// pessimistic-error pruning when params.pruning is set.
DecisionTreeModel train_tree(const Dataset& dataset, const TreeParams& params = {});

// Upper confidence bound on the error rate of a leaf observing f_errors
// wrong out of n_weight, at the given pruning confidence.
double pessimistic_error(double f_errors, double n_weight, double confidence);

// Inverse standard normal CDF (AS 241 / PPND16).
double normal_quantile(double p);

// Bottom-up subtree replacement against the pessimistic bound; ties replace.
DecisionTreeModel prune(const DecisionTreeModel& model, double confidence);

// Walks splits by value; missing values descend both children weighted by
// the stored fractions. The vector must have schema_names().size() entries.
ClassDistribution classify(const DecisionTreeModel& model, const FeatureVector& values);

}  // namespace dfp

#endif
