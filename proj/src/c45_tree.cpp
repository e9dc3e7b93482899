#include "dfp/c45_tree.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "dfp/errors.hpp"
#include "dfp/feature_eval.hpp"

namespace dfp {

namespace {

constexpr double kTiny = 1e-12;
constexpr double kGuardSlack = 1e-9;  // fp slack on the average-gain guard

std::size_t argmax_class(const std::vector<double>& weights) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[i] > weights[best]) best = i;  // strict: ties keep lower index
  }
  return best;
}

// Weighted reference into the training data; missing-value distribution
// clones the reference with a scaled weight.
struct TrainRow {
  std::uint32_t instance;
  double weight;
};

struct PerFeatureScore {
  std::size_t feature;
  SplitScore score;
};

class TreeBuilder {
 public:
  TreeBuilder(const Dataset& dataset, const TreeParams& params)
      : dataset_(dataset), params_(params), num_classes_(dataset.classes().size()) {
    labels_.reserve(dataset.size());
    for (const LabeledInstance& inst : dataset.instances()) {
      labels_.push_back(static_cast<std::uint32_t>(*dataset.class_index(inst.label)));
    }
  }

  std::vector<DecisionTreeModel::Node> build() {
    std::vector<TrainRow> rows;
    rows.reserve(dataset_.size());
    for (std::uint32_t i = 0; i < dataset_.size(); ++i) {
      rows.push_back({i, dataset_.instances()[i].weight});
    }
    build_node(std::move(rows), 0);
    return std::move(nodes_);
  }

  // Shared with the public best_split(); evaluates every feature and applies
  // the average-gain guard.
  static std::optional<PerFeatureScore> choose_split(
      const std::vector<PerFeatureScore>& candidates) {
    if (candidates.empty()) return std::nullopt;
    double gain_sum = 0.0;
    for (const PerFeatureScore& c : candidates) gain_sum += c.score.info_gain;
    const double avg_gain = gain_sum / static_cast<double>(candidates.size());

    const PerFeatureScore* best = nullptr;
    for (const PerFeatureScore& c : candidates) {
      if (c.score.info_gain + kGuardSlack < avg_gain) continue;
      if (best == nullptr || c.score.gain_ratio > best->score.gain_ratio + kTiny) {
        best = &c;
      }
    }
    if (best == nullptr) return std::nullopt;
    return *best;
  }

 private:
  FeatureValue value_of(const TrainRow& row, std::size_t feature) const {
    return dataset_.instances()[row.instance].values[feature];
  }

  std::vector<PerFeatureScore> score_features(const std::vector<TrainRow>& rows) const {
    std::vector<PerFeatureScore> candidates;
    for (std::size_t f = 0; f < dataset_.schema().size(); ++f) {
      SplitColumn column;
      column.num_classes = num_classes_;
      column.values.reserve(rows.size());
      column.weights.reserve(rows.size());
      column.labels.reserve(rows.size());
      for (const TrainRow& row : rows) {
        const FeatureValue v = value_of(row, f);
        if (v.is_missing()) {
          column.missing_weight += row.weight;
        } else {
          column.values.push_back(v.value());
          column.weights.push_back(row.weight);
          column.labels.push_back(labels_[row.instance]);
        }
      }
      SplitScore score = score_split_column(column, params_.min_leaf_weight);
      if (score.threshold && score.info_gain > kTiny) {
        candidates.push_back({f, score});
      }
    }
    return candidates;
  }

  std::int32_t new_leaf(std::vector<double> class_weights, double weight) {
    DecisionTreeModel::Node node;
    node.class_weights = std::move(class_weights);
    node.weight = weight;
    node.predicted = static_cast<std::uint32_t>(argmax_class(node.class_weights));
    nodes_.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes_.size() - 1);
  }

  std::int32_t build_node(std::vector<TrainRow> rows, int depth) {
    std::vector<double> class_weights(num_classes_, 0.0);
    double total = 0.0;
    for (const TrainRow& row : rows) {
      class_weights[labels_[row.instance]] += row.weight;
      total += row.weight;
    }
    const double max_class = *std::max_element(class_weights.begin(), class_weights.end());

    const bool pure = total - max_class < kTiny;
    const bool too_small = total < 2.0 * params_.min_leaf_weight;
    const bool depth_capped = params_.max_depth && depth >= *params_.max_depth;
    if (pure || too_small || depth_capped) {
      return new_leaf(std::move(class_weights), total);
    }

    auto chosen = choose_split(score_features(rows));
    if (!chosen) {
      return new_leaf(std::move(class_weights), total);
    }

    const std::size_t feature = chosen->feature;
    const double threshold = *chosen->score.threshold;
    const double w_le = chosen->score.weight_le;
    const double w_gt = chosen->score.weight_gt;
    const double frac_le = w_le / (w_le + w_gt);
    const double frac_gt = w_gt / (w_le + w_gt);

    std::vector<TrainRow> le_rows, gt_rows;
    le_rows.reserve(rows.size());
    gt_rows.reserve(rows.size());
    for (const TrainRow& row : rows) {
      const FeatureValue v = value_of(row, feature);
      if (v.is_missing()) {
        le_rows.push_back({row.instance, row.weight * frac_le});
        gt_rows.push_back({row.instance, row.weight * frac_gt});
      } else if (static_cast<double>(v.value()) <= threshold) {
        le_rows.push_back(row);
      } else {
        gt_rows.push_back(row);
      }
    }
    rows.clear();
    rows.shrink_to_fit();

    // Reserve the split slot before recursing so the root stays at index 0.
    DecisionTreeModel::Node node;
    node.feature = static_cast<std::int32_t>(feature);
    node.threshold = threshold;
    node.frac_le = frac_le;
    node.frac_gt = frac_gt;
    node.class_weights = std::move(class_weights);
    node.weight = total;
    node.predicted = static_cast<std::uint32_t>(argmax_class(node.class_weights));
    nodes_.push_back(std::move(node));
    const std::int32_t index = static_cast<std::int32_t>(nodes_.size() - 1);

    const std::int32_t le_child = build_node(std::move(le_rows), depth + 1);
    const std::int32_t gt_child = build_node(std::move(gt_rows), depth + 1);
    nodes_[index].le_child = le_child;
    nodes_[index].gt_child = gt_child;
    return index;
  }

  const Dataset& dataset_;
  const TreeParams& params_;
  std::size_t num_classes_;
  std::vector<std::uint32_t> labels_;
  std::vector<DecisionTreeModel::Node> nodes_;
};

}  // namespace

DecisionTreeModel::DecisionTreeModel(std::vector<std::string> schema_names,
                                     std::uint64_t fingerprint,
                                     std::vector<std::string> classes,
                                     std::vector<Node> nodes)
    : schema_names_(std::move(schema_names)),
      fingerprint_(fingerprint),
      classes_(std::move(classes)),
      nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DataError("decision tree must have at least one node");
}

namespace {

void count_nodes(const std::vector<DecisionTreeModel::Node>& nodes, std::int32_t index,
                 std::size_t& total, std::size_t& leaves, int depth, int& max_depth) {
  const auto& node = nodes.at(static_cast<std::size_t>(index));
  ++total;
  max_depth = std::max(max_depth, depth);
  if (node.is_leaf()) {
    ++leaves;
    return;
  }
  count_nodes(nodes, node.le_child, total, leaves, depth + 1, max_depth);
  count_nodes(nodes, node.gt_child, total, leaves, depth + 1, max_depth);
}

}  // namespace

std::size_t DecisionTreeModel::node_count() const {
  std::size_t total = 0, leaves = 0;
  int max_depth = 0;
  count_nodes(nodes_, 0, total, leaves, 0, max_depth);
  return total;
}

std::size_t DecisionTreeModel::leaf_count() const {
  std::size_t total = 0, leaves = 0;
  int max_depth = 0;
  count_nodes(nodes_, 0, total, leaves, 0, max_depth);
  return leaves;
}

int DecisionTreeModel::depth() const {
  std::size_t total = 0, leaves = 0;
  int max_depth = 0;
  count_nodes(nodes_, 0, total, leaves, 0, max_depth);
  return max_depth;
}

std::optional<SplitCandidate> best_split(const std::vector<LabeledInstance>& instances,
                                         const FeatureSchema& schema,
                                         const TreeParams& params) {
  Dataset dataset(schema, instances);
  if (dataset.classes().size() < 2 || dataset.size() < 2) return std::nullopt;

  std::vector<PerFeatureScore> candidates;
  for (std::size_t f = 0; f < schema.size(); ++f) {
    SplitColumn column;
    column.num_classes = dataset.classes().size();
    for (const LabeledInstance& inst : dataset.instances()) {
      const FeatureValue v = inst.values[f];
      if (v.is_missing()) {
        column.missing_weight += inst.weight;
      } else {
        column.values.push_back(v.value());
        column.weights.push_back(inst.weight);
        column.labels.push_back(static_cast<std::uint32_t>(*dataset.class_index(inst.label)));
      }
    }
    SplitScore score = score_split_column(column, params.min_leaf_weight);
    if (score.threshold && score.info_gain > kTiny) candidates.push_back({f, score});
  }
  auto chosen = TreeBuilder::choose_split(candidates);
  if (!chosen) return std::nullopt;
  SplitCandidate out;
  out.feature = chosen->feature;
  out.threshold = *chosen->score.threshold;
  out.info_gain = chosen->score.info_gain;
  out.split_info = chosen->score.split_info;
  out.gain_ratio = chosen->score.gain_ratio;
  return out;
}

DecisionTreeModel train_tree(const Dataset& dataset, const TreeParams& params) {
  if (dataset.empty()) throw DataError("train_tree: empty dataset");
  if (params.min_leaf_weight < 1.0) throw DataError("min_leaf_weight must be >= 1");
  if (!(params.confidence > 0.0) || params.confidence > 0.5) {
    throw DataError("confidence must be in (0, 0.5]");
  }

  TreeBuilder builder(dataset, params);
  DecisionTreeModel model(dataset.schema().names(), dataset.schema().fingerprint(),
                          dataset.classes(), builder.build());
  if (params.pruning) return prune(model, params.confidence);
  return model;
}

double normal_quantile(double p) {
  // Wichura's algorithm AS 241, PPND16.
  if (!(p > 0.0 && p < 1.0)) throw DataError("normal_quantile: p must be in (0,1)");
  const double q = p - 0.5;
  if (std::fabs(q) <= 0.425) {
    const double r = 0.180625 - q * q;
    return q *
           (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                 6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
               1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
             1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
           (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                 3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
               5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
             4.2313330701600911252e+1) * r + 1.0);
  }
  double r = q < 0.0 ? p : 1.0 - p;
  r = std::sqrt(-std::log(r));
  double value;
  if (r <= 5.0) {
    r -= 1.6;
    value = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
  } else {
    r -= 5.0;
    value = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-6) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
  }
  return q < 0.0 ? -value : value;
}

double pessimistic_error(double f_errors, double n_weight, double confidence) {
  if (!(n_weight > 0.0)) throw DataError("pessimistic_error: n_weight must be > 0");
  if (f_errors < 0.0 || f_errors > n_weight) {
    throw DataError("pessimistic_error: f_errors out of [0, n_weight]");
  }
  const double z = normal_quantile(1.0 - confidence);
  const double z2 = z * z;
  const double n = n_weight;
  const double f = f_errors / n;
  const double radicand = f / n - (f * f) / n + z2 / (4.0 * n * n);
  const double root = radicand > 0.0 ? std::sqrt(radicand) : 0.0;
  return (f + z2 / (2.0 * n) + z * root) / (1.0 + z2 / n);
}

namespace {

struct PruneResult {
  std::int32_t index;
  double estimated_errors;
};

double leaf_estimate(const DecisionTreeModel::Node& node, double confidence) {
  const double max_class =
      *std::max_element(node.class_weights.begin(), node.class_weights.end());
  const double errors = std::max(node.weight - max_class, 0.0);
  return pessimistic_error(errors, node.weight, confidence) * node.weight;
}

PruneResult prune_subtree(const std::vector<DecisionTreeModel::Node>& src,
                          std::int32_t index, double confidence,
                          std::vector<DecisionTreeModel::Node>& dst) {
  const auto& node = src.at(static_cast<std::size_t>(index));
  if (node.is_leaf()) {
    dst.push_back(node);
    return {static_cast<std::int32_t>(dst.size() - 1), leaf_estimate(node, confidence)};
  }

  // Children first (bottom-up); a collapsed child feeds its leaf estimate up.
  dst.push_back(node);
  const std::int32_t new_index = static_cast<std::int32_t>(dst.size() - 1);
  const PruneResult le = prune_subtree(src, node.le_child, confidence, dst);
  const PruneResult gt = prune_subtree(src, node.gt_child, confidence, dst);

  const double subtree_errors = le.estimated_errors + gt.estimated_errors;
  const double as_leaf = leaf_estimate(node, confidence);
  if (as_leaf <= subtree_errors + kTiny) {
    // Replace; the children written above become unreachable and are dropped
    // by the compaction pass.
    dst.resize(static_cast<std::size_t>(new_index) + 1);
    dst[new_index].feature = -1;
    dst[new_index].le_child = -1;
    dst[new_index].gt_child = -1;
    return {new_index, as_leaf};
  }
  dst[new_index].le_child = le.index;
  dst[new_index].gt_child = gt.index;
  return {new_index, subtree_errors};
}

}  // namespace

DecisionTreeModel prune(const DecisionTreeModel& model, double confidence) {
  std::vector<DecisionTreeModel::Node> pruned;
  pruned.reserve(model.nodes().size());
  prune_subtree(model.nodes(), 0, confidence, pruned);
  return DecisionTreeModel(model.schema_names(), model.schema_fingerprint(),
                           model.classes(), std::move(pruned));
}

namespace {

void accumulate(const std::vector<DecisionTreeModel::Node>& nodes, std::int32_t index,
                const FeatureVector& values, double weight, std::vector<double>& out) {
  const auto& node = nodes.at(static_cast<std::size_t>(index));
  if (node.is_leaf()) {
    // Leaf contributes its normalized distribution.
    for (std::size_t c = 0; c < out.size(); ++c) {
      out[c] += weight * node.class_weights[c] / node.weight;
    }
    return;
  }
  const FeatureValue v = values[static_cast<std::size_t>(node.feature)];
  if (v.is_missing()) {
    accumulate(nodes, node.le_child, values, weight * node.frac_le, out);
    accumulate(nodes, node.gt_child, values, weight * node.frac_gt, out);
  } else if (static_cast<double>(v.value()) <= node.threshold) {
    accumulate(nodes, node.le_child, values, weight, out);
  } else {
    accumulate(nodes, node.gt_child, values, weight, out);
  }
}

}  // namespace

ClassDistribution classify(const DecisionTreeModel& model, const FeatureVector& values) {
  if (values.size() != model.schema_names().size()) {
    throw DataError("classify: vector has " + std::to_string(values.size()) +
                    " values, model schema has " +
                    std::to_string(model.schema_names().size()));
  }
  ClassDistribution dist;
  dist.probs.assign(model.classes().size(), 0.0);
  accumulate(model.nodes(), 0, values, 1.0, dist.probs);
  double total = std::accumulate(dist.probs.begin(), dist.probs.end(), 0.0);
  if (total > 0.0) {
    for (double& p : dist.probs) p /= total;
  }
  dist.predicted = argmax_class(dist.probs);
  return dist;
}

}  // namespace dfp
