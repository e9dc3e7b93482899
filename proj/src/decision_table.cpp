#include "dfp/decision_table.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <thread>

#include "dfp/errors.hpp"

namespace dfp {

namespace {

constexpr double kMeritEps = 1e-12;

// Lowest class index among maxima == lexicographically first label, because
// the class catalog is sorted.
std::size_t majority_index(const std::vector<double>& weights) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < weights.size(); ++i) {
    if (weights[i] > weights[best]) best = i;
  }
  return best;
}

FeatureVector key_for(const LabeledInstance& inst, const std::vector<std::size_t>& subset) {
  FeatureVector key;
  key.reserve(subset.size());
  for (std::size_t idx : subset) key.push_back(inst.values[idx]);
  return key;
}

std::vector<std::size_t> subset_indices(const Dataset& dataset,
                                        const std::vector<std::string>& subset) {
  std::vector<std::size_t> indices;
  indices.reserve(subset.size());
  for (const std::string& name : subset) {
    auto idx = dataset.schema().index_of(name);
    if (!idx) throw DataError("decision table: feature not in schema: '" + name + "'");
    indices.push_back(*idx);
  }
  return indices;
}

double loo_merit_indices(const Dataset& dataset, const std::vector<std::size_t>& subset) {
  const std::size_t k = dataset.classes().size();
  std::vector<std::uint32_t> labels(dataset.size());
  std::vector<double> global(k, 0.0);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    labels[i] = static_cast<std::uint32_t>(*dataset.class_index(dataset.instances()[i].label));
    global[labels[i]] += dataset.instances()[i].weight;
  }

  std::unordered_map<FeatureVector, std::vector<double>, FeatureVectorHash> cells;
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const LabeledInstance& inst = dataset.instances()[i];
    auto& cell = cells[key_for(inst, subset)];
    if (cell.empty()) cell.assign(k, 0.0);
    cell[labels[i]] += inst.weight;
  }

  double correct = 0.0, total = 0.0;
  std::vector<double> scratch(k);
  for (std::size_t i = 0; i < dataset.size(); ++i) {
    const LabeledInstance& inst = dataset.instances()[i];
    const auto& cell = cells[key_for(inst, subset)];
    scratch = cell;
    scratch[labels[i]] -= inst.weight;
    double remaining = 0.0;
    for (double w : scratch) remaining += w;

    std::size_t predicted;
    if (remaining > kMeritEps) {
      predicted = majority_index(scratch);
    } else {
      // Cell holds only this instance: global majority of the remainder.
      std::vector<double> rest = global;
      rest[labels[i]] -= inst.weight;
      predicted = majority_index(rest);
    }
    if (predicted == labels[i]) correct += inst.weight;
    total += inst.weight;
  }
  return total > 0.0 ? correct / total : 0.0;
}

}  // namespace

double loo_merit(const Dataset& dataset, const std::vector<std::string>& subset) {
  if (dataset.empty()) throw DataError("loo_merit: empty dataset");
  return loo_merit_indices(dataset, subset_indices(dataset, subset));
}

DecisionTableModel::DecisionTableModel(std::vector<std::string> schema_names,
                                       std::uint64_t fingerprint,
                                       std::vector<std::string> classes,
                                       std::vector<std::string> selected_features,
                                       std::vector<std::size_t> selected_indices,
                                       Table table, std::string majority_class)
    : schema_names_(std::move(schema_names)),
      fingerprint_(fingerprint),
      classes_(std::move(classes)),
      selected_features_(std::move(selected_features)),
      selected_indices_(std::move(selected_indices)),
      table_(std::move(table)),
      majority_class_(std::move(majority_class)) {}

DecisionTableModel train_decision_table(const Dataset& dataset, const SearchParams& params) {
  if (dataset.empty()) throw DataError("train_decision_table: empty dataset");
  if (params.stale_limit < 1) throw DataError("stale_limit must be >= 1");

  const std::size_t num_features = dataset.schema().size();

  struct Node {
    std::vector<std::size_t> subset;  // sorted schema indices
    double merit;
    std::uint64_t seq;                // insertion order, for deterministic pops
  };

  // Max merit first; FIFO among equals.
  auto better = [](const Node& a, const Node& b) {
    if (a.merit != b.merit) return a.merit > b.merit;
    return a.seq < b.seq;
  };

  std::set<std::vector<std::size_t>> visited;
  std::deque<Node> open;
  std::uint64_t seq = 0;

  Node root{{}, loo_merit_indices(dataset, {}), seq++};
  visited.insert(root.subset);
  std::vector<std::size_t> best_subset = root.subset;
  double best_merit = root.merit;
  open.push_back(std::move(root));

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  int stale = 0;
  while (!open.empty() && stale < params.stale_limit) {
    auto best_it = std::min_element(open.begin(), open.end(),
                                    [&](const Node& a, const Node& b) { return better(a, b); });
    Node node = std::move(*best_it);
    open.erase(best_it);

    // Children: add each unused feature, schema order.
    std::vector<std::vector<std::size_t>> children;
    for (std::size_t f = 0; f < num_features; ++f) {
      if (std::find(node.subset.begin(), node.subset.end(), f) != node.subset.end()) continue;
      std::vector<std::size_t> child = node.subset;
      child.insert(std::lower_bound(child.begin(), child.end(), f), f);
      if (visited.contains(child)) continue;
      visited.insert(child);
      children.push_back(std::move(child));
    }

    // Candidate merits are independent; evaluate in parallel.
    std::vector<double> merits(children.size(), 0.0);
    if (children.size() > 1 && hw > 1) {
      std::vector<std::thread> workers;
      std::size_t per = (children.size() + hw - 1) / hw;
      for (unsigned t = 0; t < hw; ++t) {
        std::size_t lo = t * per, hi = std::min(children.size(), lo + per);
        if (lo >= hi) break;
        workers.emplace_back([&, lo, hi] {
          for (std::size_t i = lo; i < hi; ++i) {
            merits[i] = loo_merit_indices(dataset, children[i]);
          }
        });
      }
      for (auto& w : workers) w.join();
    } else {
      for (std::size_t i = 0; i < children.size(); ++i) {
        merits[i] = loo_merit_indices(dataset, children[i]);
      }
    }

    bool improved = false;
    for (std::size_t i = 0; i < children.size(); ++i) {
      if (merits[i] > best_merit + kMeritEps) {
        best_merit = merits[i];
        best_subset = children[i];
        improved = true;
      }
      open.push_back(Node{std::move(children[i]), merits[i], seq++});
    }
    stale = improved ? 0 : stale + 1;
  }

  // Final table over the winning subset, from all training rows.
  const std::size_t k = dataset.classes().size();
  DecisionTableModel::Table table;
  std::vector<double> global(k, 0.0);
  for (const LabeledInstance& inst : dataset.instances()) {
    auto& cell = table[key_for(inst, best_subset)];
    if (cell.empty()) cell.assign(k, 0.0);
    const auto label = *dataset.class_index(inst.label);
    cell[label] += inst.weight;
    global[label] += inst.weight;
  }

  std::vector<std::string> selected_names;
  selected_names.reserve(best_subset.size());
  for (std::size_t idx : best_subset) selected_names.push_back(dataset.schema().at(idx).name);

  return DecisionTableModel(dataset.schema().names(), dataset.schema().fingerprint(),
                            dataset.classes(), std::move(selected_names),
                            std::move(best_subset), std::move(table),
                            dataset.classes()[majority_index(global)]);
}

ClassDistribution classify(const DecisionTableModel& model, const FeatureVector& values) {
  if (values.size() != model.schema_names().size()) {
    throw DataError("classify: vector has " + std::to_string(values.size()) +
                    " values, model schema has " +
                    std::to_string(model.schema_names().size()));
  }
  FeatureVector key;
  key.reserve(model.selected_indices().size());
  for (std::size_t idx : model.selected_indices()) key.push_back(values[idx]);

  ClassDistribution dist;
  dist.probs.assign(model.classes().size(), 0.0);

  auto it = model.table().find(key);
  if (it != model.table().end()) {
    double total = 0.0;
    for (double w : it->second) total += w;
    for (std::size_t c = 0; c < dist.probs.size(); ++c) {
      dist.probs[c] = it->second[c] / total;
    }
  } else {
    auto idx = std::lower_bound(model.classes().begin(), model.classes().end(),
                                model.majority_class()) -
               model.classes().begin();
    dist.probs[static_cast<std::size_t>(idx)] = 1.0;
  }
  dist.predicted = majority_index(dist.probs);
  return dist;
}

}  // namespace dfp
