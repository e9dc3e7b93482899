#include "dfp/eval.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <set>

#include <json.hpp>

#include "dfp/errors.hpp"

namespace dfp {

namespace {

// In-place seeded Fisher-Yates; written out long-hand (not std::shuffle,
// whose draw sequence is implementation-defined).
void shuffle_indices(std::vector<std::size_t>& indices, std::mt19937_64& rng) {
  for (std::size_t i = indices.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % i);
    std::swap(indices[i - 1], indices[j]);
  }
}

}  // namespace

std::pair<Dataset, Dataset> split_dataset(const Dataset& dataset, const SplitSpec& spec) {
  if (dataset.size() < 2) throw DataError("split_dataset: need at least 2 instances");
  if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
    throw DataError("split_dataset: train fraction must be in (0,1)");
  }

  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> train_idx, test_idx;

  if (spec.stratified) {
    // Classes in lexicographic order; one shuffle pass per class off the
    // same generator keeps the whole procedure a function of the seed.
    std::map<std::string, std::vector<std::size_t>> per_class;
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      per_class[dataset.instances()[i].label].push_back(i);
    }
    for (auto& [label, indices] : per_class) {
      shuffle_indices(indices, rng);
      const std::size_t cut =
          static_cast<std::size_t>(spec.train_fraction * static_cast<double>(indices.size()));
      train_idx.insert(train_idx.end(), indices.begin(), indices.begin() + cut);
      test_idx.insert(test_idx.end(), indices.begin() + cut, indices.end());
    }
  } else {
    std::vector<std::size_t> indices(dataset.size());
    for (std::size_t i = 0; i < indices.size(); ++i) indices[i] = i;
    shuffle_indices(indices, rng);
    const std::size_t cut =
        static_cast<std::size_t>(spec.train_fraction * static_cast<double>(indices.size()));
    train_idx.assign(indices.begin(), indices.begin() + cut);
    test_idx.assign(indices.begin() + cut, indices.end());
  }

  if (train_idx.empty() || test_idx.empty()) {
    throw DataError("split_dataset: fraction yields an empty partition");
  }

  auto gather = [&](const std::vector<std::size_t>& idx) {
    std::vector<LabeledInstance> instances;
    instances.reserve(idx.size());
    for (std::size_t i : idx) instances.push_back(dataset.instances()[i]);
    return Dataset(dataset.schema(), std::move(instances));
  };
  return {gather(train_idx), gather(test_idx)};
}

namespace {

Metrics evaluate_impl(const std::vector<std::string>& model_classes,
                      std::uint64_t model_fingerprint, const std::string& kind,
                      const Dataset& test, std::string_view dataset_name,
                      const std::function<std::size_t(const FeatureVector&)>& predict) {
  if (test.schema().fingerprint() != model_fingerprint) {
    throw DataError("evaluate: dataset schema does not match the model's schema");
  }

  // Metric classes = model catalog plus any labels only the test set has.
  std::set<std::string> labels(model_classes.begin(), model_classes.end());
  labels.insert(test.classes().begin(), test.classes().end());
  Metrics m;
  m.model_kind = kind;
  m.dataset_name = std::string(dataset_name);
  m.classes.assign(labels.begin(), labels.end());
  m.instance_count = test.size();
  m.feature_count = test.schema().size();
  m.confusion.assign(m.classes.size(), std::vector<std::uint64_t>(m.classes.size(), 0));

  auto metric_index = [&](const std::string& label) {
    return static_cast<std::size_t>(
        std::lower_bound(m.classes.begin(), m.classes.end(), label) - m.classes.begin());
  };
  // Model class index -> metrics class index (the model may know fewer).
  std::vector<std::size_t> model_to_metric;
  model_to_metric.reserve(model_classes.size());
  for (const std::string& c : model_classes) model_to_metric.push_back(metric_index(c));

  std::uint64_t correct = 0;
  for (const LabeledInstance& inst : test.instances()) {
    const std::size_t predicted = model_to_metric[predict(inst.values)];
    const std::size_t actual = metric_index(inst.label);
    ++m.confusion[actual][predicted];
    if (predicted == actual) ++correct;
  }
  m.accuracy = test.size() > 0
                   ? static_cast<double>(correct) / static_cast<double>(test.size())
                   : 0.0;

  m.per_class.resize(m.classes.size());
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    std::uint64_t row_sum = 0, col_sum = 0;
    for (std::size_t o = 0; o < m.classes.size(); ++o) {
      row_sum += m.confusion[c][o];
      col_sum += m.confusion[o][c];
    }
    const double diag = static_cast<double>(m.confusion[c][c]);
    PerClassMetrics& pc = m.per_class[c];
    pc.precision = col_sum > 0 ? diag / static_cast<double>(col_sum) : 0.0;
    pc.recall = row_sum > 0 ? diag / static_cast<double>(row_sum) : 0.0;
    pc.f1 = (pc.precision + pc.recall) > 0.0
                ? 2.0 * pc.precision * pc.recall / (pc.precision + pc.recall)
                : 0.0;
  }
  return m;
}

}  // namespace

Metrics evaluate(const DecisionTreeModel& model, const Dataset& test,
                 std::string_view dataset_name) {
  return evaluate_impl(model.classes(), model.schema_fingerprint(), "j48", test, dataset_name,
                       [&](const FeatureVector& v) { return classify(model, v).predicted; });
}

Metrics evaluate(const DecisionTableModel& model, const Dataset& test,
                 std::string_view dataset_name) {
  return evaluate_impl(model.classes(), model.schema_fingerprint(), "dtable", test,
                       dataset_name,
                       [&](const FeatureVector& v) { return classify(model, v).predicted; });
}

Metrics evaluate(const AnyModel& model, const Dataset& test, std::string_view dataset_name) {
  return std::visit([&](const auto& m) { return evaluate(m, test, dataset_name); }, model);
}

void write_metrics_json(const Metrics& metrics, std::ostream& out) {
  nlohmann::json per_class = nlohmann::json::object();
  for (std::size_t c = 0; c < metrics.classes.size(); ++c) {
    per_class[metrics.classes[c]] = {{"precision", metrics.per_class[c].precision},
                                     {"recall", metrics.per_class[c].recall},
                                     {"f1", metrics.per_class[c].f1}};
  }
  nlohmann::json doc{{"format", "dfp-metrics"},
                     {"version", 1},
                     {"model_kind", metrics.model_kind},
                     {"dataset", metrics.dataset_name},
                     {"instances", metrics.instance_count},
                     {"features", metrics.feature_count},
                     {"accuracy", metrics.accuracy},
                     {"classes", metrics.classes},
                     {"confusion", metrics.confusion},
                     {"per_class", per_class}};
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("metrics document: write failure");
}

Metrics read_metrics_json(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("metrics document: ") + e.what(), e.byte);
  }
  if (!doc.is_object() || doc.value("format", "") != "dfp-metrics") {
    throw DataError("metrics document: not a dfp-metrics JSON document");
  }
  if (doc.value("version", -1) != 1) {
    throw DataError("metrics document: unsupported version");
  }
  Metrics m;
  m.model_kind = doc.at("model_kind").get<std::string>();
  m.dataset_name = doc.at("dataset").get<std::string>();
  m.instance_count = doc.at("instances").get<std::uint64_t>();
  m.feature_count = doc.at("features").get<std::uint64_t>();
  m.accuracy = doc.at("accuracy").get<double>();
  m.classes = doc.at("classes").get<std::vector<std::string>>();
  m.confusion = doc.at("confusion").get<std::vector<std::vector<std::uint64_t>>>();
  m.per_class.resize(m.classes.size());
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    const auto& pc = doc.at("per_class").at(m.classes[c]);
    m.per_class[c] = {pc.at("precision").get<double>(), pc.at("recall").get<double>(),
                      pc.at("f1").get<double>()};
  }
  return m;
}

}  // namespace dfp
