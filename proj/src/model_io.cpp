#include "dfp/model_io.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "dfp/errors.hpp"

namespace dfp {

namespace {

using nlohmann::json;

json fingerprint_to_json(std::uint64_t fp) {
  char buf[19];
  std::snprintf(buf, sizeof(buf), "0x%016llx", static_cast<unsigned long long>(fp));
  return json(std::string(buf));
}

std::uint64_t fingerprint_from_json(const json& j) {
  const std::string s = j.get<std::string>();
  if (!s.starts_with("0x")) throw DataError("model: bad schema fingerprint '" + s + "'");
  return std::strtoull(s.c_str() + 2, nullptr, 16);
}

json envelope(const std::string& kind, const std::vector<std::string>& schema_names,
              std::uint64_t fingerprint, const std::vector<std::string>& classes) {
  return json{{"format", "dfp-model"},
              {"version", kModelFormatVersion},
              {"kind", kind},
              {"schema", {{"names", schema_names}, {"fingerprint", fingerprint_to_json(fingerprint)}}},
              {"classes", classes}};
}

json tree_node_to_json(const std::vector<DecisionTreeModel::Node>& nodes,
                       std::int32_t index, const std::vector<std::string>& schema_names) {
  const auto& node = nodes.at(static_cast<std::size_t>(index));
  if (node.is_leaf()) {
    return json{{"dist", node.class_weights}};
  }
  return json{{"feature", schema_names.at(static_cast<std::size_t>(node.feature))},
              {"threshold", node.threshold},
              {"fractions", {node.frac_le, node.frac_gt}},
              {"dist", node.class_weights},
              {"le", tree_node_to_json(nodes, node.le_child, schema_names)},
              {"gt", tree_node_to_json(nodes, node.gt_child, schema_names)}};
}

std::int32_t tree_node_from_json(const json& j,
                                 const std::vector<std::string>& schema_names,
                                 std::size_t num_classes,
                                 std::vector<DecisionTreeModel::Node>& nodes) {
  DecisionTreeModel::Node node;
  if (!j.contains("dist")) throw DataError("model: tree node lacks 'dist'");
  node.class_weights = j.at("dist").get<std::vector<double>>();
  if (node.class_weights.size() != num_classes) {
    throw DataError("model: node distribution arity mismatch");
  }
  node.weight = 0.0;
  for (double w : node.class_weights) node.weight += w;
  node.predicted = 0;
  for (std::size_t c = 1; c < node.class_weights.size(); ++c) {
    if (node.class_weights[c] > node.class_weights[node.predicted]) {
      node.predicted = static_cast<std::uint32_t>(c);
    }
  }

  if (!j.contains("feature")) {
    if (!(node.weight > 0.0)) throw DataError("model: leaf with zero weight");
    nodes.push_back(std::move(node));
    return static_cast<std::int32_t>(nodes.size() - 1);
  }

  const std::string feature = j.at("feature").get<std::string>();
  auto it = std::find(schema_names.begin(), schema_names.end(), feature);
  if (it == schema_names.end()) {
    throw DataError("model: split feature not in schema: '" + feature + "'");
  }
  node.feature = static_cast<std::int32_t>(it - schema_names.begin());
  node.threshold = j.at("threshold").get<double>();
  const auto fractions = j.at("fractions").get<std::vector<double>>();
  if (fractions.size() != 2) throw DataError("model: split fractions must have 2 entries");
  node.frac_le = fractions[0];
  node.frac_gt = fractions[1];

  nodes.push_back(std::move(node));
  const std::int32_t index = static_cast<std::int32_t>(nodes.size() - 1);
  const std::int32_t le = tree_node_from_json(j.at("le"), schema_names, num_classes, nodes);
  const std::int32_t gt = tree_node_from_json(j.at("gt"), schema_names, num_classes, nodes);
  nodes[index].le_child = le;
  nodes[index].gt_child = gt;
  return index;
}

json table_cells_to_json(const DecisionTableModel& model) {
  // Deterministic order: sort keys by raw encodings (Missing sorts first).
  std::vector<const DecisionTableModel::Table::value_type*> cells;
  cells.reserve(model.table().size());
  for (const auto& cell : model.table()) cells.push_back(&cell);
  std::sort(cells.begin(), cells.end(), [](const auto* a, const auto* b) {
    const FeatureVector& ka = a->first;
    const FeatureVector& kb = b->first;
    for (std::size_t i = 0; i < ka.size(); ++i) {
      if (ka[i].raw() != kb[i].raw()) return ka[i].raw() < kb[i].raw();
    }
    return false;
  });

  json out = json::array();
  for (const auto* cell : cells) {
    json key = json::array();
    for (const FeatureValue v : cell->first) {
      if (v.is_missing()) {
        key.push_back(nullptr);
      } else {
        key.push_back(v.value());
      }
    }
    out.push_back(json{{"key", std::move(key)}, {"dist", cell->second}});
  }
  return out;
}

json parse_document(std::istream& in) {
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("model document: ") + e.what(), e.byte);
  }
}

void check_envelope(const json& doc) {
  if (!doc.is_object() || doc.value("format", "") != "dfp-model") {
    throw DataError("model document: not a dfp-model JSON document");
  }
  const int version = doc.value("version", -1);
  if (version != kModelFormatVersion) {
    throw DataError("model document: unsupported version " + std::to_string(version) +
                    " (expected " + std::to_string(kModelFormatVersion) + ")");
  }
}

}  // namespace

void save_model(const DecisionTreeModel& model, std::ostream& out) {
  json doc = envelope("j48", model.schema_names(), model.schema_fingerprint(),
                      model.classes());
  doc["tree"] = tree_node_to_json(model.nodes(), 0, model.schema_names());
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("model document: write failure");
}

void save_model(const DecisionTableModel& model, std::ostream& out) {
  json doc = envelope("dtable", model.schema_names(), model.schema_fingerprint(),
                      model.classes());
  doc["selected_features"] = model.selected_features();
  doc["majority_class"] = model.majority_class();
  doc["cells"] = table_cells_to_json(model);
  out << doc.dump(2) << '\n';
  if (!out) throw DataError("model document: write failure");
}

void save_model(const AnyModel& model, std::ostream& out) {
  std::visit([&](const auto& m) { save_model(m, out); }, model);
}

AnyModel load_model(std::istream& in) {
  const json doc = parse_document(in);
  check_envelope(doc);

  const auto schema_names = doc.at("schema").at("names").get<std::vector<std::string>>();
  const std::uint64_t fingerprint = fingerprint_from_json(doc.at("schema").at("fingerprint"));
  const auto classes = doc.at("classes").get<std::vector<std::string>>();
  if (classes.empty()) throw DataError("model document: empty class list");
  if (!std::is_sorted(classes.begin(), classes.end())) {
    throw DataError("model document: classes must be sorted");
  }

  const std::string kind = doc.value("kind", "");
  if (kind == "j48") {
    std::vector<DecisionTreeModel::Node> nodes;
    tree_node_from_json(doc.at("tree"), schema_names, classes.size(), nodes);  // root lands at 0
    return DecisionTreeModel(schema_names, fingerprint, classes, std::move(nodes));
  }
  if (kind == "dtable") {
    const auto selected = doc.at("selected_features").get<std::vector<std::string>>();
    std::vector<std::size_t> indices;
    indices.reserve(selected.size());
    for (const std::string& name : selected) {
      auto it = std::find(schema_names.begin(), schema_names.end(), name);
      if (it == schema_names.end()) {
        throw DataError("model: selected feature not in schema: '" + name + "'");
      }
      indices.push_back(static_cast<std::size_t>(it - schema_names.begin()));
    }
    DecisionTableModel::Table table;
    for (const json& cell : doc.at("cells")) {
      FeatureVector key;
      for (const json& v : cell.at("key")) {
        if (v.is_null()) {
          key.push_back(FeatureValue::missing());
        } else {
          key.push_back(FeatureValue(v.get<std::int64_t>()));
        }
      }
      if (key.size() != selected.size()) throw DataError("model: cell key arity mismatch");
      auto dist = cell.at("dist").get<std::vector<double>>();
      if (dist.size() != classes.size()) throw DataError("model: cell distribution arity mismatch");
      table[std::move(key)] = std::move(dist);
    }
    const std::string majority = doc.at("majority_class").get<std::string>();
    if (!std::binary_search(classes.begin(), classes.end(), majority)) {
      throw DataError("model: majority class not in class list");
    }
    return DecisionTableModel(schema_names, fingerprint, classes, selected,
                              std::move(indices), std::move(table), majority);
  }
  throw DataError("model document: unknown kind '" + kind + "'");
}

std::string model_kind(const AnyModel& model) {
  return std::holds_alternative<DecisionTreeModel>(model) ? "j48" : "dtable";
}

const std::vector<std::string>& model_classes(const AnyModel& model) {
  return std::visit([](const auto& m) -> const std::vector<std::string>& { return m.classes(); },
                    model);
}

const std::vector<std::string>& model_schema_names(const AnyModel& model) {
  return std::visit(
      [](const auto& m) -> const std::vector<std::string>& { return m.schema_names(); }, model);
}

std::uint64_t model_schema_fingerprint(const AnyModel& model) {
  return std::visit([](const auto& m) { return m.schema_fingerprint(); }, model);
}

ClassDistribution classify(const AnyModel& model, const FeatureVector& values) {
  return std::visit([&](const auto& m) { return classify(m, values); }, model);
}

}  // namespace dfp
