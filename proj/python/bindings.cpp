#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <fstream>
#include <optional>
#include <sstream>
#include <variant>

#include "dfp/csv.hpp"
#include "dfp/errors.hpp"
#include "dfp/eval.hpp"
#include "dfp/extract.hpp"
#include "dfp/feature_eval.hpp"
#include "dfp/model_io.hpp"

namespace py = pybind11;

namespace {

// Python sees feature values as int-or-None.
dfp::FeatureVector to_vector(const std::vector<std::optional<std::int64_t>>& values) {
  dfp::FeatureVector out;
  out.reserve(values.size());
  for (const auto& v : values) {
    out.push_back(v ? dfp::FeatureValue(*v) : dfp::FeatureValue::missing());
  }
  return out;
}

std::vector<std::optional<std::int64_t>> from_vector(const dfp::FeatureVector& values) {
  std::vector<std::optional<std::int64_t>> out;
  out.reserve(values.size());
  for (const dfp::FeatureValue v : values) {
    if (v.is_missing()) {
      out.emplace_back(std::nullopt);
    } else {
      out.emplace_back(v.value());
    }
  }
  return out;
}

dfp::FeatureSchema resolve_schema(const std::string& name_or_path) {
  if (auto mode = dfp::schema_mode_from_string(name_or_path)) {
    return dfp::canonical_schema(*mode);
  }
  std::ifstream in(name_or_path);
  if (!in) throw dfp::DataError("cannot open schema file: " + name_or_path);
  return dfp::load_schema_json(in);
}

struct PyModel {
  dfp::AnyModel model;
};

py::dict metrics_to_dict(const dfp::Metrics& m) {
  py::dict out;
  out["model_kind"] = m.model_kind;
  out["dataset"] = m.dataset_name;
  out["instances"] = m.instance_count;
  out["features"] = m.feature_count;
  out["accuracy"] = m.accuracy;
  out["classes"] = m.classes;
  out["confusion"] = m.confusion;
  py::dict per_class;
  for (std::size_t c = 0; c < m.classes.size(); ++c) {
    py::dict row;
    row["precision"] = m.per_class[c].precision;
    row["recall"] = m.per_class[c].recall;
    row["f1"] = m.per_class[c].f1;
    per_class[py::str(m.classes[c])] = row;
  }
  out["per_class"] = per_class;
  return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Single-packet device fingerprinting toolkit (C++ core)";

  py::register_exception<dfp::DataError>(m, "DataError");

  py::class_<dfp::FeatureSchema>(m, "Schema")
      .def_property_readonly("names", &dfp::FeatureSchema::names)
      .def("__len__", &dfp::FeatureSchema::size)
      .def("__contains__",
           [](const dfp::FeatureSchema& s, const std::string& name) { return s.contains(name); });

  py::class_<dfp::Dataset>(m, "Dataset")
      .def_property_readonly("schema", &dfp::Dataset::schema)
      .def_property_readonly("classes", &dfp::Dataset::classes)
      .def("__len__", &dfp::Dataset::size)
      .def("instance",
           [](const dfp::Dataset& d, std::size_t i) {
             const auto& inst = d.instances().at(i);
             return py::make_tuple(from_vector(inst.values), inst.label);
           });

  py::class_<PyModel>(m, "Model")
      .def_property_readonly("kind", [](const PyModel& m_) { return dfp::model_kind(m_.model); })
      .def_property_readonly(
          "classes", [](const PyModel& m_) { return dfp::model_classes(m_.model); })
      .def("classify",
           [](const PyModel& m_, const std::vector<std::optional<std::int64_t>>& values) {
             const auto dist = dfp::classify(m_.model, to_vector(values));
             const auto& classes = dfp::model_classes(m_.model);
             py::dict out;
             for (std::size_t c = 0; c < classes.size(); ++c) {
               out[py::str(classes[c])] = dist.probs[c];
             }
             return out;
           })
      .def("predict",
           [](const PyModel& m_, const std::vector<std::optional<std::int64_t>>& values) {
             const auto dist = dfp::classify(m_.model, to_vector(values));
             return dfp::model_classes(m_.model)[dist.predicted];
           })
      .def("save",
           [](const PyModel& m_, const std::string& path) {
             std::ofstream out(path);
             if (!out) throw dfp::DataError("cannot open output file: " + path);
             dfp::save_model(m_.model, out);
           })
      .def_static("load", [](const std::string& path) {
        std::ifstream in(path);
        if (!in) throw dfp::DataError("cannot open model file: " + path);
        return PyModel{dfp::load_model(in)};
      });

  m.def("canonical_schema", [](const std::string& mode) {
    auto parsed = dfp::schema_mode_from_string(mode);
    if (!parsed) throw dfp::DataError("unknown schema mode: '" + mode + "' (full24|reduced22)");
    return dfp::canonical_schema(*parsed);
  });

  m.def("make_dataset",
        [](const dfp::FeatureSchema& schema,
           const std::vector<std::pair<std::vector<std::optional<std::int64_t>>, std::string>>&
               rows) {
          std::vector<dfp::LabeledInstance> instances;
          instances.reserve(rows.size());
          for (const auto& [values, label] : rows) {
            instances.push_back({to_vector(values), label, 1.0});
          }
          return dfp::Dataset(schema, std::move(instances));
        },
        py::arg("schema"), py::arg("rows"));

  m.def("read_csv", [](const std::string& path) {
    std::ifstream in(path);
    if (!in) throw dfp::DataError("cannot open input file: " + path);
    return dfp::read_csv(in);
  });

  m.def("write_csv", [](const dfp::Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw dfp::DataError("cannot open output file: " + path);
    dfp::write_csv(dataset, out);
  });

  m.def(
      "extract_dataset",
      [](const std::vector<std::string>& pcaps, const std::string& devices_csv,
         const std::string& schema, bool strict) {
        std::ifstream dev_in(devices_csv);
        if (!dev_in) throw dfp::DataError("cannot open device map: " + devices_csv);
        const dfp::DeviceMap devices = dfp::DeviceMap::from_csv(dev_in);
        std::vector<std::filesystem::path> paths(pcaps.begin(), pcaps.end());
        return dfp::extract_dataset(paths, devices, resolve_schema(schema), {.strict = strict});
      },
      py::arg("pcaps"), py::arg("devices_csv"), py::arg("schema") = "full24",
      py::arg("strict") = false);

  m.def("rank_features", [](const dfp::Dataset& dataset) {
    py::list out;
    for (const auto& s : dfp::rank_features(dataset).scores) {
      py::dict row;
      row["feature"] = s.feature;
      row["gain_ratio"] = s.gain_ratio;
      row["info_gain"] = s.info_gain;
      row["split_info"] = s.split_info;
      row["threshold"] = s.threshold ? py::cast(*s.threshold) : py::none();
      out.append(row);
    }
    return out;
  });

  m.def(
      "train_j48",
      [](const dfp::Dataset& dataset, double min_leaf, double confidence, bool pruning,
         std::optional<int> max_depth) {
        dfp::TreeParams params;
        params.min_leaf_weight = min_leaf;
        params.confidence = confidence;
        params.pruning = pruning;
        params.max_depth = max_depth;
        return PyModel{dfp::train_tree(dataset, params)};
      },
      py::arg("dataset"), py::arg("min_leaf") = 2.0, py::arg("confidence") = 0.25,
      py::arg("pruning") = true, py::arg("max_depth") = std::nullopt);

  m.def(
      "train_decision_table",
      [](const dfp::Dataset& dataset, int stale_limit) {
        return PyModel{dfp::train_decision_table(dataset, {.stale_limit = stale_limit})};
      },
      py::arg("dataset"), py::arg("stale_limit") = 5);

  m.def(
      "split_dataset",
      [](const dfp::Dataset& dataset, double fraction, std::uint64_t seed, bool stratified) {
        auto [train, test] = dfp::split_dataset(dataset, {fraction, seed, stratified});
        return py::make_tuple(std::move(train), std::move(test));
      },
      py::arg("dataset"), py::arg("fraction") = 0.8, py::arg("seed") = 0,
      py::arg("stratified") = false);

  m.def(
      "evaluate",
      [](const PyModel& model, const dfp::Dataset& test, const std::string& name) {
        return metrics_to_dict(dfp::evaluate(model.model, test, name));
      },
      py::arg("model"), py::arg("test"), py::arg("name") = "");

  m.def("loo_merit", &dfp::loo_merit, py::arg("dataset"), py::arg("subset"));
}
