#include "dfp/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <string>
#include <vector>

#include "csv_util.hpp"
#include "dfp/errors.hpp"

namespace dfp {

namespace {

using detail::split_csv_record;
using detail::write_csv_cell;

FeatureValue parse_value(const std::string& cell, std::size_t row, const std::string& column) {
  if (cell == "?") return FeatureValue::missing();
  std::int64_t v = 0;
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || cell.empty()) {
    throw ParseError("row " + std::to_string(row) + ", column '" + column +
                         "': not an integer: '" + cell + "'",
                     row);
  }
  return FeatureValue(v);
}

}  // namespace

void write_csv(const Dataset& dataset, std::ostream& out) {
  const auto& schema = dataset.schema();
  for (std::size_t i = 0; i < schema.size(); ++i) {
    write_csv_cell(out, schema.at(i).name);
    out << ',';
  }
  out << "label\n";
  for (const LabeledInstance& inst : dataset.instances()) {
    for (const FeatureValue v : inst.values) {
      if (v.is_missing()) {
        out << '?';
      } else {
        out << v.value();
      }
      out << ',';
    }
    write_csv_cell(out, inst.label);
    out << '\n';
  }
  if (!out) throw DataError("dataset CSV: write failure");
}

Dataset read_csv(std::istream& in, const FeatureSchema* expected) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("empty input: no header row", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_csv_record(line, 0);

  if (header.empty() || header.back() != "label") {
    for (const std::string& h : header) {
      if (h == "label") {
        throw ParseError("header: 'label' must be the last column", 0);
      }
    }
    throw ParseError("header: missing 'label' column", 0);
  }
  header.pop_back();

  FeatureSchema schema;
  if (expected != nullptr) {
    const auto names = expected->names();
    if (names.size() != header.size()) {
      throw ParseError("header has " + std::to_string(header.size()) +
                           " features, expected schema has " + std::to_string(names.size()),
                       0);
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (names[i] != header[i]) {
        throw ParseError("header column " + std::to_string(i + 1) + " is '" + header[i] +
                             "', expected '" + names[i] + "'",
                         0);
      }
    }
    schema = *expected;
  } else {
    std::vector<FeatureDef> defs;
    defs.reserve(header.size());
    for (const std::string& name : header) defs.push_back(feature_def_from_name(name));
    schema = FeatureSchema(std::move(defs));
  }

  std::vector<LabeledInstance> instances;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells = split_csv_record(line, row);
    if (cells.size() != schema.size() + 1) {
      throw ParseError("row " + std::to_string(row) + ": expected " +
                           std::to_string(schema.size() + 1) + " cells, found " +
                           std::to_string(cells.size()),
                       row);
    }
    LabeledInstance inst;
    inst.values.reserve(schema.size());
    for (std::size_t i = 0; i < schema.size(); ++i) {
      inst.values.push_back(parse_value(cells[i], row, schema.at(i).name));
    }
    inst.label = std::move(cells.back());
    instances.push_back(std::move(inst));
  }
  return Dataset(std::move(schema), std::move(instances));
}

}  // namespace dfp
