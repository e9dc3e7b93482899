#ifndef DFP_MODEL_IO_HPP
#define DFP_MODEL_IO_HPP

#include <iosfwd>
#include <string>
#include <variant>

#include "dfp/c45_tree.hpp"
#include "dfp/decision_table.hpp"

namespace dfp {

// Both classifiers share one versioned JSON envelope distinguished by a
// "kind" tag ("j48" / "dtable").
inline constexpr int kModelFormatVersion = 1;

using AnyModel = std::variant<DecisionTreeModel, DecisionTableModel>;

void save_model(const DecisionTreeModel& model, std::ostream& out);
void save_model(const DecisionTableModel& model, std::ostream& out);
void save_model(const AnyModel& model, std::ostream& out);

// Rejects unknown versions and malformed documents (ParseError carries the
// byte offset for truncated/invalid JSON).
AnyModel load_model(std::istream& in);

std::string model_kind(const AnyModel& model);  // "j48" or "dtable"

const std::vector<std::string>& model_classes(const AnyModel& model);
const std::vector<std::string>& model_schema_names(const AnyModel& model);
std::uint64_t model_schema_fingerprint(const AnyModel& model);

ClassDistribution classify(const AnyModel& model, const FeatureVector& values);

}  // namespace dfp

#endif
