#ifndef DFP_FEATURE_EVAL_HPP
#define DFP_FEATURE_EVAL_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dfp/dataset.hpp"

namespace dfp {

// Shannon entropy in bits over class weights; total weight 0 is defined as 0.
double entropy(const std::map<std::string, double>& class_weights);

struct AttributeScore {
  std::string feature;
  double gain_ratio = 0.0;
  double info_gain = 0.0;
  double split_info = 0.0;
  std::optional<double> threshold;  // best binary threshold; none when no split helps
};

// Descending by gain_ratio; ties keep schema order.
struct Ranking {
  std::vector<AttributeScore> scores;
};

// C4.5-style numeric attribute score: best binary threshold among midpoints
// of adjacent distinct known values, fractional-missing discounting
// (info_gain scaled by the known-weight fraction), split_info over the
// {<=, >, missing} partition. Constant or all-missing features score zero.
AttributeScore gain_ratio(const Dataset& dataset, std::string_view feature);

Ranking rank_features(const Dataset& dataset);  // throws DataError when empty

// Schema minus the named features, order preserved. A name that is absent
// (or listed twice) throws DataError.
FeatureSchema apply_removal(const FeatureSchema& schema,
                            const std::vector<std::string>& remove);

// Ranking CSV: feature,gain_ratio,info_gain,split_info,threshold
// (threshold cell empty when none). Doubles use shortest round-trip form.
void write_ranking_csv(const Ranking& ranking, std::ostream& out);
Ranking read_ranking_csv(std::istream& in);

// ---- shared threshold machinery (tree induction uses the same code path) --

// Known-value rows of one feature column, plus the weight that is missing.
struct SplitColumn {
  std::vector<std::int64_t> values;
  std::vector<double> weights;
  std::vector<std::uint32_t> labels;  // class indices, < num_classes
  double missing_weight = 0.0;
  std::size_t num_classes = 0;
};

struct SplitScore {
  double info_gain = 0.0;
  double split_info = 0.0;
  double gain_ratio = 0.0;
  std::optional<double> threshold;
  double weight_le = 0.0;  // known weight at <= side of the best threshold
  double weight_gt = 0.0;
};

// min_child_weight > 0 rejects thresholds leaving less known weight on a
// side (tree induction); 0 admits every midpoint (attribute ranking).
SplitScore score_split_column(const SplitColumn& column, double min_child_weight);

}  // namespace dfp

#endif
