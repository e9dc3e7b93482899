#include "dfp/feature_eval.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>

#include "csv_util.hpp"
#include "dfp/errors.hpp"

namespace dfp {

namespace {

constexpr double kTinyGain = 1e-12;

inline double xlog2(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// H over raw weights: log2(W) - S/W with S = sum w*log2(w).
inline double entropy_from_sums(double sum_xlog, double total) {
  if (total <= 0.0) return 0.0;
  double h = std::log2(total) - sum_xlog / total;
  return h > 0.0 ? h : 0.0;  // clamp -0 style noise
}

std::string format_double(double v) {
  char buf[32];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, ptr);
}

double parse_double(const std::string& cell, std::size_t row) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size()) {
    throw ParseError("ranking row " + std::to_string(row) + ": bad number '" + cell + "'", row);
  }
  return v;
}

}  // namespace

double entropy(const std::map<std::string, double>& class_weights) {
  double total = 0.0, sum_xlog = 0.0;
  for (const auto& [label, w] : class_weights) {
    if (w < 0.0) throw DataError("entropy: negative weight for class '" + label + "'");
    total += w;
    sum_xlog += xlog2(w);
  }
  return entropy_from_sums(sum_xlog, total);
}

SplitScore score_split_column(const SplitColumn& column, double min_child_weight) {
  SplitScore score;
  const std::size_t n = column.values.size();
  const std::size_t k = column.num_classes;
  if (n == 0 || k == 0) return score;

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return column.values[a] < column.values[b];
  });

  // Totals over known rows.
  std::vector<double> right(k, 0.0);
  double known_weight = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    right[column.labels[i]] += column.weights[i];
    known_weight += column.weights[i];
  }
  if (known_weight <= 0.0) return score;

  const double total_weight = known_weight + column.missing_weight;
  const double known_fraction = known_weight / total_weight;

  double sum_xlog_total = 0.0;
  for (double w : right) sum_xlog_total += xlog2(w);
  const double h_known = entropy_from_sums(sum_xlog_total, known_weight);

  // Sweep rows in value order, moving weight from the right bucket to the
  // left one; entropy sums are maintained incrementally so each candidate
  // threshold costs O(1).
  std::vector<double> left(k, 0.0);
  double w_left = 0.0;
  double s_left = 0.0, s_right = sum_xlog_total;

  double best_gain = 0.0;
  double best_threshold = 0.0;
  double best_w_le = 0.0;
  bool have_best = false;

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t row = order[i];
    if (i > 0 && column.values[row] != column.values[order[i - 1]]) {
      const double w_right = known_weight - w_left;
      if (w_left >= min_child_weight && w_right >= min_child_weight) {
        const double h_le = entropy_from_sums(s_left, w_left);
        const double h_gt = entropy_from_sums(s_right, w_right);
        const double gain =
            known_fraction *
            (h_known - (w_left / known_weight) * h_le - (w_right / known_weight) * h_gt);
        if (gain > best_gain + kTinyGain) {
          best_gain = gain;
          best_threshold = (static_cast<double>(column.values[row]) +
                            static_cast<double>(column.values[order[i - 1]])) /
                           2.0;
          best_w_le = w_left;
          have_best = true;
        }
      }
    }
    const std::uint32_t c = column.labels[row];
    const double w = column.weights[row];
    s_left += xlog2(left[c] + w) - xlog2(left[c]);
    s_right += xlog2(right[c] - w) - xlog2(right[c]);
    left[c] += w;
    right[c] -= w;
    w_left += w;
  }

  if (!have_best) return score;  // constant column, or nothing admissible

  score.info_gain = best_gain;
  score.threshold = best_threshold;
  score.weight_le = best_w_le;
  score.weight_gt = known_weight - best_w_le;

  // Split information over the realized partition, missing branch included.
  double split_info = xlog2(total_weight) -
                      (xlog2(score.weight_le) + xlog2(score.weight_gt) +
                       xlog2(column.missing_weight));
  split_info /= total_weight;
  score.split_info = split_info > 0.0 ? split_info : 0.0;
  if (score.split_info > 0.0) {
    score.gain_ratio = std::clamp(score.info_gain / score.split_info, 0.0, 1.0);
  }
  return score;
}

namespace {

SplitColumn column_for_feature(const Dataset& dataset, std::size_t feature_index) {
  SplitColumn column;
  column.num_classes = dataset.classes().size();
  column.values.reserve(dataset.size());
  column.weights.reserve(dataset.size());
  column.labels.reserve(dataset.size());
  for (const LabeledInstance& inst : dataset.instances()) {
    const FeatureValue v = inst.values[feature_index];
    if (v.is_missing()) {
      column.missing_weight += inst.weight;
      continue;
    }
    column.values.push_back(v.value());
    column.weights.push_back(inst.weight);
    column.labels.push_back(
        static_cast<std::uint32_t>(*dataset.class_index(inst.label)));
  }
  return column;
}

}  // namespace

AttributeScore gain_ratio(const Dataset& dataset, std::string_view feature) {
  auto idx = dataset.schema().index_of(feature);
  if (!idx) throw DataError("unknown feature: '" + std::string(feature) + "'");
  const SplitScore s = score_split_column(column_for_feature(dataset, *idx), 0.0);
  AttributeScore out;
  out.feature = std::string(feature);
  out.gain_ratio = s.gain_ratio;
  out.info_gain = s.info_gain;
  out.split_info = s.split_info;
  out.threshold = s.threshold;
  return out;
}

Ranking rank_features(const Dataset& dataset) {
  if (dataset.empty()) throw DataError("rank_features: empty dataset");
  Ranking ranking;
  ranking.scores.reserve(dataset.schema().size());
  for (const FeatureDef& def : dataset.schema().features()) {
    ranking.scores.push_back(gain_ratio(dataset, def.name));
  }
  std::stable_sort(ranking.scores.begin(), ranking.scores.end(),
                   [](const AttributeScore& a, const AttributeScore& b) {
                     return a.gain_ratio > b.gain_ratio;
                   });
  return ranking;
}

FeatureSchema apply_removal(const FeatureSchema& schema,
                            const std::vector<std::string>& remove) {
  std::vector<FeatureDef> kept = schema.features();
  for (const std::string& name : remove) {
    auto it = std::find_if(kept.begin(), kept.end(),
                           [&](const FeatureDef& d) { return d.name == name; });
    if (it == kept.end()) {
      throw DataError("apply_removal: feature not in schema: '" + name + "'");
    }
    kept.erase(it);
  }
  return FeatureSchema(std::move(kept));
}

void write_ranking_csv(const Ranking& ranking, std::ostream& out) {
  out << "feature,gain_ratio,info_gain,split_info,threshold\n";
  for (const AttributeScore& s : ranking.scores) {
    detail::write_csv_cell(out, s.feature);
    out << ',' << format_double(s.gain_ratio) << ',' << format_double(s.info_gain) << ','
        << format_double(s.split_info) << ',';
    if (s.threshold) out << format_double(*s.threshold);
    out << '\n';
  }
  if (!out) throw DataError("ranking CSV: write failure");
}

Ranking read_ranking_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("ranking CSV: empty input", 0);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "feature,gain_ratio,info_gain,split_info,threshold") {
    throw ParseError("ranking CSV: unexpected header '" + line + "'", 0);
  }
  Ranking ranking;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = detail::split_csv_record(line, row);
    if (cells.size() != 5) {
      throw ParseError("ranking row " + std::to_string(row) + ": expected 5 cells", row);
    }
    AttributeScore s;
    s.feature = cells[0];
    s.gain_ratio = parse_double(cells[1], row);
    s.info_gain = parse_double(cells[2], row);
    s.split_info = parse_double(cells[3], row);
    if (!cells[4].empty()) s.threshold = parse_double(cells[4], row);
    ranking.scores.push_back(std::move(s));
  }
  return ranking;
}

}  // namespace dfp
