#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "dfp/errors.hpp"
#include "dfp/feature_eval.hpp"
#include "support/family.hpp"
#include "support/generators.hpp"
#include "support/oracles.hpp"
#include "support/toy_data.hpp"

using namespace dfp;

TEST_CASE("entropy basics") {
  CHECK(entropy({{"a", 4.0}, {"b", 4.0}}) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(entropy({{"a", 8.0}}) == doctest::Approx(0.0).epsilon(1e-12));
  // Frozen from a high-precision evaluation of -sum p log2 p at 9/14, 5/14.
  CHECK(entropy({{"a", 9.0}, {"b", 5.0}}) ==
        doctest::Approx(0.9402859586706311).epsilon(1e-9));
  CHECK(entropy({}) == 0.0);
  CHECK(entropy({{"a", 0.0}, {"b", 0.0}}) == 0.0);
  CHECK_THROWS_AS(entropy({{"a", -1.0}}), DataError);
}

TEST_CASE("entropy stays within [0, log2 k] on random weight maps") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> weight(0.0, 10.0);
  std::uniform_int_distribution<int> n_classes(1, 8);
  for (int round = 0; round < 2000; ++round) {
    std::map<std::string, double> counts;
    const int k = n_classes(rng);
    int nonzero = 0;
    for (int c = 0; c < k; ++c) {
      const double w = weight(rng);
      counts[std::string(1, static_cast<char>('a' + c))] = w;
      if (w > 0) ++nonzero;
    }
    const double h = entropy(counts);
    CHECK(h >= 0.0);
    CHECK(h <= std::log2(std::max(nonzero, 1)) + 1e-9);
  }
}

TEST_CASE("constant feature scores zero") {
  Dataset ds = toy::make({"f1"}, {{{7}, "a"}, {{7}, "b"}, {{7}, "a"}});
  const AttributeScore s = gain_ratio(ds, "f1");
  CHECK(s.gain_ratio == 0.0);
  CHECK(s.info_gain == 0.0);
  CHECK_FALSE(s.threshold.has_value());
}

TEST_CASE("all-missing feature scores zero") {
  Dataset ds = toy::make({"f1", "f2"}, {{{std::nullopt, 1}, "a"}, {{std::nullopt, 2}, "b"}});
  const AttributeScore s = gain_ratio(ds, "f1");
  CHECK(s.gain_ratio == 0.0);
  CHECK(s.info_gain == 0.0);
}

TEST_CASE("perfect binary predictor scores gain ratio 1") {
  Dataset ds = toy::make({"f1"}, {{{0}, "a"}, {{0}, "a"}, {{1}, "b"}, {{1}, "b"}});
  const AttributeScore s = gain_ratio(ds, "f1");
  CHECK(s.info_gain == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.split_info == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.gain_ratio == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(s.threshold == doctest::Approx(0.5));
}

TEST_CASE("unknown feature name is an error") {
  CHECK_THROWS_AS(gain_ratio(toy::golf(), "nope"), DataError);
}

TEST_CASE("golf dataset scores match frozen oracle values") {
  // Frozen from an independent direct evaluation of the formula.
  Dataset ds = toy::golf();
  CHECK(gain_ratio(ds, "outlook").gain_ratio ==
        doctest::Approx(0.1087366695918781).epsilon(1e-9));
  CHECK(gain_ratio(ds, "outlook").threshold == doctest::Approx(0.5));
  CHECK(gain_ratio(ds, "temperature").gain_ratio ==
        doctest::Approx(0.30547141518417825).epsilon(1e-9));
  CHECK(gain_ratio(ds, "temperature").threshold == doctest::Approx(84.0));
  CHECK(gain_ratio(ds, "humidity").gain_ratio ==
        doctest::Approx(0.15183550136234164).epsilon(1e-9));
  CHECK(gain_ratio(ds, "humidity").threshold == doctest::Approx(82.5));
  CHECK(gain_ratio(ds, "windy").gain_ratio ==
        doctest::Approx(0.04884861551152088).epsilon(1e-9));
}

TEST_CASE("gain ratio equals the brute-force oracle on the exhaustive family") {
  const family::Result result = family::run_gain_ratio_family(400);
  CHECK(result.datasets > 1500);
  CHECK(result.max_diff <= 1e-9);
  CHECK(result.thresholds_agree);
}

TEST_CASE("gain ratio stays in [0,1] and is label-permutation invariant") {
  std::mt19937_64 rng(1234);
  testgen::DatasetShape shape;
  shape.max_classes = 3;
  for (int round = 0; round < 1000; ++round) {
    const Dataset ds = testgen::random_dataset(rng, shape);
    for (const FeatureDef& def : ds.schema().features()) {
      const AttributeScore s = gain_ratio(ds, def.name);
      CHECK(s.gain_ratio >= 0.0);
      CHECK(s.gain_ratio <= 1.0);
      CHECK(s.info_gain >= 0.0);
      CHECK(s.split_info >= 0.0);
    }

    // Bijectively rename labels (a<->z prefix flip keeps them distinct).
    std::vector<LabeledInstance> renamed = ds.instances();
    for (LabeledInstance& inst : renamed) inst.label = "z" + inst.label;
    const Dataset flipped(ds.schema(), std::move(renamed));
    for (std::size_t f = 0; f < ds.schema().size(); ++f) {
      const auto a = gain_ratio(ds, ds.schema().at(f).name);
      const auto b = gain_ratio(flipped, ds.schema().at(f).name);
      CHECK(a.gain_ratio == doctest::Approx(b.gain_ratio).epsilon(1e-12));
      CHECK(a.info_gain == doctest::Approx(b.info_gain).epsilon(1e-12));
    }
  }
}

TEST_CASE("ranking is descending, stable, and order-independent") {
  Dataset ds = toy::make({"noise", "perfect", "constant"},
                         {{{5, 0, 3}, "a"},
                          {{9, 0, 3}, "a"},
                          {{5, 1, 3}, "b"},
                          {{2, 1, 3}, "b"},
                          {{9, 0, 3}, "a"},
                          {{2, 1, 3}, "b"}});
  const Ranking ranking = rank_features(ds);
  REQUIRE(ranking.scores.size() == 3);
  CHECK(ranking.scores[0].feature == "perfect");
  CHECK(std::is_sorted(ranking.scores.begin(), ranking.scores.end(),
                       [](const auto& a, const auto& b) { return a.gain_ratio > b.gain_ratio; }));

  // Ties (noise and constant both score 0) keep schema order.
  CHECK(ranking.scores[1].feature == "noise");
  CHECK(ranking.scores[2].feature == "constant");

  // Permuting instances changes nothing.
  std::vector<LabeledInstance> reversed(ds.instances().rbegin(), ds.instances().rend());
  const Ranking again = rank_features(Dataset(ds.schema(), std::move(reversed)));
  for (std::size_t i = 0; i < ranking.scores.size(); ++i) {
    CHECK(ranking.scores[i].feature == again.scores[i].feature);
    CHECK(ranking.scores[i].gain_ratio ==
          doctest::Approx(again.scores[i].gain_ratio).epsilon(1e-12));
  }
}

TEST_CASE("duplicating every instance leaves scores unchanged") {
  Dataset ds = toy::golf();
  std::vector<LabeledInstance> doubled = ds.instances();
  doubled.insert(doubled.end(), ds.instances().begin(), ds.instances().end());
  const Dataset twice(ds.schema(), std::move(doubled));
  for (const FeatureDef& def : ds.schema().features()) {
    CHECK(gain_ratio(ds, def.name).gain_ratio ==
          doctest::Approx(gain_ratio(twice, def.name).gain_ratio).epsilon(1e-12));
  }
}

TEST_CASE("rank_features rejects an empty dataset") {
  CHECK_THROWS_AS(rank_features(Dataset(toy::schema_of({"f1"}), {})), DataError);
}

TEST_CASE("apply_removal drops names in order and rejects unknowns") {
  const FeatureSchema full = canonical_schema(SchemaMode::kFull24);
  const FeatureSchema reduced = apply_removal(
      full, {"tcp.options.timestamp.tsval", "tcp.options.timestamp.tsecr"});
  CHECK(reduced == canonical_schema(SchemaMode::kReduced22));

  CHECK(apply_removal(full, {}) == full);
  CHECK_THROWS_AS(apply_removal(full, {"nope"}), DataError);
  CHECK_THROWS_AS(apply_removal(full, {"ip.ttl", "ip.ttl"}), DataError);
}

TEST_CASE("ranking csv round trip") {
  const Ranking ranking = rank_features(toy::golf());
  std::stringstream buf;
  write_ranking_csv(ranking, buf);
  const Ranking back = read_ranking_csv(buf);
  REQUIRE(back.scores.size() == ranking.scores.size());
  for (std::size_t i = 0; i < ranking.scores.size(); ++i) {
    CHECK(back.scores[i].feature == ranking.scores[i].feature);
    CHECK(back.scores[i].gain_ratio == ranking.scores[i].gain_ratio);
    CHECK(back.scores[i].threshold == ranking.scores[i].threshold);
  }

  std::stringstream bad("wrong,header\n");
  CHECK_THROWS_AS(read_ranking_csv(bad), ParseError);
}
