#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "oracles.hpp"
#include "todg/fixtures.hpp"
#include "todg/metrics.hpp"
#include "todg/rng.hpp"

using namespace todg;

namespace {

std::string fixture(const std::string& rel) {
  return std::string(TODG_FIXTURES_DIR) + "/" + rel;
}

PredictionFile perfect_predictions(const Corpus& gold) {
  PredictionFile preds;
  for (const NormalizedDialogue& d : gold.dialogues)
    preds[d.dialogue_id] = gold_user_states(d);
  return preds;
}

std::vector<double> random_vector(Rng& rng, size_t n, bool distinct) {
  std::vector<double> v;
  for (size_t i = 0; i < n; ++i) {
    double x = static_cast<double>(rng.next_below(distinct ? 1000000 : 12));
    if (distinct) x += static_cast<double>(i) * 1e-7;
    v.push_back(x);
  }
  return v;
}

}  // namespace

TEST_CASE("identical predictions score 100") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  CHECK(joint_goal_accuracy(perfect_predictions(gold), gold) ==
        Catch::Approx(100.0));
}

TEST_CASE("two of three matched turns give 66.67") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  gold.dialogues.resize(1);  // d01: user turns 0 and 2
  // keep only 3 user turns across two dialogues: shrink to one dialogue with
  // 2 user turns plus a second dialogue with 1 user turn
  NormalizedDialogue extra;
  extra.dialogue_id = "x";
  extra.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = "hello";
  user.frames.push_back({"hotel", {}, {{"hotel-area", "west"}}});
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "hi";
  extra.turns = {user, system};
  gold.dialogues.push_back(extra);

  PredictionFile preds = perfect_predictions(gold);
  preds["x"][0] = {{"hotel-area", "east"}};  // one wrong turn of three
  CHECK(joint_goal_accuracy(preds, gold) == Catch::Approx(200.0 / 3.0));
  CHECK(format_fixed(joint_goal_accuracy(preds, gold), 2) == "66.67");
}

TEST_CASE("an extra predicted slot makes the turn incorrect") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  gold.dialogues.resize(1);
  PredictionFile preds = perfect_predictions(gold);
  preds["d01"][0].push_back({"attraction-type", "museum"});
  double total_turns = 2.0;
  CHECK(joint_goal_accuracy(preds, gold) ==
        Catch::Approx(100.0 * (total_turns - 1) / total_turns));
}

TEST_CASE("normalization forgives case and whitespace, not content") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  gold.dialogues.resize(1);
  PredictionFile preds = perfect_predictions(gold);
  for (auto& turn : preds["d01"])
    for (SlotValue& sv : turn) sv.value = " " + to_lower_ascii(sv.value) + "  ";
  CHECK(joint_goal_accuracy(preds, gold) == Catch::Approx(100.0));
}

TEST_CASE("alignment errors name the offender") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  PredictionFile preds = perfect_predictions(gold);
  preds.erase("d05");
  try {
    joint_goal_accuracy(preds, gold);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(std::string(e.what()).find("d05") != std::string::npos);
  }
  preds = perfect_predictions(gold);
  preds["d03"].pop_back();
  try {
    joint_goal_accuracy(preds, gold);
    FAIL("expected AlignmentError");
  } catch (const AlignmentError& e) {
    CHECK(std::string(e.what()).find("d03") != std::string::npos);
  }
}

TEST_CASE("per-dialogue accuracy counts whole conversations") {
  Corpus gold = fixtures::generate_mini_corpus(0);
  PredictionFile preds = perfect_predictions(gold);
  preds["d01"][0] = {{"attraction-area", "wrong"}};
  double per_turn = joint_goal_accuracy(preds, gold, false);
  double per_dialogue = joint_goal_accuracy(preds, gold, true);
  CHECK(per_dialogue == Catch::Approx(90.0));  // 9 of 10 dialogues intact
  CHECK(per_turn > per_dialogue);
}

TEST_CASE("jga agrees with the set-match oracle under random perturbations") {
  Corpus gold = fixtures::generate_mini_corpus(1);
  Rng rng(1234);
  for (int trial = 0; trial < 100; ++trial) {
    PredictionFile preds = perfect_predictions(gold);
    std::vector<std::pair<oracle::State, oracle::State>> oracle_turns;
    for (const NormalizedDialogue& d : gold.dialogues) {
      auto gold_states = gold_user_states(d);
      for (size_t t = 0; t < gold_states.size(); ++t) {
        // randomly corrupt ~1/3 of turns
        if (rng.next_below(3) == 0) {
          if (!preds[d.dialogue_id][t].empty() && rng.next_below(2) == 0)
            preds[d.dialogue_id][t].pop_back();
          else
            preds[d.dialogue_id][t].push_back({"hotel-area", "nowhere"});
        }
        oracle::State predicted, expected;
        for (const SlotValue& sv : preds[d.dialogue_id][t])
          predicted.emplace(normalize_value(sv.slot), normalize_value(sv.value));
        for (const SlotValue& sv : gold_states[t])
          expected.emplace(normalize_value(sv.slot), normalize_value(sv.value));
        oracle_turns.emplace_back(predicted, expected);
      }
    }
    double expected = oracle::jga(oracle_turns);
    double actual = joint_goal_accuracy(preds, gold);
    CHECK(actual == Catch::Approx(expected).epsilon(1e-12));
  }
}

TEST_CASE("spearman reproduces the published correlation vectors") {
  // average columns of the MT-vs-MTPE comparison: identical rankings
  CHECK(spearman({1.29, 3.71, 35.78, 36.31, 37.89},
                 {1.28, 3.65, 28.96, 29.74, 30.76}) == Catch::Approx(1.0));
  // the es breakdown column swaps two ranks: rho = 0.90
  CHECK(spearman({11.67, 5.25, 55.70, 57.68, 57.04},
                 {11.34, 4.97, 41.94, 48.20, 53.56}) ==
        Catch::Approx(0.9).margin(1e-9));
}

TEST_CASE("the rankify oracle itself reproduces the published 0.90") {
  CHECK(oracle::spearman({11.67, 5.25, 55.70, 57.68, 57.04},
                         {11.34, 4.97, 41.94, 48.20, 53.56}) ==
        Catch::Approx(0.9).margin(1e-9));
}

TEST_CASE("spearman is invariant under strictly monotone transforms") {
  Rng rng(55);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> xs = random_vector(rng, 2 + rng.next_below(20), false);
    bool constant = true;
    for (double x : xs) constant &= x == xs[0];
    if (constant) xs[0] += 1.0;
    std::vector<double> ys = xs;
    for (double& y : ys) y = 3.0 * y * y * y + 2.0 * y + 1.0;  // strictly increasing
    CHECK(spearman(xs, ys) == Catch::Approx(1.0).margin(1e-9));
  }
}

TEST_CASE("spearman agrees with the rankify oracle, ties included") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 2 + rng.next_below(15);
    std::vector<double> xs = random_vector(rng, n, false);
    std::vector<double> ys = random_vector(rng, n, false);
    bool const_x = true, const_y = true;
    for (double v : xs) const_x &= v == xs[0];
    for (double v : ys) const_y &= v == ys[0];
    if (const_x || const_y) continue;
    CHECK(spearman(xs, ys) ==
          Catch::Approx(oracle::spearman(xs, ys)).margin(1e-9));
  }
}

TEST_CASE("pearson handles affine relations and degenerate input") {
  std::vector<double> xs = {1, 2, 3.5, 7, 11};
  std::vector<double> doubled;
  for (double x : xs) doubled.push_back(2 * x + 1);
  CHECK(pearson(xs, doubled) == Catch::Approx(1.0));
  std::vector<double> negated;
  for (double x : xs) negated.push_back(-x);
  CHECK(pearson(xs, negated) == Catch::Approx(-1.0));
  CHECK_THROWS_AS(pearson({1, 1, 1}, {1, 2, 3}), DegenerateInput);
  CHECK_THROWS_AS(pearson({1}, {1}), DegenerateInput);
  CHECK_THROWS_AS(pearson({1, 2}, {1, 2, 3}), LengthMismatch);
  CHECK_THROWS_AS(spearman({1, 2}, {1, 2, 3}), LengthMismatch);
}

TEST_CASE("pearson is invariant under positive affine transforms") {
  Rng rng(88);
  for (int trial = 0; trial < 200; ++trial) {
    size_t n = 3 + rng.next_below(12);
    std::vector<double> xs = random_vector(rng, n, true);
    std::vector<double> ys = random_vector(rng, n, true);
    double base = pearson(xs, ys);
    std::vector<double> scaled;
    for (double x : xs) scaled.push_back(0.25 * x + 17.0);
    CHECK(pearson(scaled, ys) == Catch::Approx(base).margin(1e-9));
  }
}

TEST_CASE("spearman equals pearson on rank vectors and self-correlation is 1") {
  std::vector<double> xs = {4, 8, 15, 16, 23, 42};
  CHECK(spearman(xs, xs) == Catch::Approx(1.0));
  CHECK(pearson(xs, xs) == Catch::Approx(1.0));
}

TEST_CASE("result tables parse, recompute averages, ignore given avg columns") {
  std::istringstream in(
      "method\tzh\tes\tavg\n"
      "a\t10.00\t20.00\t99.00\n"
      "b\t30.00\t40.00\t99.00\n");
  ResultTable t = result_table_from_tsv(in, "test");
  CHECK(t.languages == std::vector<std::string>{"zh", "es"});
  CHECK(t.row_average("a") == Catch::Approx(15.0));
  CHECK(t.row_average("b") == Catch::Approx(35.0));
  std::string rendered = result_table_to_tsv(t);
  CHECK(rendered.find("15.00") != std::string::npos);
}

TEST_CASE("correlation report covers languages and the recomputed average") {
  ResultTable a = load_result_table(fixture("metrics/f2f_mt.tsv"));
  ResultTable b = load_result_table(fixture("metrics/f2f_mtpe.tsv"));
  std::vector<CorrelationRow> rows = correlation_report(a, b);
  REQUIRE(rows.size() == 4);  // zh es id avg
  CHECK(rows.back().column == "avg");
  CHECK(rows.back().spearman == Catch::Approx(1.0));
}

TEST_CASE("identical tables correlate at 1.0 everywhere") {
  ResultTable a = load_result_table(fixture("metrics/f2e_mt.tsv"));
  for (const CorrelationRow& row : correlation_report(a, a)) {
    CHECK(row.spearman == Catch::Approx(1.0));
    CHECK(row.pearson == Catch::Approx(1.0));
  }
}

TEST_CASE("row permutation does not change the report") {
  ResultTable a = load_result_table(fixture("metrics/f2e_mt.tsv"));
  ResultTable b = load_result_table(fixture("metrics/f2e_mtpe.tsv"));
  ResultTable b_permuted = b;
  std::reverse(b_permuted.methods.begin(), b_permuted.methods.end());
  CHECK(correlation_report_tsv(correlation_report(a, b)) ==
        correlation_report_tsv(correlation_report(a, b_permuted)));
}

TEST_CASE("mismatched tables are rejected") {
  ResultTable a = load_result_table(fixture("metrics/f2f_mt.tsv"));
  ResultTable b = a;
  b.methods.push_back("extra");
  b.cells["extra"] = b.cells.begin()->second;
  CHECK_THROWS_AS(correlation_report(a, b), ShapeMismatch);
}

TEST_CASE("failure-rate audit reproduces the translated-entity study") {
  std::vector<AuditTally> tallies =
      tallies_from_json(read_json_file(fixture("metrics/fail_rate_tallies.json")));
  std::vector<AuditRow> rows = failure_rate_audit(tallies);
  REQUIRE(rows.size() == 6);
  const std::vector<int64_t> expected_failures = {65, 58, 64, 37, 70, 69};
  const std::vector<int> expected_rates = {65, 58, 64, 37, 70, 69};
  const std::vector<int> expected_original = {3, 3, 3, 0, 1, 0};
  for (size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i].failure_cases == expected_failures[i]);
    CHECK(std::llround(rows[i].failure_rate) == expected_rates[i]);
    CHECK(std::llround(rows[i].original_failure_rate) == expected_original[i]);
    CHECK(rows[i].failure_cases == rows[i].tf + rows[i].ft + rows[i].ff);
  }
}

TEST_CASE("an all-success tally fails at 0%") {
  std::vector<AuditTally> tallies = {{"X->Y", 50, 0, 0, 0, 0}};
  std::vector<AuditRow> rows = failure_rate_audit(tallies);
  CHECK(rows[0].failure_cases == 0);
  CHECK(rows[0].failure_rate == 0.0);
}

TEST_CASE("empty tallies are rejected") {
  std::vector<AuditTally> tallies = {{"X->Y", 0, 0, 0, 0, -1}};
  CHECK_THROWS_AS(failure_rate_audit(tallies), EmptyTally);
}
