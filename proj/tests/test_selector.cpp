#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "todg/fixtures.hpp"
#include "todg/rng.hpp"
#include "todg/selector.hpp"

using namespace todg;

namespace {

NormalizedDialogue one_turn_dialogue(const std::string& id, const std::string& text) {
  NormalizedDialogue d;
  d.dialogue_id = id;
  d.language = "en";
  Turn user;
  user.index = 0;
  user.speaker = "user";
  user.utterance = text;
  Turn system;
  system.index = 1;
  system.speaker = "system";
  system.utterance = "ok";
  d.turns = {user, system};
  return d;
}

Corpus tiny_corpus(const std::vector<std::pair<std::string, std::string>>& texts) {
  Corpus corpus;
  corpus.schema = fixtures::fixture_schema();
  corpus.split = "test";
  for (const auto& [id, text] : texts)
    corpus.dialogues.push_back(one_turn_dialogue(id, text));
  return corpus;
}

// Random corpora over a tiny vocabulary so 4-grams repeat and ties occur.
Corpus random_corpus(Rng& rng, size_t dialogues) {
  static const std::vector<std::string> vocab = {"a", "b", "c", "d", "e"};
  Corpus corpus;
  corpus.schema = fixtures::fixture_schema();
  corpus.split = "test";
  for (size_t i = 0; i < dialogues; ++i) {
    std::string text;
    size_t words = 3 + rng.next_below(8);
    for (size_t w = 0; w < words; ++w) {
      if (w) text.push_back(' ');
      text += vocab[rng.next_below(vocab.size())];
    }
    char id[16];
    std::snprintf(id, sizeof id, "r%03zu", i);
    corpus.dialogues.push_back(one_turn_dialogue(id, text));
  }
  // force exact ties: duplicate a few dialogues under new ids
  for (size_t i = 0; i < 5 && i < corpus.dialogues.size(); ++i) {
    NormalizedDialogue copy = corpus.dialogues[i];
    copy.dialogue_id = "tie" + std::to_string(i);
    corpus.dialogues.push_back(std::move(copy));
  }
  return corpus;
}

std::vector<std::vector<std::string>> corpus_turn_tokens(const Corpus& corpus) {
  std::vector<std::vector<std::string>> turns;
  for (const auto& d : corpus.dialogues)
    for (const auto& t : d.turns) turns.push_back(tokenize(t.utterance));
  return turns;
}

}  // namespace

TEST_CASE("sliding window counts for a single turn") {
  Corpus corpus = tiny_corpus({{"d1", "a b c d e"}});
  NgramFrequencyTable table = build_frequency_table(corpus, 4);
  // the system "ok" turn adds no 4-grams
  CHECK(table.counts.size() == 2);
  CHECK(table.count("a\x1f" "b\x1f" "c\x1f" "d") == 1);
  CHECK(table.count("b\x1f" "c\x1f" "d\x1f" "e") == 1);
}

TEST_CASE("the same turn in two dialogues doubles each count") {
  Corpus corpus = tiny_corpus({{"d1", "a b c d e"}, {"d2", "a b c d e"}});
  NgramFrequencyTable table = build_frequency_table(corpus, 4);
  CHECK(table.count("a\x1f" "b\x1f" "c\x1f" "d") == 2);
  CHECK(table.count("b\x1f" "c\x1f" "d\x1f" "e") == 2);
}

TEST_CASE("turns shorter than n produce an empty table") {
  Corpus corpus = tiny_corpus({{"d1", "a b c"}, {"d2", "x y"}});
  NgramFrequencyTable table = build_frequency_table(corpus, 4);
  CHECK(table.counts.empty());
}

TEST_CASE("score is the gram-count sum over word length") {
  Corpus corpus = tiny_corpus({{"d1", "a b c d"}});
  NgramFrequencyTable table;
  table.n = 4;
  table.counts["a\x1f" "b\x1f" "c\x1f" "d"] = 7;
  ScoredDialogue s = score_dialogue(corpus.dialogues[0], table);
  // the "ok" system turn adds one token of length but no grams
  CHECK(s.ngram_sum == 7);
  CHECK(s.word_length == 5);
  CHECK(s.score() == Catch::Approx(7.0 / 5.0));

  // single-turn check against the hand formula 7/4
  NormalizedDialogue d = corpus.dialogues[0];
  d.turns.resize(1);
  d.turns[0].speaker = "user";
  ScoredDialogue single = score_dialogue(d, table);
  CHECK(single.ngram_sum == 7);
  CHECK(single.word_length == 4);
  CHECK(single.score() == Catch::Approx(1.75));
}

TEST_CASE("all-unseen grams score zero") {
  Corpus corpus = tiny_corpus({{"d1", "p q r s t"}});
  NgramFrequencyTable table;
  table.n = 4;
  table.counts["a\x1f" "b\x1f" "c\x1f" "d"] = 9;
  CHECK(score_dialogue(corpus.dialogues[0], table).ngram_sum == 0);
  CHECK(score_dialogue(corpus.dialogues[0], table).score() == 0.0);
}

TEST_CASE("dialogue with no tokens scores zero by convention") {
  ScoredDialogue s;
  s.ngram_sum = 0;
  s.word_length = 0;
  CHECK(s.score() == 0.0);
}

TEST_CASE("duplicating the only turn leaves the score invariant") {
  Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus corpus = random_corpus(rng, 6);
    NgramFrequencyTable table = build_frequency_table(corpus, 4);
    NormalizedDialogue d = corpus.dialogues[0];
    d.turns.resize(1);
    ScoredDialogue once = score_dialogue(d, table);

    NormalizedDialogue doubled = d;
    Turn t = d.turns[0];
    t.index = 1;
    t.speaker = "system";
    doubled.turns.push_back(t);
    ScoredDialogue twice = score_dialogue(doubled, table);

    CHECK(twice.ngram_sum == 2 * once.ngram_sum);
    CHECK(twice.word_length == 2 * once.word_length);
    CHECK(twice.score() == Catch::Approx(once.score()));
  }
}

TEST_CASE("scores are verified by the brute-force window oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 30; ++trial) {
    Corpus corpus = random_corpus(rng, 8);
    NgramFrequencyTable table = build_frequency_table(corpus, 4);
    auto corpus_turns = corpus_turn_tokens(corpus);
    for (const NormalizedDialogue& d : corpus.dialogues) {
      std::vector<std::vector<std::string>> dialogue_turns;
      for (const Turn& t : d.turns) dialogue_turns.push_back(tokenize(t.utterance));
      double expected = oracle::score_dialogue(corpus_turns, dialogue_turns, 4);
      CHECK(score_dialogue(d, table).score() == Catch::Approx(expected));
    }
  }
}

TEST_CASE("select_top_k matches the full-sort oracle including ties") {
  Rng rng(int64_t(42));
  for (int trial = 0; trial < 100; ++trial) {
    Corpus corpus = random_corpus(rng, 50);
    NgramFrequencyTable table = build_frequency_table(corpus, 4);
    std::vector<oracle::ScoredId> scored;
    for (const NormalizedDialogue& d : corpus.dialogues) {
      ScoredDialogue s = score_dialogue(d, table);
      scored.push_back({s.dialogue_id, s.ngram_sum, s.word_length});
    }
    std::vector<std::string> expected = oracle::top_k(scored, 10);
    std::vector<std::string> actual;
    for (const ScoredDialogue& s : select_top_k(corpus, 10, table))
      actual.push_back(s.dialogue_id);
    REQUIRE(actual == expected);
  }
}

TEST_CASE("k of zero yields nothing, oversized k yields everything") {
  Rng rng(5);
  Corpus corpus = random_corpus(rng, 10);
  NgramFrequencyTable table = build_frequency_table(corpus, 4);
  CHECK(select_top_k(corpus, 0, table).empty());
  CHECK(select_top_k(corpus, 500, table).size() == corpus.dialogues.size());
}

TEST_CASE("selection is deterministic across runs") {
  Rng rng(77);
  Corpus corpus = random_corpus(rng, 30);
  NgramFrequencyTable table = build_frequency_table(corpus, 4);
  auto run = [&] {
    std::vector<std::string> ids;
    for (const ScoredDialogue& s : select_top_k(corpus, 12, table))
      ids.push_back(s.dialogue_id);
    return ids;
  };
  CHECK(run() == run());
}

TEST_CASE("raising the count of a present gram never lowers the score") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    Corpus corpus = random_corpus(rng, 4);
    NgramFrequencyTable table = build_frequency_table(corpus, 4);
    const NormalizedDialogue& d = corpus.dialogues[0];
    double before = score_dialogue(d, table).score();
    // bump a gram that occurs in d, if any
    std::vector<std::string> tokens = tokenize(d.turns[0].utterance);
    if (tokens.size() < 4) continue;
    table.counts[ngram_key(tokens, 0, 4)] += 5;
    double after = score_dialogue(d, table).score();
    CHECK(after >= before);
  }
}
