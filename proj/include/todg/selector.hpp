#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

#include "todg/corpus.hpp"

namespace todg {

// Frequency table of token n-grams over a corpus. Grams never cross turn
// boundaries. Keys are the n tokens joined with '\x1f'.
struct NgramFrequencyTable {
  int n = 4;
  std::unordered_map<std::string, int64_t> counts;

  int64_t count(const std::string& key) const {
    auto it = counts.find(key);
    return it == counts.end() ? 0 : it->second;
  }
};

inline std::string ngram_key(const std::vector<std::string>& tokens, size_t from,
                             int n) {
  std::string key;
  for (int i = 0; i < n; ++i) {
    if (i) key.push_back('\x1f');
    key += tokens[from + i];
  }
  return key;
}

inline void add_ngrams(NgramFrequencyTable& table,
                       const std::vector<std::string>& tokens) {
  if (tokens.size() < static_cast<size_t>(table.n)) return;
  for (size_t i = 0; i + table.n <= tokens.size(); ++i)
    ++table.counts[ngram_key(tokens, i, table.n)];
}

inline NgramFrequencyTable build_frequency_table(const Corpus& corpus, int n = 4) {
  if (n < 1) throw ConfigError("n-gram order must be >= 1");
  NgramFrequencyTable table;
  table.n = n;
  for (const NormalizedDialogue& d : corpus.dialogues)
    for (const Turn& t : d.turns) add_ngrams(table, tokenize(t.utterance));
  return table;
}

// Representativeness score: sum of the table counts of every n-gram window
// in the dialogue, divided by the dialogue's token count.
struct ScoredDialogue {
  std::string dialogue_id;
  int64_t ngram_sum = 0;
  int64_t word_length = 0;

  double score() const {
    return word_length == 0 ? 0.0
                            : static_cast<double>(ngram_sum) /
                                  static_cast<double>(word_length);
  }
};

inline ScoredDialogue score_dialogue(const NormalizedDialogue& dialogue,
                                     const NgramFrequencyTable& table) {
  ScoredDialogue s;
  s.dialogue_id = dialogue.dialogue_id;
  for (const Turn& t : dialogue.turns) {
    std::vector<std::string> tokens = tokenize(t.utterance);
    s.word_length += static_cast<int64_t>(tokens.size());
    if (tokens.size() < static_cast<size_t>(table.n)) continue;
    for (size_t i = 0; i + table.n <= tokens.size(); ++i)
      s.ngram_sum += table.count(ngram_key(tokens, i, table.n));
  }
  return s;
}

// Exact rational comparison of scores; avoids double rounding deciding a tie.
inline bool score_greater(const ScoredDialogue& a, const ScoredDialogue& b) {
  const int64_t la = a.word_length == 0 ? 1 : a.word_length;
  const int64_t lb = b.word_length == 0 ? 1 : b.word_length;
  // a.sum/la > b.sum/lb  <=>  a.sum*lb > b.sum*la (lengths positive)
  return static_cast<__int128>(a.ngram_sum) * lb >
         static_cast<__int128>(b.ngram_sum) * la;
}

inline std::vector<ScoredDialogue> score_corpus(const Corpus& corpus,
                                                const NgramFrequencyTable& table) {
  std::vector<ScoredDialogue> scored;
  scored.reserve(corpus.dialogues.size());
  for (const NormalizedDialogue& d : corpus.dialogues)
    scored.push_back(score_dialogue(d, table));
  return scored;
}

// Top-k dialogue ids by score, descending; ties broken by id ascending.
inline std::vector<ScoredDialogue> select_top_k(const Corpus& corpus, size_t k,
                                                const NgramFrequencyTable& table) {
  std::vector<ScoredDialogue> scored = score_corpus(corpus, table);
  std::sort(scored.begin(), scored.end(),
            [](const ScoredDialogue& a, const ScoredDialogue& b) {
              if (score_greater(a, b)) return true;
              if (score_greater(b, a)) return false;
              return a.dialogue_id < b.dialogue_id;
            });
  if (scored.size() > k) scored.resize(k);
  return scored;
}

}  // namespace todg
