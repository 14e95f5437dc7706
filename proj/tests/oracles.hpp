// Independent reference implementations used only by tests. Each is a direct
// transliteration of the defining formula and shares no code with the
// library paths it checks.
#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace oracle {

// Counts how often `gram` occurs among all n-token windows of `turn_tokens`,
// one window position at a time.
inline int count_gram(const std::vector<std::vector<std::string>>& turns,
                      const std::vector<std::string>& gram) {
  int count = 0;
  for (const auto& tokens : turns) {
    if (tokens.size() < gram.size()) continue;
    for (size_t i = 0; i + gram.size() <= tokens.size(); ++i) {
      bool same = true;
      for (size_t j = 0; j < gram.size(); ++j)
        if (tokens[i + j] != gram[j]) same = false;
      if (same) ++count;
    }
  }
  return count;
}

// Dialogue score by brute force: enumerate every window of every turn, look
// its count up in a (turn-token, count) corpus given as raw token lists.
inline double score_dialogue(
    const std::vector<std::vector<std::string>>& corpus_turns,
    const std::vector<std::vector<std::string>>& dialogue_turns, size_t n) {
  long long total_tokens = 0;
  long long gram_sum = 0;
  for (const auto& tokens : dialogue_turns) {
    total_tokens += static_cast<long long>(tokens.size());
    if (tokens.size() < n) continue;
    for (size_t i = 0; i + n <= tokens.size(); ++i) {
      std::vector<std::string> gram(tokens.begin() + i, tokens.begin() + i + n);
      gram_sum += count_gram(corpus_turns, gram);
    }
  }
  if (total_tokens == 0) return 0.0;
  return static_cast<double>(gram_sum) / static_cast<double>(total_tokens);
}

// Full sort with exact rational comparison, then cut to k.
struct ScoredId {
  std::string id;
  long long sum;
  long long len;
};

inline std::vector<std::string> top_k(std::vector<ScoredId> scored, size_t k) {
  std::sort(scored.begin(), scored.end(), [](const ScoredId& a, const ScoredId& b) {
    long long la = a.len == 0 ? 1 : a.len;
    long long lb = b.len == 0 ? 1 : b.len;
    __int128 lhs = static_cast<__int128>(a.sum) * lb;
    __int128 rhs = static_cast<__int128>(b.sum) * la;
    if (lhs != rhs) return lhs > rhs;
    return a.id < b.id;
  });
  std::vector<std::string> ids;
  for (size_t i = 0; i < scored.size() && i < k; ++i) ids.push_back(scored[i].id);
  return ids;
}

// JGA by set comparison over (slot, value) pairs, already normalized.
using State = std::set<std::pair<std::string, std::string>>;

inline double jga(const std::vector<std::pair<State, State>>& turns) {
  if (turns.empty()) return 0.0;
  int correct = 0;
  for (const auto& [predicted, gold] : turns)
    if (predicted == gold) ++correct;
  return 100.0 * correct / static_cast<double>(turns.size());
}

// Fractional ranks by double loop (r + (s-1)/2 form), then plain Pearson.
inline std::vector<double> rankify(const std::vector<double>& v) {
  std::vector<double> result(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    size_t r = 1, s = 1;
    for (size_t j = 0; j < v.size(); ++j) {
      if (v[j] < v[i]) ++r;
      if (j != i && v[j] == v[i]) ++s;
    }
    result[i] = r + (s - 1) * 0.5;
  }
  return result;
}

inline double pearson(const std::vector<double>& a, const std::vector<double>& b) {
  double sa = 0, sb = 0, sab = 0, saa = 0, sbb = 0;
  const double n = static_cast<double>(a.size());
  for (size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    sab += a[i] * b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
  }
  return (n * sab - sa * sb) /
         std::sqrt((n * saa - sa * sa) * (n * sbb - sb * sb));
}

inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  return pearson(rankify(a), rankify(b));
}

// Plain recursive Levenshtein, memoized; independent of the banded DP in the
// library.
inline int levenshtein(const std::string& a, const std::string& b) {
  std::vector<std::vector<int>> memo(a.size() + 1,
                                     std::vector<int>(b.size() + 1, -1));
  std::function<int(size_t, size_t)> go = [&](size_t i, size_t j) -> int {
    if (i == a.size()) return static_cast<int>(b.size() - j);
    if (j == b.size()) return static_cast<int>(a.size() - i);
    int& m = memo[i][j];
    if (m >= 0) return m;
    if (a[i] == b[j]) return m = go(i + 1, j + 1);
    return m = 1 + std::min({go(i + 1, j), go(i, j + 1), go(i + 1, j + 1)});
  };
  return go(0, 0);
}

// Exhaustive min-cost one-to-one matching between expected tokens and found
// chunks; used to cross-check the greedy mutation pairing.
inline int best_matching_cost(const std::vector<std::string>& expected,
                              const std::vector<std::string>& found) {
  std::vector<size_t> idx(found.size());
  for (size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  int best = 1 << 28;
  do {
    int cost = 0;
    for (size_t i = 0; i < expected.size() && i < found.size(); ++i)
      cost += levenshtein(expected[i], found[idx[i]]);
    best = std::min(best, cost);
  } while (std::next_permutation(idx.begin(), idx.end()));
  return best;
}

}  // namespace oracle
