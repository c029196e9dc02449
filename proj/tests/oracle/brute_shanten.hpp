#pragma once

// Reference shanten by exhaustive depth-first decomposition. Shares nothing
// with the table path except the Counts34 alias.

#include <algorithm>
#include <array>

#include "riichi/hand_eval.hpp"

namespace oracle {

class BruteStandard {
 public:
  BruteStandard(const riichi::Counts34& hand, int meld_count) : hand_(hand), budget_(4 - meld_count), melds_(meld_count) {}

  int shanten() {
    best_ = 0;
    dfs(0, 0, 0, false);
    return 8 - 2 * melds_ - best_;
  }

 private:
  void dfs(int i, int sets, int partials, bool pair) {
    while (i < 34 && hand_[i] == 0) ++i;
    if (i == 34) {
      const int s = std::min(sets, budget_);
      const int t = std::min(partials, budget_ - s);
      best_ = std::max(best_, 2 * s + t + (pair ? 1 : 0));
      return;
    }
    const bool suited = i < 27;
    const int n = i % 9;
    if (hand_[i] >= 3) {
      hand_[i] -= 3;
      dfs(i, sets + 1, partials, pair);
      hand_[i] += 3;
    }
    if (suited && n <= 6 && hand_[i + 1] && hand_[i + 2]) {
      --hand_[i], --hand_[i + 1], --hand_[i + 2];
      dfs(i, sets + 1, partials, pair);
      ++hand_[i], ++hand_[i + 1], ++hand_[i + 2];
    }
    if (hand_[i] >= 2) {
      hand_[i] -= 2;
      if (!pair) dfs(i, sets, partials, true);
      dfs(i, sets, partials + 1, pair);
      hand_[i] += 2;
    }
    if (suited && n <= 7 && hand_[i + 1]) {
      --hand_[i], --hand_[i + 1];
      dfs(i, sets, partials + 1, pair);
      ++hand_[i], ++hand_[i + 1];
    }
    if (suited && n <= 6 && hand_[i + 2]) {
      --hand_[i], --hand_[i + 2];
      dfs(i, sets, partials + 1, pair);
      ++hand_[i], ++hand_[i + 2];
    }
    --hand_[i];
    dfs(i, sets, partials, pair);
    ++hand_[i];
  }

  riichi::Counts34 hand_;
  int budget_;
  int melds_;
  int best_ = 0;
};

inline int standard(const riichi::Counts34& hand, int meld_count) { return BruteStandard(hand, meld_count).shanten(); }

// 13 minus the best overlap with any complete seven-pairs target.
inline int seven_pairs(const riichi::Counts34& hand) {
  std::array<int, 34> keep{};
  for (int k = 0; k < 34; ++k) keep[k] = std::min<int>(hand[k], 2);
  std::sort(keep.rbegin(), keep.rend());
  int overlap = 0;
  for (int i = 0; i < 7; ++i) overlap += keep[i];
  return 13 - overlap;
}

inline int kokushi(const riichi::Counts34& hand) {
  int best = 0;
  for (int dup = 0; dup < 34; ++dup) {
    if (!riichi::is_terminal_or_honor(dup)) continue;
    int overlap = 0;
    for (int k = 0; k < 34; ++k) {
      if (riichi::is_terminal_or_honor(k)) overlap += std::min<int>(hand[k], k == dup ? 2 : 1);
    }
    best = std::max(best, overlap);
  }
  return 13 - best;
}

inline int shanten(const riichi::Counts34& hand, int meld_count) {
  int s = standard(hand, meld_count);
  if (meld_count == 0) s = std::min({s, seven_pairs(hand), kokushi(hand)});
  return s;
}

}  // namespace oracle
