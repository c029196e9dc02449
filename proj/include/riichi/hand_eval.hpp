#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "riichi/suit_table.hpp"
#include "riichi/tile.hpp"

namespace riichi {

using Counts34 = std::array<std::uint8_t, kNumKinds>;

struct SuitTables {
  NumberSuitTable numbers;
  HonorTable honors;
};

/// Process-wide tables, built on first use and immutable afterwards.
inline const SuitTables& suit_tables() {
  static const SuitTables tables{NumberSuitTable::build(), HonorTable::build()};
  return tables;
}

inline int tile_count(const Counts34& hand) noexcept {
  return std::accumulate(hand.begin(), hand.end(), 0);
}

inline void check_hand(const Counts34& hand, int meld_count) {
  if (meld_count < 0 || meld_count > 4) throw ContractViolation("meld count out of range");
  int total = 0;
  for (auto c : hand) {
    if (c > 4) throw ContractViolation("more than four copies of a kind");
    total += c;
  }
  const int expected = 13 - 3 * meld_count;
  if (total != expected && total != expected + 1) {
    throw ContractViolation("hand has " + std::to_string(total) + " tiles with " + std::to_string(meld_count) +
                            " melds");
  }
}

/// Parses compact notation such as "123m456p789s11122z" (z = honors 1..7 in
/// E S W N P F C order, 0 = red five, read as a plain five).
inline Counts34 parse_hand(std::string_view text) {
  Counts34 counts{};
  std::string pending;
  for (char ch : text) {
    if (ch >= '0' && ch <= '9') {
      pending.push_back(ch);
    } else if (ch == 'm' || ch == 'p' || ch == 's' || ch == 'z') {
      for (char d : pending) ++counts[parse_kind(std::string{d, ch})];
      pending.clear();
    } else if (ch != ' ') {
      throw std::invalid_argument(std::string("bad hand character: ") + ch);
    }
  }
  if (!pending.empty()) throw std::invalid_argument("digits without suit letter");
  return counts;
}

namespace detail {

inline constexpr int kNegInf = -1000;

// Max-plus combination of the four groups' (budget, pair) statistics.
inline int best_standard_value(const Counts34& hand, int budget) noexcept {
  const auto& tables = suit_tables();
  std::array<std::uint64_t, 4> words{
      tables.numbers.word(hand.data()), tables.numbers.word(hand.data() + 9), tables.numbers.word(hand.data() + 18),
      tables.honors.word(hand.data() + 27)};

  int acc[5][2];
  for (int b = 0; b < 5; ++b) {
    acc[b][0] = 0;
    acc[b][1] = kNegInf;
  }
  for (auto word : words) {
    int group[5][2];
    for (int b = 0; b <= budget; ++b) {
      for (int p = 0; p < 2; ++p) {
        const auto s = NumberSuitTable::unpack(word, b, p);
        group[b][p] = s.feasible ? s.value() : kNegInf;
      }
    }
    int next[5][2];
    for (int b = 0; b <= budget; ++b) {
      for (int p = 0; p < 2; ++p) {
        int best = kNegInf;
        for (int gb = 0; gb <= b; ++gb) {
          for (int gp = 0; gp <= p; ++gp) {
            best = std::max(best, acc[b - gb][p - gp] + group[gb][gp]);
          }
        }
        next[b][p] = best;
      }
    }
    for (int b = 0; b <= budget; ++b) {
      acc[b][0] = next[b][0];
      acc[b][1] = next[b][1];
    }
  }
  return std::max(acc[budget][0], acc[budget][1] + 1);
}

}  // namespace detail

/// Standard-form (four sets and a pair) shanten; -1 for a complete hand.
inline int shanten_standard(const Counts34& hand, int meld_count) {
  check_hand(hand, meld_count);
  return 8 - 2 * meld_count - detail::best_standard_value(hand, 4 - meld_count);
}

inline int shanten_seven_pairs(const Counts34& hand) {
  int pairs = 0;
  int kinds = 0;
  for (auto c : hand) {
    if (c >= 1) ++kinds;
    if (c >= 2) ++pairs;
  }
  return 6 - pairs + std::max(0, 7 - kinds);
}

inline int shanten_kokushi(const Counts34& hand) {
  int kinds = 0;
  bool pair = false;
  for (int k = 0; k < kNumKinds; ++k) {
    if (!is_terminal_or_honor(k) || hand[k] == 0) continue;
    ++kinds;
    pair = pair || hand[k] >= 2;
  }
  return 13 - kinds - (pair ? 1 : 0);
}

inline int shanten(const Counts34& hand, int meld_count) {
  int s = shanten_standard(hand, meld_count);
  if (meld_count == 0) s = std::min({s, shanten_seven_pairs(hand), shanten_kokushi(hand)});
  return s;
}

enum class HandForm : std::uint8_t { standard, seven_pairs, kokushi };

/// True if a 14-equivalent hand is complete in any form.
inline bool is_complete(const Counts34& hand, int meld_count) { return shanten(hand, meld_count) == -1; }

/// Kinds that complete a 13-equivalent hand, as a bitmask over 34 kinds.
/// Kinds whose four copies are all in the hand are excluded.
inline std::uint64_t winning_kinds(const Counts34& hand, int meld_count) {
  check_hand(hand, meld_count);
  if (tile_count(hand) != 13 - 3 * meld_count) throw ContractViolation("winning_kinds expects a waiting hand");
  if (shanten(hand, meld_count) != 0) return 0;
  std::uint64_t waits = 0;
  Counts34 probe = hand;
  for (int k = 0; k < kNumKinds; ++k) {
    if (probe[k] >= 4) continue;
    ++probe[k];
    if (shanten(probe, meld_count) == -1) waits |= std::uint64_t{1} << k;
    --probe[k];
  }
  return waits;
}

// ---------------------------------------------------------------------------
// Decompositions

enum class SetKind : std::uint8_t { sequence, triplet };

struct Block {
  SetKind kind = SetKind::sequence;
  TileKind start = 0;

  friend auto operator<=>(const Block&, const Block&) = default;
};

/// Concealed part of a standard winning hand: (4 - melds) sets and a pair.
struct Decomposition {
  std::array<Block, 4> sets{};
  std::uint8_t set_count = 0;
  TileKind pair = 0;

  auto key() const { return std::tuple(pair, set_count, sets); }
  friend bool operator==(const Decomposition& a, const Decomposition& b) { return a.key() == b.key(); }
  friend bool operator<(const Decomposition& a, const Decomposition& b) { return a.key() < b.key(); }
};

namespace detail {

inline void extract_sets(Counts34& hand, int from, Decomposition& partial, int needed,
                         std::vector<Decomposition>& out) {
  int i = from;
  while (i < kNumKinds && hand[i] == 0) ++i;
  if (i == kNumKinds) {
    if (partial.set_count == needed) out.push_back(partial);
    return;
  }
  if (partial.set_count == needed) return;
  if (hand[i] >= 3) {
    hand[i] -= 3;
    partial.sets[partial.set_count++] = Block{SetKind::triplet, static_cast<TileKind>(i)};
    extract_sets(hand, i, partial, needed, out);
    --partial.set_count;
    hand[i] += 3;
  }
  if (i < 27 && i % 9 <= 6 && hand[i + 1] > 0 && hand[i + 2] > 0) {
    --hand[i];
    --hand[i + 1];
    --hand[i + 2];
    partial.sets[partial.set_count++] = Block{SetKind::sequence, static_cast<TileKind>(i)};
    extract_sets(hand, i, partial, needed, out);
    --partial.set_count;
    ++hand[i];
    ++hand[i + 1];
    ++hand[i + 2];
  }
}

}  // namespace detail

/// All distinct standard decompositions of a complete concealed part,
/// ordered by pair kind then set list. Empty when the hand is not a
/// standard win.
inline std::vector<Decomposition> decompose_wins(const Counts34& hand, int meld_count) {
  check_hand(hand, meld_count);
  std::vector<Decomposition> out;
  if (tile_count(hand) != 14 - 3 * meld_count) return out;
  const int needed = 4 - meld_count;
  Counts34 work = hand;
  for (int p = 0; p < kNumKinds; ++p) {
    if (work[p] < 2) continue;
    work[p] -= 2;
    Decomposition d;
    d.pair = static_cast<TileKind>(p);
    detail::extract_sets(work, 0, d, needed, out);
    work[p] += 2;
  }
  for (auto& d : out) std::sort(d.sets.begin(), d.sets.begin() + d.set_count);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline bool is_seven_pairs(const Counts34& hand) {
  int pairs = 0;
  for (auto c : hand) {
    if (c == 2) ++pairs;
    else if (c != 0) return false;
  }
  return pairs == 7;
}

inline bool is_kokushi(const Counts34& hand) { return tile_count(hand) == 14 && shanten_kokushi(hand) == -1; }

}  // namespace riichi
