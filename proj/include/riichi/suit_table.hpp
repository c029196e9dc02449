#pragma once

#include <array>
#include <cstdint>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace riichi {

/// Best (sets, partials) split achievable inside one suit under a block
/// budget. `feasible` is false only for pair-using entries of suits that
/// cannot supply a pair.
struct SuitStat {
  std::uint8_t sets = 0;
  std::uint8_t partials = 0;
  bool feasible = false;

  constexpr int value() const noexcept { return 2 * sets + partials; }
  friend bool operator==(const SuitStat&, const SuitStat&) = default;
};

/// Statistics for every count vector of one suit (each digit 0..4, digit
/// sum <= 14). For each block budget m in 0..4 and pair flag in {0,1} the
/// entry stores the (sets, partials) maximising 2*sets + partials with
/// sets + partials <= m, ties to more sets. Ten 6-bit sub-entries are packed
/// per 64-bit word; 0x3F marks an infeasible sub-entry.
///
/// Entries are addressed by the lexicographic rank of the count vector, so
/// the table is dense (405,350 words for a number suit).
template <int Digits, bool Sequences>
class SuitTable {
 public:
  static constexpr int kDigits = Digits;
  static constexpr int kMaxSum = 14;
  static constexpr int kBudgets = 5;
  static constexpr std::uint64_t kInfeasible = 0x3F;

 private:
  struct Ranking {
    // tails[pos][r]: vectors over positions pos.. with digit sum <= r.
    std::array<std::array<std::uint32_t, kMaxSum + 1>, Digits + 1> tails{};
    // offset[pos][r][d]: sum of tails[pos+1][r-e] for e < d.
    std::array<std::array<std::array<std::uint32_t, 5>, kMaxSum + 1>, Digits> offset{};
  };

  static constexpr Ranking make_ranking() {
    Ranking rk{};
    for (int r = 0; r <= kMaxSum; ++r) rk.tails[Digits][r] = 1;
    for (int pos = Digits - 1; pos >= 0; --pos) {
      for (int r = 0; r <= kMaxSum; ++r) {
        std::uint32_t acc = 0;
        for (int d = 0; d < 5; ++d) {
          rk.offset[pos][r][d] = acc;
          if (d <= r) acc += rk.tails[pos + 1][r - d];
        }
        rk.tails[pos][r] = acc;
      }
    }
    return rk;
  }

  static constexpr Ranking kRanking = make_ranking();

 public:
  static constexpr std::size_t kEntries = kRanking.tails[0][kMaxSum];

  /// Dense index of a count vector; digits must be <= 4 and sum <= 14.
  static constexpr std::size_t rank(const std::uint8_t* digits) noexcept {
    std::size_t index = 0;
    int remaining = kMaxSum;
    for (int pos = 0; pos < Digits; ++pos) {
      index += kRanking.offset[pos][remaining][digits[pos]];
      remaining -= digits[pos];
    }
    return index;
  }

  static constexpr SuitStat unpack(std::uint64_t word, int budget, int pair) noexcept {
    const auto bits = (word >> (6 * (budget * 2 + pair))) & 0x3F;
    if (bits == kInfeasible) return SuitStat{};
    return SuitStat{static_cast<std::uint8_t>(bits & 7), static_cast<std::uint8_t>(bits >> 3), true};
  }

  static SuitTable build() {
    SuitTable table;
    table.words_.assign(kEntries, 0);
    std::array<std::uint8_t, Digits> digits{};
    std::size_t next_index = 0;
    table.fill(digits, 0, kMaxSum, next_index);
    if (next_index != kEntries) throw std::logic_error("suit table enumeration mismatch");
    return table;
  }

  static SuitTable from_words(std::vector<std::uint64_t> words) {
    if (words.size() != kEntries) {
      throw std::runtime_error("suit table has " + std::to_string(words.size()) + " entries, expected " +
                               std::to_string(kEntries));
    }
    SuitTable table;
    table.words_ = std::move(words);
    return table;
  }

  std::uint64_t word(const std::uint8_t* digits) const noexcept { return words_[rank(digits)]; }
  SuitStat stat(const std::uint8_t* digits, int budget, int pair) const noexcept {
    return unpack(word(digits), budget, pair);
  }
  const std::vector<std::uint64_t>& words() const noexcept { return words_; }

  friend bool operator==(const SuitTable&, const SuitTable&) = default;

 private:
  // Visits vectors in rank order. Every decomposition step removes tiles at
  // the lowest non-zero position, which always yields a lower rank, so the
  // sub-results needed by `compute` are already filled in.
  void fill(std::array<std::uint8_t, Digits>& digits, int pos, int remaining, std::size_t& index) {
    if (pos == Digits) {
      words_[index] = compute(digits);
      ++index;
      return;
    }
    for (int d = 0; d <= 4 && d <= remaining; ++d) {
      digits[pos] = static_cast<std::uint8_t>(d);
      fill(digits, pos + 1, remaining - d, index);
    }
    digits[pos] = 0;
  }

  struct Cell {
    int value = -1;
    int sets = 0;
    int partials = 0;
  };
  using Cells = std::array<std::array<Cell, 2>, kBudgets>;

  Cells cells_of(const std::array<std::uint8_t, Digits>& digits) const {
    Cells cells{};
    const auto word_bits = words_[rank(digits.data())];
    for (int m = 0; m < kBudgets; ++m) {
      for (int p = 0; p < 2; ++p) {
        const auto s = unpack(word_bits, m, p);
        if (s.feasible) cells[m][p] = Cell{s.value(), s.sets, s.partials};
      }
    }
    return cells;
  }

  static void offer(Cell& target, const Cell& source, int add_sets, int add_partials) {
    if (source.value < 0) return;
    const Cell c{source.value + 2 * add_sets + add_partials, source.sets + add_sets, source.partials + add_partials};
    if (c.value > target.value || (c.value == target.value && c.sets > target.sets)) target = c;
  }

  std::uint64_t compute(std::array<std::uint8_t, Digits> digits) const {
    Cells best{};
    int first = 0;
    while (first < Digits && digits[first] == 0) ++first;
    if (first == Digits) {
      for (int m = 0; m < kBudgets; ++m) best[m][0] = Cell{0, 0, 0};
      return pack(best);
    }
    const int i = first;

    auto with_removed = [&](std::initializer_list<int> positions) {
      auto sub = digits;
      for (int p : positions) --sub[p];
      return cells_of(sub);
    };
    auto spend_block = [&](const Cells& sub, int add_sets, int add_partials) {
      for (int m = 1; m < kBudgets; ++m) {
        for (int p = 0; p < 2; ++p) offer(best[m][p], sub[m - 1][p], add_sets, add_partials);
      }
    };

    {
      const auto sub = with_removed({i});  // tile left isolated
      for (int m = 0; m < kBudgets; ++m) {
        for (int p = 0; p < 2; ++p) offer(best[m][p], sub[m][p], 0, 0);
      }
    }
    if (digits[i] >= 3) spend_block(with_removed({i, i, i}), 1, 0);
    if (digits[i] >= 2) {
      const auto sub = with_removed({i, i});
      for (int m = 0; m < kBudgets; ++m) offer(best[m][1], sub[m][0], 0, 0);
      spend_block(sub, 0, 1);
    }
    if constexpr (Sequences) {
      if (i + 2 < Digits && digits[i + 1] > 0 && digits[i + 2] > 0) spend_block(with_removed({i, i + 1, i + 2}), 1, 0);
      if (i + 1 < Digits && digits[i + 1] > 0) spend_block(with_removed({i, i + 1}), 0, 1);
      if (i + 2 < Digits && digits[i + 2] > 0) spend_block(with_removed({i, i + 2}), 0, 1);
    }
    return pack(best);
  }

  static std::uint64_t pack(const Cells& cells) {
    std::uint64_t word = 0;
    for (int m = 0; m < kBudgets; ++m) {
      for (int p = 0; p < 2; ++p) {
        const Cell& c = cells[m][p];
        const std::uint64_t bits =
            c.value < 0 ? kInfeasible : static_cast<std::uint64_t>(c.sets | (c.partials << 3));
        word |= bits << (6 * (m * 2 + p));
      }
    }
    return word;
  }

  std::vector<std::uint64_t> words_;
};

using NumberSuitTable = SuitTable<9, true>;
using HonorTable = SuitTable<7, false>;

// ---------------------------------------------------------------------------
// Blob format: "MJSUIT1\0", u64 entry count, u64 FNV-1a checksum of the word
// bytes, then the words. All integers little-endian.

inline constexpr char kSuitBlobMagic[8] = {'M', 'J', 'S', 'U', 'I', 'T', '1', '\0'};

namespace detail {

inline void put_u64(std::ostream& out, std::uint64_t v) {
  char bytes[8];
  for (int i = 0; i < 8; ++i) bytes[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(bytes, 8);
}

inline std::uint64_t get_u64(std::istream& in) {
  unsigned char bytes[8];
  if (!in.read(reinterpret_cast<char*>(bytes), 8)) throw std::runtime_error("truncated suit table blob");
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) v |= static_cast<std::uint64_t>(bytes[i]) << (8 * i);
  return v;
}

inline std::uint64_t fnv1a(const std::vector<std::uint64_t>& words) {
  std::uint64_t h = 0xCBF29CE484222325ULL;
  for (auto w : words) {
    for (int i = 0; i < 8; ++i) {
      h ^= (w >> (8 * i)) & 0xFF;
      h *= 0x100000001B3ULL;
    }
  }
  return h;
}

}  // namespace detail

template <class Table>
void write_blob(std::ostream& out, const Table& table) {
  out.write(kSuitBlobMagic, sizeof kSuitBlobMagic);
  detail::put_u64(out, table.words().size());
  detail::put_u64(out, detail::fnv1a(table.words()));
  for (auto w : table.words()) detail::put_u64(out, w);
}

template <class Table>
Table read_blob(std::istream& in) {
  char magic[8];
  if (!in.read(magic, 8) || std::memcmp(magic, kSuitBlobMagic, 8) != 0) {
    throw std::runtime_error("bad suit table magic");
  }
  const auto count = detail::get_u64(in);
  if (count != Table::kEntries) throw std::runtime_error("suit table entry count mismatch");
  const auto checksum = detail::get_u64(in);
  std::vector<std::uint64_t> words(count);
  for (auto& w : words) w = detail::get_u64(in);
  if (detail::fnv1a(words) != checksum) throw std::runtime_error("suit table checksum mismatch");
  return Table::from_words(std::move(words));
}

}  // namespace riichi
