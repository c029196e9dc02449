#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

#include "riichi/rng.hpp"

namespace riichi {

/// Raised when a caller breaks a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

using TileId = std::uint8_t;    // physical tile, 0..135
using TileKind = std::uint8_t;  // 0..33

inline constexpr int kNumTiles = 136;
inline constexpr int kNumKinds = 34;
inline constexpr TileId kNoTile = 0xFF;

// Kind layout: 0-8 man, 9-17 pin, 18-26 sou, 27-30 winds ESWN, 31-33 dragons
// white/green/red.
inline constexpr TileKind kEast = 27;
inline constexpr TileKind kSouth = 28;
inline constexpr TileKind kWest = 29;
inline constexpr TileKind kNorth = 30;
inline constexpr TileKind kWhite = 31;
inline constexpr TileKind kGreen = 32;
inline constexpr TileKind kRed = 33;

enum class RuleVariant : std::uint8_t { red, no_red };

inline TileKind kind_of(int tile) {
  if (tile < 0 || tile >= kNumTiles) {
    throw ContractViolation("tile id out of range: " + std::to_string(tile));
  }
  return static_cast<TileKind>(tile >> 2);
}

constexpr TileKind kind_unchecked(TileId tile) noexcept { return static_cast<TileKind>(tile >> 2); }

constexpr bool is_honor(int kind) noexcept { return kind >= 27; }
constexpr bool is_terminal(int kind) noexcept { return kind < 27 && (kind % 9 == 0 || kind % 9 == 8); }
constexpr bool is_terminal_or_honor(int kind) noexcept { return is_honor(kind) || is_terminal(kind); }
constexpr bool is_simple(int kind) noexcept { return !is_terminal_or_honor(kind); }
constexpr int suit_of(int kind) noexcept { return kind / 9; }  // 3 = honors
constexpr int number_of(int kind) noexcept { return kind % 9; }  // 0-based

// Red fives sit at copy index 0 of 5m, 5p, 5s.
inline constexpr std::array<TileId, 3> kRedFiveIds{16, 52, 88};

constexpr bool is_red(TileId tile, RuleVariant rule) noexcept {
  return rule == RuleVariant::red && (tile == 16 || tile == 52 || tile == 88);
}

constexpr bool is_five_kind(int kind) noexcept { return kind == 4 || kind == 13 || kind == 22; }

/// Successor rule for dora: wraps within each suit, within winds and
/// within dragons.
constexpr TileKind dora_from_indicator(TileKind indicator) noexcept {
  if (indicator < 27) {
    return static_cast<TileKind>(indicator / 9 * 9 + (indicator % 9 + 1) % 9);
  }
  if (indicator < 31) {
    return static_cast<TileKind>(27 + (indicator - 27 + 1) % 4);
  }
  return static_cast<TileKind>(31 + (indicator - 31 + 1) % 3);
}

inline constexpr std::array<char, 7> kHonorLetters{'E', 'S', 'W', 'N', 'P', 'F', 'C'};

inline std::string kind_to_string(TileKind kind) {
  if (kind >= kNumKinds) throw ContractViolation("tile kind out of range");
  if (kind >= 27) return std::string(1, kHonorLetters[kind - 27]);
  return std::string{static_cast<char>('1' + kind % 9), "mps"[kind / 9]};
}

inline std::string tile_to_string(TileId tile, RuleVariant rule) {
  const TileKind kind = kind_of(tile);
  if (is_red(tile, rule)) return std::string{'0', "mps"[kind / 9]};
  return kind_to_string(kind);
}

/// Parses a single tile token ("5m", "0p", "E"...) to a kind; red fives map
/// to their plain kind.
inline TileKind parse_kind(std::string_view token) {
  if (token.size() == 1) {
    for (std::size_t i = 0; i < kHonorLetters.size(); ++i) {
      if (kHonorLetters[i] == token[0]) return static_cast<TileKind>(27 + i);
    }
  } else if (token.size() == 2 && token[0] >= '0' && token[0] <= '9') {
    const int number = token[0] == '0' ? 5 : token[0] - '0';
    const auto suit = std::string_view("mps").find(token[1]);
    if (suit != std::string_view::npos) return static_cast<TileKind>(suit * 9 + number - 1);
    if (token[1] == 'z' && number >= 1 && number <= 7) return static_cast<TileKind>(26 + number);
  }
  throw std::invalid_argument("bad tile token: " + std::string(token));
}

// ---------------------------------------------------------------------------
// Wall

inline constexpr int kDeadWallStart = 122;
inline constexpr int kDealtTiles = 52;
inline constexpr int kMaxKans = 4;

/// Dead wall layout (indices 122..135): dora indicator i at 122 + 2i,
/// ura indicator i at 123 + 2i, kan replacements drawn from 135 downward.
constexpr int dora_indicator_index(int i) noexcept { return kDeadWallStart + 2 * i; }
constexpr int ura_indicator_index(int i) noexcept { return kDeadWallStart + 2 * i + 1; }
constexpr int replacement_index(int kans_drawn) noexcept { return 135 - kans_drawn; }

struct Wall {
  std::array<TileId, kNumTiles> tiles{};
  std::uint8_t draw_cursor = kDealtTiles;
  std::uint8_t replacements_drawn = 0;
  std::uint8_t dora_indicator_count = 1;

  // Each kan moves the haitei tile one position forward.
  constexpr int live_end() const noexcept { return kDeadWallStart - replacements_drawn; }
  constexpr int live_remaining() const noexcept { return live_end() - draw_cursor; }

  TileId dora_indicator(int i) const { return tiles[dora_indicator_index(i)]; }
  TileId ura_indicator(int i) const { return tiles[ura_indicator_index(i)]; }

  friend bool operator==(const Wall&, const Wall&) = default;
};

/// Uniform Fisher-Yates shuffle of 0..135. Returns the advanced generator
/// state alongside the wall.
inline std::pair<Wall, RngState> new_wall(RngState rng_state) {
  Wall wall;
  for (int i = 0; i < kNumTiles; ++i) wall.tiles[i] = static_cast<TileId>(i);
  Rng rng(rng_state);
  for (int i = kNumTiles - 1; i > 0; --i) {
    const auto j = rng.uniform(static_cast<std::uint32_t>(i + 1));
    std::swap(wall.tiles[i], wall.tiles[j]);
  }
  return {wall, rng.state()};
}

}  // namespace riichi
