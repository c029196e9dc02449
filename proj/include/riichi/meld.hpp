#pragma once

#include <array>
#include <cstdint>

#include "riichi/tile.hpp"

namespace riichi {

enum class MeldType : std::uint8_t { chi, pon, open_kan, closed_kan, added_kan };

struct Meld {
  MeldType type = MeldType::chi;
  TileKind kind = 0;  // lowest kind for chi
  std::array<TileId, 4> tiles{kNoTile, kNoTile, kNoTile, kNoTile};
  TileId called = kNoTile;  // tile taken from another seat (kNoTile for closed kan)
  std::uint8_t from = 0xFF;  // seat the called tile came from

  constexpr bool is_kan() const noexcept {
    return type == MeldType::open_kan || type == MeldType::closed_kan || type == MeldType::added_kan;
  }
  constexpr bool is_open() const noexcept { return type != MeldType::closed_kan; }
  constexpr bool is_triplet_like() const noexcept { return type != MeldType::chi; }
  constexpr int size() const noexcept { return is_kan() ? 4 : 3; }

  friend bool operator==(const Meld&, const Meld&) = default;
};

}  // namespace riichi
