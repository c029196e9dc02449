#pragma once

#include <bitset>
#include <stdexcept>
#include <string>

#include "riichi/tile.hpp"

namespace riichi {

// Fixed action encoding (115 ids). Exported in docs/actions.md and
// docs/actions.csv; never renumber.
inline constexpr int kNumActions = 115;
using ActionMask = std::bitset<kNumActions>;

namespace action {
inline constexpr int kDiscardRed = 34;  // 34..36: red 5m, 5p, 5s
inline constexpr int kRiichi = 37;
inline constexpr int kTsumo = 38;
inline constexpr int kRon = 39;
inline constexpr int kPon = 40;
inline constexpr int kChiLow = 41;   // called tile is the lowest of the run
inline constexpr int kChiMid = 42;
inline constexpr int kChiHigh = 43;
inline constexpr int kOpenKan = 44;
inline constexpr int kClosedKan = 45;  // 45..78 by kind
inline constexpr int kAddedKan = 79;   // 79..112 by kind
inline constexpr int kPass = 113;
inline constexpr int kNineTerminals = 114;

constexpr bool is_discard(int a) { return a >= 0 && a < kRiichi; }
constexpr bool is_chi(int a) { return a >= kChiLow && a <= kChiHigh; }
constexpr bool is_closed_kan(int a) { return a >= kClosedKan && a < kAddedKan; }
constexpr bool is_added_kan(int a) { return a >= kAddedKan && a < kPass; }
}  // namespace action

inline std::string action_name(int a) {
  using namespace action;
  if (a < 0 || a >= kNumActions) throw ContractViolation("action id out of range: " + std::to_string(a));
  if (a < kDiscardRed) return "discard_" + kind_to_string(static_cast<TileKind>(a));
  if (a < kRiichi) return std::string("discard_0") + "mps"[a - kDiscardRed];
  switch (a) {
    case kRiichi: return "riichi";
    case kTsumo: return "tsumo";
    case kRon: return "ron";
    case kPon: return "pon";
    case kChiLow: return "chi_low";
    case kChiMid: return "chi_mid";
    case kChiHigh: return "chi_high";
    case kOpenKan: return "open_kan";
    case kPass: return "pass";
    case kNineTerminals: return "nine_terminals";
    default: break;
  }
  if (is_closed_kan(a)) return "closed_kan_" + kind_to_string(static_cast<TileKind>(a - kClosedKan));
  return "added_kan_" + kind_to_string(static_cast<TileKind>(a - kAddedKan));
}

inline int parse_action(const std::string& name) {
  for (int a = 0; a < kNumActions; ++a) {
    if (action_name(a) == name) return a;
  }
  throw std::invalid_argument("unknown action: " + name);
}

}  // namespace riichi
