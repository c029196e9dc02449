#pragma once

#include <array>
#include <bitset>
#include <cstdint>

#include "riichi/hand_eval.hpp"
#include "riichi/meld.hpp"
#include "riichi/rng.hpp"
#include "riichi/scoring.hpp"
#include "riichi/tile.hpp"

namespace riichi {

enum class Mode : std::uint8_t { single, east, half };
enum class Phase : std::uint8_t { to_act, awaiting_call, kyoku_end, game_end };

// Event type ids double as observation tokens (0..11).
enum class EventType : std::uint8_t {
  draw,
  discard,
  chi,
  pon,
  kan_open,
  kan_closed,
  kan_added,
  riichi,
  ron,
  tsumo,
  draw_end,
  new_dora
};
inline constexpr int kNumEventTypes = 12;

struct Event {
  EventType type = EventType::draw;
  std::uint8_t actor = 0;
  TileId tile = kNoTile;
  friend bool operator==(const Event&, const Event&) = default;
};

struct GameConfig {
  RuleVariant rule = RuleVariant::red;
  Mode mode = Mode::single;
  ScoringOptions scoring{};
  std::uint8_t first_dealer = 0;
  bool abortive_draws = true;  // red rule only; no-red never aborts
  bool agari_yame = true;      // final kyoku: a leading dealer's repeat ends the game
  friend bool operator==(const GameConfig&, const GameConfig&) = default;

  bool aborts() const { return rule == RuleVariant::red && abortive_draws; }
};

inline constexpr int kStartingScore = 25000;
inline constexpr int kRenchanCap = 32;
inline constexpr int kKyokuStepBound = 4 * 70 + 64;
inline constexpr int kEventWindow = 64;
inline constexpr int kMaxDiscards = 96;  // <= 70 live draws + 16 calls per kyoku

struct Discard {
  static constexpr std::uint8_t kRiichiTile = 1;
  static constexpr std::uint8_t kCalled = 2;
  static constexpr std::uint8_t kTsumogiri = 4;

  TileId tile = kNoTile;
  std::uint8_t seat = 0;
  std::uint8_t flags = 0;
  friend bool operator==(const Discard&, const Discard&) = default;
};

struct PlayerState {
  Counts34 counts{};
  std::bitset<kNumTiles> tiles;  // concealed physical tiles
  std::array<Meld, 4> melds{};
  std::uint8_t meld_count = 0;
  RiichiState riichi = RiichiState::none;
  bool riichi_pending = false;  // declared, declaration discard not yet made
  bool double_riichi_pending = false;
  bool ippatsu = false;
  bool temp_furiten = false;
  bool perm_furiten = false;
  std::uint8_t discard_count = 0;
  std::uint64_t river_kinds = 0;  // every kind this seat discarded this kyoku
  std::uint64_t waits = 0;        // valid while the hand is 13-equivalent
  std::uint64_t kuikae = 0;       // kinds banned for the discard after a call

  int concealed_count() const { return static_cast<int>(tiles.count()); }
  bool closed() const {
    for (int i = 0; i < meld_count; ++i) {
      if (melds[i].is_open()) return false;
    }
    return true;
  }
  bool furiten() const { return temp_furiten || perm_furiten || (waits & river_kinds) != 0; }

  friend bool operator==(const PlayerState&, const PlayerState&) = default;
};

enum class WindowKind : std::uint8_t { discard, chankan };
enum class CallStage : std::uint8_t { ron, pon, chi };

// An open claim window on one tile.
struct CallWindow {
  TileId tile = kNoTile;
  std::uint8_t from = 0;
  WindowKind kind = WindowKind::discard;
  CallStage stage = CallStage::ron;
  std::uint8_t ron_asked = 0;   // seat bitmask
  std::uint8_t ron_chosen = 0;  // seat bitmask
  std::uint8_t call_asked = 0;  // seat bitmask, pon and chi stages
  friend bool operator==(const CallWindow&, const CallWindow&) = default;
};

enum class EndReason : std::uint8_t {
  none,
  tsumo,
  ron,
  exhaustive_draw,
  nine_terminals,
  four_riichi,
  four_kans,
  triple_ron
};

struct WinRecord {
  std::uint8_t winner = 0;
  std::uint8_t from = 0;  // == winner for tsumo
  std::uint8_t han = 0;
  std::uint8_t fu = 0;
  std::uint8_t yakuman = 0;
  std::uint8_t dora = 0;
  std::uint8_t ura = 0;
  std::uint8_t red = 0;
  int base = 0;
  YakuList yaku;
  Settlement settlement;
  friend bool operator==(const WinRecord&, const WinRecord&) = default;
};

struct KyokuResult {
  EndReason reason = EndReason::none;
  std::uint8_t kyoku_index = 0;
  std::uint8_t honba = 0;
  std::uint8_t win_count = 0;
  std::array<WinRecord, 3> wins{};
  std::array<int, 4> deltas{};
  std::uint8_t tenpai_mask = 0;  // exhaustive draw only
  bool dealer_repeat = false;
  friend bool operator==(const KyokuResult&, const KyokuResult&) = default;
};

struct GameState {
  GameConfig config;
  Wall wall;
  std::array<PlayerState, 4> players{};
  std::array<int, 4> scores{kStartingScore, kStartingScore, kStartingScore, kStartingScore};
  Phase phase = Phase::to_act;
  std::uint8_t current = 0;
  std::uint8_t kyoku_index = 0;  // 0..3 East, 4..7 South
  std::uint8_t honba = 0;
  std::uint8_t deposits = 0;
  std::uint8_t renchan_count = 0;
  std::uint16_t kyoku_count = 0;  // kyoku dealt so far in this game
  RngState rng{};

  TileId drawn_tile = kNoTile;  // kNoTile when acting after a call
  bool rinshan = false;
  bool any_call = false;  // since the deal; ends the uninterrupted first round
  std::uint8_t kan_count = 0;
  std::uint8_t kan_owners = 0;  // seat bitmask
  std::uint8_t pending_dora = 0;
  CallWindow call{};

  std::array<Discard, kMaxDiscards> discards{};
  std::uint8_t discard_total = 0;
  std::array<Event, kEventWindow> events{};
  std::uint32_t event_total = 0;  // events this kyoku
  std::uint32_t step_count = 0;
  std::uint32_t kyoku_steps = 0;
  KyokuResult result{};

  int dealer() const { return (config.first_dealer + kyoku_index) % 4; }
  TileKind round_wind() const { return static_cast<TileKind>(kEast + kyoku_index / 4); }
  TileKind seat_wind(int seat) const { return static_cast<TileKind>(kEast + (seat - dealer() + 4) % 4); }
  bool terminal() const { return phase == Phase::game_end; }
  // Events are kept in a ring; i counts from the oldest retained.
  int event_count() const { return static_cast<int>(std::min<std::uint32_t>(event_total, kEventWindow)); }
  const Event& event(int i) const {
    const std::uint32_t first = event_total > kEventWindow ? event_total - kEventWindow : 0;
    return events[(first + static_cast<std::uint32_t>(i)) % kEventWindow];
  }
  friend bool operator==(const GameState&, const GameState&) = default;
};

}  // namespace riichi
