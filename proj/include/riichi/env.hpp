#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <tuple>

#include "riichi/action.hpp"
#include "riichi/engine.hpp"
#include "riichi/rng.hpp"
#include "riichi/state.hpp"

namespace riichi {

enum class RewardScheme : std::uint8_t { score_delta, rank };

struct EnvConfig {
  RuleVariant rule = RuleVariant::red;
  Mode mode = Mode::single;
  double illegal_penalty = -1.0;
  RewardScheme reward_scheme = RewardScheme::score_delta;
  std::uint32_t max_steps = 10000;
  ScoringOptions scoring{};
  std::uint8_t first_dealer = 0;
  bool abortive_draws = true;
  bool agari_yame = true;

  GameConfig game_config() const { return GameConfig{rule, mode, scoring, first_dealer, abortive_draws, agari_yame}; }
  friend bool operator==(const EnvConfig&, const EnvConfig&) = default;
};

struct EnvState {
  GameState game;
  EnvConfig config;
  std::uint8_t current_player = 0;
  ActionMask legal_action_mask;
  std::array<double, 4> rewards{};
  bool terminated = false;
  bool truncated = false;
  std::uint32_t steps = 0;
  bool illegal = false;  // ended by an illegal action

  friend bool operator==(const EnvState&, const EnvState&) = default;
};

inline std::array<double, 4> terminal_rewards(const GameState& g, RewardScheme scheme) {
  std::array<double, 4> r{};
  if (scheme == RewardScheme::score_delta) {
    for (int seat = 0; seat < 4; ++seat) r[seat] = (g.scores[seat] - kStartingScore) / double(kStartingScore);
  } else {
    static constexpr std::array<double, 4> kRankReward{1.0, 1.0 / 3.0, -1.0 / 3.0, -1.0};
    const auto ranks = final_ranks(g);
    for (int seat = 0; seat < 4; ++seat) r[seat] = kRankReward[ranks[seat]];
  }
  return r;
}

namespace env_detail {

inline void refresh(EnvState& e) {
  if (e.game.phase == Phase::kyoku_end) e.game = advance_round(e.game);
  if (e.game.phase == Phase::game_end) {
    e.terminated = true;
  } else if (e.steps >= e.config.max_steps) {
    e.truncated = true;
  }
  if (e.terminated || e.truncated) {
    e.legal_action_mask.reset();
    e.rewards = terminal_rewards(e.game, e.config.reward_scheme);
    return;
  }
  e.current_player = e.game.current;
  e.legal_action_mask = legal_actions(e.game);
}

}  // namespace env_detail

inline EnvState init(std::uint64_t seed, const EnvConfig& config = {}) {
  if (config.illegal_penalty > 0) throw ContractViolation("illegal_penalty must be <= 0");
  if (config.max_steps == 0) throw ContractViolation("max_steps must be positive");
  EnvState e;
  e.config = config;
  e.game = new_game(seed, config.game_config());
  env_detail::refresh(e);
  return e;
}

/// One environment transition. Illegal actions end the episode with the
/// penalty for the acting seat; stepping a finished episode is an error.
inline EnvState step(EnvState e, int a) {
  if (e.terminated || e.truncated) throw ContractViolation("step on a finished episode");
  if (a < 0 || a >= kNumActions || !e.legal_action_mask.test(a)) {
    e.terminated = true;
    e.illegal = true;
    e.legal_action_mask.reset();
    e.rewards = {};
    e.rewards[e.current_player] = e.config.illegal_penalty;
    return e;
  }
  e.game = apply_legal_action(e.game, a);
  ++e.steps;
  env_detail::refresh(e);
  return e;
}

// ---------------------------------------------------------------------------
// Observation

inline constexpr std::uint8_t kTilePad = 37;
inline constexpr std::uint8_t kEventPad = kNumEventTypes;  // 12

constexpr std::uint8_t tile_token(TileId t, RuleVariant rule) {
  if (t == kNoTile) return kTilePad;
  if (is_red(t, rule)) return static_cast<std::uint8_t>(34 + (t >> 2) / 9);
  return static_cast<std::uint8_t>(t >> 2);
}

constexpr int token_kind(std::uint8_t token) { return token >= 34 ? (token - 34) * 9 + 4 : token; }

struct Observation {
  std::array<std::uint8_t, 14> hand{};                   // sorted tokens, PAD-filled
  std::array<std::array<std::uint8_t, 3>, kEventWindow> events{};  // type, relative actor, tile token
  std::int8_t shanten = 0;
  std::array<int, 4> scores{};  // points / 100, observer first
  std::uint8_t round_wind = 0;  // 0 East, 1 South
  std::uint8_t seat_wind = 0;   // 0..3
  std::uint8_t kyoku_index = 0;
  std::uint8_t honba = 0;
  std::uint8_t deposits = 0;
  std::array<std::uint8_t, 5> dora{};  // indicator tokens, PAD-filled
  std::uint8_t live_wall = 0;
  std::array<std::uint8_t, 4> riichi{};       // observer first
  std::array<std::uint8_t, 4> meld_counts{};  // observer first
  std::uint8_t call_tile = kTilePad;          // tile under claim when queried

  friend bool operator==(const Observation&, const Observation&) = default;
};

inline Observation observe(const EnvState& e, int seat) {
  if (seat < 0 || seat > 3) throw ContractViolation("seat out of range");
  const GameState& g = e.game;
  const RuleVariant rule = g.config.rule;
  const PlayerState& me = g.players[seat];
  Observation o;
  o.hand.fill(kTilePad);
  int n = 0;
  for (int id = 0; id < kNumTiles && n < 14; ++id) {
    if (me.tiles.test(id)) o.hand[n++] = tile_token(static_cast<TileId>(id), rule);
  }
  std::sort(o.hand.begin(), o.hand.begin() + n);

  for (auto& ev : o.events) ev = {kEventPad, 0, kTilePad};
  for (int i = 0; i < g.event_count(); ++i) {
    const Event& ev = g.event(i);
    const bool hidden = (ev.type == EventType::draw && ev.actor != seat);
    o.events[i] = {static_cast<std::uint8_t>(ev.type), static_cast<std::uint8_t>((ev.actor - seat + 4) % 4),
                   hidden ? kTilePad : tile_token(ev.tile, rule)};
  }

  o.shanten = static_cast<std::int8_t>(shanten(me.counts, me.meld_count));
  for (int i = 0; i < 4; ++i) {
    const int other = (seat + i) % 4;
    o.scores[i] = g.scores[other] / 100;
    o.riichi[i] = g.players[other].riichi != RiichiState::none;
    o.meld_counts[i] = g.players[other].meld_count;
  }
  o.round_wind = static_cast<std::uint8_t>(g.kyoku_index / 4);
  o.seat_wind = static_cast<std::uint8_t>(g.seat_wind(seat) - kEast);
  o.kyoku_index = g.kyoku_index;
  o.honba = g.honba;
  o.deposits = g.deposits;
  o.dora.fill(kTilePad);
  for (int i = 0; i < g.wall.dora_indicator_count; ++i) o.dora[i] = tile_token(g.wall.dora_indicator(i), rule);
  o.live_wall = static_cast<std::uint8_t>(g.wall.live_remaining());
  if (g.phase == Phase::awaiting_call) o.call_tile = tile_token(g.call.tile, rule);
  return o;
}

// ---------------------------------------------------------------------------
// Policies

inline int random_policy(const ActionMask& mask, Rng& rng) {
  const auto n = static_cast<std::uint32_t>(mask.count());
  if (n == 0) throw ContractViolation("random_policy on an empty mask");
  std::uint32_t pick = rng.uniform(n);
  for (int a = 0; a < kNumActions; ++a) {
    if (mask.test(a) && pick-- == 0) return a;
  }
  return -1;  // unreachable
}

/// Rule-based baseline: win when possible, riichi when possible, otherwise
/// keep shanten as low as possible; calls only when they strictly help.
inline int heuristic_policy(const Observation& obs, const ActionMask& mask) {
  if (mask.none()) throw ContractViolation("heuristic_policy on an empty mask");
  if (mask.count() == 1) {
    for (int a = 0; a < kNumActions; ++a) {
      if (mask.test(a)) return a;
    }
  }
  if (mask.test(action::kTsumo)) return action::kTsumo;
  if (mask.test(action::kRon)) return action::kRon;
  if (mask.test(action::kRiichi)) return action::kRiichi;

  Counts34 counts{};
  for (auto t : obs.hand) {
    if (t != kTilePad) ++counts[token_kind(t)];
  }
  const int melds = obs.meld_counts[0];

  // Call phase: pass unless a call strictly lowers shanten.
  if (mask.test(action::kPass)) {
    if (obs.call_tile == kTilePad) return action::kPass;
    const int k = token_kind(obs.call_tile);
    const int now = shanten(counts, melds);
    int best = action::kPass;
    int best_value = now;
    auto consider = [&](int a, std::initializer_list<int> used) {
      if (!mask.test(a)) return;
      Counts34 c = counts;
      for (int u : used) --c[u];
      const int value = shanten(c, melds + 1);
      if (value < best_value) {
        best_value = value;
        best = a;
      }
    };
    consider(action::kPon, {k, k});
    consider(action::kOpenKan, {k, k, k});
    if (k < 27) {
      consider(action::kChiLow, {k + 1, k + 2});
      consider(action::kChiMid, {k - 1, k + 1});
      consider(action::kChiHigh, {k - 2, k - 1});
    }
    return best;
  }

  // Discard: lowest resulting shanten; ties to honours, then terminals,
  // then the lowest kind; the plain copy before the red one.
  int best = -1;
  std::tuple<int, int, int, int> best_key{};
  for (int a = 0; a < action::kRiichi; ++a) {
    if (!mask.test(a)) continue;
    const int k = a < action::kDiscardRed ? a : (a - action::kDiscardRed) * 9 + 4;
    Counts34 c = counts;
    --c[k];
    const int s = shanten(c, melds);
    const int cls = is_honor(k) ? 0 : is_terminal(k) ? 1 : 2;
    const std::tuple key{s, cls, k, a >= action::kDiscardRed ? 1 : 0};
    if (best < 0 || key < best_key) {
      best = a;
      best_key = key;
    }
  }
  if (best >= 0) return best;
  for (int a = 0; a < kNumActions; ++a) {
    if (mask.test(a) && a != action::kNineTerminals) return a;
  }
  for (int a = 0; a < kNumActions; ++a) {
    if (mask.test(a)) return a;
  }
  return -1;  // unreachable
}

}  // namespace riichi
