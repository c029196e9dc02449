#pragma once

// JSON forms of configs, states, observations and game logs.
//
// Game logs ("mjlog-lite", version 1) hold the seed, the env config and the
// applied action ids; everything else in the log (events, kyoku results,
// final standings) is derived by replaying them, so a log always replays to
// the state it describes.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"
#include "riichi/env.hpp"

namespace riichi {

using json = nlohmann::json;

inline constexpr const char* kLogFormat = "mjlog-lite";
inline constexpr int kLogVersion = 1;

// ---------------------------------------------------------------------------
// Enum names

inline std::string rule_name(RuleVariant r) { return r == RuleVariant::red ? "red" : "no-red"; }
inline RuleVariant parse_rule(const std::string& s) {
  if (s == "red") return RuleVariant::red;
  if (s == "no-red" || s == "no_red") return RuleVariant::no_red;
  throw std::invalid_argument("unknown rule: " + s);
}

inline std::string mode_name(Mode m) {
  switch (m) {
    case Mode::single: return "single";
    case Mode::east: return "east";
    case Mode::half: return "half";
  }
  return "?";
}
inline Mode parse_mode(const std::string& s) {
  if (s == "single") return Mode::single;
  if (s == "east") return Mode::east;
  if (s == "half") return Mode::half;
  throw std::invalid_argument("unknown mode: " + s);
}

inline std::string scheme_name(RewardScheme r) { return r == RewardScheme::rank ? "rank" : "score_delta"; }
inline RewardScheme parse_scheme(const std::string& s) {
  if (s == "score_delta") return RewardScheme::score_delta;
  if (s == "rank") return RewardScheme::rank;
  throw std::invalid_argument("unknown reward scheme: " + s);
}

inline std::string phase_name(Phase p) {
  switch (p) {
    case Phase::to_act: return "to_act";
    case Phase::awaiting_call: return "awaiting_call";
    case Phase::kyoku_end: return "kyoku_end";
    case Phase::game_end: return "game_end";
  }
  return "?";
}

inline constexpr std::array<const char*, kNumEventTypes> kEventNames{
    "draw", "discard", "chi", "pon", "kan_open", "kan_closed", "kan_added", "riichi", "ron", "tsumo", "draw_end",
    "new_dora"};

inline std::string event_name(EventType t) { return kEventNames[static_cast<int>(t)]; }

inline std::string reason_name(EndReason r) {
  switch (r) {
    case EndReason::none: return "none";
    case EndReason::tsumo: return "tsumo";
    case EndReason::ron: return "ron";
    case EndReason::exhaustive_draw: return "exhaustive_draw";
    case EndReason::nine_terminals: return "nine_terminals";
    case EndReason::four_riichi: return "four_riichi";
    case EndReason::four_kans: return "four_kans";
    case EndReason::triple_ron: return "triple_ron";
  }
  return "?";
}

inline std::string meld_type_name(MeldType t) {
  switch (t) {
    case MeldType::chi: return "chi";
    case MeldType::pon: return "pon";
    case MeldType::open_kan: return "open_kan";
    case MeldType::closed_kan: return "closed_kan";
    case MeldType::added_kan: return "added_kan";
  }
  return "?";
}

inline std::string riichi_name(RiichiState r) {
  return r == RiichiState::none ? "none" : r == RiichiState::riichi ? "riichi" : "double_riichi";
}

// ---------------------------------------------------------------------------
// Config

inline json to_json(const EnvConfig& c) {
  return json{{"rule", rule_name(c.rule)},
              {"mode", mode_name(c.mode)},
              {"illegal_penalty", c.illegal_penalty},
              {"reward_scheme", scheme_name(c.reward_scheme)},
              {"max_steps", c.max_steps},
              {"first_dealer", c.first_dealer},
              {"abortive_draws", c.abortive_draws},
              {"agari_yame", c.agari_yame},
              {"kazoe_yakuman", c.scoring.kazoe_yakuman},
              {"double_yakuman", c.scoring.double_yakuman}};
}

// Missing keys keep their defaults, so `{}` is the default config.
inline EnvConfig env_config_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("config must be an object");
  EnvConfig c;
  if (j.contains("rule")) c.rule = parse_rule(j.at("rule").get<std::string>());
  if (j.contains("mode")) c.mode = parse_mode(j.at("mode").get<std::string>());
  if (j.contains("illegal_penalty")) c.illegal_penalty = j.at("illegal_penalty").get<double>();
  if (j.contains("reward_scheme")) c.reward_scheme = parse_scheme(j.at("reward_scheme").get<std::string>());
  if (j.contains("max_steps")) c.max_steps = j.at("max_steps").get<std::uint32_t>();
  if (j.contains("first_dealer")) {
    const int d = j.at("first_dealer").get<int>();
    if (d < 0 || d > 3) throw std::invalid_argument("first_dealer out of range");
    c.first_dealer = static_cast<std::uint8_t>(d);
  }
  if (j.contains("abortive_draws")) c.abortive_draws = j.at("abortive_draws").get<bool>();
  if (j.contains("agari_yame")) c.agari_yame = j.at("agari_yame").get<bool>();
  if (j.contains("kazoe_yakuman")) c.scoring.kazoe_yakuman = j.at("kazoe_yakuman").get<bool>();
  if (j.contains("double_yakuman")) c.scoring.double_yakuman = j.at("double_yakuman").get<bool>();
  if (c.illegal_penalty > 0) throw std::invalid_argument("illegal_penalty must be <= 0");
  if (c.max_steps == 0) throw std::invalid_argument("max_steps must be positive");
  return c;
}

// ---------------------------------------------------------------------------
// Pieces

inline json tile_json(TileId t, RuleVariant rule) {
  if (t == kNoTile) return nullptr;
  return json{{"id", t}, {"tile", tile_to_string(t, rule)}};
}

inline json meld_json(const Meld& m, RuleVariant rule) {
  json tiles = json::array();
  for (int i = 0; i < m.size(); ++i) tiles.push_back(tile_json(m.tiles[i], rule));
  json j{{"type", meld_type_name(m.type)}, {"tiles", tiles}};
  if (m.called != kNoTile) {
    j["called"] = tile_json(m.called, rule);
    j["from"] = m.from;
  }
  return j;
}

inline json event_json(const Event& e, RuleVariant rule) {
  json j{{"type", event_name(e.type)}, {"actor", e.actor}};
  if (e.tile != kNoTile) j["tile"] = tile_to_string(e.tile, rule);
  return j;
}

inline json result_json(const KyokuResult& r) {
  json wins = json::array();
  for (int i = 0; i < r.win_count; ++i) {
    const WinRecord& w = r.wins[i];
    json yaku = json::array();
    for (int k = 0; k < w.yaku.count; ++k) {
      yaku.push_back({{"name", std::string(yaku_name(w.yaku.entries[k].yaku))}, {"han", w.yaku.entries[k].han}});
    }
    wins.push_back({{"winner", w.winner},
                    {"from", w.from},
                    {"han", w.han},
                    {"fu", w.fu},
                    {"yakuman", w.yakuman},
                    {"dora", w.dora},
                    {"ura", w.ura},
                    {"red", w.red},
                    {"base", w.base},
                    {"yaku", yaku},
                    {"deltas", w.settlement.deltas},
                    {"honba_points", w.settlement.honba_component},
                    {"deposits_claimed", w.settlement.deposits_claimed}});
  }
  json tenpai = json::array();
  for (int seat = 0; seat < 4; ++seat) tenpai.push_back(((r.tenpai_mask >> seat) & 1) != 0);
  return json{{"reason", reason_name(r.reason)}, {"kyoku_index", r.kyoku_index}, {"honba", r.honba},
              {"deltas", r.deltas},           {"tenpai", tenpai},             {"dealer_repeat", r.dealer_repeat},
              {"wins", wins}};
}

// ---------------------------------------------------------------------------
// Full (omniscient) state. Used for persistence checks and determinism
// comparisons; never sent to players.

inline json to_json(const GameState& s) {
  const RuleVariant rule = s.config.rule;
  json players = json::array();
  for (const auto& p : s.players) {
    json tiles = json::array();
    for (int id = 0; id < kNumTiles; ++id) {
      if (p.tiles.test(id)) tiles.push_back(id);
    }
    json melds = json::array();
    for (int i = 0; i < p.meld_count; ++i) melds.push_back(meld_json(p.melds[i], rule));
    players.push_back({{"tiles", tiles},
                       {"melds", melds},
                       {"riichi", riichi_name(p.riichi)},
                       {"riichi_pending", p.riichi_pending},
                       {"double_riichi_pending", p.double_riichi_pending},
                       {"ippatsu", p.ippatsu},
                       {"temp_furiten", p.temp_furiten},
                       {"perm_furiten", p.perm_furiten},
                       {"discard_count", p.discard_count},
                       {"river_kinds", p.river_kinds},
                       {"waits", p.waits},
                       {"kuikae", p.kuikae}});
  }
  json discards = json::array();
  for (int i = 0; i < s.discard_total; ++i) {
    const Discard& d = s.discards[i];
    discards.push_back({{"tile", d.tile}, {"seat", d.seat}, {"flags", d.flags}});
  }
  json events = json::array();
  for (int i = 0; i < s.event_count(); ++i) events.push_back(event_json(s.event(i), rule));
  return json{{"config",
               {{"rule", rule_name(rule)},
                {"mode", mode_name(s.config.mode)},
                {"first_dealer", s.config.first_dealer},
                {"abortive_draws", s.config.abortive_draws},
                {"agari_yame", s.config.agari_yame}}},
              {"wall",
               {{"tiles", s.wall.tiles},
                {"draw_cursor", s.wall.draw_cursor},
                {"replacements_drawn", s.wall.replacements_drawn},
                {"dora_indicator_count", s.wall.dora_indicator_count}}},
              {"players", players},
              {"scores", s.scores},
              {"phase", phase_name(s.phase)},
              {"current", s.current},
              {"kyoku_index", s.kyoku_index},
              {"honba", s.honba},
              {"deposits", s.deposits},
              {"renchan_count", s.renchan_count},
              {"kyoku_count", s.kyoku_count},
              {"rng", {{"seed", s.rng.seed}, {"counter", s.rng.counter}}},
              {"drawn_tile", s.drawn_tile == kNoTile ? json(nullptr) : json(s.drawn_tile)},
              {"rinshan", s.rinshan},
              {"any_call", s.any_call},
              {"kan_count", s.kan_count},
              {"kan_owners", s.kan_owners},
              {"pending_dora", s.pending_dora},
              {"call",
               {{"tile", s.call.tile},
                {"from", s.call.from},
                {"chankan", s.call.kind == WindowKind::chankan},
                {"stage", static_cast<int>(s.call.stage)},
                {"ron_asked", s.call.ron_asked},
                {"ron_chosen", s.call.ron_chosen},
                {"call_asked", s.call.call_asked}}},
              {"discards", discards},
              {"events", events},
              {"event_total", s.event_total},
              {"step_count", s.step_count},
              {"kyoku_steps", s.kyoku_steps},
              {"result", result_json(s.result)}};
}

inline json to_json(const EnvState& e) {
  json mask = json::array();
  for (int a = 0; a < kNumActions; ++a) {
    if (e.legal_action_mask.test(a)) mask.push_back(a);
  }
  return json{{"game", to_json(e.game)},     {"config", to_json(e.config)},   {"current_player", e.current_player},
              {"legal_actions", mask},       {"rewards", e.rewards},          {"terminated", e.terminated},
              {"truncated", e.truncated},    {"steps", e.steps},              {"illegal", e.illegal}};
}

inline json to_json(const Observation& o) {
  return json{{"hand", o.hand},           {"events", o.events},   {"shanten", o.shanten},
              {"scores", o.scores},       {"round_wind", o.round_wind}, {"seat_wind", o.seat_wind},
              {"kyoku_index", o.kyoku_index}, {"honba", o.honba}, {"deposits", o.deposits},
              {"dora", o.dora},           {"live_wall", o.live_wall}, {"riichi", o.riichi},
              {"meld_counts", o.meld_counts}, {"call_tile", o.call_tile}};
}

// ---------------------------------------------------------------------------
// Player view: what seat `seat` may know. Public tiles carry their ids; the
// viewer's own hand too. Opponents' concealed tiles appear only as counts.

inline json mask_json(const ActionMask& mask) {
  json ids = json::array();
  for (int a = 0; a < kNumActions; ++a) {
    if (mask.test(a)) ids.push_back(a);
  }
  return ids;
}

inline json action_table_json() {
  json table = json::array();
  for (int a = 0; a < kNumActions; ++a) table.push_back({{"id", a}, {"name", action_name(a)}});
  return table;
}

inline json view_json(const EnvState& e, int seat) {
  if (seat < 0 || seat > 3) throw ContractViolation("seat out of range");
  const GameState& g = e.game;
  const RuleVariant rule = g.config.rule;
  json seats = json::array();
  for (int k = 0; k < 4; ++k) {
    const PlayerState& p = g.players[k];
    json river = json::array();
    for (int i = 0; i < g.discard_total; ++i) {
      const Discard& d = g.discards[i];
      if (d.seat != k) continue;
      json t = tile_json(d.tile, rule);
      t["riichi"] = (d.flags & Discard::kRiichiTile) != 0;
      t["called"] = (d.flags & Discard::kCalled) != 0;
      t["tsumogiri"] = (d.flags & Discard::kTsumogiri) != 0;
      river.push_back(t);
    }
    json melds = json::array();
    for (int i = 0; i < p.meld_count; ++i) melds.push_back(meld_json(p.melds[i], rule));
    json entry{{"seat", k},
               {"score", g.scores[k]},
               {"wind", kind_to_string(g.seat_wind(k))},
               {"riichi", riichi_name(p.riichi)},
               {"concealed_count", p.concealed_count()},
               {"melds", melds},
               {"river", river}};
    if (k == seat) {
      json hand = json::array();
      for (int id = 0; id < kNumTiles; ++id) {
        if (p.tiles.test(id)) hand.push_back(tile_json(static_cast<TileId>(id), rule));
      }
      entry["hand"] = hand;
      if (g.current == seat && g.drawn_tile != kNoTile && g.phase == Phase::to_act) {
        entry["drawn"] = tile_json(g.drawn_tile, rule);
      }
    }
    seats.push_back(entry);
  }
  json dora = json::array();
  for (int i = 0; i < g.wall.dora_indicator_count; ++i) dora.push_back(tile_json(g.wall.dora_indicator(i), rule));

  const bool done = e.terminated || e.truncated;
  const bool my_turn = !done && e.current_player == seat;
  json view{{"seat", seat},
            {"current_player", e.current_player},
            {"phase", phase_name(g.phase)},
            {"terminated", e.terminated},
            {"truncated", e.truncated},
            {"observation", to_json(observe(e, seat))},
            {"legal_actions", my_turn ? mask_json(e.legal_action_mask) : json::array()},
            {"table",
             {{"round_wind", kind_to_string(g.round_wind())},
              {"kyoku_index", g.kyoku_index},
              {"honba", g.honba},
              {"deposits", g.deposits},
              {"dealer", g.dealer()},
              {"live_wall", g.wall.live_remaining()},
              {"dora_indicators", dora},
              {"seats", seats}}}};
  if (g.phase == Phase::awaiting_call) view["table"]["call_tile"] = tile_json(g.call.tile, rule);
  if (g.result.reason != EndReason::none) view["last_result"] = result_json(g.result);
  if (done) {
    view["final"] = {{"scores", g.scores}, {"ranks", final_ranks(g)}, {"rewards", e.rewards}, {"deposits", g.deposits}};
  }
  return view;
}

// ---------------------------------------------------------------------------
// Game logs

struct GameRecord {
  std::uint64_t seed = 0;
  EnvConfig config;
  std::vector<int> actions;  // every id passed to step, in order
};

inline EnvState replay(const GameRecord& r) {
  EnvState e = init(r.seed, r.config);
  for (std::size_t i = 0; i < r.actions.size(); ++i) {
    if (e.terminated || e.truncated) throw std::invalid_argument("log has actions after the game ended");
    e = step(e, r.actions[i]);
  }
  return e;
}

namespace serialize_detail {

inline json kyoku_start(const GameState& g) {
  json hands = json::array();
  for (const auto& p : g.players) {
    std::string text;
    for (int id = 0; id < kNumTiles; ++id) {
      // The dealer's first draw is logged as an event, not as part of the hand.
      if (p.tiles.test(id) && id != g.drawn_tile) text += tile_to_string(static_cast<TileId>(id), g.config.rule) + " ";
    }
    if (!text.empty()) text.pop_back();
    hands.push_back(text);
  }
  return json{{"kyoku_index", g.kyoku_index},
              {"honba", g.honba},
              {"deposits", g.deposits},
              {"dealer", g.dealer()},
              {"scores", g.scores},
              {"dora_indicator", tile_to_string(g.wall.dora_indicator(0), g.config.rule)},
              {"hands", hands},
              {"events", json::array()}};
}

inline void append_events(json& kyoku, const GameState& g, std::uint32_t from) {
  const std::uint32_t oldest = g.event_total > kEventWindow ? g.event_total - kEventWindow : 0;
  if (from < oldest) throw std::logic_error("event ring overrun while logging");
  for (std::uint32_t n = from; n < g.event_total; ++n) {
    kyoku["events"].push_back(event_json(g.events[n % kEventWindow], g.config.rule));
  }
}

}  // namespace serialize_detail

inline json make_log(const GameRecord& r) {
  using namespace serialize_detail;
  EnvState e = init(r.seed, r.config);
  json kyoku_list = json::array();
  json current = kyoku_start(e.game);
  append_events(current, e.game, 0);
  json actions = json::array();
  for (int a : r.actions) {
    if (e.terminated || e.truncated) throw std::invalid_argument("log has actions after the game ended");
    const int seat = e.current_player;
    const bool legal = a >= 0 && a < kNumActions && e.legal_action_mask.test(a);
    json entry{{"seat", seat}, {"action", a}};
    if (a >= 0 && a < kNumActions) entry["name"] = action_name(a);
    if (!legal) entry["illegal"] = true;
    actions.push_back(entry);
    if (legal) {
      // Engine-level step so kyoku-end events are seen before the env redeals.
      const GameState g = apply_legal_action(e.game, a);
      append_events(current, g, e.game.event_total);
      if (g.phase == Phase::kyoku_end) {
        current["result"] = result_json(g.result);
        kyoku_list.push_back(current);
        current = nullptr;
      }
    }
    e = step(e, a);
    if (current.is_null() && !e.terminated && !e.truncated && e.game.phase != Phase::game_end) {
      current = kyoku_start(e.game);
      append_events(current, e.game, 0);
    }
  }
  if (!current.is_null()) kyoku_list.push_back(current);
  json final_part{{"scores", e.game.scores},
                  {"deposits", e.game.deposits},
                  {"ranks", final_ranks(e.game)},
                  {"rewards", e.rewards},
                  {"terminated", e.terminated},
                  {"truncated", e.truncated},
                  {"illegal", e.illegal},
                  {"steps", e.steps},
                  {"phase", phase_name(e.game.phase)}};
  return json{{"format", kLogFormat}, {"version", kLogVersion}, {"seed", r.seed},   {"config", to_json(r.config)},
              {"actions", actions},   {"kyoku", kyoku_list},    {"final", final_part}};
}

inline GameRecord record_from_log(const json& log) {
  if (!log.is_object() || log.value("format", "") != kLogFormat) throw std::invalid_argument("not an mjlog-lite log");
  if (log.value("version", 0) != kLogVersion) throw std::invalid_argument("unsupported log version");
  GameRecord r;
  r.seed = log.at("seed").get<std::uint64_t>();
  r.config = env_config_from_json(log.at("config"));
  for (const auto& a : log.at("actions")) r.actions.push_back(a.at("action").get<int>());
  return r;
}

/// Replays a log and checks the recorded final standings against the replay.
inline EnvState replay_log(const json& log) {
  const GameRecord r = record_from_log(log);
  EnvState e = replay(r);
  const json& f = log.at("final");
  if (f.at("scores") != json(e.game.scores) || f.at("terminated").get<bool>() != e.terminated ||
      f.at("truncated").get<bool>() != e.truncated) {
    throw std::runtime_error("log final state does not match its replay");
  }
  return e;
}

}  // namespace riichi
