#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <optional>
#include <string>

#include "riichi/action.hpp"
#include "riichi/hand_eval.hpp"
#include "riichi/scoring.hpp"
#include "riichi/state.hpp"

namespace riichi {

/// Thrown by apply_action for an action whose mask bit is false.
class IllegalAction : public ContractViolation {
 public:
  using ContractViolation::ContractViolation;
};

namespace engine_detail {

constexpr std::uint64_t bit(int kind) { return std::uint64_t{1} << kind; }

inline void push_event(GameState& s, EventType type, int actor, TileId tile = kNoTile) {
  s.events[s.event_total % kEventWindow] = Event{type, static_cast<std::uint8_t>(actor), tile};
  ++s.event_total;
}

inline void add_tile(PlayerState& p, TileId t) {
  p.tiles.set(t);
  ++p.counts[t >> 2];
}

inline void remove_tile(PlayerState& p, TileId t) {
  if (!p.tiles.test(t)) throw ContractViolation("tile " + std::to_string(t) + " not in hand");
  p.tiles.reset(t);
  --p.counts[t >> 2];
}

// Held copy of a kind; non-red copies first. kNoTile if none qualifies.
inline TileId find_copy(const PlayerState& p, int kind, RuleVariant rule, bool allow_red) {
  for (int c = 0; c < 4; ++c) {
    const auto id = static_cast<TileId>(kind * 4 + c);
    if (p.tiles.test(id) && !is_red(id, rule)) return id;
  }
  if (allow_red) {
    for (int c = 0; c < 4; ++c) {
      const auto id = static_cast<TileId>(kind * 4 + c);
      if (p.tiles.test(id)) return id;
    }
  }
  return kNoTile;
}

inline bool holds_plain(const PlayerState& p, int kind, RuleVariant rule) {
  if (rule == RuleVariant::no_red || !is_five_kind(kind)) return p.counts[kind] > 0;
  return find_copy(p, kind, rule, false) != kNoTile;
}

inline TileId red_id_for_action(int a) { return kRedFiveIds[a - action::kDiscardRed]; }

inline void update_waits(PlayerState& p) {
  p.waits = 0;
  if (p.concealed_count() != 13 - 3 * p.meld_count) return;
  if (shanten(p.counts, p.meld_count) == 0) p.waits = winning_kinds(p.counts, p.meld_count);
}

inline bool uninterrupted_first_turn(const GameState& s, int seat) {
  return !s.any_call && s.players[seat].discard_count == 0;
}

inline WinContext win_context(const GameState& s, int seat, TileId win_tile, WinType type, bool robbing_kan) {
  const PlayerState& p = s.players[seat];
  WinContext ctx;
  for (int id = 0; id < kNumTiles; ++id) {
    if (p.tiles.test(id)) ctx.concealed[ctx.concealed_count++] = static_cast<TileId>(id);
  }
  if (type == WinType::ron) ctx.concealed[ctx.concealed_count++] = win_tile;
  ctx.melds = p.melds;
  ctx.meld_count = p.meld_count;
  ctx.win_tile = win_tile;
  ctx.win_type = type;
  ctx.seat_wind = s.seat_wind(seat);
  ctx.round_wind = s.round_wind();
  ctx.dealer = seat == s.dealer();
  ctx.riichi = p.riichi;
  ctx.ippatsu = p.ippatsu;
  ctx.is_last_draw = s.wall.live_remaining() == 0 && !(type == WinType::tsumo && s.rinshan) && !robbing_kan;
  ctx.is_kan_replacement = type == WinType::tsumo && s.rinshan;
  ctx.is_robbing_kan = robbing_kan;
  ctx.is_first_draw = type == WinType::tsumo && !s.rinshan && uninterrupted_first_turn(s, seat);
  for (int i = 0; i < s.wall.dora_indicator_count; ++i) ctx.dora_indicators[i] = s.wall.dora_indicator(i);
  ctx.dora_indicator_count = s.wall.dora_indicator_count;
  if (p.riichi != RiichiState::none) {
    for (int i = 0; i < s.wall.dora_indicator_count; ++i) ctx.ura_indicators[i] = s.wall.ura_indicator(i);
    ctx.ura_indicator_count = s.wall.dora_indicator_count;
  }
  ctx.rule = s.config.rule;
  ctx.options = s.config.scoring;
  return ctx;
}

inline bool can_ron(const GameState& s, int seat) {
  const PlayerState& p = s.players[seat];
  const TileId t = s.call.tile;
  if (!(p.waits & bit(t >> 2)) || p.furiten()) return false;
  const auto ctx = win_context(s, seat, t, WinType::ron, s.call.kind == WindowKind::chankan);
  return !score_hand(ctx).yaku.empty();
}

inline bool can_tsumo(const GameState& s) {
  const PlayerState& p = s.players[s.current];
  if (s.drawn_tile == kNoTile || !(p.waits & bit(s.drawn_tile >> 2))) return false;
  const auto ctx = win_context(s, s.current, s.drawn_tile, WinType::tsumo, false);
  return !score_hand(ctx).yaku.empty();
}

// Kinds banned for the discard right after a call (kuikae).
inline std::uint64_t kuikae_mask(int called_kind, int action) {
  std::uint64_t m = bit(called_kind);
  if (action == action::kChiLow && called_kind % 9 <= 5) m |= bit(called_kind + 3);
  if (action == action::kChiHigh && called_kind % 9 >= 3) m |= bit(called_kind - 3);
  return m;
}

// The two hand kinds a chi uses, or nullopt when the variant is impossible.
inline std::optional<std::pair<int, int>> chi_kinds(int called_kind, int action) {
  if (called_kind >= 27) return std::nullopt;
  const int n = called_kind % 9;
  if (action == action::kChiLow && n <= 6) return std::pair{called_kind + 1, called_kind + 2};
  if (action == action::kChiMid && n >= 1 && n <= 7) return std::pair{called_kind - 1, called_kind + 1};
  if (action == action::kChiHigh && n >= 2) return std::pair{called_kind - 2, called_kind - 1};
  return std::nullopt;
}

// True when at least one tile outside `banned` remains after removing the
// given kinds (one copy each) from the hand.
inline bool discard_left(const PlayerState& p, std::initializer_list<int> used, std::uint64_t banned) {
  Counts34 c = p.counts;
  for (int k : used) --c[k];
  for (int k = 0; k < kNumKinds; ++k) {
    if (c[k] > 0 && !(banned & bit(k))) return true;
  }
  return false;
}

inline bool chi_legal(const GameState& s, int seat, int action) {
  const PlayerState& p = s.players[seat];
  const int t = s.call.tile >> 2;
  const auto kinds = chi_kinds(t, action);
  if (!kinds) return false;
  const auto [a, b] = *kinds;
  if (p.counts[a] == 0 || p.counts[b] == 0) return false;
  return discard_left(p, {a, b}, kuikae_mask(t, action));
}

inline bool pon_legal(const GameState& s, int seat) {
  const PlayerState& p = s.players[seat];
  const int t = s.call.tile >> 2;
  return p.counts[t] >= 2 && discard_left(p, {t, t}, bit(t));
}

inline bool open_kan_legal(const GameState& s, int seat) {
  const int t = s.call.tile >> 2;
  return s.players[seat].counts[t] == 3 && s.kan_count < kMaxKans && s.wall.live_remaining() > 0;
}

// Calls other than ron on the current window.
inline bool may_call(const GameState& s, int seat) {
  const PlayerState& p = s.players[seat];
  return s.call.kind == WindowKind::discard && p.riichi == RiichiState::none && s.wall.live_remaining() > 0 &&
         seat != s.call.from;
}

inline bool has_pon_options(const GameState& s, int seat) {
  return may_call(s, seat) && (pon_legal(s, seat) || open_kan_legal(s, seat));
}

inline bool has_chi_options(const GameState& s, int seat) {
  if (!may_call(s, seat) || seat != (s.call.from + 1) % 4) return false;
  return chi_legal(s, seat, action::kChiLow) || chi_legal(s, seat, action::kChiMid) ||
         chi_legal(s, seat, action::kChiHigh);
}

inline void reveal_dora(GameState& s) {
  if (s.wall.dora_indicator_count >= 5) throw ContractViolation("too many dora indicators");
  ++s.wall.dora_indicator_count;
  push_event(s, EventType::new_dora, s.current, s.wall.dora_indicator(s.wall.dora_indicator_count - 1));
}

inline void flush_pending_dora(GameState& s) {
  while (s.pending_dora > 0) {
    --s.pending_dora;
    reveal_dora(s);
  }
}

inline void draw(GameState& s, int seat, bool replacement) {
  TileId t;
  if (replacement) {
    t = s.wall.tiles[replacement_index(s.wall.replacements_drawn)];
    ++s.wall.replacements_drawn;
  } else {
    if (s.wall.live_remaining() <= 0) throw ContractViolation("draw from an empty wall");
    t = s.wall.tiles[s.wall.draw_cursor++];
  }
  PlayerState& p = s.players[seat];
  add_tile(p, t);
  p.temp_furiten = false;
  s.drawn_tile = t;
  s.rinshan = replacement;
  s.phase = Phase::to_act;
  s.current = static_cast<std::uint8_t>(seat);
  push_event(s, EventType::draw, seat, t);
}

inline void clear_ippatsu(GameState& s) {
  for (auto& p : s.players) p.ippatsu = false;
}

inline void end_kyoku(GameState& s, EndReason reason, bool dealer_repeat) {
  s.result.reason = reason;
  s.result.kyoku_index = s.kyoku_index;
  s.result.honba = s.honba;
  s.result.dealer_repeat = dealer_repeat;
  s.phase = Phase::kyoku_end;
  s.call = CallWindow{};
}

inline void begin_result(GameState& s) {
  s.result = KyokuResult{};
}

inline void abort_kyoku(GameState& s, EndReason reason) {
  begin_result(s);
  // Riichi sticks placed this kyoku go back to their owners.
  for (int seat = 0; seat < 4; ++seat) {
    const PlayerState& p = s.players[seat];
    if (p.riichi != RiichiState::none || p.riichi_pending) {
      s.scores[seat] += 1000;
      s.result.deltas[seat] += 1000;
      --s.deposits;
    }
  }
  push_event(s, EventType::draw_end, s.current);
  end_kyoku(s, reason, true);
}

inline void exhaustive_draw(GameState& s) {
  begin_result(s);
  int tenpai = 0;
  for (int seat = 0; seat < 4; ++seat) {
    if (s.players[seat].waits != 0) {
      s.result.tenpai_mask |= static_cast<std::uint8_t>(1 << seat);
      ++tenpai;
    }
  }
  if (tenpai > 0 && tenpai < 4) {
    for (int seat = 0; seat < 4; ++seat) {
      const bool t = s.result.tenpai_mask & (1 << seat);
      s.result.deltas[seat] = t ? 3000 / tenpai : -3000 / (4 - tenpai);
      s.scores[seat] += s.result.deltas[seat];
    }
  }
  push_event(s, EventType::draw_end, s.dealer());
  end_kyoku(s, EndReason::exhaustive_draw, (s.result.tenpai_mask >> s.dealer()) & 1);
}

inline WinRecord record_win(int winner, int from, const ScoreResult& r, const Settlement& st) {
  WinRecord w;
  w.winner = static_cast<std::uint8_t>(winner);
  w.from = static_cast<std::uint8_t>(from);
  w.han = static_cast<std::uint8_t>(r.han);
  w.fu = static_cast<std::uint8_t>(r.fu);
  w.yakuman = r.yaku.yakuman_count;
  w.dora = static_cast<std::uint8_t>(r.dora);
  w.ura = static_cast<std::uint8_t>(r.ura);
  w.red = static_cast<std::uint8_t>(r.red);
  w.base = r.base;
  w.yaku = r.yaku;
  w.settlement = st;
  return w;
}

inline void apply_settlement(GameState& s, const Settlement& st) {
  for (int seat = 0; seat < 4; ++seat) {
    s.scores[seat] += st.deltas[seat];
    s.result.deltas[seat] += st.deltas[seat];
  }
}

inline void win_by_tsumo(GameState& s) {
  const int seat = s.current;
  const auto r = score_hand(win_context(s, seat, s.drawn_tile, WinType::tsumo, false));
  begin_result(s);
  const auto st = settle(WinType::tsumo, r.base, s.dealer(), seat, std::nullopt, s.honba, s.deposits);
  apply_settlement(s, st);
  s.deposits = 0;
  s.result.wins[0] = record_win(seat, seat, r, st);
  s.result.win_count = 1;
  push_event(s, EventType::tsumo, seat, s.drawn_tile);
  end_kyoku(s, EndReason::tsumo, seat == s.dealer());
}

inline void resolve_rons(GameState& s) {
  const int from = s.call.from;
  std::array<int, 3> winners{};
  int n = 0;
  for (int i = 1; i <= 3; ++i) {
    const int q = (from + i) % 4;
    if (s.call.ron_chosen & (1 << q)) winners[n++] = q;
  }
  if (n == 3 && s.config.aborts()) {
    abort_kyoku(s, EndReason::triple_ron);
    return;
  }
  const bool robbing = s.call.kind == WindowKind::chankan;
  const TileId tile = s.call.tile;
  // Score every winner against the same pre-settlement state.
  std::array<ScoreResult, 3> scores{};
  for (int j = 0; j < n; ++j) scores[j] = score_hand(win_context(s, winners[j], tile, WinType::ron, robbing));
  begin_result(s);
  bool dealer_won = false;
  for (int j = 0; j < n; ++j) {
    // Honba and deposits go to the first winner from the discarder's right.
    const auto st = settle(WinType::ron, scores[j].base, s.dealer(), winners[j], from, j == 0 ? s.honba : 0,
                           j == 0 ? s.deposits : 0);
    apply_settlement(s, st);
    s.result.wins[j] = record_win(winners[j], from, scores[j], st);
    dealer_won = dealer_won || winners[j] == s.dealer();
    push_event(s, EventType::ron, winners[j], tile);
  }
  s.deposits = 0;
  s.result.win_count = static_cast<std::uint8_t>(n);
  end_kyoku(s, EndReason::ron, dealer_won);
}

// Everyone who could have won on the window tile and did not is furiten.
inline void mark_missed_wins(GameState& s) {
  const std::uint64_t k = bit(s.call.tile >> 2);
  for (int seat = 0; seat < 4; ++seat) {
    if (seat == s.call.from) continue;
    PlayerState& p = s.players[seat];
    if (!(p.waits & k)) continue;
    if (p.riichi != RiichiState::none) p.perm_furiten = true;
    else p.temp_furiten = true;
  }
}

// Returns true when the kyoku ended (four-riichi abort).
inline bool establish_riichi(GameState& s, int seat) {
  PlayerState& p = s.players[seat];
  if (!p.riichi_pending) return false;
  p.riichi_pending = false;
  p.riichi = p.double_riichi_pending ? RiichiState::double_riichi : RiichiState::riichi;
  p.double_riichi_pending = false;
  p.ippatsu = true;
  if (s.config.aborts()) {
    int in_riichi = 0;
    for (const auto& q : s.players) in_riichi += q.riichi != RiichiState::none;
    if (in_riichi == 4) {
      abort_kyoku(s, EndReason::four_riichi);
      return true;
    }
  }
  return false;
}

// Checks run once a discard has survived the ron stage. Returns true when
// the kyoku ended.
inline bool after_discard_passes(GameState& s) {
  mark_missed_wins(s);
  if (establish_riichi(s, s.call.from)) return true;
  if (s.config.aborts() && s.kan_count == 4 && std::popcount(s.kan_owners) > 1) {
    abort_kyoku(s, EndReason::four_kans);
    return true;
  }
  return false;
}

inline void close_window_without_call(GameState& s) {
  if (s.call.kind == WindowKind::chankan) {
    mark_missed_wins(s);
    const int kan_seat = s.call.from;
    s.call = CallWindow{};
    draw(s, kan_seat, true);
    return;
  }
  if (after_discard_passes(s)) return;
  const int next = (s.call.from + 1) % 4;
  s.call = CallWindow{};
  if (s.wall.live_remaining() == 0) {
    exhaustive_draw(s);
    return;
  }
  draw(s, next, false);
}

// Moves the window to the next seat that has a real choice, or resolves it.
inline void advance_window(GameState& s) {
  CallWindow& w = s.call;
  if (w.stage == CallStage::ron) {
    for (int i = 1; i <= 3; ++i) {
      const int q = (w.from + i) % 4;
      if (w.ron_asked & (1 << q)) continue;
      if (can_ron(s, q)) {
        s.phase = Phase::awaiting_call;
        s.current = static_cast<std::uint8_t>(q);
        return;
      }
      w.ron_asked |= static_cast<std::uint8_t>(1 << q);
    }
    if (w.ron_chosen) {
      resolve_rons(s);
      return;
    }
    if (w.kind == WindowKind::chankan) {
      close_window_without_call(s);
      return;
    }
    w.stage = CallStage::pon;
  }
  if (w.stage == CallStage::pon) {
    for (int i = 1; i <= 3; ++i) {
      const int q = (w.from + i) % 4;
      if (w.call_asked & (1 << q)) continue;
      if (has_pon_options(s, q)) {
        s.phase = Phase::awaiting_call;
        s.current = static_cast<std::uint8_t>(q);
        return;
      }
    }
    w.stage = CallStage::chi;
    w.call_asked = static_cast<std::uint8_t>(1 << w.from);
  }
  const int chi_seat = (w.from + 1) % 4;
  if (!(w.call_asked & (1 << chi_seat)) && has_chi_options(s, chi_seat)) {
    s.phase = Phase::awaiting_call;
    s.current = static_cast<std::uint8_t>(chi_seat);
    return;
  }
  close_window_without_call(s);
}

inline void discard(GameState& s, TileId t) {
  const int seat = s.current;
  PlayerState& p = s.players[seat];
  remove_tile(p, t);
  Discard d{t, static_cast<std::uint8_t>(seat), 0};
  if (t == s.drawn_tile) d.flags |= Discard::kTsumogiri;
  if (p.riichi_pending) d.flags |= Discard::kRiichiTile;
  if (s.discard_total >= kMaxDiscards) throw ContractViolation("discard list overflow");
  s.discards[s.discard_total++] = d;
  p.river_kinds |= bit(t >> 2);
  ++p.discard_count;
  if (p.riichi != RiichiState::none) p.ippatsu = false;
  p.kuikae = 0;
  push_event(s, EventType::discard, seat, t);
  update_waits(p);
  s.drawn_tile = kNoTile;
  s.rinshan = false;
  flush_pending_dora(s);
  s.call = CallWindow{t, static_cast<std::uint8_t>(seat), WindowKind::discard, CallStage::ron, 0, 0, 0};
  s.call.ron_asked = static_cast<std::uint8_t>(1 << seat);
  s.call.call_asked = static_cast<std::uint8_t>(1 << seat);
  advance_window(s);
}

inline void form_call(GameState& s, int a) {
  const int seat = s.current;
  const TileId t = s.call.tile;
  const int k = t >> 2;
  const int from = s.call.from;
  if (after_discard_passes(s)) return;
  s.discards[s.discard_total - 1].flags |= Discard::kCalled;

  PlayerState& p = s.players[seat];
  Meld m;
  m.called = t;
  m.from = static_cast<std::uint8_t>(from);
  m.tiles[0] = t;
  EventType ev;
  if (a == action::kPon || a == action::kOpenKan) {
    const int n = a == action::kPon ? 2 : 3;
    for (int i = 1; i <= n; ++i) {
      const TileId c = find_copy(p, k, s.config.rule, true);
      remove_tile(p, c);
      m.tiles[i] = c;
    }
    m.type = a == action::kPon ? MeldType::pon : MeldType::open_kan;
    m.kind = static_cast<TileKind>(k);
    ev = a == action::kPon ? EventType::pon : EventType::kan_open;
  } else {
    const auto [x, y] = *chi_kinds(k, a);
    const TileId cx = find_copy(p, x, s.config.rule, true);
    remove_tile(p, cx);
    const TileId cy = find_copy(p, y, s.config.rule, true);
    remove_tile(p, cy);
    m.tiles[1] = cx;
    m.tiles[2] = cy;
    m.type = MeldType::chi;
    m.kind = static_cast<TileKind>(std::min({k, x, y}));
    ev = EventType::chi;
  }
  p.melds[p.meld_count++] = m;
  s.any_call = true;
  clear_ippatsu(s);
  p.temp_furiten = false;
  s.call = CallWindow{};
  s.current = static_cast<std::uint8_t>(seat);
  s.phase = Phase::to_act;
  s.drawn_tile = kNoTile;
  s.rinshan = false;
  push_event(s, ev, seat, t);
  if (m.type == MeldType::open_kan) {
    ++s.kan_count;
    s.kan_owners |= static_cast<std::uint8_t>(1 << seat);
    ++s.pending_dora;
    update_waits(p);
    draw(s, seat, true);
  } else {
    p.kuikae = kuikae_mask(k, a);
  }
}

inline void closed_kan(GameState& s, int k) {
  const int seat = s.current;
  PlayerState& p = s.players[seat];
  flush_pending_dora(s);
  Meld m;
  m.type = MeldType::closed_kan;
  m.kind = static_cast<TileKind>(k);
  for (int c = 0; c < 4; ++c) {
    const auto id = static_cast<TileId>(k * 4 + c);
    remove_tile(p, id);
    m.tiles[c] = id;
  }
  p.melds[p.meld_count++] = m;
  ++s.kan_count;
  s.kan_owners |= static_cast<std::uint8_t>(1 << seat);
  s.any_call = true;
  clear_ippatsu(s);
  update_waits(p);
  push_event(s, EventType::kan_closed, seat, m.tiles[0]);
  reveal_dora(s);
  draw(s, seat, true);
}

inline void added_kan(GameState& s, int k) {
  const int seat = s.current;
  PlayerState& p = s.players[seat];
  flush_pending_dora(s);
  TileId t = kNoTile;
  for (int c = 0; c < 4; ++c) {
    if (p.tiles.test(k * 4 + c)) t = static_cast<TileId>(k * 4 + c);
  }
  remove_tile(p, t);
  for (int i = 0; i < p.meld_count; ++i) {
    Meld& m = p.melds[i];
    if (m.type == MeldType::pon && m.kind == k) {
      m.type = MeldType::added_kan;
      m.tiles[3] = t;
    }
  }
  ++s.kan_count;
  s.kan_owners |= static_cast<std::uint8_t>(1 << seat);
  s.any_call = true;
  clear_ippatsu(s);
  update_waits(p);
  ++s.pending_dora;
  s.drawn_tile = kNoTile;
  push_event(s, EventType::kan_added, seat, t);
  // Chankan window: ron only.
  s.call = CallWindow{t, static_cast<std::uint8_t>(seat), WindowKind::chankan, CallStage::ron, 0, 0, 0};
  s.call.ron_asked = static_cast<std::uint8_t>(1 << seat);
  advance_window(s);
}

// Deals from a prepared wall: seat dealer+i takes tiles [13i, 13i+13).
inline void deal_from_wall(GameState& s, const Wall& wall) {
  s.wall = wall;
  for (auto& p : s.players) p = PlayerState{};
  const int dealer = s.dealer();
  for (int i = 0; i < 4; ++i) {
    PlayerState& p = s.players[(dealer + i) % 4];
    for (int j = 0; j < 13; ++j) add_tile(p, s.wall.tiles[13 * i + j]);
    update_waits(p);
  }
  s.drawn_tile = kNoTile;
  s.rinshan = false;
  s.any_call = false;
  s.kan_count = 0;
  s.kan_owners = 0;
  s.pending_dora = 0;
  s.call = CallWindow{};
  s.discard_total = 0;
  s.event_total = 0;
  s.kyoku_steps = 0;
  ++s.kyoku_count;
  draw(s, dealer, false);
}

inline void deal_kyoku(GameState& s) {
  auto [wall, rng] = new_wall(s.rng);
  s.rng = rng;
  deal_from_wall(s, wall);
}

inline bool nine_terminals_ok(const GameState& s) {
  if (!s.config.aborts() || s.drawn_tile == kNoTile || s.rinshan) return false;
  if (!uninterrupted_first_turn(s, s.current)) return false;
  const PlayerState& p = s.players[s.current];
  int kinds = 0;
  for (int k = 0; k < kNumKinds; ++k) kinds += is_terminal_or_honor(k) && p.counts[k] > 0;
  return kinds >= 9;
}

inline void to_act_mask(const GameState& s, ActionMask& mask) {
  const int seat = s.current;
  const PlayerState& p = s.players[seat];
  const RuleVariant rule = s.config.rule;
  const bool drew = s.drawn_tile != kNoTile;

  auto add_discards = [&](auto allowed) {
    for (int k = 0; k < kNumKinds; ++k) {
      if (p.counts[k] == 0 || !allowed(k)) continue;
      if (holds_plain(p, k, rule)) mask.set(k);
    }
    if (rule == RuleVariant::red) {
      for (int i = 0; i < 3; ++i) {
        const TileId red = kRedFiveIds[i];
        if (p.tiles.test(red) && allowed(red >> 2)) mask.set(action::kDiscardRed + i);
      }
    }
  };

  if (p.riichi_pending) {
    // Declaration discard must leave the hand tenpai.
    Counts34 c = p.counts;
    add_discards([&](int k) {
      --c[k];
      const bool ok = shanten(c, p.meld_count) == 0;
      ++c[k];
      return ok;
    });
    return;
  }

  const bool can_kan = drew && s.kan_count < kMaxKans && s.wall.live_remaining() > 0;
  if (p.riichi != RiichiState::none) {
    // Riichi lock: drawn tile, tsumo, or a wait-preserving closed kan.
    if (!drew) throw ContractViolation("riichi player acting without a draw");
    const int dk = s.drawn_tile >> 2;
    mask.set(is_red(s.drawn_tile, rule) ? action::kDiscardRed + dk / 9 : dk);
    if (can_tsumo(s)) mask.set(action::kTsumo);
    if (can_kan && p.counts[dk] == 4) {
      Counts34 c = p.counts;
      c[dk] = 0;
      const int melds = p.meld_count + 1;
      const bool same = shanten(c, melds) == 0 && winning_kinds(c, melds) == p.waits;
      if (same) mask.set(action::kClosedKan + dk);
    }
    return;
  }

  add_discards([&](int k) { return !(p.kuikae & bit(k)); });
  if (!drew) return;
  if (can_tsumo(s)) mask.set(action::kTsumo);
  if (p.closed() && s.scores[seat] >= 1000 && s.wall.live_remaining() >= 4 && shanten(p.counts, p.meld_count) <= 0) {
    mask.set(action::kRiichi);
  }
  if (can_kan) {
    for (int k = 0; k < kNumKinds; ++k) {
      if (p.counts[k] == 4) mask.set(action::kClosedKan + k);
    }
    for (int i = 0; i < p.meld_count; ++i) {
      const Meld& m = p.melds[i];
      if (m.type == MeldType::pon && p.counts[m.kind] == 1) mask.set(action::kAddedKan + m.kind);
    }
  }
  if (nine_terminals_ok(s)) mask.set(action::kNineTerminals);
}

inline void call_mask(const GameState& s, ActionMask& mask) {
  const int seat = s.current;
  mask.set(action::kPass);
  if (s.call.stage == CallStage::ron) {
    mask.set(action::kRon);
    return;
  }
  if (s.call.stage == CallStage::pon && may_call(s, seat)) {
    if (pon_legal(s, seat)) mask.set(action::kPon);
    if (open_kan_legal(s, seat)) mask.set(action::kOpenKan);
  }
  if (s.call.stage == CallStage::chi && has_chi_options(s, seat)) {
    for (int a = action::kChiLow; a <= action::kChiHigh; ++a) {
      if (chi_legal(s, seat, a)) mask.set(a);
    }
  }
}

}  // namespace engine_detail

// ---------------------------------------------------------------------------

/// New game: scores 25,000 each, first kyoku dealt, dealer has drawn.
inline GameState new_game(std::uint64_t seed, const GameConfig& config = {}) {
  if (config.first_dealer > 3) throw ContractViolation("first dealer out of range");
  GameState s;
  s.config = config;
  s.rng = make_rng(seed);
  engine_detail::deal_kyoku(s);
  return s;
}

/// Exact legality for the single decision-maker `state.current`.
inline ActionMask legal_actions(const GameState& s) {
  ActionMask mask;
  if (s.phase == Phase::to_act) engine_detail::to_act_mask(s, mask);
  else if (s.phase == Phase::awaiting_call) engine_detail::call_mask(s, mask);
  else throw ContractViolation("no decision pending in this phase");
  return mask;
}

/// Applies an action already known to be legal. Callers that have not
/// checked the mask should use apply_action.
inline GameState apply_legal_action(GameState s, int a) {
  using namespace engine_detail;
  ++s.step_count;
  ++s.kyoku_steps;
  if (s.phase == Phase::to_act) {
    PlayerState& p = s.players[s.current];
    if (action::is_discard(a)) {
      TileId t;
      if (a >= action::kDiscardRed) {
        t = red_id_for_action(a);
      } else if (s.drawn_tile != kNoTile && (s.drawn_tile >> 2) == a && !is_red(s.drawn_tile, s.config.rule)) {
        t = s.drawn_tile;
      } else {
        t = find_copy(p, a, s.config.rule, s.config.rule == RuleVariant::no_red);
      }
      discard(s, t);
    } else if (a == action::kRiichi) {
      p.riichi_pending = true;
      p.double_riichi_pending = uninterrupted_first_turn(s, s.current);
      s.scores[s.current] -= 1000;
      ++s.deposits;
      push_event(s, EventType::riichi, s.current);
    } else if (a == action::kTsumo) {
      win_by_tsumo(s);
    } else if (action::is_closed_kan(a)) {
      closed_kan(s, a - action::kClosedKan);
    } else if (action::is_added_kan(a)) {
      added_kan(s, a - action::kAddedKan);
    } else if (a == action::kNineTerminals) {
      abort_kyoku(s, EndReason::nine_terminals);
    } else {
      throw IllegalAction("action " + action_name(a) + " is not a turn action");
    }
    return s;
  }
  if (s.phase != Phase::awaiting_call) throw ContractViolation("no decision pending in this phase");
  const int seat = s.current;
  const auto me = static_cast<std::uint8_t>(1 << seat);
  if (s.call.stage == CallStage::ron) {
    s.call.ron_asked |= me;
    if (a == action::kRon) {
      s.call.ron_chosen |= me;
    } else {
      PlayerState& p = s.players[seat];
      if (p.riichi != RiichiState::none) p.perm_furiten = true;
      else p.temp_furiten = true;
    }
    advance_window(s);
  } else if (a == action::kPass) {
    s.call.call_asked |= me;
    advance_window(s);
  } else {
    form_call(s, a);
  }
  return s;
}

inline GameState apply_action(const GameState& s, int a) {
  if (a < 0 || a >= kNumActions) throw IllegalAction("action id out of range: " + std::to_string(a));
  if (!legal_actions(s).test(a)) throw IllegalAction("illegal action " + action_name(a));
  return apply_legal_action(s, a);
}

/// Rank per seat (0 = first). Ties go to the seat earlier in the initial
/// seating order (first dealer first).
inline std::array<int, 4> final_ranks(const GameState& s) {
  std::array<int, 4> order{0, 1, 2, 3};
  auto seat_order = [&](int seat) { return (seat - s.config.first_dealer + 4) % 4; };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (s.scores[a] != s.scores[b]) return s.scores[a] > s.scores[b];
    return seat_order(a) < seat_order(b);
  });
  std::array<int, 4> rank{};
  for (int r = 0; r < 4; ++r) rank[order[r]] = r;
  return rank;
}

/// From kyoku_end: next kyoku, or game_end.
inline GameState advance_round(GameState s) {
  if (s.phase != Phase::kyoku_end) throw ContractViolation("advance_round outside kyoku_end");
  const bool repeat = s.result.dealer_repeat;
  const bool won = s.result.reason == EndReason::tsumo || s.result.reason == EndReason::ron;
  if (!won || repeat) ++s.honba;
  else s.honba = 0;
  const bool bankrupt = std::any_of(s.scores.begin(), s.scores.end(), [](int v) { return v < 0; });
  if (s.config.mode == Mode::single || bankrupt) {
    s.phase = Phase::game_end;
    return s;
  }
  const int last = s.config.mode == Mode::east ? 3 : 7;
  if (repeat && s.kyoku_index == last && s.config.agari_yame && final_ranks(s)[s.dealer()] == 0) {
    s.phase = Phase::game_end;
    return s;
  }
  if (repeat && s.renchan_count < kRenchanCap) {
    ++s.renchan_count;
  } else {
    ++s.kyoku_index;
  }
  if (s.kyoku_index > last) {
    s.phase = Phase::game_end;
    return s;
  }
  engine_detail::deal_kyoku(s);
  return s;
}

/// Structural invariants; returns an empty string when all hold.
inline std::string check_invariants(const GameState& s) {
  std::array<int, kNumTiles> seen{};
  const int repl_start = kNumTiles - s.wall.replacements_drawn;
  for (int i = s.wall.draw_cursor; i < repl_start; ++i) ++seen[s.wall.tiles[i]];
  for (int seat = 0; seat < 4; ++seat) {
    const PlayerState& p = s.players[seat];
    Counts34 c{};
    for (int id = 0; id < kNumTiles; ++id) {
      if (p.tiles.test(id)) {
        ++seen[id];
        ++c[id >> 2];
      }
    }
    if (c != p.counts) return "seat " + std::to_string(seat) + " counts disagree with tiles";
    for (int i = 0; i < p.meld_count; ++i) {
      for (int j = 0; j < p.melds[i].size(); ++j) ++seen[p.melds[i].tiles[j]];
    }
    const int eq = p.concealed_count() + 3 * p.meld_count;
    if (s.phase != Phase::game_end && eq != 13 && eq != 14) {
      return "seat " + std::to_string(seat) + " holds " + std::to_string(eq) + " tile-equivalents";
    }
  }
  for (int i = 0; i < s.discard_total; ++i) {
    if (!(s.discards[i].flags & Discard::kCalled)) ++seen[s.discards[i].tile];
  }
  // A robbed kan tile sits in the kan meld; nothing else is double counted.
  for (int id = 0; id < kNumTiles; ++id) {
    if (seen[id] != 1) return "tile " + std::to_string(id) + " seen " + std::to_string(seen[id]) + " times";
  }
  const int total = s.scores[0] + s.scores[1] + s.scores[2] + s.scores[3] + 1000 * s.deposits;
  if (total != 4 * kStartingScore) return "score sum " + std::to_string(total);
  if (s.kyoku_steps > kKyokuStepBound) return "kyoku exceeded step bound";
  return {};
}

}  // namespace riichi
