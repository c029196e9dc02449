#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "riichi/hand_eval.hpp"
#include "riichi/meld.hpp"
#include "riichi/tile.hpp"

namespace riichi {

// Stable numbering; exported in docs/yaku.md. Do not reorder.
enum class Yaku : std::uint8_t {
  riichi = 0,
  double_riichi,
  ippatsu,
  menzen_tsumo,
  pinfu,
  tanyao,
  iipeikou,
  yakuhai_white,
  yakuhai_green,
  yakuhai_red,
  seat_wind,
  round_wind,
  haitei,
  houtei,
  rinshan,
  chankan,
  sanshoku_doujun,
  sanshoku_doukou,
  ittsu,
  chanta,
  junchan,
  toitoi,
  sanankou,
  sankantsu,
  chiitoitsu,
  honroutou,
  shousangen,
  honitsu,
  chinitsu,
  ryanpeikou,
  // yakuman
  kokushi,
  suuankou,
  daisangen,
  shousuushi,
  daisuushi,
  tsuuiisou,
  chinroutou,
  ryuuiisou,
  chuuren,
  suukantsu,
  tenhou,
  chiihou,
  count_
};

inline constexpr int kYakuCount = static_cast<int>(Yaku::count_);

inline constexpr std::array<std::string_view, kYakuCount> kYakuNames{
    "riichi",          "double_riichi", "ippatsu",    "menzen_tsumo", "pinfu",      "tanyao",
    "iipeikou",        "yakuhai_white", "yakuhai_green", "yakuhai_red", "seat_wind", "round_wind",
    "haitei",          "houtei",        "rinshan",    "chankan",      "sanshoku_doujun", "sanshoku_doukou",
    "ittsu",           "chanta",        "junchan",    "toitoi",       "sanankou",   "sankantsu",
    "chiitoitsu",      "honroutou",     "shousangen", "honitsu",      "chinitsu",   "ryanpeikou",
    "kokushi",         "suuankou",      "daisangen",  "shousuushi",   "daisuushi",  "tsuuiisou",
    "chinroutou",      "ryuuiisou",     "chuuren",    "suukantsu",    "tenhou",     "chiihou"};

constexpr std::string_view yaku_name(Yaku y) { return kYakuNames[static_cast<int>(y)]; }
constexpr bool is_yakuman(Yaku y) { return y >= Yaku::kokushi; }

enum class WinType : std::uint8_t { tsumo, ron };
enum class RiichiState : std::uint8_t { none, riichi, double_riichi };

struct ScoringOptions {
  bool kazoe_yakuman = false;   // 13+ han counts as yakuman
  bool double_yakuman = false;  // suuankou tanki, kokushi 13-wait, junsei chuuren, daisuushi score 2
  friend bool operator==(const ScoringOptions&, const ScoringOptions&) = default;
};

struct WinContext {
  std::array<TileId, 14> concealed{};  // includes the winning tile
  std::uint8_t concealed_count = 0;
  std::array<Meld, 4> melds{};
  std::uint8_t meld_count = 0;
  TileId win_tile = kNoTile;
  WinType win_type = WinType::tsumo;
  TileKind seat_wind = kEast;
  TileKind round_wind = kEast;
  bool dealer = false;
  RiichiState riichi = RiichiState::none;
  bool ippatsu = false;
  bool is_last_draw = false;       // haitei / houtei
  bool is_kan_replacement = false; // rinshan
  bool is_robbing_kan = false;     // chankan
  bool is_first_draw = false;      // uninterrupted first draw (tenhou / chiihou)
  std::array<TileId, 5> dora_indicators{};
  std::uint8_t dora_indicator_count = 0;
  std::array<TileId, 5> ura_indicators{};
  std::uint8_t ura_indicator_count = 0;
  RuleVariant rule = RuleVariant::red;
  ScoringOptions options{};

  Counts34 concealed_counts() const {
    Counts34 c{};
    for (int i = 0; i < concealed_count; ++i) ++c[kind_unchecked(concealed[i])];
    return c;
  }
  bool closed() const noexcept {
    for (int i = 0; i < meld_count; ++i) {
      if (melds[i].is_open()) return false;
    }
    return true;
  }
};

struct YakuEntry {
  Yaku yaku = Yaku::riichi;
  std::uint8_t han = 0;  // for yakuman entries: multiplier (1 or 2)
  friend bool operator==(const YakuEntry&, const YakuEntry&) = default;
};

struct YakuList {
  std::array<YakuEntry, 24> entries{};
  std::uint8_t count = 0;
  std::uint8_t yakuman_count = 0;

  void add(Yaku y, int han) { entries[count++] = YakuEntry{y, static_cast<std::uint8_t>(han)}; }
  bool contains(Yaku y) const {
    return std::any_of(entries.begin(), entries.begin() + count, [y](const YakuEntry& e) { return e.yaku == y; });
  }
  int han() const {
    int h = 0;
    for (int i = 0; i < count; ++i) h += entries[i].han;
    return yakuman_count > 0 ? 0 : h;
  }
  bool empty() const { return count == 0; }
  friend bool operator==(const YakuList&, const YakuList&) = default;
};

/// A concrete reading of a winning hand: its form, and for the standard form
/// the decomposition plus which block the winning tile completed
/// (win_block == -1 means the pair).
struct WinShape {
  HandForm form = HandForm::standard;
  Decomposition dec{};
  int win_block = -1;
};

enum class Wait : std::uint8_t { ryanmen, kanchan, penchan, shanpon, tanki };

struct Settlement {
  std::array<int, 4> deltas{};
  int honba_component = 0;
  int deposits_claimed = 0;
  friend bool operator==(const Settlement&, const Settlement&) = default;
};

struct ScoreResult {
  YakuList yaku;
  int han = 0;  // yaku han plus dora; 0 for yakuman
  int fu = 0;
  int base = 0;
  int dora = 0;
  int ura = 0;
  int red = 0;
  WinShape shape;
};

// ---------------------------------------------------------------------------

namespace detail {

inline void check_context(const WinContext& ctx) {
  if (ctx.ura_indicator_count > 0 && ctx.riichi == RiichiState::none) {
    throw ContractViolation("ura indicators given without riichi");
  }
  if (ctx.concealed_count + 3 * ctx.meld_count != 14 || ctx.win_tile == kNoTile) {
    throw ContractViolation("win context does not hold a 14-equivalent hand");
  }
  if (!std::any_of(ctx.concealed.begin(), ctx.concealed.begin() + ctx.concealed_count,
                   [&](TileId t) { return t == ctx.win_tile; })) {
    throw ContractViolation("winning tile not in concealed hand");
  }
}

inline Wait wait_of(const WinShape& shape, TileKind win) {
  if (shape.win_block < 0) return Wait::tanki;
  const Block& b = shape.dec.sets[shape.win_block];
  if (b.kind == SetKind::triplet) return Wait::shanpon;
  if (win == b.start + 1) return Wait::kanchan;
  if (win == b.start && b.start % 9 == 6) return Wait::penchan;
  if (win == b.start + 2 && b.start % 9 == 0) return Wait::penchan;
  return Wait::ryanmen;
}

// Flattened view of the four sets of a standard hand (concealed + melds).
struct SetView {
  bool sequence = false;
  TileKind kind = 0;
  bool kan = false;
  bool concealed = false;  // counts as concealed for fu and ankou purposes
  bool open_meld = false;
};

inline std::array<SetView, 4> set_views(const WinContext& ctx, const WinShape& shape) {
  std::array<SetView, 4> views{};
  int n = 0;
  for (int i = 0; i < shape.dec.set_count; ++i) {
    const Block& b = shape.dec.sets[i];
    const bool ron_completed = ctx.win_type == WinType::ron && i == shape.win_block;
    views[n++] = SetView{b.kind == SetKind::sequence, b.start, false, !ron_completed, false};
  }
  for (int i = 0; i < ctx.meld_count; ++i) {
    const Meld& m = ctx.melds[i];
    views[n++] = SetView{m.type == MeldType::chi, m.kind, m.is_kan(), m.type == MeldType::closed_kan, m.is_open()};
  }
  return views;
}

inline bool set_has_terminal_or_honor(const SetView& s) {
  if (s.sequence) return s.kind % 9 == 0 || s.kind % 9 == 6;
  return is_terminal_or_honor(s.kind);
}

inline bool is_yakuhai_kind(TileKind k, const WinContext& ctx) {
  return k >= kWhite || k == ctx.seat_wind || k == ctx.round_wind;
}

// Tiles of the whole hand as counts (concealed + melds, kans as 4).
inline Counts34 all_counts(const WinContext& ctx) {
  Counts34 c = ctx.concealed_counts();
  for (int i = 0; i < ctx.meld_count; ++i) {
    const Meld& m = ctx.melds[i];
    if (m.type == MeldType::chi) {
      for (int j = 0; j < 3; ++j) ++c[m.kind + j];
    } else {
      c[m.kind] = static_cast<std::uint8_t>(c[m.kind] + m.size());
    }
  }
  return c;
}

inline void add_hand_color_yaku(YakuList& list, const Counts34& all, bool closed) {
  int suits_used = 0;
  bool honors = false;
  for (int s = 0; s < 3; ++s) {
    for (int n = 0; n < 9; ++n) {
      if (all[s * 9 + n]) {
        ++suits_used;
        break;
      }
    }
  }
  for (int k = 27; k < kNumKinds; ++k) honors = honors || all[k];
  if (suits_used == 1 && !honors) list.add(Yaku::chinitsu, closed ? 6 : 5);
  else if (suits_used == 1 && honors) list.add(Yaku::honitsu, closed ? 3 : 2);
}

inline int yakuman_value(bool doubled, const WinContext& ctx) { return doubled && ctx.options.double_yakuman ? 2 : 1; }

inline void add_common_yakuman(YakuList& list, const WinContext& ctx, const Counts34& all) {
  bool all_honors = true, all_terminals = true, all_green = true;
  for (int k = 0; k < kNumKinds; ++k) {
    if (!all[k]) continue;
    all_honors = all_honors && is_honor(k);
    all_terminals = all_terminals && is_terminal(k);
    const bool green = k == 19 || k == 20 || k == 21 || k == 23 || k == 25 || k == kGreen;
    all_green = all_green && green;
  }
  if (all_honors) list.add(Yaku::tsuuiisou, 1);
  if (all_terminals) list.add(Yaku::chinroutou, 1);
  if (all_green) list.add(Yaku::ryuuiisou, 1);
  if (ctx.is_first_draw && ctx.win_type == WinType::tsumo && ctx.meld_count == 0) {
    list.add(ctx.dealer ? Yaku::tenhou : Yaku::chiihou, 1);
  }
}

inline void finish_yakuman(YakuList& list) {
  int total = 0;
  for (int i = 0; i < list.count; ++i) {
    if (is_yakuman(list.entries[i].yaku)) total += list.entries[i].han;
  }
  if (total == 0) return;
  YakuList only;
  for (int i = 0; i < list.count; ++i) {
    if (is_yakuman(list.entries[i].yaku)) only.add(list.entries[i].yaku, list.entries[i].han);
  }
  only.yakuman_count = static_cast<std::uint8_t>(total);
  list = only;
}

inline void add_situational_yaku(YakuList& list, const WinContext& ctx, bool closed) {
  if (ctx.riichi == RiichiState::double_riichi) list.add(Yaku::double_riichi, 2);
  else if (ctx.riichi == RiichiState::riichi) list.add(Yaku::riichi, 1);
  if (ctx.ippatsu && ctx.riichi != RiichiState::none) list.add(Yaku::ippatsu, 1);
  if (closed && ctx.win_type == WinType::tsumo) list.add(Yaku::menzen_tsumo, 1);
  if (ctx.is_last_draw && ctx.win_type == WinType::tsumo && !ctx.is_kan_replacement) list.add(Yaku::haitei, 1);
  if (ctx.is_last_draw && ctx.win_type == WinType::ron) list.add(Yaku::houtei, 1);
  if (ctx.is_kan_replacement && ctx.win_type == WinType::tsumo) list.add(Yaku::rinshan, 1);
  if (ctx.is_robbing_kan && ctx.win_type == WinType::ron) list.add(Yaku::chankan, 1);
}

}  // namespace detail

/// Yaku of one reading of a winning hand. Dora never appear here.
inline YakuList detect_yaku(const WinContext& ctx, const WinShape& shape) {
  detail::check_context(ctx);
  const Counts34 concealed = ctx.concealed_counts();
  const Counts34 all = detail::all_counts(ctx);
  const bool closed = ctx.closed();
  YakuList list;

  if (shape.form == HandForm::kokushi) {
    if (!is_kokushi(concealed) || ctx.meld_count != 0) throw ContractViolation("not a kokushi hand");
    Counts34 before = concealed;
    --before[kind_unchecked(ctx.win_tile)];
    const bool thirteen_wait = shanten_kokushi(before) == 0 && std::all_of(before.begin(), before.end(), [](auto c) {
                                 return c <= 1;
                               });
    list.add(Yaku::kokushi, detail::yakuman_value(thirteen_wait, ctx));
    detail::add_common_yakuman(list, ctx, all);
    detail::finish_yakuman(list);
    return list;
  }

  if (shape.form == HandForm::seven_pairs) {
    if (!is_seven_pairs(concealed) || ctx.meld_count != 0) throw ContractViolation("not a seven-pairs hand");
    detail::add_common_yakuman(list, ctx, all);
    detail::finish_yakuman(list);
    if (list.yakuman_count) return list;
    detail::add_situational_yaku(list, ctx, true);
    list.add(Yaku::chiitoitsu, 2);
    bool simple = true, terminal_honor = true;
    for (int k = 0; k < kNumKinds; ++k) {
      if (!concealed[k]) continue;
      simple = simple && is_simple(k);
      terminal_honor = terminal_honor && is_terminal_or_honor(k);
    }
    if (simple) list.add(Yaku::tanyao, 1);
    if (terminal_honor) list.add(Yaku::honroutou, 2);
    detail::add_hand_color_yaku(list, all, true);
    return list;
  }

  // Standard form.
  const auto sets = detail::set_views(ctx, shape);
  const TileKind win = kind_unchecked(ctx.win_tile);
  const Wait wait = detail::wait_of(shape, win);
  const TileKind pair = shape.dec.pair;

  int sequences = 0, triplets = 0, kans = 0, concealed_triplets = 0;
  int dragon_triplets = 0, wind_triplets = 0;
  for (const auto& s : sets) {
    if (s.sequence) {
      ++sequences;
      continue;
    }
    ++triplets;
    kans += s.kan;
    concealed_triplets += s.concealed;
    dragon_triplets += s.kind >= kWhite;
    wind_triplets += s.kind >= kEast && s.kind <= kNorth;
  }

  // Yakuman first.
  if (closed && concealed_triplets == 4) {
    list.add(Yaku::suuankou, detail::yakuman_value(wait == Wait::tanki, ctx));
  }
  if (dragon_triplets == 3) list.add(Yaku::daisangen, 1);
  if (wind_triplets == 4) list.add(Yaku::daisuushi, detail::yakuman_value(true, ctx));
  else if (wind_triplets == 3 && pair >= kEast && pair <= kNorth) list.add(Yaku::shousuushi, 1);
  if (kans == 4) list.add(Yaku::suukantsu, 1);
  if (ctx.meld_count == 0) {
    int suit = -1;
    bool one_suit = true;
    for (int k = 0; k < kNumKinds; ++k) {
      if (!concealed[k]) continue;
      if (k >= 27 || (suit >= 0 && suit != k / 9)) one_suit = false;
      suit = k / 9;
    }
    if (one_suit && suit >= 0) {
      const int b = suit * 9;
      bool gates = concealed[b] >= 3 && concealed[b + 8] >= 3;
      for (int n = 1; n < 8; ++n) gates = gates && concealed[b + n] >= 1;
      if (gates) {
        Counts34 before = concealed;
        --before[win];
        bool pure = before[b] == 3 && before[b + 8] == 3;
        for (int n = 1; n < 8; ++n) pure = pure && before[b + n] == 1;
        list.add(Yaku::chuuren, detail::yakuman_value(pure, ctx));
      }
    }
  }
  detail::add_common_yakuman(list, ctx, all);
  detail::finish_yakuman(list);
  if (list.yakuman_count) return list;

  detail::add_situational_yaku(list, ctx, closed);

  const bool pinfu = closed && ctx.meld_count == 0 && sequences == 4 && !detail::is_yakuhai_kind(pair, ctx) &&
                     wait == Wait::ryanmen;
  if (pinfu) list.add(Yaku::pinfu, 1);

  bool tanyao = true;
  for (int k = 0; k < kNumKinds; ++k) tanyao = tanyao && (!all[k] || is_simple(k));
  if (tanyao) list.add(Yaku::tanyao, 1);

  if (closed) {
    // Identical concealed sequences; melds are excluded by `closed` only
    // when they are closed kans, which are never sequences.
    std::array<int, kNumKinds> seq_count{};
    for (int i = 0; i < shape.dec.set_count; ++i) {
      if (shape.dec.sets[i].kind == SetKind::sequence) ++seq_count[shape.dec.sets[i].start];
    }
    int peikou = 0;
    for (int c : seq_count) peikou += c / 2;
    if (peikou >= 2) list.add(Yaku::ryanpeikou, 3);
    else if (peikou == 1) list.add(Yaku::iipeikou, 1);
  }

  for (const auto& s : sets) {
    if (s.sequence) continue;
    if (s.kind == kWhite) list.add(Yaku::yakuhai_white, 1);
    if (s.kind == kGreen) list.add(Yaku::yakuhai_green, 1);
    if (s.kind == kRed) list.add(Yaku::yakuhai_red, 1);
    if (s.kind == ctx.seat_wind) list.add(Yaku::seat_wind, 1);
    if (s.kind == ctx.round_wind) list.add(Yaku::round_wind, 1);
  }

  {
    std::array<std::array<bool, 9>, 3> seq{}, trip{};
    for (const auto& s : sets) {
      if (s.kind >= 27) continue;
      (s.sequence ? seq : trip)[s.kind / 9][s.kind % 9] = true;
    }
    for (int n = 0; n < 9; ++n) {
      if (seq[0][n] && seq[1][n] && seq[2][n]) list.add(Yaku::sanshoku_doujun, closed ? 2 : 1);
      if (trip[0][n] && trip[1][n] && trip[2][n]) list.add(Yaku::sanshoku_doukou, 2);
    }
    for (int s = 0; s < 3; ++s) {
      if (seq[s][0] && seq[s][3] && seq[s][6]) list.add(Yaku::ittsu, closed ? 2 : 1);
    }
  }

  {
    bool all_outside = is_terminal_or_honor(pair);
    bool any_honor = is_honor(pair);
    for (const auto& s : sets) {
      all_outside = all_outside && detail::set_has_terminal_or_honor(s);
      any_honor = any_honor || (!s.sequence && is_honor(s.kind));
    }
    if (all_outside && sequences > 0) {
      if (any_honor) list.add(Yaku::chanta, closed ? 2 : 1);
      else list.add(Yaku::junchan, closed ? 3 : 2);
    }
    if (all_outside && sequences == 0) list.add(Yaku::honroutou, 2);
  }

  if (triplets == 4) list.add(Yaku::toitoi, 2);
  if (concealed_triplets == 3) list.add(Yaku::sanankou, 2);
  if (kans == 3) list.add(Yaku::sankantsu, 2);
  if (dragon_triplets == 2 && pair >= kWhite) list.add(Yaku::shousangen, 2);
  detail::add_hand_color_yaku(list, all, closed);
  return list;
}

/// Indicator dora + ura dora (riichi only) + red fives (red rule only).
struct DoraCount {
  int dora = 0;
  int ura = 0;
  int red = 0;
  int total() const { return dora + ura + red; }
};

inline DoraCount count_dora_detail(const WinContext& ctx) {
  const Counts34 all = detail::all_counts(ctx);
  DoraCount d;
  for (int i = 0; i < ctx.dora_indicator_count; ++i) {
    d.dora += all[dora_from_indicator(kind_unchecked(ctx.dora_indicators[i]))];
  }
  if (ctx.riichi != RiichiState::none) {
    for (int i = 0; i < ctx.ura_indicator_count; ++i) {
      d.ura += all[dora_from_indicator(kind_unchecked(ctx.ura_indicators[i]))];
    }
  }
  for (int i = 0; i < ctx.concealed_count; ++i) d.red += is_red(ctx.concealed[i], ctx.rule);
  for (int i = 0; i < ctx.meld_count; ++i) {
    for (int j = 0; j < ctx.melds[i].size(); ++j) d.red += is_red(ctx.melds[i].tiles[j], ctx.rule);
  }
  return d;
}

inline int count_dora(const WinContext& ctx) { return count_dora_detail(ctx).total(); }

inline int compute_fu(const WinContext& ctx, const WinShape& shape, const YakuList& yaku) {
  if (shape.form == HandForm::seven_pairs) return 25;
  if (shape.form == HandForm::kokushi) return 30;
  const bool tsumo = ctx.win_type == WinType::tsumo;
  if (yaku.contains(Yaku::pinfu)) return tsumo ? 20 : 30;

  const bool closed = ctx.closed();
  int fu = 20;
  if (closed && !tsumo) fu += 10;
  if (tsumo) fu += 2;
  for (const auto& s : detail::set_views(ctx, shape)) {
    if (s.sequence) continue;
    int v = is_terminal_or_honor(s.kind) ? 4 : 2;
    if (s.concealed) v *= 2;
    if (s.kan) v *= 4;
    fu += v;
  }
  const Wait wait = detail::wait_of(shape, kind_unchecked(ctx.win_tile));
  if (wait == Wait::kanchan || wait == Wait::penchan || wait == Wait::tanki) fu += 2;
  const TileKind pair = shape.dec.pair;
  if (pair >= kWhite) fu += 2;
  if (pair == ctx.seat_wind) fu += 2;
  if (pair == ctx.round_wind) fu += 2;
  if (fu == 20 && !closed) fu = 30;
  return (fu + 9) / 10 * 10;
}

inline int base_points(int fu, int han, int yakuman_count, const ScoringOptions& options = {}) {
  if (han <= 0 && yakuman_count <= 0) throw ContractViolation("no yaku: nothing to score");
  if (yakuman_count > 0) return 8000 * yakuman_count;
  if (han >= 13) return options.kazoe_yakuman ? 8000 : 6000;
  if (han >= 11) return 6000;
  if (han >= 8) return 4000;
  if (han >= 6) return 3000;
  if (han == 5) return 2000;
  return std::min(2000, fu << (2 + han));
}

constexpr int ceil100(int x) { return (x + 99) / 100 * 100; }

inline Settlement settle(WinType type, int base, int dealer_seat, int winner_seat, std::optional<int> loser_seat,
                         int honba, int deposits) {
  auto valid = [](int s) { return s >= 0 && s < 4; };
  if (!valid(dealer_seat) || !valid(winner_seat)) throw ContractViolation("seat out of range");
  if ((type == WinType::ron) != loser_seat.has_value()) throw ContractViolation("loser given iff ron");
  if (loser_seat && (!valid(*loser_seat) || *loser_seat == winner_seat)) throw ContractViolation("bad loser seat");
  if (honba < 0 || deposits < 0) throw ContractViolation("negative honba or deposits");

  Settlement s;
  const bool winner_is_dealer = winner_seat == dealer_seat;
  if (type == WinType::ron) {
    const int pay = ceil100(base * (winner_is_dealer ? 6 : 4)) + 300 * honba;
    s.deltas[*loser_seat] -= pay;
    s.deltas[winner_seat] += pay;
  } else {
    for (int seat = 0; seat < 4; ++seat) {
      if (seat == winner_seat) continue;
      const int mult = (winner_is_dealer || seat == dealer_seat) ? 2 : 1;
      const int pay = ceil100(base * mult) + 100 * honba;
      s.deltas[seat] -= pay;
      s.deltas[winner_seat] += pay;
    }
  }
  s.honba_component = 300 * honba;
  s.deposits_claimed = deposits;
  s.deltas[winner_seat] += 1000 * deposits;
  return s;
}

/// Every reading of a complete hand: kokushi, seven pairs, and each standard
/// decomposition with each block the winning tile could have completed.
inline std::vector<WinShape> win_shapes(const WinContext& ctx) {
  const Counts34 concealed = ctx.concealed_counts();
  const TileKind win = kind_unchecked(ctx.win_tile);
  std::vector<WinShape> shapes;
  if (ctx.meld_count == 0 && is_kokushi(concealed)) shapes.push_back(WinShape{HandForm::kokushi, {}, -1});
  if (ctx.meld_count == 0 && is_seven_pairs(concealed)) shapes.push_back(WinShape{HandForm::seven_pairs, {}, -1});
  for (const auto& dec : decompose_wins(concealed, ctx.meld_count)) {
    if (dec.pair == win) shapes.push_back(WinShape{HandForm::standard, dec, -1});
    for (int i = 0; i < dec.set_count; ++i) {
      const Block& b = dec.sets[i];
      const bool holds = b.kind == SetKind::triplet ? b.start == win : (win >= b.start && win <= b.start + 2);
      if (!holds) continue;
      bool duplicate = false;
      for (int j = 0; j < i; ++j) duplicate = duplicate || dec.sets[j] == b;
      if (!duplicate) shapes.push_back(WinShape{HandForm::standard, dec, i});
    }
  }
  return shapes;
}

/// Scores a complete hand, choosing the reading with the highest base
/// points (ties: more han, then more fu, then first in enumeration order).
/// A hand with no yaku returns an empty yaku list and base 0.
inline ScoreResult score_hand(const WinContext& ctx) {
  detail::check_context(ctx);
  const auto shapes = win_shapes(ctx);
  if (shapes.empty()) throw ContractViolation("hand is not complete");
  const DoraCount dora = count_dora_detail(ctx);

  ScoreResult best;
  bool have = false;
  for (const auto& shape : shapes) {
    ScoreResult r;
    r.shape = shape;
    r.yaku = detect_yaku(ctx, shape);
    if (r.yaku.empty()) continue;
    r.fu = compute_fu(ctx, shape, r.yaku);
    r.dora = dora.dora;
    r.ura = dora.ura;
    r.red = dora.red;
    r.han = r.yaku.yakuman_count ? 0 : r.yaku.han() + dora.total();
    r.base = base_points(r.fu, r.han, r.yaku.yakuman_count, ctx.options);
    const bool better = !have || r.base > best.base || (r.base == best.base && r.han > best.han) ||
                        (r.base == best.base && r.han == best.han && r.fu > best.fu);
    if (better) {
      best = r;
      have = true;
    }
  }
  if (!have) {
    best = ScoreResult{};
    best.shape = shapes.front();
  }
  return best;
}

}  // namespace riichi
