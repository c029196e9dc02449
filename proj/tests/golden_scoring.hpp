#pragma once

// Hand-computed scoring cases shared by the unit tests and the acceptance
// binary. Seats: dealer is seat `dealer`, seat wind follows from it; round
// wind is East throughout.

#include <array>
#include <string>
#include <vector>

#include "oracle/context_builder.hpp"
#include "riichi/scoring.hpp"

namespace golden {

using riichi::RiichiState;
using riichi::RuleVariant;

struct Case {
  const char* name;
  const char* concealed;
  const char* win;
  std::vector<std::string> melds{};
  int winner = 1;
  int dealer = 0;
  int loser = -1;  // -1: tsumo
  RiichiState riichi = RiichiState::none;
  bool ippatsu = false;
  bool last_draw = false;
  bool rinshan = false;
  bool chankan = false;
  const char* dora = "";
  const char* ura = "";
  int honba = 0;
  int deposits = 0;
  RuleVariant rule = RuleVariant::no_red;
  riichi::ScoringOptions options{};
  // expected
  int han = 0;
  int fu = 0;
  int yakuman = 0;
  std::array<int, 4> deltas{};
};

inline riichi::WinContext context_of(const Case& c) {
  testutil::HandSpec spec{c.concealed, c.win, c.loser < 0 ? riichi::WinType::tsumo : riichi::WinType::ron, c.melds};
  auto ctx = testutil::make_context(spec, c.rule);
  ctx.seat_wind = static_cast<riichi::TileKind>(riichi::kEast + (c.winner - c.dealer + 4) % 4);
  ctx.round_wind = riichi::kEast;
  ctx.dealer = c.winner == c.dealer;
  ctx.riichi = c.riichi;
  ctx.ippatsu = c.ippatsu;
  ctx.is_last_draw = c.last_draw;
  ctx.is_kan_replacement = c.rinshan;
  ctx.is_robbing_kan = c.chankan;
  ctx.options = c.options;
  testutil::add_dora(ctx, c.dora);
  testutil::add_dora(ctx, c.ura, true);
  return ctx;
}

inline const std::vector<Case>& cases() {
  static const std::vector<Case> all = [] {
    std::vector<Case> v;
    v.push_back({.name = "pinfu_tsumo", .concealed = "234m345p456s88s67p", .win = "5p",
                 .han = 3, .fu = 20, .deltas = {-1300, 2700, -700, -700}});
    v.push_back({.name = "pinfu_ron", .concealed = "234m345p456s88s67p", .win = "5p", .loser = 2,
                 .han = 2, .fu = 30, .deltas = {0, 2000, -2000, 0}});
    v.push_back({.name = "chiitoitsu_ron", .concealed = "1133m2244p66s77z5z", .win = "5z", .loser = 2,
                 .han = 2, .fu = 25, .deltas = {0, 1600, -1600, 0}});
    v.push_back({.name = "chiitoitsu_tanyao_tsumo", .concealed = "2233m4466p5588s7s", .win = "7s",
                 .han = 4, .fu = 25, .deltas = {-3200, 6400, -1600, -1600}});
    v.push_back({.name = "riichi_tsumo_pinfu_tanyao_iipeikou", .concealed = "223344m567p55s67s", .win = "8s",
                 .riichi = RiichiState::riichi, .han = 5, .fu = 20, .deltas = {-4000, 8000, -2000, -2000}});
    v.push_back({.name = "forty_fu_four_han_cap", .concealed = "999m12p456s678s55p", .win = "3p", .loser = 2,
                 .riichi = RiichiState::riichi, .dora = "4p4s", .han = 4, .fu = 40, .deltas = {0, 8000, -8000, 0}});
    v.push_back({.name = "honitsu_ittsu_round_wind", .concealed = "123456789m111z2z", .win = "2z", .loser = 3,
                 .riichi = RiichiState::riichi, .han = 7, .fu = 50, .deltas = {0, 12000, 0, -12000}});
    v.push_back({.name = "chinitsu_baiman", .concealed = "1222334578999p", .win = "6p",
                 .riichi = RiichiState::riichi, .han = 8, .fu = 30, .deltas = {-8000, 16000, -4000, -4000}});
    v.push_back({.name = "sanbaiman_eleven_han", .concealed = "1122334555678s", .win = "9s",
                 .han = 11, .fu = 20, .deltas = {-12000, 24000, -6000, -6000}});
    v.push_back({.name = "kazoe_on", .concealed = "1122334555678s", .win = "9s", .riichi = RiichiState::riichi,
                 .ippatsu = true, .options = {.kazoe_yakuman = true},
                 .han = 13, .fu = 20, .deltas = {-16000, 32000, -8000, -8000}});
    v.push_back({.name = "kazoe_off", .concealed = "1122334555678s", .win = "9s", .riichi = RiichiState::riichi,
                 .ippatsu = true, .han = 13, .fu = 20, .deltas = {-12000, 24000, -6000, -6000}});
    v.push_back({.name = "kokushi_ron", .concealed = "19m19p19s1234567z", .win = "1m", .loser = 0,
                 .fu = 30, .yakuman = 1, .deltas = {-32000, 32000, 0, 0}});
    v.push_back({.name = "daisangen_dealer_tsumo", .concealed = "555666777z23m44p", .win = "4m", .winner = 0,
                 .fu = 50, .yakuman = 1, .deltas = {48000, -16000, -16000, -16000}});
    v.push_back({.name = "suuankou_tsumo", .concealed = "111m333p555s77s99m", .win = "7s",
                 .fu = 50, .yakuman = 1, .deltas = {-16000, 32000, -8000, -8000}});
    v.push_back({.name = "shanpon_ron_breaks_suuankou", .concealed = "111m333p555s77s99m", .win = "7s",
                 .loser = 2, .han = 4, .fu = 50, .deltas = {0, 8000, -8000, 0}});
    v.push_back({.name = "open_toitoi_white_dealer", .concealed = "888s33s99m", .win = "3s",
                 .melds = {"pon:5z@3", "pon:2p@1"}, .winner = 0, .loser = 2,
                 .han = 3, .fu = 40, .deltas = {7700, 0, -7700, 0}});
    v.push_back({.name = "ron_with_honba_and_deposits", .concealed = "234m345p456s88s67p", .win = "5p", .loser = 2,
                 .honba = 2, .deposits = 1, .han = 2, .fu = 30, .deltas = {0, 3600, -2600, 0}});
    v.push_back({.name = "tsumo_with_honba_and_deposits", .concealed = "234m345p456s88s67p", .win = "5p",
                 .honba = 1, .deposits = 2, .han = 3, .fu = 20, .deltas = {-1400, 5000, -800, -800}});
    v.push_back({.name = "dealer_riichi_kanchan", .concealed = "123m456p789s99m13p", .win = "2p", .winner = 0,
                 .loser = 1, .riichi = RiichiState::riichi, .han = 1, .fu = 40, .deltas = {2000, -2000, 0, 0}});
    v.push_back({.name = "open_tanyao_thirty_fu", .concealed = "567p78p345s66s", .win = "6p",
                 .melds = {"chi:234m@0"}, .loser = 3, .han = 1, .fu = 30, .deltas = {0, 1000, 0, -1000}});
    v.push_back({.name = "dealer_tsumo_thirty_fu", .concealed = "444m789p234s55s68s", .win = "7s", .winner = 0,
                 .riichi = RiichiState::riichi, .han = 2, .fu = 30, .deltas = {3000, -1000, -1000, -1000}});
    v.push_back({.name = "dealer_mangan_with_dora", .concealed = "123m456p789s99m13p", .win = "2p", .winner = 0,
                 .loser = 1, .riichi = RiichiState::riichi, .dora = "8m3p6s",
                 .han = 5, .fu = 40, .deltas = {12000, -12000, 0, 0}});
    v.push_back({.name = "red_five_counts", .concealed = "067p78p345s66s", .win = "6p", .melds = {"chi:234m@0"},
                 .loser = 3, .rule = RuleVariant::red, .han = 2, .fu = 30, .deltas = {0, 2000, 0, -2000}});
    v.push_back({.name = "red_five_ignored_without_red_rule", .concealed = "067p78p345s66s", .win = "6p",
                 .melds = {"chi:234m@0"}, .loser = 3, .han = 1, .fu = 30, .deltas = {0, 1000, 0, -1000}});
    v.push_back({.name = "chanta_round_wind", .concealed = "123m789p111z99s78s", .win = "9s", .loser = 2,
                 .han = 3, .fu = 40, .deltas = {0, 5200, -5200, 0}});
    v.push_back({.name = "junchan_pinfu", .concealed = "123m789m123p11s78s", .win = "9s", .loser = 2,
                 .han = 4, .fu = 30, .deltas = {0, 7700, -7700, 0}});
    v.push_back({.name = "open_sanshoku_tanyao", .concealed = "345m678s34s88p", .win = "5s",
                 .melds = {"chi:345p@0"}, .loser = 2, .han = 2, .fu = 30, .deltas = {0, 2000, -2000, 0}});
    v.push_back({.name = "open_honitsu_ittsu_green", .concealed = "123m456m78m11m", .win = "9m",
                 .melds = {"pon:6z@3"}, .loser = 2, .han = 4, .fu = 30, .deltas = {0, 7700, -7700, 0}});
    v.push_back({.name = "open_chinitsu_haitei", .concealed = "456p678p22p99p", .win = "9p",
                 .melds = {"chi:123p@0"}, .last_draw = true, .han = 6, .fu = 30,
                 .deltas = {-6000, 12000, -3000, -3000}});
    v.push_back({.name = "rinshan_after_closed_kan", .concealed = "234p567s33m45m", .win = "6m",
                 .melds = {"ankan:8m"}, .rinshan = true, .han = 3, .fu = 40,
                 .deltas = {-2600, 5200, -1300, -1300}});
    v.push_back({.name = "chankan_pinfu", .concealed = "23m456p678s345s11s", .win = "4m", .loser = 2,
                 .chankan = true, .han = 2, .fu = 30, .deltas = {0, 2000, -2000, 0}});
    v.push_back({.name = "double_east_pair", .concealed = "123m456m789p11z45s", .win = "6s", .winner = 0,
                 .loser = 2, .riichi = RiichiState::riichi, .han = 1, .fu = 40, .deltas = {2000, 0, -2000, 0}});
    v.push_back({.name = "tsuuiisou_seven_pairs", .concealed = "1122334455667z", .win = "7z",
                 .fu = 25, .yakuman = 1, .deltas = {-16000, 32000, -8000, -8000}});
    v.push_back({.name = "kokushi_thirteen_wait_double", .concealed = "19m19p19s1234567z", .win = "1m", .loser = 0,
                 .options = {.double_yakuman = true}, .fu = 30, .yakuman = 2, .deltas = {-64000, 64000, 0, 0}});
    v.push_back({.name = "ura_dora_mangan", .concealed = "444m789p234s55s68s", .win = "7s", .winner = 0,
                 .riichi = RiichiState::riichi, .ura = "3m", .han = 5, .fu = 30,
                 .deltas = {12000, -4000, -4000, -4000}});
    v.push_back({.name = "ryanpeikou_over_chiitoitsu", .concealed = "223344m556677p8s", .win = "8s", .loser = 3,
                 .han = 4, .fu = 40, .deltas = {0, 8000, 0, -8000}});
    return v;
  }();
  return all;
}

}  // namespace golden
