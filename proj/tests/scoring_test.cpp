#include <gtest/gtest.h>

#include <random>

#include "golden_scoring.hpp"
#include "oracle/brute_scorer.hpp"
#include "oracle/context_builder.hpp"
#include "riichi/scoring.hpp"

using namespace riichi;
using testutil::HandSpec;
using testutil::make_context;

namespace {

ScoreResult score(const HandSpec& spec, TileKind seat = kSouth, RuleVariant rule = RuleVariant::no_red) {
  auto ctx = make_context(spec, rule);
  ctx.seat_wind = seat;
  ctx.dealer = seat == kEast;
  return score_hand(ctx);
}

}  // namespace

TEST(Yaku, PinfuTanyaoRon) {
  const auto r = score({"234m345p456s78p88p", "6p", WinType::ron});
  EXPECT_TRUE(r.yaku.contains(Yaku::pinfu));
  EXPECT_TRUE(r.yaku.contains(Yaku::tanyao));
  EXPECT_EQ(r.han, 2);
  EXPECT_EQ(r.fu, 30);
}

TEST(Yaku, WhiteTripletToitoi) {
  const auto r = score({"555z22p33s", "3s", WinType::ron, {"pon:9m@2", "pon:1p@1"}}, kEast);
  EXPECT_TRUE(r.yaku.contains(Yaku::yakuhai_white));
  EXPECT_TRUE(r.yaku.contains(Yaku::toitoi));
  EXPECT_GE(r.han, 3);
}

TEST(Yaku, Kokushi) {
  const auto r = score({"19m19p19s1234567z", "9s", WinType::tsumo});
  EXPECT_GE(r.yaku.yakuman_count, 1);
  EXPECT_TRUE(r.yaku.contains(Yaku::kokushi));
  EXPECT_EQ(r.base, 8000);
}

TEST(Yaku, DoraAloneIsNoYaku) {
  auto ctx = make_context({"456p78s11m", "9s", WinType::ron, {"chi:789m@0", "chi:123m@0"}});
  testutil::add_dora(ctx, "9m");
  const auto r = score_hand(ctx);
  EXPECT_TRUE(r.yaku.empty());
  EXPECT_EQ(r.base, 0);
  EXPECT_GE(count_dora(ctx), 1);
}

TEST(Yaku, NonWinningHandThrows) {
  auto ctx = make_context({"123m456p789s11m24p", "7p", WinType::ron});
  EXPECT_THROW(score_hand(ctx), ContractViolation);
  const WinShape fake{HandForm::seven_pairs, {}, -1};
  EXPECT_THROW(detect_yaku(ctx, fake), ContractViolation);
}

TEST(Yaku, UraWithoutRiichiRejected) {
  auto ctx = make_context({"234m345p456s78p88p", "6p", WinType::ron});
  testutil::add_dora(ctx, "1m", true);
  EXPECT_THROW(score_hand(ctx), ContractViolation);
}

TEST(Yaku, ChiitoitsuExcludesSetYaku) {
  const auto r = score({"1133m2244p66s77z5z", "5z", WinType::ron});
  EXPECT_TRUE(r.yaku.contains(Yaku::chiitoitsu));
  EXPECT_FALSE(r.yaku.contains(Yaku::toitoi));
  EXPECT_FALSE(r.yaku.contains(Yaku::yakuhai_white));
}

TEST(Yaku, PinfuNeverWithFuSets) {
  // Yakuhai pair, closed wait, and triplets all block pinfu.
  EXPECT_FALSE(score({"234m345p456s78p55z", "6p", WinType::ron}).yaku.contains(Yaku::pinfu));
  EXPECT_FALSE(score({"234m345p456s79p88p", "8p", WinType::ron}).yaku.contains(Yaku::pinfu));
  EXPECT_FALSE(score({"234m222p456s78p88p", "6p", WinType::ron}).yaku.contains(Yaku::pinfu));
}

TEST(Dora, IndicatorAndRed) {
  auto red = make_context({"34056m234p456s88p", "7m", WinType::ron}, RuleVariant::red);
  testutil::add_dora(red, "4m");
  EXPECT_EQ(count_dora(red), 3);

  auto plain = make_context({"34056m234p456s88p", "7m", WinType::ron}, RuleVariant::no_red);
  testutil::add_dora(plain, "4m");
  EXPECT_EQ(count_dora(plain), 2);

  auto wrap = make_context({"123s456p789m22z34m", "5m", WinType::ron});
  testutil::add_dora(wrap, "9s");
  EXPECT_EQ(count_dora(wrap), 1);
}

TEST(Dora, HonorCycles) {
  EXPECT_EQ(dora_from_indicator(kNorth), kEast);
  EXPECT_EQ(dora_from_indicator(kRed), kWhite);
  EXPECT_EQ(dora_from_indicator(kWhite), kGreen);
}

TEST(Dora, UraOnlyWithRiichi) {
  auto ctx = make_context({"234m345p456s78p88p", "6p", WinType::ron});
  ctx.riichi = RiichiState::riichi;
  testutil::add_dora(ctx, "7p", true);
  EXPECT_EQ(count_dora_detail(ctx).ura, 3);  // 88p pair plus the 8p of 678p
}

TEST(Fu, FixedValues) {
  EXPECT_EQ(score({"234m345p456s78p88p", "6p", WinType::tsumo}).fu, 20);
  EXPECT_EQ(score({"1133m2244p66s77z5z", "5z", WinType::ron}).fu, 25);
}

TEST(Fu, TerminalTripletEdgeWait) {
  auto ctx = make_context({"999m12p456s678s55p", "3p", WinType::ron});
  ctx.seat_wind = kSouth;
  ctx.riichi = RiichiState::riichi;
  const auto r = score_hand(ctx);
  EXPECT_EQ(r.fu, 40);
}

TEST(Fu, OpenNoFuHandRoundsToThirty) {
  const auto r = score({"567p78p345s66s", "6p", WinType::ron, {"chi:234m@0"}});
  EXPECT_EQ(r.fu, 30);
}

TEST(BasePoints, Table) {
  EXPECT_EQ(base_points(30, 1, 0), 240);
  EXPECT_EQ(base_points(30, 4, 0), 1920);
  EXPECT_EQ(base_points(40, 4, 0), 2000);
  EXPECT_EQ(base_points(20, 5, 0), 2000);
  EXPECT_EQ(base_points(20, 7, 0), 3000);
  EXPECT_EQ(base_points(20, 10, 0), 4000);
  EXPECT_EQ(base_points(20, 12, 0), 6000);
  EXPECT_EQ(base_points(20, 13, 0), 6000);
  EXPECT_EQ(base_points(20, 13, 0, {.kazoe_yakuman = true}), 8000);
  EXPECT_EQ(base_points(110, 3, 1), 8000);
  EXPECT_EQ(base_points(30, 0, 2), 16000);
  EXPECT_THROW(base_points(30, 0, 0), ContractViolation);
}

TEST(BasePoints, Monotone) {
  for (int fu = 20; fu <= 110; fu += 10) {
    for (int han = 1; han < 20; ++han) EXPECT_LE(base_points(fu, han, 0), base_points(fu, han + 1, 0));
  }
  for (int han = 1; han <= 4; ++han) {
    for (int fu = 20; fu < 110; fu += 10) EXPECT_LE(base_points(fu, han, 0), base_points(fu + 10, han, 0));
  }
}

TEST(Settle, Examples) {
  const auto ron = settle(WinType::ron, 240, 0, 1, 2, 0, 0);
  EXPECT_EQ(ron.deltas, (std::array<int, 4>{0, 1000, -1000, 0}));
  const auto tsumo = settle(WinType::tsumo, 480, 0, 0, std::nullopt, 0, 0);
  EXPECT_EQ(tsumo.deltas, (std::array<int, 4>{3000, -1000, -1000, -1000}));
}

TEST(Settle, RejectsInconsistentSeats) {
  EXPECT_THROW(settle(WinType::ron, 240, 0, 1, 1, 0, 0), ContractViolation);
  EXPECT_THROW(settle(WinType::ron, 240, 0, 1, std::nullopt, 0, 0), ContractViolation);
  EXPECT_THROW(settle(WinType::tsumo, 240, 0, 1, 2, 0, 0), ContractViolation);
  EXPECT_THROW(settle(WinType::tsumo, 240, 4, 1, std::nullopt, 0, 0), ContractViolation);
}

TEST(Settle, ZeroSumPlusPot) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const int base = std::uniform_int_distribution<int>(1, 320)(rng) * 25;
    const int dealer = static_cast<int>(rng() % 4), winner = static_cast<int>(rng() % 4);
    const int honba = static_cast<int>(rng() % 6), deposits = static_cast<int>(rng() % 5);
    const bool is_ron = rng() % 2;
    std::optional<int> loser;
    if (is_ron) loser = (winner + 1 + static_cast<int>(rng() % 3)) % 4;
    const auto s = settle(is_ron ? WinType::ron : WinType::tsumo, base, dealer, winner, loser, honba, deposits);
    EXPECT_EQ(s.deltas[0] + s.deltas[1] + s.deltas[2] + s.deltas[3], 1000 * deposits);
    EXPECT_EQ(s.deposits_claimed, deposits);
  }
}

TEST(Selection, PicksBestReading) {
  // 111222333m reads as three triplets or three identical sequences.
  for (const char* win : {"3m", "5p"}) {
    auto ctx = make_context({std::string("11122233m") + (std::string(win) == "3m" ? "456p99s" : "3m46p99s"), win,
                             WinType::tsumo});
    ctx.seat_wind = kSouth;
    const auto best = score_hand(ctx);
    for (const auto& shape : win_shapes(ctx)) {
      const auto y = detect_yaku(ctx, shape);
      if (y.empty()) continue;
      const int han = y.yakuman_count ? 0 : y.han() + count_dora(ctx);
      const int base = base_points(compute_fu(ctx, shape, y), han, y.yakuman_count);
      EXPECT_GE(best.base, base);
      if (best.base == base) EXPECT_GE(best.han, han);
    }
  }
}

TEST(Selection, RyanpeikouBeatsChiitoitsu) {
  const auto r = score({"223344m556677p8s", "8s", WinType::ron});
  EXPECT_TRUE(r.yaku.contains(Yaku::ryanpeikou));
  EXPECT_EQ(r.shape.form, HandForm::standard);
}

TEST(Golden, MatchesFrozenValuesAndOracle) {
  ASSERT_GE(golden::cases().size(), 30u);
  for (const auto& c : golden::cases()) {
    SCOPED_TRACE(c.name);
    const auto ctx = golden::context_of(c);
    const auto r = score_hand(ctx);
    ASSERT_FALSE(r.yaku.empty());
    EXPECT_EQ(r.han, c.han);
    EXPECT_EQ(r.fu, c.fu);
    EXPECT_EQ(r.yaku.yakuman_count, c.yakuman);
    std::optional<int> loser;
    if (c.loser >= 0) loser = c.loser;
    const auto s = settle(ctx.win_type, r.base, c.dealer, c.winner, loser, c.honba, c.deposits);
    EXPECT_EQ(s.deltas, c.deltas);
    EXPECT_EQ(s.deltas[0] + s.deltas[1] + s.deltas[2] + s.deltas[3], 1000 * c.deposits);

    const auto o = oracle::score(ctx, c.dealer, c.winner, loser, c.honba, c.deposits);
    ASSERT_TRUE(o.has_value());
    EXPECT_EQ(o->han, c.han);
    EXPECT_EQ(o->fu, c.fu);
    EXPECT_EQ(o->yakuman, c.yakuman);
    EXPECT_EQ(o->deltas, c.deltas);
  }
}

TEST(Golden, RandomCompleteHandsAgreeWithOracle) {
  // Random complete closed hands with random situation flags.
  std::mt19937_64 rng(2024);
  int checked = 0;
  for (int attempt = 0; attempt < 40000 && checked < 600; ++attempt) {
    std::array<int, 34> counts{};
    std::vector<int> kinds;
    auto add = [&](int k, int n) {
      if (counts[k] + n > 4) return false;
      counts[k] += n;
      for (int i = 0; i < n; ++i) kinds.push_back(k);
      return true;
    };
    bool ok = add(static_cast<int>(rng() % 34), 2);
    for (int s = 0; s < 4 && ok; ++s) {
      if (rng() % 2) {
        ok = add(static_cast<int>(rng() % 34), 3);
      } else {
        const int suit = static_cast<int>(rng() % 3), n = static_cast<int>(rng() % 7);
        ok = add(suit * 9 + n, 1) && add(suit * 9 + n + 1, 1) && add(suit * 9 + n + 2, 1);
      }
    }
    if (!ok) continue;
    std::string text;
    for (int k : kinds) text += riichi::kind_to_string(static_cast<TileKind>(k)).size() == 1
                                    ? std::string{static_cast<char>('1' + k - 27), 'z'}
                                    : riichi::kind_to_string(static_cast<TileKind>(k));
    const std::size_t pick = rng() % kinds.size();
    const int win = kinds[pick];
    std::string win_text = kind_to_string(static_cast<TileKind>(win));
    if (win >= 27) win_text = std::string{static_cast<char>('1' + win - 27), 'z'};
    // Concealed part without one copy of the winning kind.
    std::string rest;
    bool removed = false;
    for (std::size_t i = 0; i < text.size(); i += 2) {
      if (!removed && text.substr(i, 2) == win_text) {
        removed = true;
        continue;
      }
      rest += text.substr(i, 2);
    }
    const bool tsumo = rng() % 2;
    HandSpec spec{rest, win_text, tsumo ? WinType::tsumo : WinType::ron};
    auto ctx = make_context(spec);
    const int dealer = static_cast<int>(rng() % 4), winner = static_cast<int>(rng() % 4);
    ctx.seat_wind = static_cast<TileKind>(kEast + (winner - dealer + 4) % 4);
    ctx.round_wind = static_cast<TileKind>(kEast + rng() % 2);
    ctx.dealer = winner == dealer;
    ctx.riichi = static_cast<RiichiState>(rng() % 3);
    ctx.ippatsu = ctx.riichi != RiichiState::none && rng() % 4 == 0;
    ctx.is_last_draw = rng() % 8 == 0;
    try {
      testutil::add_dora(ctx, kind_to_string(static_cast<TileKind>(rng() % 27)));
    } catch (const std::invalid_argument&) {
      continue;  // all four copies of the indicator kind are in the hand
    }
    std::optional<int> loser;
    if (!tsumo) loser = (winner + 1 + static_cast<int>(rng() % 3)) % 4;

    const auto r = score_hand(ctx);
    const auto o = oracle::score(ctx, dealer, winner, loser, 1, 1);
    ASSERT_EQ(r.yaku.empty(), !o.has_value()) << rest << " + " << win_text;
    if (!o) continue;
    SCOPED_TRACE(rest + " + " + win_text);
    EXPECT_EQ(r.han, o->han);
    EXPECT_EQ(r.fu, o->fu);
    EXPECT_EQ(r.base, o->base);
    const auto s = settle(ctx.win_type, r.base, dealer, winner, loser, 1, 1);
    EXPECT_EQ(s.deltas, o->deltas);
    ++checked;
  }
  EXPECT_GE(checked, 300);
}
