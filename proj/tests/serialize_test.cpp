#include <gtest/gtest.h>

#include <set>

#include "riichi/serialize.hpp"

using namespace riichi;

namespace {

GameRecord random_record(std::uint64_t seed, const EnvConfig& config, int max_actions = 1 << 20) {
  GameRecord r{seed, config, {}};
  EnvState e = init(seed, config);
  Rng rng(make_rng(seed * 31 + 7));
  while (!e.terminated && !e.truncated && static_cast<int>(r.actions.size()) < max_actions) {
    const int a = random_policy(e.legal_action_mask, rng);
    r.actions.push_back(a);
    e = step(e, a);
  }
  return r;
}

void collect_ids(const json& j, std::set<int>& out) {
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (it.key() == "id" && it.value().is_number_integer()) out.insert(it.value().get<int>());
      else collect_ids(it.value(), out);
    }
  } else if (j.is_array()) {
    for (const auto& v : j) collect_ids(v, out);
  }
}

}  // namespace

TEST(Serialize, ConfigRoundTrip) {
  EnvConfig c{RuleVariant::no_red, Mode::half, -0.5, RewardScheme::rank, 777, {true, true}, 2};
  c.agari_yame = false;
  EXPECT_EQ(env_config_from_json(to_json(c)), c);
  EXPECT_EQ(env_config_from_json(json::object()), EnvConfig{});
  EXPECT_THROW(env_config_from_json(json{{"rule", "blue"}}), std::invalid_argument);
  EXPECT_THROW(env_config_from_json(json{{"mode", "north"}}), std::invalid_argument);
  EXPECT_THROW(env_config_from_json(json{{"illegal_penalty", 1.0}}), std::invalid_argument);
  EXPECT_THROW(env_config_from_json(json{{"first_dealer", 4}}), std::invalid_argument);
  EXPECT_THROW(env_config_from_json(json::array()), std::invalid_argument);
  EXPECT_EQ(parse_rule("no_red"), RuleVariant::no_red);
}

TEST(Serialize, StateJsonIsDeterministic) {
  const auto r = random_record(12, EnvConfig{RuleVariant::red, Mode::east});
  const auto a = to_json(replay(r)).dump();
  const auto b = to_json(replay(r)).dump();
  EXPECT_EQ(a, b);
  const auto r2 = random_record(13, EnvConfig{RuleVariant::red, Mode::east});
  EXPECT_NE(to_json(replay(r2)).dump(), a);
}

TEST(Serialize, LogReplaysToSameState) {
  for (auto mode : {Mode::single, Mode::east, Mode::half}) {
    for (auto rule : {RuleVariant::red, RuleVariant::no_red}) {
      const auto r = random_record(40 + static_cast<int>(mode), EnvConfig{rule, mode});
      const auto direct = replay(r);
      const json log = make_log(r);
      const auto text = log.dump(1);
      const auto again = replay_log(json::parse(text));
      EXPECT_EQ(to_json(again).dump(), to_json(direct).dump());
      EXPECT_EQ(log["format"], "mjlog-lite");
      EXPECT_EQ(log["version"], 1);
      EXPECT_EQ(log["kyoku"].size(), direct.game.kyoku_count);
      for (const auto& k : log["kyoku"]) {
        EXPECT_TRUE(k.contains("result"));
        EXPECT_EQ(k["events"][0]["type"], "draw");
        EXPECT_EQ(k["hands"].size(), 4u);
      }
      EXPECT_EQ(make_log(r).dump(), log.dump());
    }
  }
}

TEST(Serialize, LogOfIllegalEnding) {
  auto r = random_record(5, EnvConfig{}, 10);
  const auto before = replay(r);
  int bad = 0;
  while (before.legal_action_mask.test(bad)) ++bad;
  r.actions.push_back(bad);
  const auto log = make_log(r);
  EXPECT_TRUE(log["actions"].back()["illegal"].get<bool>());
  EXPECT_TRUE(log["final"]["illegal"].get<bool>());
  EXPECT_TRUE(replay_log(log).terminated);
}

TEST(Serialize, LogRejectsTampering) {
  const auto r = random_record(6, EnvConfig{});
  auto log = make_log(r);
  log["final"]["scores"][0] = 99999;
  EXPECT_THROW(replay_log(log), std::runtime_error);
  auto extra = r;
  extra.actions.push_back(0);
  EXPECT_THROW(replay(extra), std::invalid_argument);
  EXPECT_THROW(record_from_log(json{{"format", "other"}}), std::invalid_argument);
  EXPECT_THROW(record_from_log(json{{"format", "mjlog-lite"}, {"version", 2}}), std::invalid_argument);
}

TEST(Serialize, ViewHidesOpponentTiles) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const auto r = random_record(seed, EnvConfig{RuleVariant::red, Mode::east}, 20 + 7 * static_cast<int>(seed));
    const auto e = replay(r);
    for (int seat = 0; seat < 4; ++seat) {
      std::set<int> ids;
      collect_ids(view_json(e, seat), ids);
      for (int other = 0; other < 4; ++other) {
        const auto& tiles = e.game.players[other].tiles;
        for (int id = 0; id < kNumTiles; ++id) {
          if (!tiles.test(id)) continue;
          if (other == seat) EXPECT_TRUE(ids.count(id)) << "own tile missing";
          else EXPECT_FALSE(ids.count(id)) << "seed " << seed << " seat " << seat << " sees " << id;
        }
      }
      // The wall never shows beyond the dora indicators.
      for (int i = e.game.wall.draw_cursor; i < e.game.wall.live_end(); ++i) {
        EXPECT_FALSE(ids.count(e.game.wall.tiles[i]));
      }
    }
  }
}

TEST(Serialize, ViewMaskOnlyForCurrentSeat) {
  const auto e = init(4);
  const auto v = view_json(e, e.current_player);
  EXPECT_EQ(v["legal_actions"], mask_json(e.legal_action_mask));
  EXPECT_TRUE(view_json(e, (e.current_player + 1) % 4)["legal_actions"].empty());
  EXPECT_FALSE(v.contains("final"));
  const auto done = replay(random_record(4, EnvConfig{}));
  const auto fv = view_json(done, 0);
  ASSERT_TRUE(fv.contains("final"));
  EXPECT_EQ(fv["final"]["ranks"].size(), 4u);
  EXPECT_TRUE(fv.contains("last_result"));
}

TEST(Serialize, ActionTable) {
  const auto t = action_table_json();
  ASSERT_EQ(t.size(), 115u);
  EXPECT_EQ(t[37]["name"], "riichi");
  EXPECT_EQ(t[114]["name"], "nine_terminals");
}
