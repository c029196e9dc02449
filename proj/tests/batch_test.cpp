#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "riichi/batch.hpp"

using namespace riichi;

namespace {

// Plays slot i's games standalone with the same seeds and policy stream.
std::vector<GameRecord> standalone_slot(const BenchConfig& c, std::size_t slot, std::size_t games) {
  std::vector<GameRecord> out;
  Rng rng = policy_stream(c.seed, slot);
  for (std::size_t g = 0; g < games; ++g) {
    const auto seed = derive_seed(c.seed, slot + g * static_cast<std::size_t>(c.batch_size));
    GameRecord r{seed, c.env_config(), {}};
    EnvState e = init(seed, c.env_config());
    while (!e.terminated && !e.truncated) {
      const int a = random_policy(e.legal_action_mask, rng);
      r.actions.push_back(a);
      e = step(e, a);
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace

TEST(Batch, DerivedSeedsDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(derive_seed(1, i));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(derive_seed(1, 0), derive_seed(2, 0));
}

TEST(Batch, CountsTransitionsExactly) {
  BenchConfig c;
  c.batch_size = 1;
  c.steps = 100;
  const auto row = rollout(c);
  EXPECT_EQ(row.transitions, 100u);
  EXPECT_DOUBLE_EQ(row.steps_per_second, 100.0 / row.wall_seconds);
  EXPECT_GE(row.games_completed, 0u);
}

TEST(Batch, RejectsBadConfig) {
  BenchConfig c;
  c.batch_size = 0;
  EXPECT_THROW(BatchRunner{c}, std::invalid_argument);
  c.batch_size = 2;
  c.repeats = 0;
  EXPECT_THROW(rollout(c), std::invalid_argument);
  EXPECT_THROW(sweep({}, BenchConfig{}), std::invalid_argument);
  EXPECT_THROW(resolve_threads(-1), std::invalid_argument);
}

TEST(Batch, SameSeedSameGames) {
  BenchConfig c;
  c.batch_size = 32;
  c.steps = 300;
  c.seed = 9;
  const auto a = rollout(c);
  const auto b = rollout(c);
  EXPECT_EQ(a.games_completed, b.games_completed);
  EXPECT_GT(a.games_completed, 0u);
}

TEST(Batch, ThreadCountDoesNotChangeGames) {
  BenchConfig c;
  c.batch_size = 24;
  c.steps = 400;
  c.seed = 3;
  c.record = true;
  c.threads = 1;
  BatchRunner one(c);
  one.run(c.steps);
  c.threads = 8;
  BatchRunner eight(c);
  EXPECT_EQ(eight.threads(), 8);
  eight.run(c.steps);
  ASSERT_EQ(one.finished_records().size(), eight.finished_records().size());
  for (std::size_t i = 0; i < one.finished_records().size(); ++i) {
    const auto& x = one.finished_records()[i];
    const auto& y = eight.finished_records()[i];
    ASSERT_EQ(x.size(), y.size());
    for (std::size_t g = 0; g < x.size(); ++g) EXPECT_EQ(make_log(x[g]).dump(), make_log(y[g]).dump());
  }
  for (std::size_t i = 0; i < one.envs().size(); ++i) {
    EXPECT_EQ(to_json(one.envs()[i]).dump(), to_json(eight.envs()[i]).dump());
  }
}

TEST(Batch, SlotMatchesStandaloneEnv) {
  BenchConfig c;
  c.batch_size = 16;
  c.steps = 500;
  c.seed = 77;
  c.mode = Mode::single;
  c.record = true;
  BatchRunner runner(c);
  runner.run(c.steps);
  for (std::size_t slot = 0; slot < 16; ++slot) {
    const auto& got = runner.finished_records()[slot];
    ASSERT_GE(got.size(), 2u);
    const auto want = standalone_slot(c, slot, got.size());
    for (std::size_t g = 0; g < got.size(); ++g) {
      EXPECT_EQ(got[g].seed, want[g].seed);
      EXPECT_EQ(got[g].actions, want[g].actions) << "slot " << slot << " game " << g;
    }
  }
}

TEST(Batch, SweepAndCsv) {
  EXPECT_EQ(default_sweep_sizes().size(), 14u);
  EXPECT_EQ(default_sweep_sizes().front(), 2);
  EXPECT_EQ(default_sweep_sizes().back(), 16384);
  BenchConfig c;
  c.steps = 20;
  const auto rows = sweep({2, 4, 8}, c);
  ASSERT_EQ(rows.size(), 3u);
  std::ostringstream out;
  write_csv(out, rows, c);
  std::istringstream in(out.str());
  std::string line;
  int meta = 0;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) ++meta;
    else data.push_back(line);
  }
  EXPECT_GE(meta, 1);
  ASSERT_EQ(data.size(), 4u);
  EXPECT_EQ(data[0], "batch,wall_seconds,steps_per_second,games_completed");
  for (std::size_t i = 1; i < data.size(); ++i) {
    int batch = 0;
    double wall = 0, sps = 0;
    unsigned long long games = 0;
    ASSERT_EQ(std::sscanf(data[i].c_str(), "%d,%lf,%lf,%llu", &batch, &wall, &sps, &games), 4);
    EXPECT_EQ(batch, rows[i - 1].batch);
    EXPECT_NEAR(sps, batch * 20.0 / wall, 1e-6 * sps);
  }
}
