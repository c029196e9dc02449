#pragma once

// Batched random-policy rollouts and the throughput sweep.
//
// Game g of slot i in a batch of size B is game number i + g*B. Its env seed
// is derive_seed(seed, game number); the slot's policy generator is
// policy_stream(seed, i) and keeps running across auto-resets. So slot i's
// first game is reproducible standalone, and results do not depend on how
// slots are spread over threads.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "riichi/env.hpp"
#include "riichi/serialize.hpp"

namespace riichi {

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t game_number) {
  return random_bits(seed ^ 0x5EED5EED5EED5EEDULL, game_number);
}

inline Rng policy_stream(std::uint64_t seed, std::uint64_t slot) {
  return Rng(split(make_rng(seed ^ 0x9011C1E5ULL), slot));
}

struct BenchConfig {
  int batch_size = 1;
  int steps = 100;
  RuleVariant rule = RuleVariant::red;
  Mode mode = Mode::single;
  std::uint64_t seed = 0;
  int threads = 0;      // 0 = hardware concurrency
  int repeats = 1;      // best-of-N timing
  bool record = false;  // keep per-game action records

  EnvConfig env_config() const {
    EnvConfig c;
    c.rule = rule;
    c.mode = mode;
    return c;
  }
};

struct BenchRow {
  int batch = 0;
  double wall_seconds = 0;
  double steps_per_second = 0;
  std::uint64_t games_completed = 0;
  std::uint64_t transitions = 0;
};

inline int resolve_threads(int requested) {
  if (requested < 0) throw std::invalid_argument("threads must be >= 0");
  if (requested > 0) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

class BatchRunner {
 public:
  explicit BatchRunner(const BenchConfig& config) : config_(config), env_config_(config.env_config()) {
    if (config.batch_size < 1) throw std::invalid_argument("batch_size must be >= 1");
    if (config.steps < 0) throw std::invalid_argument("steps must be >= 0");
    threads_ = std::min(resolve_threads(config.threads), config.batch_size);
    const auto n = static_cast<std::size_t>(config.batch_size);
    envs_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      envs_.push_back(init(derive_seed(config.seed, i), env_config_));
      rngs_.push_back(policy_stream(config.seed, i));
      game_number_.push_back(i);
    }
    if (config.record) {
      current_.resize(n);
      finished_.resize(n);
      for (std::size_t i = 0; i < n; ++i) current_[i] = GameRecord{derive_seed(config.seed, i), env_config_, {}};
    }
  }

  /// Advances every env `count` times; returns wall seconds spent.
  double run(int count) {
    const auto start = std::chrono::steady_clock::now();
    if (threads_ == 1) {
      step_range(0, envs_.size(), count);
    } else {
      std::vector<std::thread> pool;
      const std::size_t n = envs_.size();
      for (int t = 0; t < threads_; ++t) {
        const std::size_t lo = n * t / threads_;
        const std::size_t hi = n * (t + 1) / threads_;
        pool.emplace_back([this, lo, hi, count] { step_range(lo, hi, count); });
      }
      for (auto& th : pool) th.join();
    }
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }

  std::uint64_t games_completed() const {
    std::uint64_t total = 0;
    for (auto g : completed_per_slot()) total += g;
    return total;
  }
  std::vector<std::uint64_t> completed_per_slot() const {
    std::vector<std::uint64_t> out(envs_.size());
    for (std::size_t i = 0; i < envs_.size(); ++i) out[i] = (game_number_[i] - i) / envs_.size();
    return out;
  }
  const std::vector<EnvState>& envs() const { return envs_; }
  int threads() const { return threads_; }
  // Completed games per slot, in completion order.
  const std::vector<std::vector<GameRecord>>& finished_records() const { return finished_; }

 private:
  void step_range(std::size_t lo, std::size_t hi, int count) {
    const std::size_t n = envs_.size();
    for (int k = 0; k < count; ++k) {
      for (std::size_t i = lo; i < hi; ++i) {
        EnvState& e = envs_[i];
        const int a = random_policy(e.legal_action_mask, rngs_[i]);
        if (config_.record) current_[i].actions.push_back(a);
        e = step(e, a);
        if (e.terminated || e.truncated) {
          game_number_[i] += n;
          const std::uint64_t seed = derive_seed(config_.seed, game_number_[i]);
          if (config_.record) {
            finished_[i].push_back(std::move(current_[i]));
            current_[i] = GameRecord{seed, env_config_, {}};
          }
          e = init(seed, env_config_);
        }
      }
    }
  }

  BenchConfig config_;
  EnvConfig env_config_;
  int threads_ = 1;
  std::vector<EnvState> envs_;
  std::vector<Rng> rngs_;
  std::vector<std::uint64_t> game_number_;
  std::vector<GameRecord> current_;
  std::vector<std::vector<GameRecord>> finished_;
};

/// One timed rollout: a warm-up batch step (not timed), then `steps` batch
/// steps. With repeats > 1 the fastest of fresh identical runs is kept.
inline BenchRow rollout(const BenchConfig& config) {
  if (config.repeats < 1) throw std::invalid_argument("repeats must be >= 1");
  BenchRow row;
  row.batch = config.batch_size;
  row.transitions = static_cast<std::uint64_t>(config.batch_size) * static_cast<std::uint64_t>(config.steps);
  for (int r = 0; r < config.repeats; ++r) {
    BatchRunner runner(config);
    runner.run(1);
    const auto before = runner.games_completed();
    const double seconds = runner.run(config.steps);
    if (r == 0 || seconds < row.wall_seconds) row.wall_seconds = seconds;
    row.games_completed = runner.games_completed() - before;
  }
  row.wall_seconds = std::max(row.wall_seconds, 1e-9);
  row.steps_per_second = static_cast<double>(row.transitions) / row.wall_seconds;
  return row;
}

inline std::vector<int> default_sweep_sizes() {
  std::vector<int> sizes;
  for (int b = 2; b <= 16384; b *= 2) sizes.push_back(b);
  return sizes;
}

inline std::vector<BenchRow> sweep(const std::vector<int>& sizes, const BenchConfig& base) {
  if (sizes.empty()) throw std::invalid_argument("sweep needs at least one batch size");
  std::vector<BenchRow> rows;
  for (int b : sizes) {
    BenchConfig c = base;
    c.batch_size = b;
    rows.push_back(rollout(c));
  }
  return rows;
}

inline std::string cpu_model() {
  std::ifstream in("/proc/cpuinfo");
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("model name", 0) == 0) {
      const auto colon = line.find(':');
      if (colon != std::string::npos) return line.substr(std::min(colon + 2, line.size()));
    }
  }
  return "unknown";
}

inline std::string build_flags() {
  std::string s = "compiler=" __VERSION__;
#ifdef __OPTIMIZE__
  s += " optimized";
#else
  s += " unoptimized";
#endif
#ifdef NDEBUG
  s += " NDEBUG";
#endif
  return s;
}

inline void write_csv(std::ostream& out, const std::vector<BenchRow>& rows, const BenchConfig& config) {
  out << "# rule=" << rule_name(config.rule) << " mode=" << mode_name(config.mode) << " steps=" << config.steps
      << " seed=" << config.seed << " repeats=" << config.repeats << "\n";
  out << "# threads=" << resolve_threads(config.threads) << " hardware_threads=" << std::thread::hardware_concurrency()
      << " cpu=" << cpu_model() << "\n";
  out << "# build=" << build_flags() << "\n";
  out << "batch,wall_seconds,steps_per_second,games_completed\n";
  for (const auto& r : rows) {
    std::ostringstream line;
    line.precision(9);
    line << r.batch << ',' << r.wall_seconds << ',' << r.steps_per_second << ',' << r.games_completed;
    out << line.str() << "\n";
  }
}

}  // namespace riichi
