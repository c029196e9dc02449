#pragma once

#include <cstdint>

namespace riichi {

// Counter-based generator: output i of a key is a pure function of
// (seed, i), so a key can be split into independent streams without
// sharing mutable state between environments.
struct RngState {
  std::uint64_t seed = 0;
  std::uint64_t counter = 0;

  friend bool operator==(const RngState&, const RngState&) = default;
};

constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t random_bits(std::uint64_t seed, std::uint64_t counter) noexcept {
  return mix64(mix64(seed ^ 0x6A09E667F3BCC909ULL) + (counter + 1) * 0x9E3779B97F4A7C15ULL);
}

// Derives an independent child key; (key, stream) -> child is injective
// in practice and never consumes the parent's counter.
constexpr RngState split(RngState key, std::uint64_t stream) noexcept {
  return RngState{mix64(random_bits(key.seed, key.counter) ^ mix64(stream + 0x3C6EF372FE94F82BULL)), 0};
}

constexpr RngState make_rng(std::uint64_t seed) noexcept { return RngState{seed, 0}; }

class Rng {
 public:
  constexpr explicit Rng(RngState state) noexcept : state_(state) {}

  constexpr std::uint64_t next() noexcept { return random_bits(state_.seed, state_.counter++); }

  // Unbiased integer in [0, bound) (Lemire's multiply-shift with rejection).
  constexpr std::uint32_t uniform(std::uint32_t bound) noexcept {
    std::uint64_t x = next() >> 32;
    std::uint64_t m = x * bound;
    auto low = static_cast<std::uint32_t>(m);
    if (low < bound) {
      const std::uint32_t threshold = static_cast<std::uint32_t>(-bound) % bound;
      while (low < threshold) {
        x = next() >> 32;
        m = x * bound;
        low = static_cast<std::uint32_t>(m);
      }
    }
    return static_cast<std::uint32_t>(m >> 32);
  }

  constexpr RngState state() const noexcept { return state_; }

 private:
  RngState state_;
};

}  // namespace riichi
