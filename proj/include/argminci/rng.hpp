#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

namespace argminci {

// Purpose tags for stream derivation. Seeds are derived as
// splitmix64 chains over (root, tag, indices...), so every
// (repetition, purpose, dimension, ...) tuple owns an independent stream
// and parallel workers never share generator state.
namespace stream {
inline constexpr std::uint64_t data = 1;
inline constexpr std::uint64_t tuning = 2;
inline constexpr std::uint64_t tie_break = 3;
inline constexpr std::uint64_t replacement = 4;
inline constexpr std::uint64_t quantile = 5;
inline constexpr std::uint64_t oracle = 6;
inline constexpr std::uint64_t pairs = 7;
}  // namespace stream

std::uint64_t splitmix64_next(std::uint64_t& state);

// Deterministic seed for a child stream; order of path elements matters.
std::uint64_t derive_seed(std::uint64_t root,
                          std::initializer_list<std::uint64_t> path);

class RngStream {
 public:
  explicit RngStream(std::uint64_t seed) : engine_(seed) {}

  static RngStream derived(std::uint64_t root,
                           std::initializer_list<std::uint64_t> path) {
    return RngStream(derive_seed(root, path));
  }

  std::mt19937_64& engine() { return engine_; }

  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }

  // Inclusive bounds.
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(engine_);
  }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

}  // namespace argminci
