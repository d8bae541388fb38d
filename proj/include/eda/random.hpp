#pragma once

#include <cstdint>

namespace eda {

// PCG XSL-RR 128/64 ("pcg64"). 128-bit LCG state advanced with the standard
// PCG multiplier; the output folds the state halves with xor and rotates by
// the top six state bits. Construction from (seed, stream) follows the
// reference seeding sequence, so a given pair reproduces the same draw
// sequence on every platform. Distinct streams select distinct (odd) LCG
// increments and give statistically independent sequences.
class RandomSource {
  using u128 = unsigned __int128;

 public:
  RandomSource(std::uint64_t seed, std::uint64_t stream)
      : state_(0),
        inc_((static_cast<u128>(stream) << 1) | 1u),
        seed_(seed),
        stream_(stream) {
    step();
    state_ += seed;
    step();
  }

  std::uint64_t next_u64() {
    step();
    const std::uint64_t folded =
        static_cast<std::uint64_t>(state_ >> 64) ^ static_cast<std::uint64_t>(state_);
    const unsigned rot = static_cast<unsigned>(state_ >> 122);
    return (folded >> rot) | (folded << (-rot & 63u));
  }

  // Uniform in [0, 1), 53 random mantissa bits.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  bool bernoulli(double p) { return next_double() < p; }

  // Uniform integer in [lo, hi] by rejection-free modulo of a 64-bit draw;
  // the bias is < 2^-50 for the ranges used here (grid indices, positions).
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1u;
    return lo + static_cast<std::int64_t>(next_u64() % span);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t stream() const { return stream_; }

 private:
  static constexpr u128 kMultiplier =
      (static_cast<u128>(0x2360ed051fc65da4ULL) << 64) | 0x4385df649fccf645ULL;

  void step() { state_ = state_ * kMultiplier + inc_; }

  u128 state_;
  u128 inc_;
  std::uint64_t seed_;
  std::uint64_t stream_;
};

}  // namespace eda
