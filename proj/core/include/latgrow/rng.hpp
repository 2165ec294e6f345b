// rng.hpp — counter-based random streams with reproducible per-run, per-particle keys.
//
// Every random decision in the laboratory draws from a CounterStream, whose k-th
// output word depends only on (key, k). Keys are derived by hashing, never by
// sharing generator state, so ensembles are order-independent and replayable:
//   run seed       = derive(base_seed, run_index)
//   particle key   = derive(run_seed, particle_index)
// Words come from two rounds of the splitmix64 finalizer, which is enough mixing
// for consecutive-counter inputs and is fast enough for the walk inner loop.
#pragma once

#include <cstdint>

namespace latgrow {

inline constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Hash two words into one; used both for key derivation and word generation.
inline constexpr std::uint64_t derive(std::uint64_t a, std::uint64_t b) {
  return splitmix64(splitmix64(a ^ 0x632be59bd9b4e019ull) + b);
}

class CounterStream {
 public:
  explicit CounterStream(std::uint64_t key) : key_(key) {}

  std::uint64_t next_word() {
    bits_left_ = 0;  // a full-word draw flushes any buffered step bits
    return derive(key_, counter_++);
  }

  // Uniform in [0, 1), 53 significant bits.
  double next_unit() { return double(next_word() >> 11) * 0x1.0p-53; }

  // Uniform in {0, 1, 2, 3}; 32 draws consume one word. Used for walk steps.
  unsigned next_step() {
    if (bits_left_ == 0) {
      buffer_ = derive(key_, counter_++);
      bits_left_ = 64;
    }
    unsigned r = unsigned(buffer_ & 3u);
    buffer_ >>= 2;
    bits_left_ -= 2;
    return r;
  }

  // Uniform integer in [0, n); n must be positive. Rejection-free Lemire trick
  // is unnecessary here, the 2^-64 modulo bias is far below every tolerance in
  // play, but keep the draw exact anyway via 128-bit multiply.
  std::uint64_t next_below(std::uint64_t n) {
    return std::uint64_t((__uint128_t(next_word()) * n) >> 64);
  }

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::uint64_t buffer_ = 0;
  int bits_left_ = 0;
};

}  // namespace latgrow
