#pragma once

#include <cstdint>
#include <string_view>

namespace todg {

// Deterministic, platform-independent PRNG used for all entity sampling:
// xoshiro256** seeded through splitmix64. Both algorithms are fully
// specified 64-bit integer recurrences, so independent implementations in
// other languages reproduce the same draw sequences bit for bit.
//
// Test vectors (first outputs):
//   splitmix64(seed=0):  e220a8397b1dcdaf 6e789e6aa1b965f4 06c45d188009454f
//   xoshiro256**(seed=0, splitmix-expanded state):
//     99ec5f36cb75f2b4 bf6e1f784956452a 1a5f849d4933e6e0

inline uint64_t splitmix64_next(uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

class Rng {
 public:
  explicit Rng(uint64_t seed) {
    uint64_t sm = seed;
    for (auto& word : state_) word = splitmix64_next(sm);
  }

  uint64_t next() {
    const uint64_t result = rotl(state_[1] * 5, 7) * 9;
    const uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
  }

  // Unbiased draw in [0, n). Division method with rejection: values at or
  // above span*n would fold unevenly and are redrawn.
  uint64_t next_below(uint64_t n) {
    if (n <= 1) return 0;
    const uint64_t span = UINT64_MAX / n;
    const uint64_t limit = span * n;
    uint64_t x = next();
    while (x >= limit) x = next();
    return x / span;
  }

 private:
  static uint64_t rotl(uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
  }

  uint64_t state_[4];
};

// FNV-1a, 64 bit. Used for per-dialogue stream seeds and for keying the
// file-backed translator's line table.
inline uint64_t fnv1a64(std::string_view bytes, uint64_t hash = 0xCBF29CE484222325ULL) {
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

inline uint64_t fnv1a64_u64(uint64_t value, uint64_t hash = 0xCBF29CE484222325ULL) {
  for (int i = 0; i < 8; ++i) {
    hash ^= (value >> (8 * i)) & 0xFF;
    hash *= 0x100000001B3ULL;
  }
  return hash;
}

// Independent stream per (master seed, dialogue, copy). Regenerating any
// subset of dialogues, in any order or thread layout, yields the same draws.
inline Rng stream_rng(uint64_t master_seed, std::string_view dialogue_id,
                      uint64_t copy_index) {
  uint64_t h = fnv1a64_u64(master_seed);
  h = fnv1a64(dialogue_id, h);
  h = fnv1a64_u64(copy_index, h);
  return Rng(h);
}

}  // namespace todg
