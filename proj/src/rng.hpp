#pragma once

#include <cstdint>

namespace latmed {

// SplitMix64. Used instead of <random> engines/distributions so that a seed
// produces the same stream on every platform and standard library; seeded
// reports are compared byte-for-byte across runs.
class SplitMix64 {
public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t next() {
    uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Modulo bias is irrelevant here; only determinism matters.
  uint64_t below(uint64_t n) { return n ? next() % n : 0; }

private:
  uint64_t state_;
};

// Generator for the i-th draw of a seeded run. Position-addressable so that
// parallel shards produce identical samples regardless of worker count or
// visit order.
inline SplitMix64 stream_at(uint64_t seed, uint64_t index) {
  SplitMix64 g(seed ^ (index * 0x9e3779b97f4a7c15ull + 0x632be59bd9b4e019ull));
  g.next();
  return g;
}

}  // namespace latmed
