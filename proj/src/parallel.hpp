#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <optional>
#include <thread>
#include <vector>

#include "report.hpp"

namespace latmed {

// Smallest index in [0, space) where `ok` returns false, or nullopt. `ok`
// must be pure. The violation set is a property of `ok` alone and the result
// is reduced by minimum, so witnesses and counts derived from it do not
// depend on worker count or chunking. Workers abandon a chunk once a smaller
// violation is known elsewhere.
template <class OkFn>
std::optional<uint64_t> first_violation(uint64_t space, int workers, OkFn&& ok) {
  if (space == 0) return std::nullopt;
  if (workers <= 1 || space < 2048) {
    for (uint64_t i = 0; i < space; ++i)
      if (!ok(i)) return i;
    return std::nullopt;
  }

  std::atomic<uint64_t> best{UINT64_MAX};
  uint64_t nworkers = static_cast<uint64_t>(workers);
  uint64_t chunk = (space + nworkers - 1) / nworkers;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (uint64_t t = 0; t < nworkers; ++t) {
    uint64_t lo = t * chunk;
    uint64_t hi = std::min(space, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&best, lo, hi, &ok] {
      if (lo >= best.load(std::memory_order_relaxed)) return;
      for (uint64_t i = lo; i < hi; ++i) {
        if ((i & 1023u) == 0 && i >= best.load(std::memory_order_relaxed)) return;
        if (!ok(i)) {
          uint64_t cur = best.load(std::memory_order_relaxed);
          while (i < cur && !best.compare_exchange_weak(cur, i, std::memory_order_relaxed)) {
          }
          return;
        }
      }
    });
  }
  for (auto& th : pool) th.join();

  uint64_t b = best.load();
  if (b == UINT64_MAX) return std::nullopt;
  return b;
}

inline uint64_t pow_u64(uint64_t base, int exp) {
  uint64_t r = 1;
  while (exp-- > 0) r *= base;
  return r;
}

// Mixed-radix decode of a flat tuple index, first coordinate most significant:
// index 0 is (0,...,0) and flat order equals lexicographic tuple order.
inline void decode_tuple(uint64_t idx, int n, uint64_t radix, ElemId* out) {
  for (int i = n - 1; i >= 0; --i) {
    out[i] = static_cast<ElemId>(idx % radix);
    idx /= radix;
  }
}

}  // namespace latmed
