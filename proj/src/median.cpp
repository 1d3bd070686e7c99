#include "median.hpp"

#include <numeric>
#include <string>

namespace latmed {
namespace {

void check_median_args(const FiniteLattice& lat, std::span<const ElemId> xs, int k) {
  if (xs.empty()) throw InvalidArgumentError("median needs at least one element");
  lat.check_tuple(xs);
  if (k < 1 || k > static_cast<int>(xs.size()))
    throw InvalidArgumentError("k=" + std::to_string(k) + " outside [1," + std::to_string(xs.size()) + "]");
}

// Lexicographic r-combinations of {0..n-1}.
template <class Fn>
void for_each_combination(int n, int r, Fn&& fn) {
  std::vector<int> c(r);
  std::iota(c.begin(), c.end(), 0);
  while (true) {
    fn(c);
    int i = r - 1;
    while (i >= 0 && c[i] == n - r + i) --i;
    if (i < 0) return;
    ++c[i];
    for (int j = i + 1; j < r; ++j) c[j] = c[j - 1] + 1;
  }
}

void check_direct_capacity(std::span<const ElemId> xs) {
  if (static_cast<int>(xs.size()) > kDirectMedianMaxN)
    throw CapacityError("subset-expansion median at n=" + std::to_string(xs.size()) +
                        " exceeds the cap of " + std::to_string(kDirectMedianMaxN) +
                        "; use the encoded form");
}

ElemId fold_meet(const FiniteLattice& lat, std::span<const ElemId> xs) {
  ElemId acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = lat.meet_u(acc, xs[i]);
  return acc;
}

ElemId fold_join(const FiniteLattice& lat, std::span<const ElemId> xs) {
  ElemId acc = xs[0];
  for (size_t i = 1; i < xs.size(); ++i) acc = lat.join_u(acc, xs[i]);
  return acc;
}

}  // namespace

ElemId median_k_direct(const FiniteLattice& lat, std::span<const ElemId> xs, int k) {
  check_median_args(lat, xs, k);
  const int n = static_cast<int>(xs.size());
  if (k == 1) return fold_meet(lat, xs);
  if (k == n) return fold_join(lat, xs);
  check_direct_capacity(xs);
  const int r = n + 1 - k;
  ElemId acc = 0;
  bool first = true;
  for_each_combination(n, r, [&](const std::vector<int>& c) {
    ElemId t = xs[c[0]];
    for (int j = 1; j < r; ++j) t = lat.meet_u(t, xs[c[j]]);
    acc = first ? t : lat.join_u(acc, t);
    first = false;
  });
  return acc;
}

ElemId median_k_dual(const FiniteLattice& lat, std::span<const ElemId> xs, int k) {
  check_median_args(lat, xs, k);
  const int n = static_cast<int>(xs.size());
  if (k == 1) return fold_meet(lat, xs);
  if (k == n) return fold_join(lat, xs);
  check_direct_capacity(xs);
  const int r = k;
  ElemId acc = 0;
  bool first = true;
  for_each_combination(n, r, [&](const std::vector<int>& c) {
    ElemId t = xs[c[0]];
    for (int j = 1; j < r; ++j) t = lat.join_u(t, xs[c[j]]);
    acc = first ? t : lat.meet_u(acc, t);
    first = false;
  });
  return acc;
}

ElemId median_k_fast(const FiniteLattice& lat, std::span<const ElemId> xs, int k) {
  check_median_args(lat, xs, k);
  const BirkhoffEmbedding* be = lat.birkhoff();
  if (!be)
    throw PreconditionError("encoded median needs a distributive lattice; this one has no embedding");
  const int n = static_cast<int>(xs.size());
  const int threshold = n + 1 - k;
  std::vector<uint64_t> out(be->words(), 0);
  for (int32_t j = 0; j < be->bit_count(); ++j) {
    const int w = j / 64, off = j % 64;
    int cnt = 0;
    for (ElemId x : xs) cnt += static_cast<int>((be->code(x)[w] >> off) & 1);
    if (cnt >= threshold) out[w] |= 1ull << off;
  }
  auto decoded = be->decode(out);
  if (!decoded) throw InternalError("median bit pattern does not decode to a lattice element");
  return *decoded;
}

ElemId median_k(const FiniteLattice& lat, std::span<const ElemId> xs, int k) {
  if (!xs.empty() && lat.birkhoff()) return median_k_fast(lat, xs, k);
  return median_k_direct(lat, xs, k);
}

ElemId median_relative(const FiniteLattice& lat, std::span<const ElemId> xs, int k, int m) {
  if (xs.empty()) throw InvalidArgumentError("median needs at least one element");
  lat.check_tuple(xs);
  if (m < 1 || m > static_cast<int>(xs.size()))
    throw InvalidArgumentError("m=" + std::to_string(m) + " outside [1," + std::to_string(xs.size()) + "]");
  if (k < 1 || k > m)
    throw InvalidArgumentError("k=" + std::to_string(k) + " outside [1," + std::to_string(m) + "]");
  return median_k(lat, xs.subspan(0, m), k);
}

std::vector<ElemId> total_orderization(const FiniteLattice& lat, std::span<const ElemId> xs) {
  if (xs.empty()) throw InvalidArgumentError("median needs at least one element");
  lat.check_tuple(xs);
  const int n = static_cast<int>(xs.size());
  const BirkhoffEmbedding* be = lat.birkhoff();
  std::vector<ElemId> out;
  out.reserve(n);
  if (!be) {
    for (int k = 1; k <= n; ++k) out.push_back(median_k_direct(lat, xs, k));
    return out;
  }

  std::vector<int> cnt(be->bit_count(), 0);
  for (ElemId x : xs) {
    auto code = be->code(x);
    for (int32_t j = 0; j < be->bit_count(); ++j)
      cnt[j] += static_cast<int>((code[j / 64] >> (j % 64)) & 1);
  }
  std::vector<uint64_t> word(be->words());
  for (int k = 1; k <= n; ++k) {
    const int threshold = n + 1 - k;
    std::fill(word.begin(), word.end(), 0);
    for (int32_t j = 0; j < be->bit_count(); ++j)
      if (cnt[j] >= threshold) word[j / 64] |= 1ull << (j % 64);
    auto decoded = be->decode(word);
    if (!decoded) throw InternalError("median bit pattern does not decode to a lattice element");
    out.push_back(*decoded);
  }
  return out;
}

}  // namespace latmed
