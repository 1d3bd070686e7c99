#pragma once

#include <span>
#include <vector>

#include "lattice.hpp"
#include "report.hpp"

namespace latmed {

// Largest arity the subset-expansion forms accept; C(25,12) partial meets is
// the most a single call is allowed to burn.
inline constexpr int kDirectMedianMaxN = 25;

// Join over all (n+1-k)-subsets of the meets of the subset.
ElemId median_k_direct(const FiniteLattice& lat, std::span<const ElemId> xs, int k);

// Meet over all k-subsets of the joins of the subset. Equal to the direct form
// exactly when the lattice is distributive.
ElemId median_k_dual(const FiniteLattice& lat, std::span<const ElemId> xs, int k);

// Per-irreducible threshold count on the Birkhoff encoding; no arity cap.
// Requires the lattice to carry an embedding (i.e. be distributive).
ElemId median_k_fast(const FiniteLattice& lat, std::span<const ElemId> xs, int k);

// Fast form when an embedding exists, direct form otherwise.
ElemId median_k(const FiniteLattice& lat, std::span<const ElemId> xs, int k);

// Median of the m-prefix: M_{k,m}(x_1..x_n), 1 <= k <= m <= n.
ElemId median_relative(const FiniteLattice& lat, std::span<const ElemId> xs, int k, int m);

// (M_1(x), ..., M_n(x)): the coordinatewise-sorted tuple.
std::vector<ElemId> total_orderization(const FiniteLattice& lat, std::span<const ElemId> xs);

}  // namespace latmed
