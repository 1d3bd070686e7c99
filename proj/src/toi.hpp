#pragma once

#include "chain.hpp"
#include "maps.hpp"

namespace latmed {

// T(x) = T(M_1(x),...,M_n(x)) on every tuple.
CheckReport check_toi_def(const MultiMap& T, const RunOptions& opts = {});

// T symmetric and T(x1,x2,...) = T(x1^x2, x1vx2, x3,...). Arity >= 2.
CheckReport check_toi_cond2(const MultiMap& T, const RunOptions& opts = {});

// T(...,x_i,...,x_j,...) = T(...,x_i^x_j,...,x_ivx_j,...) for every i < j. Arity >= 2.
CheckReport check_toi_cond3(const MultiMap& T, const RunOptions& opts = {});

// T(x) = T(M_{1,m},...,M_{m,m}, x_{m+1},...) for every m in 2..n. Arity >= 2.
CheckReport check_toi_cond4(const MultiMap& T, const RunOptions& opts = {});

struct ToiCrossReport {
  CheckReport cond2, cond3, def, cond4;
  bool agree = true;  // all four verdicts equal
  bool toi = false;   // agreed and passing
  CheckReport summary() const;
};

// Runs the four conditions and demands identical verdicts; a split signals a
// checker bug. Refuses non-distributive domains: there the conditions are not
// equivalent and disagreement proves nothing.
ToiCrossReport cross_check(const MultiMap& T, const RunOptions& opts = {});
ToiCrossReport cross_check(const ChainMap& T, const RunOptions& opts = {});

}  // namespace latmed
