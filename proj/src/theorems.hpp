#pragma once

#include <optional>

#include "maps.hpp"
#include "toi.hpp"

namespace latmed {

struct MatrixLattice {
  std::string name;
  FiniteLattice::Ptr lattice;
};

// C2..C5, powerset(2), powerset(3), divisor(36), C3xC2.
const std::vector<MatrixLattice>& default_matrix();

// Medians are symmetric, fix sorted tuples, and reduce to order statistics on
// chains; exhaustive for all arities up to n_max.
VerificationRun verify_prop_medians(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts = {});

// M_k(x1^x2, x1vx2, x3,...) = M_k(x) for all k <= n <= n_max.
VerificationRun verify_lemma_swap(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts = {});

// M_{k,m} ^ [M_{k-1,m} v x_{m+1}] = M_{k,m+1} for 2 <= k <= m < n <= n_max.
VerificationRun verify_lemma_extend(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts = {});

enum class MapSource { AllTables, SeededTables, Builtins };

// Runs the four-condition cross-check over a family of maps L^arity -> L;
// fails only on checker disagreement.
VerificationRun verify_charsoftoi(const FiniteLattice::Ptr& L, int arity, MapSource source,
                                  uint64_t table_count, const RunOptions& opts = {});

// TOI <=> symmetric across every enumerated n-homomorphism L^arity -> M.
VerificationRun verify_multihom_toi(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                    const RunOptions& opts = {});
// Same equivalence on the weighted geometric mean: homomorphism sampled-pass,
// symmetry fail, TOI fail.
VerificationRun verify_multihom_toi_geomean(const RunOptions& opts = {});

// T(x1,x1,x3,..) ^ T(x2,x2,x3,..) <= T(x) <= their join, per symmetric hom.
VerificationRun verify_sandwich(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                const RunOptions& opts = {});

// (a) P_T lattice hom <=> (b) n-fold diagonal sandwich <=> (c) two-variable
// power-tuple sandwich for every k in [n-1], per symmetric hom.
VerificationRun verify_kusraev(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                               const RunOptions& opts = {});

// Join-shift identity over power tuples of (x, y, x^y), all legal (j,m,p).
VerificationRun verify_alg_lemma(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                 const RunOptions& opts = {});

// The diagonal of every enumerated symmetric hom is a lattice homomorphism.
VerificationRun verify_diags(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                             const RunOptions& opts = {});
// Diagonal identities hold for the weighted geometric mean although it is not
// symmetric: the converse direction genuinely fails.
VerificationRun verify_diags_geomean(const RunOptions& opts = {});

struct VerifierConfig {
  FiniteLattice::Ptr lattice;             // single-lattice verifiers
  FiniteLattice::Ptr domain, codomain;    // enumeration verifiers
  std::optional<int> arity;
  std::optional<int> n_max;
};

struct VerifyOutcome {
  std::string id;
  std::vector<VerificationRun> runs;

  bool ok() const {
    for (const auto& r : runs)
      if (!r.ok()) return false;
    return true;
  }
};

const std::vector<std::string>& verifier_ids();  // excludes "all"

// id is one of verifier_ids() or "all"; config overrides replace the default
// matrix legs with a single leg.
VerifyOutcome run_verifier(const std::string& id, const VerifierConfig& cfg, const RunOptions& opts = {});

}  // namespace latmed
