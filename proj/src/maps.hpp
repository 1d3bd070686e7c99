#pragma once

#include <memory>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lattice.hpp"
#include "report.hpp"

namespace latmed {

// Codomain with no order structure; values compare by index only.
struct BareSet {
  std::vector<std::string> labels;
  int32_t size() const { return static_cast<int32_t>(labels.size()); }
};

// Structural equality: same size, same labels, same operation tables.
bool same_lattice(const FiniteLattice& a, const FiniteLattice& b);

// n-ary map from a finite lattice into a lattice or a bare set.
class MultiMap {
 public:
  using Codomain = std::variant<FiniteLattice::Ptr, BareSet>;

  struct Table {
    std::vector<ElemId> values;  // row-major over domain tuples, slot 1 major
  };
  struct Projection {
    int slot;  // 1-based
  };
  struct MedianK {
    int k;
  };
  struct Constant {
    ElemId value;
  };
  struct Composition {
    std::shared_ptr<const MultiMap> inner;
    std::shared_ptr<const MultiMap> outer;  // arity 1, domain = inner codomain
  };
  using Body = std::variant<Table, Projection, MedianK, Constant, Composition>;

  MultiMap(int arity, FiniteLattice::Ptr domain, Codomain codomain, Body body);

  int arity() const { return arity_; }
  const FiniteLattice& domain() const { return *domain_; }
  const FiniteLattice::Ptr& domain_ptr() const { return domain_; }
  const Codomain& codomain() const { return codomain_; }
  const FiniteLattice* codomain_lattice() const;
  const BareSet* codomain_set() const;
  int32_t codomain_size() const;
  std::string value_label(ElemId v) const;

  ElemId eval(std::span<const ElemId> xs) const;
  uint64_t tuple_space() const;  // |domain|^arity
  const Body& body() const { return body_; }
  std::string describe() const;

 private:
  int arity_;
  FiniteLattice::Ptr domain_;
  Codomain codomain_;
  Body body_;
};

Witness map_witness(const MultiMap& T, std::vector<std::vector<ElemId>> tuples, std::vector<int> slots,
                    ElemId lhs, ElemId rhs, std::string note);

// Adjacent transpositions; they generate the symmetric group.
CheckReport is_symmetric(const MultiMap& T, const RunOptions& opts = {});

// All n! permutations; cross-check oracle for is_symmetric.
CheckReport is_symmetric_fullperm(const MultiMap& T, const RunOptions& opts = {});

// Both lattice laws in every slot: T(..,x_i v y,..) = T(x) v T(..,y,..) and dually.
CheckReport is_n_homomorphism(const MultiMap& T, const RunOptions& opts = {});

// x -> T(x,..,x); refuses non-symmetric maps.
MultiMap diagonal(const MultiMap& T, const RunOptions& opts = {});

// Expands (value, multiplicity) blocks; multiplicities must sum to arity.
std::vector<ElemId> power_tuple(std::span<const std::pair<ElemId, int>> blocks, int arity);

struct EnumResult {
  std::vector<MultiMap> maps;   // lexicographic table order
  uint64_t table_space = 0;     // |M|^(|L|^n), before pruning
  uint64_t tables_visited = 0;  // leaves reached after monotonicity pruning
};

// All arity-n lattice homomorphisms L^n -> M as table maps.
// Bounded by |L|^n * log2|M| <= 24 bits of table freedom.
EnumResult enumerate_bihoms(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                            bool symmetric_only);

}  // namespace latmed
