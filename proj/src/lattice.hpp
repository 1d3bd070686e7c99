#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "report.hpp"

namespace latmed {

enum class LatticeKind { Chain, Powerset, Divisor, Product, Downset, Explicit };

const char* to_string(LatticeKind k);

// Default cap on explicitly tabled lattices; LATMED_MAX_ELEMS overrides it
// (hard ceiling 65535 so table entries fit in 16 bits). Powersets are exempt:
// they are represented by bitmasks, never by tables.
int32_t element_cap();

class FiniteLattice;

// Join-irreducible bit-vector representation of a finite distributive
// lattice: encode(x) has bit j set iff irreducible j <= x. encode is
// injective, encode(x ∧ y) = encode(x) AND encode(y), and
// encode(x ∨ y) = encode(x) OR encode(y). The join law is equivalent to
// distributivity and is verified over all pairs at construction; meet-law and
// injectivity hold in any finite lattice by construction.
class BirkhoffEmbedding {
public:
  int32_t bit_count() const { return nbits_; }
  int words() const { return words_; }
  const std::vector<ElemId>& irreducibles() const { return irr_; }

  std::span<const uint64_t> code(ElemId x) const {
    return {codes_.data() + static_cast<size_t>(x) * words_, static_cast<size_t>(words_)};
  }

  std::optional<ElemId> decode(std::span<const uint64_t> code) const;

private:
  friend class FiniteLattice;

  int32_t nbits_ = 0;
  int words_ = 1;
  bool identity_ = false;  // powerset: code(x) == x, no tables
  int32_t size_ = 0;
  std::vector<ElemId> irr_;
  std::vector<uint64_t> codes_;  // size_ * words_, row per element
  std::unordered_map<std::string, ElemId> decode_;
};

// A finite lattice over elements 0..size-1. Immutable after construction and
// safe for concurrent shared reads. Three storage modes:
//   - tables (divisor, product, downset, explicit): meet/join are size² lookups
//   - chain: meet/join are min/max on indices
//   - powerset: the element index is the subset bitmask; meet/join are AND/OR
class FiniteLattice : public std::enable_shared_from_this<FiniteLattice> {
public:
  using Ptr = std::shared_ptr<const FiniteLattice>;

  // Constructors validate their inputs and reject oversized results with
  // CapacityError. Outputs of the five builders satisfy all lattice laws and
  // distributivity; make_explicit accepts arbitrary well-formed tables
  // (including non-distributive ones, used as negative fixtures).
  static Ptr make_chain(int64_t n);
  static Ptr make_powerset(const std::vector<std::string>& ground);
  static Ptr make_divisor(int64_t n);
  static Ptr make_product(const Ptr& a, const Ptr& b);
  static Ptr make_downset(const std::vector<std::string>& elements,
                          const std::vector<std::pair<std::string, std::string>>& covers);
  static Ptr make_explicit(const std::vector<std::string>& labels,
                           const std::vector<std::vector<ElemId>>& meet,
                           const std::vector<std::vector<ElemId>>& join);

  LatticeKind kind() const { return kind_; }
  int32_t size() const { return size_; }

  ElemId meet(ElemId a, ElemId b) const {
    check_element(a);
    check_element(b);
    return meet_u(a, b);
  }

  ElemId join(ElemId a, ElemId b) const {
    check_element(a);
    check_element(b);
    return join_u(a, b);
  }

  // Order derived from meet: a <= b iff a ∧ b = a.
  bool leq(ElemId a, ElemId b) const {
    check_element(a);
    check_element(b);
    return meet_u(a, b) == a;
  }

  // Bounds-unchecked variants for interior loops that already validated ids.
  ElemId meet_u(ElemId a, ElemId b) const {
    switch (store_) {
      case Store::ChainOp: return a < b ? a : b;
      case Store::MaskOp: return a & b;
      default: return static_cast<ElemId>(meet_[static_cast<size_t>(a) * size_ + b]);
    }
  }

  ElemId join_u(ElemId a, ElemId b) const {
    switch (store_) {
      case Store::ChainOp: return a > b ? a : b;
      case Store::MaskOp: return a | b;
      default: return static_cast<ElemId>(join_[static_cast<size_t>(a) * size_ + b]);
    }
  }

  bool leq_u(ElemId a, ElemId b) const { return meet_u(a, b) == a; }

  std::string label(ElemId x) const;
  std::optional<ElemId> find(std::string_view label) const;

  void check_element(ElemId x) const {
    if (x < 0 || x >= size_)
      throw InvalidArgumentError("element index " + std::to_string(x) + " out of range for lattice of size " +
                                 std::to_string(size_));
  }

  void check_tuple(std::span<const ElemId> xs) const {
    for (ElemId x : xs) check_element(x);
  }

  // Full law scan: commutativity, idempotence, absorption over all pairs,
  // associativity over all triples. Pass for the bitmask representation is
  // structural (AND/OR satisfy the laws for all masks) and skips the scan.
  CheckReport validate(const RunOptions& opts = {}) const;

  // x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z) over all triples; witness on failure.
  CheckReport check_distributive(const RunOptions& opts = {}) const;

  // Present iff the lattice is distributive (built at construction; the join
  // law doubles as the distributivity certificate).
  const BirkhoffEmbedding* birkhoff() const { return birkhoff_ ? &*birkhoff_ : nullptr; }

  bool bitmask_rep() const { return store_ == Store::MaskOp; }

  // Construction inputs, kept for serialization.
  const std::vector<std::string>& ground() const { return ground_; }           // powerset
  int64_t divisor_n() const { return divisor_n_; }                             // divisor
  const Ptr& factor(int i) const { return i == 0 ? factor_a_ : factor_b_; }    // product
  const std::vector<std::string>& poset_elements() const { return ground_; }   // downset
  const std::vector<std::pair<std::string, std::string>>& poset_covers() const { return covers_; }

private:
  enum class Store { Table, ChainOp, MaskOp };

  FiniteLattice() = default;

  void build_label_index();
  void build_birkhoff();

  LatticeKind kind_ = LatticeKind::Explicit;
  Store store_ = Store::Table;
  int32_t size_ = 0;
  int nbits_ = 0;  // MaskOp: ground size

  std::vector<uint16_t> meet_;
  std::vector<uint16_t> join_;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, ElemId> label_index_;

  std::optional<BirkhoffEmbedding> birkhoff_;

  std::vector<std::string> ground_;  // powerset atoms / downset poset elements
  int64_t divisor_n_ = 0;
  Ptr factor_a_, factor_b_;
  std::vector<std::pair<std::string, std::string>> covers_;
};

// Rejects labels that would break tuple parsing or set/pair rendering.
void check_user_label(const std::string& label);

}  // namespace latmed
