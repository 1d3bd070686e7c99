#include "maps.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>

#include "median.hpp"
#include "parallel.hpp"

namespace latmed {
namespace {

uint64_t checked_pow(uint64_t base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base)
      throw CapacityError("tuple space " + std::to_string(base) + "^" + std::to_string(exp) +
                          " does not fit in 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

bool same_lattice(const FiniteLattice& a, const FiniteLattice& b) {
  if (&a == &b) return true;
  if (a.size() != b.size()) return false;
  for (ElemId x = 0; x < a.size(); ++x)
    if (a.label(x) != b.label(x)) return false;
  for (ElemId x = 0; x < a.size(); ++x)
    for (ElemId y = 0; y < a.size(); ++y)
      if (a.meet_u(x, y) != b.meet_u(x, y) || a.join_u(x, y) != b.join_u(x, y)) return false;
  return true;
}

MultiMap::MultiMap(int arity, FiniteLattice::Ptr domain, Codomain codomain, Body body)
    : arity_(arity), domain_(std::move(domain)), codomain_(std::move(codomain)), body_(std::move(body)) {
  if (arity_ < 1) throw FormatError("map arity must be >= 1");
  if (!domain_) throw FormatError("map needs a domain lattice");
  if (codomain_size() < 1) throw FormatError("map codomain must be nonempty");

  if (auto* t = std::get_if<Table>(&body_)) {
    uint64_t space = tuple_space();
    if (t->values.size() != space)
      throw FormatError("table has " + std::to_string(t->values.size()) + " entries; the domain has " +
                        std::to_string(space) + " tuples");
    for (ElemId v : t->values)
      if (v < 0 || v >= codomain_size()) throw FormatError("table entry out of codomain range");
  } else if (auto* p = std::get_if<Projection>(&body_)) {
    if (p->slot < 1 || p->slot > arity_)
      throw FormatError("projection slot " + std::to_string(p->slot) + " outside [1," +
                        std::to_string(arity_) + "]");
    const auto* cod = codomain_lattice();
    if (!cod || !same_lattice(*domain_, *cod))
      throw FormatError("projection needs codomain = domain");
  } else if (auto* m = std::get_if<MedianK>(&body_)) {
    if (m->k < 1 || m->k > arity_)
      throw FormatError("median k=" + std::to_string(m->k) + " outside [1," + std::to_string(arity_) + "]");
    const auto* cod = codomain_lattice();
    if (!cod || !same_lattice(*domain_, *cod))
      throw FormatError("median map needs codomain = domain");
  } else if (auto* c = std::get_if<Constant>(&body_)) {
    if (c->value < 0 || c->value >= codomain_size()) throw FormatError("constant value outside the codomain");
  } else if (auto* comp = std::get_if<Composition>(&body_)) {
    if (!comp->inner || !comp->outer) throw FormatError("composition needs inner and outer maps");
    if (comp->inner->arity() != arity_) throw FormatError("composition inner arity mismatch");
    if (!same_lattice(*domain_, comp->inner->domain())) throw FormatError("composition inner domain mismatch");
    if (comp->outer->arity() != 1) throw FormatError("composition outer map must be unary");
    const auto* mid = comp->inner->codomain_lattice();
    if (!mid || !same_lattice(*mid, comp->outer->domain()))
      throw FormatError("composition outer domain must equal inner codomain");
    const auto* mine = codomain_lattice();
    const auto* theirs = comp->outer->codomain_lattice();
    bool match = mine && theirs ? same_lattice(*mine, *theirs)
                                : codomain_set() && comp->outer->codomain_set() &&
                                      codomain_set()->labels == comp->outer->codomain_set()->labels;
    if (!match) throw FormatError("composition codomain must equal outer codomain");
  }
}

const FiniteLattice* MultiMap::codomain_lattice() const {
  if (auto* p = std::get_if<FiniteLattice::Ptr>(&codomain_)) return p->get();
  return nullptr;
}

const BareSet* MultiMap::codomain_set() const { return std::get_if<BareSet>(&codomain_); }

int32_t MultiMap::codomain_size() const {
  if (auto* lat = codomain_lattice()) return lat->size();
  return codomain_set()->size();
}

std::string MultiMap::value_label(ElemId v) const {
  if (auto* lat = codomain_lattice()) return lat->label(v);
  const auto& labels = codomain_set()->labels;
  if (v < 0 || static_cast<size_t>(v) >= labels.size())
    throw InvalidArgumentError("value index outside the codomain");
  return labels[v];
}

uint64_t MultiMap::tuple_space() const {
  return checked_pow(static_cast<uint64_t>(domain_->size()), arity_);
}

ElemId MultiMap::eval(std::span<const ElemId> xs) const {
  if (static_cast<int>(xs.size()) != arity_)
    throw InvalidArgumentError("map arity is " + std::to_string(arity_) + "; got " +
                               std::to_string(xs.size()) + " elements");
  domain_->check_tuple(xs);
  return std::visit(
      [&](const auto& b) -> ElemId {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Table>) {
          uint64_t idx = 0;
          for (ElemId x : xs) idx = idx * domain_->size() + static_cast<uint64_t>(x);
          return b.values[idx];
        } else if constexpr (std::is_same_v<B, Projection>) {
          return xs[b.slot - 1];
        } else if constexpr (std::is_same_v<B, MedianK>) {
          return median_k(*domain_, xs, b.k);
        } else if constexpr (std::is_same_v<B, Constant>) {
          return b.value;
        } else {
          ElemId mid = b.inner->eval(xs);
          return b.outer->eval(std::span<const ElemId>(&mid, 1));
        }
      },
      body_);
}

std::string MultiMap::describe() const {
  return std::visit(
      [&](const auto& b) -> std::string {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, Table>) return "table";
        else if constexpr (std::is_same_v<B, Projection>) return "projection(" + std::to_string(b.slot) + ")";
        else if constexpr (std::is_same_v<B, MedianK>) return "median(" + std::to_string(b.k) + ")";
        else if constexpr (std::is_same_v<B, Constant>) return "constant(" + value_label(b.value) + ")";
        else return "composition(" + b.outer->describe() + " after " + b.inner->describe() + ")";
      },
      body_);
}

Witness map_witness(const MultiMap& T, std::vector<std::vector<ElemId>> tuples, std::vector<int> slots,
                    ElemId lhs, ElemId rhs, std::string note) {
  Witness w;
  for (const auto& t : tuples) {
    std::vector<std::string> rendered;
    rendered.reserve(t.size());
    for (ElemId x : t) rendered.push_back(T.domain().label(x));
    w.inputs.push_back(std::move(rendered));
  }
  w.input_ids = std::move(tuples);
  w.slots = std::move(slots);
  w.lhs = T.value_label(lhs);
  w.rhs = T.value_label(rhs);
  w.lhs_id = lhs;
  w.rhs_id = rhs;
  w.note = std::move(note);
  return w;
}

CheckReport is_symmetric(const MultiMap& T, const RunOptions& opts) {
  CheckReport rep;
  rep.law = "symmetry";
  const int n = T.arity();
  const uint64_t space = T.tuple_space();
  rep.counts = space;
  if (n == 1) return rep;
  const int32_t size = T.domain().size();

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    decode_tuple(idx, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(xs[t], xs[t + 1]);
      ElemId swapped = T.eval(xs);
      std::swap(xs[t], xs[t + 1]);
      if (swapped != base) return false;
    }
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    decode_tuple(*v, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(xs[t], xs[t + 1]);
      ElemId swapped = T.eval(xs);
      std::swap(xs[t], xs[t + 1]);
      if (swapped != base) {
        rep.verdict = Verdict::Fail;
        rep.counts = *v + 1;
        rep.witness = map_witness(T, {xs}, {t + 1, t + 2}, base, swapped,
                                  "swapping slots " + std::to_string(t + 1) + "," + std::to_string(t + 2) +
                                      " changes the value");
        return rep;
      }
    }
  }
  return rep;
}

CheckReport is_symmetric_fullperm(const MultiMap& T, const RunOptions& opts) {
  CheckReport rep;
  rep.law = "symmetry-fullperm";
  const int n = T.arity();
  const uint64_t space = T.tuple_space();
  rep.counts = space;
  if (n == 1) return rep;
  const int32_t size = T.domain().size();

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs, ys;
    thread_local std::vector<int> perm;
    xs.resize(n);
    ys.resize(n);
    perm.resize(n);
    decode_tuple(idx, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
      for (int i = 0; i < n; ++i) ys[i] = xs[perm[i]];
      if (T.eval(ys) != base) return false;
    }
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n), ys(n);
    std::vector<int> perm(n);
    decode_tuple(*v, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) perm[i] = i;
    while (std::next_permutation(perm.begin(), perm.end())) {
      for (int i = 0; i < n; ++i) ys[i] = xs[perm[i]];
      ElemId permuted = T.eval(ys);
      if (permuted != base) {
        rep.verdict = Verdict::Fail;
        rep.counts = *v + 1;
        rep.witness = map_witness(T, {xs, ys}, {}, base, permuted, "a permutation changes the value");
        return rep;
      }
    }
  }
  return rep;
}

CheckReport is_n_homomorphism(const MultiMap& T, const RunOptions& opts) {
  CheckReport rep;
  rep.law = "n-homomorphism";
  const auto* M = T.codomain_lattice();
  if (!M) throw PreconditionError("homomorphism laws need a lattice codomain, not a bare set");
  const int n = T.arity();
  const FiniteLattice& L = T.domain();
  const int32_t size = L.size();
  const uint64_t tuples = T.tuple_space();
  if (tuples > UINT64_MAX / size) throw CapacityError("homomorphism scan space does not fit in 64 bits");
  const uint64_t space = tuples * size;
  rep.counts = space;

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    const ElemId y = static_cast<ElemId>(idx % size);
    decode_tuple(idx / size, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) {
      const ElemId orig = xs[i];
      xs[i] = y;
      ElemId at_y = T.eval(xs);
      xs[i] = L.join_u(orig, y);
      if (T.eval(xs) != M->join_u(base, at_y)) {
        xs[i] = orig;
        return false;
      }
      xs[i] = L.meet_u(orig, y);
      if (T.eval(xs) != M->meet_u(base, at_y)) {
        xs[i] = orig;
        return false;
      }
      xs[i] = orig;
    }
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    const ElemId y = static_cast<ElemId>(*v % size);
    decode_tuple(*v / size, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) {
      const ElemId orig = xs[i];
      std::vector<ElemId> ys = xs;
      ys[i] = y;
      ElemId at_y = T.eval(ys);
      std::vector<ElemId> js = xs;
      js[i] = L.join_u(orig, y);
      if (T.eval(js) != M->join_u(base, at_y)) {
        rep.verdict = Verdict::Fail;
        rep.counts = *v + 1;
        rep.witness = map_witness(T, {xs, ys}, {i + 1}, T.eval(js), M->join_u(base, at_y),
                                  "join law in slot " + std::to_string(i + 1));
        return rep;
      }
      std::vector<ElemId> ms = xs;
      ms[i] = L.meet_u(orig, y);
      if (T.eval(ms) != M->meet_u(base, at_y)) {
        rep.verdict = Verdict::Fail;
        rep.counts = *v + 1;
        rep.witness = map_witness(T, {xs, ys}, {i + 1}, T.eval(ms), M->meet_u(base, at_y),
                                  "meet law in slot " + std::to_string(i + 1));
        return rep;
      }
    }
  }
  return rep;
}

MultiMap diagonal(const MultiMap& T, const RunOptions& opts) {
  auto sym = is_symmetric(T, opts);
  if (!sym.ok()) {
    std::string at = sym.witness ? " at (" + sym.witness->inputs[0][0] : "";
    if (sym.witness)
      for (size_t i = 1; i < sym.witness->inputs[0].size(); ++i) at += "," + sym.witness->inputs[0][i];
    if (sym.witness) at += ")";
    throw PreconditionError("diagonal needs a symmetric map; symmetry fails" + at);
  }

  using Body = MultiMap::Body;
  const int n = T.arity();
  Body body = std::visit(
      [&](const auto& b) -> Body {
        using B = std::decay_t<decltype(b)>;
        if constexpr (std::is_same_v<B, MultiMap::Constant>) {
          return b;
        } else if constexpr (std::is_same_v<B, MultiMap::MedianK> ||
                             std::is_same_v<B, MultiMap::Projection>) {
          return MultiMap::Projection{1};
        } else {
          MultiMap::Table table;
          table.values.reserve(T.domain().size());
          std::vector<ElemId> xs(n);
          for (ElemId x = 0; x < T.domain().size(); ++x) {
            std::fill(xs.begin(), xs.end(), x);
            table.values.push_back(T.eval(xs));
          }
          return table;
        }
      },
      T.body());
  return MultiMap(1, T.domain_ptr(), T.codomain(), std::move(body));
}

std::vector<ElemId> power_tuple(std::span<const std::pair<ElemId, int>> blocks, int arity) {
  std::vector<ElemId> out;
  for (const auto& [value, mult] : blocks) {
    if (mult < 0) throw InvalidArgumentError("power tuple multiplicity must be >= 0");
    out.insert(out.end(), mult, value);
  }
  if (static_cast<int>(out.size()) != arity)
    throw InvalidArgumentError("power tuple multiplicities sum to " + std::to_string(out.size()) +
                               "; arity is " + std::to_string(arity));
  return out;
}

EnumResult enumerate_bihoms(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                            bool symmetric_only) {
  if (!L || !M) throw InvalidArgumentError("enumeration needs domain and codomain lattices");
  if (arity < 1) throw InvalidArgumentError("arity must be >= 1");
  const uint64_t cells = checked_pow(static_cast<uint64_t>(L->size()), arity);
  const double bits = cells * std::log2(static_cast<double>(M->size()));
  if (bits > 24.0 + 1e-9) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.1f", bits);
    throw CapacityError(std::string("enumeration needs ") + buf +
                        " bits of table freedom; the bound is |L|^n * log2|M| <= 24");
  }

  EnumResult out;
  out.table_space = checked_pow(static_cast<uint64_t>(M->size()), static_cast<int>(cells));
  RunOptions serial;
  serial.parallelism = 1;

  if (M->size() == 1) {
    MultiMap cand(arity, L, M, MultiMap::Table{std::vector<ElemId>(cells, 0)});
    out.tables_visited = 1;
    if (is_n_homomorphism(cand, serial).ok() && (!symmetric_only || is_symmetric(cand, serial).ok()))
      out.maps.push_back(std::move(cand));
    return out;
  }

  // With |M| >= 2 the bit bound forces cells <= 24, so pairwise relations
  // between cells fit in 32-bit masks.
  const int nc = static_cast<int>(cells);
  std::vector<std::vector<ElemId>> tuple(nc, std::vector<ElemId>(arity));
  for (int c = 0; c < nc; ++c) decode_tuple(c, arity, L->size(), tuple[c].data());
  std::vector<uint32_t> below(nc, 0), above(nc, 0);  // earlier cells <= / >= this one
  for (int c = 0; c < nc; ++c) {
    for (int e = 0; e < c; ++e) {
      bool le = true, ge = true;
      for (int i = 0; i < arity; ++i) {
        le = le && L->leq_u(tuple[e][i], tuple[c][i]);
        ge = ge && L->leq_u(tuple[c][i], tuple[e][i]);
      }
      if (le) below[c] |= 1u << e;
      if (ge) above[c] |= 1u << e;
    }
  }

  std::vector<ElemId> table(nc);
  auto dfs = [&](auto&& self, int c) -> void {
    if (c == nc) {
      ++out.tables_visited;
      MultiMap cand(arity, L, M, MultiMap::Table{table});
      if (!is_n_homomorphism(cand, serial).ok()) return;
      if (symmetric_only && !is_symmetric(cand, serial).ok()) return;
      out.maps.push_back(std::move(cand));
      return;
    }
    for (ElemId v = 0; v < M->size(); ++v) {
      bool feasible = true;
      for (uint32_t m = below[c]; feasible && m; m &= m - 1)
        feasible = M->leq_u(table[std::countr_zero(m)], v);
      for (uint32_t m = above[c]; feasible && m; m &= m - 1)
        feasible = M->leq_u(v, table[std::countr_zero(m)]);
      if (!feasible) continue;
      table[c] = v;
      self(self, c + 1);
    }
  };
  dfs(dfs, 0);
  return out;
}

}  // namespace latmed
