#include "theorems.hpp"

#include <algorithm>
#include <cmath>

#include "median.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace latmed {
namespace {

void require_distributive(const FiniteLattice& L, const char* what) {
  if (!L.birkhoff())
    throw PreconditionError(std::string(what) +
                            " needs a distributive lattice; a hypothesis violation is not a counterexample");
}

Witness lattice_witness(const FiniteLattice& L, std::vector<std::vector<ElemId>> tuples, ElemId lhs,
                        ElemId rhs, std::vector<int> slots, std::string note) {
  Witness w;
  for (const auto& t : tuples) {
    std::vector<std::string> rendered;
    rendered.reserve(t.size());
    for (ElemId x : t) rendered.push_back(L.label(x));
    w.inputs.push_back(std::move(rendered));
  }
  w.input_ids = std::move(tuples);
  w.slots = std::move(slots);
  w.lhs = L.label(lhs);
  w.rhs = L.label(rhs);
  w.lhs_id = lhs;
  w.rhs_id = rhs;
  w.note = std::move(note);
  return w;
}

uint64_t space_pow(uint64_t base, int exp) {
  uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw CapacityError("tuple space does not fit in 64 bits");
    r *= base;
  }
  return r;
}

}  // namespace

const std::vector<MatrixLattice>& default_matrix() {
  static const std::vector<MatrixLattice> matrix = [] {
    std::vector<MatrixLattice> v;
    v.push_back({"C2", FiniteLattice::make_chain(2)});
    v.push_back({"C3", FiniteLattice::make_chain(3)});
    v.push_back({"C4", FiniteLattice::make_chain(4)});
    v.push_back({"C5", FiniteLattice::make_chain(5)});
    v.push_back({"powerset(2)", FiniteLattice::make_powerset({"a", "b"})});
    v.push_back({"powerset(3)", FiniteLattice::make_powerset({"a", "b", "c"})});
    v.push_back({"divisor(36)", FiniteLattice::make_divisor(36)});
    v.push_back({"C3xC2", FiniteLattice::make_product(FiniteLattice::make_chain(3),
                                                      FiniteLattice::make_chain(2))});
    return v;
  }();
  return matrix;
}

VerificationRun verify_prop_medians(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts) {
  require_distributive(*L, "median proposition suite");
  VerificationRun run;
  run.theorem = "prop-medians";
  run.matrix = std::to_string(L->size()) + "-element " + to_string(L->kind()) + ", n<=" +
               std::to_string(n_max);
  const int32_t size = L->size();
  const bool is_chain = L->kind() == LatticeKind::Chain;

  for (int n = 1; n <= n_max; ++n) {
    const uint64_t space = space_pow(size, n);

    auto sorted_input = [&](const std::vector<ElemId>& xs) {
      for (int i = 0; i + 1 < n; ++i)
        if (!L->leq_u(xs[i], xs[i + 1])) return false;
      return true;
    };
    auto ok = [&](uint64_t idx) {
      thread_local std::vector<ElemId> xs, os;
      xs.resize(n);
      decode_tuple(idx, n, size, xs.data());
      auto base = total_orderization(*L, xs);
      for (int t = 0; t + 1 < n; ++t) {
        std::swap(xs[t], xs[t + 1]);
        auto permuted = total_orderization(*L, xs);
        std::swap(xs[t], xs[t + 1]);
        if (permuted != base) return false;
      }
      if (sorted_input(xs)) {
        for (int k = 0; k < n; ++k)
          if (base[k] != xs[k]) return false;
      }
      if (is_chain) {
        os.assign(xs.begin(), xs.end());
        std::sort(os.begin(), os.end());
        for (int k = 0; k < n; ++k)
          if (base[k] != os[k]) return false;
      }
      return true;
    };
    if (auto v = first_violation(space, opts.workers(), ok)) {
      std::vector<ElemId> xs(n);
      decode_tuple(*v, n, size, xs.data());
      auto base = total_orderization(*L, xs);
      run.verdict = Verdict::Fail;
      run.bump("tuples", *v + 1);
      for (int t = 0; t + 1 < n; ++t) {
        std::swap(xs[t], xs[t + 1]);
        auto permuted = total_orderization(*L, xs);
        std::swap(xs[t], xs[t + 1]);
        if (permuted != base) {
          int k = 0;
          while (permuted[k] == base[k]) ++k;
          run.witnesses.push_back(lattice_witness(
              *L, {xs}, base[k], permuted[k], {t + 1, t + 2},
              "M_" + std::to_string(k + 1) + " changes under swapping slots " + std::to_string(t + 1) +
                  "," + std::to_string(t + 2)));
          return run;
        }
      }
      if (sorted_input(xs)) {
        for (int k = 0; k < n; ++k) {
          if (base[k] != xs[k]) {
            run.witnesses.push_back(lattice_witness(*L, {xs}, base[k], xs[k], {k + 1},
                                                    "sorted input: M_" + std::to_string(k + 1) +
                                                        " != x_" + std::to_string(k + 1)));
            return run;
          }
        }
      }
      std::vector<ElemId> os(xs);
      std::sort(os.begin(), os.end());
      int k = 0;
      while (base[k] == os[k]) ++k;
      run.witnesses.push_back(lattice_witness(*L, {xs}, base[k], os[k], {k + 1},
                                              "chain: M_" + std::to_string(k + 1) +
                                                  " != k-th order statistic"));
      return run;
    }

    run.bump("tuples", space);
    run.bump("symmetry-instances", space * static_cast<uint64_t>(n > 0 ? n - 1 : 0));
    uint64_t sorted_count = 0;
    {
      std::vector<ElemId> xs(n);
      for (uint64_t idx = 0; idx < space; ++idx) {
        decode_tuple(idx, n, size, xs.data());
        if (sorted_input(xs)) ++sorted_count;
      }
    }
    run.bump("sorted-instances", sorted_count * n);
    if (is_chain) run.bump("chain-instances", space * n);
  }
  return run;
}

VerificationRun verify_lemma_swap(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts) {
  require_distributive(*L, "median swap lemma");
  VerificationRun run;
  run.theorem = "lemma-swap";
  run.matrix = std::to_string(L->size()) + "-element " + to_string(L->kind()) + ", n<=" +
               std::to_string(n_max);
  const int32_t size = L->size();

  for (int n = 2; n <= n_max; ++n) {
    const uint64_t space = space_pow(size, n);
    auto ok = [&](uint64_t idx) {
      thread_local std::vector<ElemId> xs, ys;
      xs.resize(n);
      decode_tuple(idx, n, size, xs.data());
      ys.assign(xs.begin(), xs.end());
      ys[0] = L->meet_u(xs[0], xs[1]);
      ys[1] = L->join_u(xs[0], xs[1]);
      return total_orderization(*L, ys) == total_orderization(*L, xs);
    };
    if (auto v = first_violation(space, opts.workers(), ok)) {
      std::vector<ElemId> xs(n);
      decode_tuple(*v, n, size, xs.data());
      std::vector<ElemId> ys(xs);
      ys[0] = L->meet_u(xs[0], xs[1]);
      ys[1] = L->join_u(xs[0], xs[1]);
      auto base = total_orderization(*L, xs);
      auto swapped = total_orderization(*L, ys);
      int k = 0;
      while (base[k] == swapped[k]) ++k;
      run.verdict = Verdict::Fail;
      run.bump("instances", *v + 1);
      run.witnesses.push_back(lattice_witness(*L, {xs, ys}, base[k], swapped[k], {k + 1},
                                              "M_" + std::to_string(k + 1) +
                                                  " changes under the first-two meet/join swap"));
      return run;
    }
    run.bump("instances", space * n);
  }
  return run;
}

VerificationRun verify_lemma_extend(const FiniteLattice::Ptr& L, int n_max, const RunOptions& opts) {
  require_distributive(*L, "median extension lemma");
  VerificationRun run;
  run.theorem = "lemma-extend";
  run.matrix = std::to_string(L->size()) + "-element " + to_string(L->kind()) + ", n<=" +
               std::to_string(n_max);
  const int32_t size = L->size();
  if (n_max < 3) {
    run.note = "no k>=2 instances at n<=" + std::to_string(n_max);
    run.bump("instances", 0);
    return run;
  }

  for (int n = 3; n <= n_max; ++n) {
    const uint64_t space = space_pow(size, n);
    auto ok = [&](uint64_t idx) {
      thread_local std::vector<ElemId> xs;
      xs.resize(n);
      decode_tuple(idx, n, size, xs.data());
      for (int m = 2; m < n; ++m) {
        auto pm = total_orderization(*L, std::span<const ElemId>(xs.data(), m));
        auto pm1 = total_orderization(*L, std::span<const ElemId>(xs.data(), m + 1));
        for (int k = 2; k <= m; ++k) {
          ElemId lhs = L->meet_u(pm[k - 1], L->join_u(pm[k - 2], xs[m]));
          if (lhs != pm1[k - 1]) return false;
        }
      }
      return true;
    };
    if (auto v = first_violation(space, opts.workers(), ok)) {
      std::vector<ElemId> xs(n);
      decode_tuple(*v, n, size, xs.data());
      run.verdict = Verdict::Fail;
      run.bump("instances", *v + 1);
      for (int m = 2; m < n; ++m) {
        auto pm = total_orderization(*L, std::span<const ElemId>(xs.data(), m));
        auto pm1 = total_orderization(*L, std::span<const ElemId>(xs.data(), m + 1));
        for (int k = 2; k <= m; ++k) {
          ElemId lhs = L->meet_u(pm[k - 1], L->join_u(pm[k - 2], xs[m]));
          if (lhs != pm1[k - 1]) {
            run.witnesses.push_back(
                lattice_witness(*L, {xs}, lhs, pm1[k - 1], {k, m},
                                "M_{k,m} ^ [M_{k-1,m} v x_{m+1}] != M_{k,m+1} at k=" + std::to_string(k) +
                                    ", m=" + std::to_string(m)));
            return run;
          }
        }
      }
    }
    uint64_t per_tuple = 0;
    for (int m = 2; m < n; ++m) per_tuple += static_cast<uint64_t>(m - 1);
    run.bump("instances", space * per_tuple);
  }
  return run;
}

namespace {

MultiMap table_map(const FiniteLattice::Ptr& L, int arity, std::vector<ElemId> values) {
  return MultiMap(arity, L, L, MultiMap::Table{std::move(values)});
}

void absorb_cross(VerificationRun& run, const MultiMap& T, const ToiCrossReport& cross) {
  run.bump("maps", 1);
  run.bump(cross.toi ? "toi" : "not-toi", 1);
  if (!cross.agree) {
    run.verdict = Verdict::Fail;
    run.bump("disagreements", 1);
    run.note = "conditions disagree on " + T.describe() + ": " + cross.summary().note;
    for (const auto* rep : {&cross.cond2, &cross.cond3, &cross.def, &cross.cond4}) {
      if (rep->witness) {
        run.witnesses.push_back(*rep->witness);
        break;
      }
    }
  }
}

}  // namespace

VerificationRun verify_charsoftoi(const FiniteLattice::Ptr& L, int arity, MapSource source,
                                  uint64_t table_count, const RunOptions& opts) {
  require_distributive(*L, "TOI characterization");
  if (arity < 2) throw PreconditionError("the four conditions need arity >= 2");
  VerificationRun run;
  run.theorem = "charsoftoi";
  const int32_t size = L->size();
  const uint64_t cells = space_pow(size, arity);
  run.bump("maps", 0);
  run.bump("toi", 0);
  run.bump("not-toi", 0);
  run.bump("disagreements", 0);

  switch (source) {
    case MapSource::AllTables: {
      const double bits = cells * std::log2(static_cast<double>(size));
      if (bits > 24.0 + 1e-9)
        throw CapacityError("scanning all tables needs |L|^n * log2|L| <= 24 bits of table freedom");
      const uint64_t space = space_pow(size, static_cast<int>(cells));
      run.matrix = "all " + std::to_string(space) + " tables, " + std::to_string(size) + "-element " +
                   to_string(L->kind()) + "^" + std::to_string(arity);
      std::vector<ElemId> values(cells);
      for (uint64_t t = 0; t < space; ++t) {
        decode_tuple(t, static_cast<int>(cells), size, values.data());
        MultiMap T = table_map(L, arity, values);
        absorb_cross(run, T, cross_check(T, opts));
        if (!run.ok()) return run;
      }
      run.bump("tables-scanned", space);
      break;
    }
    case MapSource::SeededTables: {
      run.matrix = std::to_string(table_count) + " seeded tables, " + std::to_string(size) +
                   "-element " + to_string(L->kind()) + "^" + std::to_string(arity);
      std::vector<ElemId> values(cells);
      for (uint64_t t = 0; t < table_count; ++t) {
        SplitMix64 rng = stream_at(opts.seed, t);
        for (auto& v : values) v = static_cast<ElemId>(rng.below(size));
        MultiMap T = table_map(L, arity, values);
        absorb_cross(run, T, cross_check(T, opts));
        if (!run.ok()) return run;
      }
      break;
    }
    case MapSource::Builtins: {
      run.matrix = "builtins, " + std::to_string(size) + "-element " + to_string(L->kind()) + "^" +
                   std::to_string(arity);
      std::vector<MultiMap> maps;
      for (int k = 1; k <= arity; ++k) maps.emplace_back(arity, L, L, MultiMap::MedianK{k});
      for (int i = 1; i <= arity; ++i) maps.emplace_back(arity, L, L, MultiMap::Projection{i});
      for (ElemId c = 0; c < size; ++c) maps.emplace_back(arity, L, L, MultiMap::Constant{c});
      for (const auto& T : maps) {
        absorb_cross(run, T, cross_check(T, opts));
        if (!run.ok()) return run;
      }
      break;
    }
  }
  return run;
}

VerificationRun verify_multihom_toi(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                    const RunOptions& opts) {
  require_distributive(*L, "TOI-among-homomorphisms theorem");
  VerificationRun run;
  run.theorem = "multihom-toi";
  run.matrix = std::to_string(L->size()) + "-element^" + std::to_string(arity) + " -> " +
               std::to_string(M->size()) + "-element";
  EnumResult homs = enumerate_bihoms(L, M, arity, false);
  run.bump("homs", homs.maps.size());
  run.bump("symmetric", 0);
  run.bump("toi", 0);
  run.bump("tables", homs.table_space);

  for (const auto& T : homs.maps) {
    CheckReport sym = is_symmetric(T, opts);
    CheckReport toi = check_toi_def(T, opts);
    if (sym.ok()) run.bump("symmetric", 1);
    if (toi.ok()) run.bump("toi", 1);
    if (sym.ok() != toi.ok()) {
      run.verdict = Verdict::Fail;
      run.note = "TOI <=> symmetric fails for " + T.describe();
      const CheckReport& bad = sym.ok() ? toi : sym;
      if (bad.witness) run.witnesses.push_back(*bad.witness);
    }
  }
  return run;
}

VerificationRun verify_multihom_toi_geomean(const RunOptions& opts) {
  VerificationRun run;
  run.theorem = "multihom-toi";
  run.matrix = "weighted-geomean(1/3,2/3) on the positive-real chain";
  ChainMap b = ChainMap::weighted_geomean(1.0 / 3.0, 2.0 / 3.0);

  CheckReport hom = chain_is_n_homomorphism(b, opts);
  CheckReport sym = chain_is_symmetric(b, opts);
  CheckReport toi = chain_toi_def(b, opts);
  run.absorb(hom, "hom-samples");
  run.bump("symmetric", sym.ok() ? 1 : 0);
  run.bump("toi", toi.ok() ? 1 : 0);
  if (sym.ok()) {
    run.verdict = Verdict::Fail;
    run.note = "expected symmetry to fail for the weighted geometric mean";
  } else if (toi.ok()) {
    run.verdict = Verdict::Fail;
    run.note = "expected TOI to fail for the weighted geometric mean";
    if (sym.witness) run.witnesses.push_back(*sym.witness);
  } else if (run.ok()) {
    run.note = "homomorphism laws sampled-pass; symmetry and TOI both fail: the equivalence holds";
  }
  return run;
}

VerificationRun verify_sandwich(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                const RunOptions& opts) {
  require_distributive(*L, "sandwich corollary");
  if (arity < 2) throw PreconditionError("the sandwich bound needs arity >= 2");
  VerificationRun run;
  run.theorem = "sandwich";
  run.matrix = std::to_string(L->size()) + "-element^" + std::to_string(arity) + " -> " +
               std::to_string(M->size()) + "-element";
  EnumResult homs = enumerate_bihoms(L, M, arity, true);
  run.bump("symmetric-homs", homs.maps.size());
  const int32_t size = L->size();
  const int n = arity;
  const uint64_t space = space_pow(size, n);

  for (const auto& T : homs.maps) {
    auto ok = [&](uint64_t idx) {
      thread_local std::vector<ElemId> xs, ys;
      xs.resize(n);
      decode_tuple(idx, n, size, xs.data());
      ElemId base = T.eval(xs);
      ys.assign(xs.begin(), xs.end());
      ys[1] = xs[0];
      ElemId a = T.eval(ys);
      ys[0] = xs[1];
      ys[1] = xs[1];
      ElemId b = T.eval(ys);
      return M->leq_u(M->meet_u(a, b), base) && M->leq_u(base, M->join_u(a, b));
    };
    if (auto v = first_violation(space, opts.workers(), ok)) {
      std::vector<ElemId> xs(n);
      decode_tuple(*v, n, size, xs.data());
      ElemId base = T.eval(xs);
      std::vector<ElemId> y1(xs), y2(xs);
      y1[1] = xs[0];
      y2[0] = xs[1];
      ElemId a = T.eval(y1), b = T.eval(y2);
      run.verdict = Verdict::Fail;
      run.bump("instances", *v + 1);
      const bool lower = !M->leq_u(M->meet_u(a, b), base);
      run.witnesses.push_back(map_witness(
          T, {xs}, {}, base, lower ? M->meet_u(a, b) : M->join_u(a, b),
          std::string(lower ? "lower" : "upper") + " sandwich bound fails for " + T.describe()));
      return run;
    }
    run.bump("instances", space);
  }
  return run;
}

VerificationRun verify_kusraev(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                               const RunOptions& opts) {
  require_distributive(*L, "diagonal equivalences");
  VerificationRun run;
  run.theorem = "kusraev";
  run.matrix = std::to_string(L->size()) + "-element^" + std::to_string(arity) + " -> " +
               std::to_string(M->size()) + "-element";
  EnumResult homs = enumerate_bihoms(L, M, arity, true);
  run.bump("symmetric-homs", homs.maps.size());
  const int32_t size = L->size();
  const int n = arity;
  const uint64_t space = space_pow(size, n);

  for (const auto& T : homs.maps) {
    MultiMap P = diagonal(T, opts);
    auto p_of = [&](ElemId x) { return P.eval(std::span<const ElemId>(&x, 1)); };

    const bool a = is_n_homomorphism(P, opts).ok();

    bool b = true;
    std::optional<Witness> bw;
    {
      std::vector<ElemId> xs(n);
      for (uint64_t idx = 0; idx < space && b; ++idx) {
        decode_tuple(idx, n, size, xs.data());
        ElemId base = T.eval(xs);
        ElemId lo = p_of(xs[0]), hi = lo;
        for (int i = 1; i < n; ++i) {
          lo = M->meet_u(lo, p_of(xs[i]));
          hi = M->join_u(hi, p_of(xs[i]));
        }
        if (!M->leq_u(lo, base) || !M->leq_u(base, hi)) {
          b = false;
          bw = map_witness(T, {xs}, {}, base, M->leq_u(lo, base) ? hi : lo,
                           "diagonal sandwich fails for " + T.describe());
        }
      }
    }

    bool c = true;
    std::optional<Witness> cw;
    for (ElemId x = 0; x < size && c; ++x) {
      for (ElemId y = 0; y < size && c; ++y) {
        ElemId px = p_of(x), py = p_of(y);
        for (int k = 1; k <= n - 1 && c; ++k) {
          std::pair<ElemId, int> blocks[2] = {{x, k}, {y, n - k}};
          auto tuple = power_tuple(blocks, n);
          ElemId v = T.eval(tuple);
          if (!M->leq_u(M->meet_u(px, py), v) || !M->leq_u(v, M->join_u(px, py))) {
            c = false;
            cw = map_witness(T, {tuple}, {k}, v,
                             M->leq_u(M->meet_u(px, py), v) ? M->join_u(px, py) : M->meet_u(px, py),
                             "power-tuple sandwich fails for " + T.describe());
          }
        }
      }
    }

    run.bump("maps", 1);
    run.bump("instances", space + static_cast<uint64_t>(size) * size * (n > 1 ? n - 1 : 0));
    if (a != b || b != c) {
      run.verdict = Verdict::Fail;
      run.note = "equivalence fails for " + T.describe() + ": (a)=" + (a ? "true" : "false") +
                 " (b)=" + (b ? "true" : "false") + " (c)=" + (c ? "true" : "false");
      if (bw) run.witnesses.push_back(*bw);
      else if (cw) run.witnesses.push_back(*cw);
      else run.witnesses.push_back(map_witness(T, {}, {}, 0, 0, "diagonal map fails the lattice laws"));
      return run;
    }
  }
  return run;
}

VerificationRun verify_alg_lemma(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                                 const RunOptions&) {
  require_distributive(*L, "join-shift lemma");
  VerificationRun run;
  run.theorem = "alg";
  run.matrix = std::to_string(L->size()) + "-element^" + std::to_string(arity) + " -> " +
               std::to_string(M->size()) + "-element";
  EnumResult homs = enumerate_bihoms(L, M, arity, true);
  run.bump("symmetric-homs", homs.maps.size());
  const int32_t size = L->size();
  const int n = arity;

  for (const auto& T : homs.maps) {
    for (ElemId x = 0; x < size; ++x) {
      for (ElemId y = 0; y < size; ++y) {
        const ElemId xy = L->meet_u(x, y);
        for (int j = 0; j <= n - 1; ++j) {
          for (int m = 1; m + j <= n - 1; ++m) {
            for (int p = m; p + j <= n - 1; ++p) {
              ElemId lhs = 0;
              bool first = true;
              for (int i = m; i <= p; ++i) {
                std::pair<ElemId, int> blocks[3] = {{x, i}, {y, n - i - j}, {xy, j}};
                ElemId v = T.eval(power_tuple(blocks, n));
                lhs = first ? v : M->join_u(lhs, v);
                first = false;
              }
              ElemId rhs = 0;
              first = true;
              for (int i = m - 1; i <= p; ++i) {
                std::pair<ElemId, int> blocks[3] = {{x, i}, {y, n - i - j - 1}, {xy, j + 1}};
                ElemId v = T.eval(power_tuple(blocks, n));
                rhs = first ? v : M->join_u(rhs, v);
                first = false;
              }
              run.bump("instances", 1);
              if (lhs != rhs) {
                run.verdict = Verdict::Fail;
                run.note = "join-shift identity fails for " + T.describe() + " at j=" +
                           std::to_string(j) + ", m=" + std::to_string(m) + ", p=" + std::to_string(p);
                run.witnesses.push_back(map_witness(T, {{x, y}}, {j, m, p}, lhs, rhs, run.note));
                return run;
              }
            }
          }
        }
      }
    }
    run.bump("maps", 1);
  }
  return run;
}

VerificationRun verify_diags(const FiniteLattice::Ptr& L, const FiniteLattice::Ptr& M, int arity,
                             const RunOptions& opts) {
  require_distributive(*L, "diagonal theorem");
  VerificationRun run;
  run.theorem = "diags";
  run.matrix = std::to_string(L->size()) + "-element^" + std::to_string(arity) + " -> " +
               std::to_string(M->size()) + "-element";
  EnumResult homs = enumerate_bihoms(L, M, arity, true);
  run.bump("symmetric-homs", homs.maps.size());
  for (const auto& T : homs.maps) {
    MultiMap P = diagonal(T, opts);
    run.absorb(is_n_homomorphism(P, opts), "instances");
    if (!run.ok()) {
      run.note = "diagonal of " + T.describe() + " is not a lattice homomorphism";
      return run;
    }
  }
  return run;
}

VerificationRun verify_diags_geomean(const RunOptions& opts) {
  VerificationRun run;
  run.theorem = "diags";
  run.matrix = "weighted-geomean(1/3,2/3) on the positive-real chain";
  ChainMap b = ChainMap::weighted_geomean(1.0 / 3.0, 2.0 / 3.0);
  run.absorb(chain_diag_identities(b, opts), "samples");
  CheckReport sym = chain_is_symmetric(b, opts);
  if (sym.ok()) {
    run.verdict = Verdict::Fail;
    run.note = "expected symmetry to fail for the weighted geometric mean";
  } else if (run.ok()) {
    run.note = "diagonal identities hold although the map is not symmetric";
  }
  return run;
}

const std::vector<std::string>& verifier_ids() {
  static const std::vector<std::string> ids = {"prop-medians", "lemma-swap", "lemma-extend",
                                               "charsoftoi",   "multihom-toi", "sandwich",
                                               "kusraev",      "alg",          "diags"};
  return ids;
}

VerifyOutcome run_verifier(const std::string& id, const VerifierConfig& cfg, const RunOptions& opts) {
  VerifyOutcome out;
  out.id = id;

  if (id == "all") {
    for (const auto& vid : verifier_ids()) {
      VerifyOutcome sub = run_verifier(vid, cfg, opts);
      for (auto& r : sub.runs) out.runs.push_back(std::move(r));
    }
    return out;
  }

  auto matrix_legs = [&]() -> std::vector<MatrixLattice> {
    if (cfg.lattice) {
      return {{std::to_string(cfg.lattice->size()) + "-element " + to_string(cfg.lattice->kind()),
               cfg.lattice}};
    }
    return default_matrix();
  };
  auto named = [&](VerificationRun run, const std::string& name) {
    run.matrix = name;
    out.runs.push_back(std::move(run));
  };

  const auto c2 = FiniteLattice::make_chain(2);
  const auto c3 = FiniteLattice::make_chain(3);
  const bool pair_override = cfg.domain || cfg.codomain || cfg.arity.has_value();
  auto pair_legs = [&]() -> std::vector<std::tuple<std::string, FiniteLattice::Ptr, FiniteLattice::Ptr, int>> {
    if (pair_override) {
      FiniteLattice::Ptr dom = cfg.domain ? cfg.domain : c2;
      FiniteLattice::Ptr cod = cfg.codomain ? cfg.codomain : dom;
      int n = cfg.arity.value_or(2);
      return {{std::to_string(dom->size()) + "-element^" + std::to_string(n) + " -> " +
                   std::to_string(cod->size()) + "-element",
               dom, cod, n}};
    }
    return {{"C2^2->C2", c2, c2, 2}, {"C3^2->C3", c3, c3, 2}, {"C2^3->C2", c2, c2, 3}};
  };

  if (id == "prop-medians") {
    for (const auto& leg : matrix_legs())
      named(verify_prop_medians(leg.lattice, cfg.n_max.value_or(4), opts),
            leg.name + ", n<=" + std::to_string(cfg.n_max.value_or(4)));
  } else if (id == "lemma-swap") {
    for (const auto& leg : matrix_legs())
      named(verify_lemma_swap(leg.lattice, cfg.n_max.value_or(4), opts),
            leg.name + ", n<=" + std::to_string(cfg.n_max.value_or(4)));
  } else if (id == "lemma-extend") {
    for (const auto& leg : matrix_legs())
      named(verify_lemma_extend(leg.lattice, cfg.n_max.value_or(4), opts),
            leg.name + ", n<=" + std::to_string(cfg.n_max.value_or(4)));
  } else if (id == "charsoftoi") {
    if (cfg.lattice || cfg.arity.has_value()) {
      FiniteLattice::Ptr L = cfg.lattice ? cfg.lattice : c3;
      int arity = cfg.arity.value_or(2);
      const double bits = std::pow(static_cast<double>(L->size()), arity) *
                          std::log2(static_cast<double>(L->size()));
      if (bits <= 24.0 + 1e-9)
        out.runs.push_back(verify_charsoftoi(L, arity, MapSource::AllTables, 0, opts));
      else
        out.runs.push_back(verify_charsoftoi(L, arity, MapSource::SeededTables, 500, opts));
    } else {
      out.runs.push_back(verify_charsoftoi(c2, 2, MapSource::AllTables, 0, opts));
      out.runs.push_back(verify_charsoftoi(c3, 2, MapSource::SeededTables, 500, opts));
      out.runs.push_back(verify_charsoftoi(c2, 3, MapSource::SeededTables, 200, opts));
      out.runs.push_back(verify_charsoftoi(c3, 3, MapSource::Builtins, 0, opts));
    }
  } else if (id == "multihom-toi") {
    if (pair_override) {
      for (const auto& [name, dom, cod, n] : pair_legs())
        named(verify_multihom_toi(dom, cod, n, opts), name);
    } else {
      named(verify_multihom_toi(c2, c2, 2, opts), "C2^2->C2");
      named(verify_multihom_toi(c3, c3, 2, opts), "C3^2->C3");
      out.runs.push_back(verify_multihom_toi_geomean(opts));
    }
  } else if (id == "sandwich") {
    for (const auto& [name, dom, cod, n] : pair_legs()) named(verify_sandwich(dom, cod, n, opts), name);
  } else if (id == "kusraev") {
    for (const auto& [name, dom, cod, n] : pair_legs()) named(verify_kusraev(dom, cod, n, opts), name);
  } else if (id == "alg") {
    for (const auto& [name, dom, cod, n] : pair_legs()) named(verify_alg_lemma(dom, cod, n, opts), name);
  } else if (id == "diags") {
    for (const auto& [name, dom, cod, n] : pair_legs()) named(verify_diags(dom, cod, n, opts), name);
    if (!pair_override) out.runs.push_back(verify_diags_geomean(opts));
  } else {
    std::string known;
    for (const auto& vid : verifier_ids()) known += (known.empty() ? "" : ", ") + vid;
    throw InvalidArgumentError("unknown verifier id '" + id + "'; expected all or one of: " + known);
  }
  return out;
}

}  // namespace latmed
