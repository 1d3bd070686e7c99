#include "toi.hpp"

#include "median.hpp"
#include "parallel.hpp"

namespace latmed {

CheckReport check_toi_def(const MultiMap& T, const RunOptions& opts) {
  CheckReport rep;
  rep.law = "toi-def";
  const int n = T.arity();
  const int32_t size = T.domain().size();
  const uint64_t space = T.tuple_space();
  rep.counts = space;

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    decode_tuple(idx, n, size, xs.data());
    auto to = total_orderization(T.domain(), xs);
    return T.eval(xs) == T.eval(to);
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    decode_tuple(*v, n, size, xs.data());
    auto to = total_orderization(T.domain(), xs);
    rep.verdict = Verdict::Fail;
    rep.counts = *v + 1;
    rep.witness =
        map_witness(T, {xs, to}, {}, T.eval(xs), T.eval(to), "value changes under total orderization");
  }
  return rep;
}

CheckReport check_toi_cond2(const MultiMap& T, const RunOptions& opts) {
  if (T.arity() < 2) throw PreconditionError("condition 2 needs arity >= 2");
  CheckReport rep;
  rep.law = "toi-cond2";
  const int n = T.arity();
  const FiniteLattice& L = T.domain();
  const int32_t size = L.size();
  const uint64_t space = T.tuple_space();
  rep.counts = space;

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    decode_tuple(idx, n, size, xs.data());
    ElemId base = T.eval(xs);
    const ElemId x0 = xs[0], x1 = xs[1];
    xs[0] = L.meet_u(x0, x1);
    xs[1] = L.join_u(x0, x1);
    ElemId at_swap = T.eval(xs);
    xs[0] = x0;
    xs[1] = x1;
    if (at_swap != base) return false;
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(xs[t], xs[t + 1]);
      ElemId transposed = T.eval(xs);
      std::swap(xs[t], xs[t + 1]);
      if (transposed != base) return false;
    }
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    decode_tuple(*v, n, size, xs.data());
    ElemId base = T.eval(xs);
    std::vector<ElemId> ys = xs;
    ys[0] = L.meet_u(xs[0], xs[1]);
    ys[1] = L.join_u(xs[0], xs[1]);
    ElemId at_swap = T.eval(ys);
    rep.verdict = Verdict::Fail;
    rep.counts = *v + 1;
    if (at_swap != base) {
      rep.witness =
          map_witness(T, {xs, ys}, {1, 2}, base, at_swap, "first-two meet/join swap changes the value");
      return rep;
    }
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(xs[t], xs[t + 1]);
      ElemId transposed = T.eval(xs);
      std::swap(xs[t], xs[t + 1]);
      if (transposed != base) {
        rep.witness = map_witness(T, {xs}, {t + 1, t + 2}, base, transposed,
                                  "swapping slots " + std::to_string(t + 1) + "," + std::to_string(t + 2) +
                                      " changes the value");
        return rep;
      }
    }
  }
  return rep;
}

CheckReport check_toi_cond3(const MultiMap& T, const RunOptions& opts) {
  if (T.arity() < 2) throw PreconditionError("condition 3 needs arity >= 2");
  CheckReport rep;
  rep.law = "toi-cond3";
  const int n = T.arity();
  const FiniteLattice& L = T.domain();
  const int32_t size = L.size();
  const uint64_t space = T.tuple_space();
  rep.counts = space;

  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    decode_tuple(idx, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const ElemId xi = xs[i], xj = xs[j];
        xs[i] = L.meet_u(xi, xj);
        xs[j] = L.join_u(xi, xj);
        ElemId replaced = T.eval(xs);
        xs[i] = xi;
        xs[j] = xj;
        if (replaced != base) return false;
      }
    }
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    decode_tuple(*v, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<ElemId> ys = xs;
        ys[i] = L.meet_u(xs[i], xs[j]);
        ys[j] = L.join_u(xs[i], xs[j]);
        ElemId replaced = T.eval(ys);
        if (replaced != base) {
          rep.verdict = Verdict::Fail;
          rep.counts = *v + 1;
          rep.witness = map_witness(T, {xs, ys}, {i + 1, j + 1}, base, replaced,
                                    "meet/join replacement in slots " + std::to_string(i + 1) + "," +
                                        std::to_string(j + 1) + " changes the value");
          return rep;
        }
      }
    }
  }
  return rep;
}

CheckReport check_toi_cond4(const MultiMap& T, const RunOptions& opts) {
  if (T.arity() < 2) throw PreconditionError("condition 4 needs arity >= 2");
  CheckReport rep;
  rep.law = "toi-cond4";
  const int n = T.arity();
  const int32_t size = T.domain().size();
  const uint64_t space = T.tuple_space();
  rep.counts = space;

  auto orderized = [&](const std::vector<ElemId>& xs, int m) {
    auto prefix = total_orderization(T.domain(), std::span<const ElemId>(xs.data(), m));
    prefix.insert(prefix.end(), xs.begin() + m, xs.end());
    return prefix;
  };
  auto ok = [&](uint64_t idx) {
    thread_local std::vector<ElemId> xs;
    xs.resize(n);
    decode_tuple(idx, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int m = 2; m <= n; ++m)
      if (T.eval(orderized(xs, m)) != base) return false;
    return true;
  };
  if (auto v = first_violation(space, opts.workers(), ok)) {
    std::vector<ElemId> xs(n);
    decode_tuple(*v, n, size, xs.data());
    ElemId base = T.eval(xs);
    for (int m = 2; m <= n; ++m) {
      auto ys = orderized(xs, m);
      ElemId ordered = T.eval(ys);
      if (ordered != base) {
        rep.verdict = Verdict::Fail;
        rep.counts = *v + 1;
        rep.witness = map_witness(T, {xs, ys}, {m}, base, ordered,
                                  "m=" + std::to_string(m) + " prefix orderization changes the value");
        return rep;
      }
    }
  }
  return rep;
}

namespace {

ToiCrossReport finish_cross(ToiCrossReport r) {
  const bool o2 = r.cond2.ok(), o3 = r.cond3.ok(), od = r.def.ok(), o4 = r.cond4.ok();
  r.agree = o2 == o3 && o3 == od && od == o4;
  r.toi = r.agree && od;
  return r;
}

}  // namespace

CheckReport ToiCrossReport::summary() const {
  CheckReport rep;
  rep.law = "toi-cross-check";
  const bool sampled = cond2.verdict == Verdict::SampledPass || cond3.verdict == Verdict::SampledPass ||
                       def.verdict == Verdict::SampledPass || cond4.verdict == Verdict::SampledPass;
  rep.verdict = toi ? (sampled ? Verdict::SampledPass : Verdict::Pass) : Verdict::Fail;
  rep.counts = cond2.counts + cond3.counts + def.counts + cond4.counts;
  rep.note = std::string(agree ? "" : "conditions disagree: ") + "c2=" + to_string(cond2.verdict) +
             " c3=" + to_string(cond3.verdict) + " def=" + to_string(def.verdict) +
             " c4=" + to_string(cond4.verdict);
  if (!toi) {
    // The definition witness is canonical; the others stand in when the
    // checkers split.
    if (def.witness) rep.witness = def.witness;
    else
      for (const auto* c : {&cond2, &cond3, &cond4})
        if (c->witness) {
          rep.witness = c->witness;
          break;
        }
  }
  return rep;
}

ToiCrossReport cross_check(const MultiMap& T, const RunOptions& opts) {
  if (T.arity() < 2) throw PreconditionError("cross-check needs arity >= 2");
  if (!T.domain().birkhoff())
    throw PreconditionError("cross-check needs a distributive domain; the four conditions are only "
                            "equivalent there");
  ToiCrossReport r;
  r.cond2 = check_toi_cond2(T, opts);
  r.cond3 = check_toi_cond3(T, opts);
  r.def = check_toi_def(T, opts);
  r.cond4 = check_toi_cond4(T, opts);
  return finish_cross(std::move(r));
}

ToiCrossReport cross_check(const ChainMap& T, const RunOptions& opts) {
  if (T.arity() < 2) throw PreconditionError("cross-check needs arity >= 2");
  ToiCrossReport r;
  r.cond2 = chain_toi_cond2(T, opts);
  r.cond3 = chain_toi_cond3(T, opts);
  r.def = chain_toi_def(T, opts);
  r.cond4 = chain_toi_cond4(T, opts);
  return finish_cross(std::move(r));
}

}  // namespace latmed
