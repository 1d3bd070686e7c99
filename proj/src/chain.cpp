#include "chain.hpp"

#include <algorithm>
#include <cstdio>

#include "errors.hpp"
#include "rng.hpp"

namespace latmed {

std::string render_real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

ChainMap::ChainMap(std::vector<double> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw FormatError("chain map needs at least one weight");
  for (double w : weights_)
    if (!std::isfinite(w)) throw FormatError("chain map weights must be finite");
}

ChainMap ChainMap::weighted_geomean(double w1, double w2) {
  if (!(w1 > 0.0) || !(w2 > 0.0)) throw FormatError("weighted geometric mean needs positive weights");
  if (std::fabs(w1 + w2 - 1.0) > 1e-9) throw FormatError("weighted geometric mean needs w1 + w2 = 1");
  return ChainMap({w1, w2});
}

double ChainMap::eval(std::span<const double> xs) const {
  if (xs.size() != weights_.size())
    throw InvalidArgumentError("chain map arity is " + std::to_string(weights_.size()) + "; got " +
                               std::to_string(xs.size()) + " values");
  double out = 1.0;
  for (size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0)) throw InvalidArgumentError("chain values must be positive");
    out *= std::pow(xs[i], weights_[i]);
  }
  return out;
}

std::string ChainMap::describe() const {
  std::string out = "weighted-geomean(";
  for (size_t i = 0; i < weights_.size(); ++i) {
    if (i) out += ',';
    out += render_real(weights_[i]);
  }
  return out + ")";
}

namespace {

// 3^b by repeated multiply/divide; stays bit-identical across platforms.
double pow3(int b) {
  double v = 1.0;
  for (int i = 0; i < b; ++i) v *= 3.0;
  for (int i = 0; i > b; --i) v /= 3.0;
  return v;
}

}  // namespace

std::vector<double> chain_sample_tuple(int arity, uint64_t seed, uint64_t index) {
  SplitMix64 rng = stream_at(seed, index);
  std::vector<double> out(arity);
  for (int i = 0; i < arity; ++i) {
    if (rng.below(4) < 3) {
      int a = static_cast<int>(rng.below(13)) - 6;
      int b = static_cast<int>(rng.below(13)) - 6;
      out[i] = std::ldexp(pow3(b), a);
    } else {
      out[i] = static_cast<double>(rng.below(999900) + 1) / 10000.0;
    }
  }
  return out;
}

namespace {

Witness chain_witness(std::vector<std::vector<double>> tuples, std::vector<int> slots, double lhs,
                      double rhs, std::string note) {
  Witness w;
  for (const auto& t : tuples) {
    std::vector<std::string> rendered;
    rendered.reserve(t.size());
    for (double v : t) rendered.push_back(render_real(v));
    w.inputs.push_back(std::move(rendered));
  }
  w.real_inputs = std::move(tuples);
  w.slots = std::move(slots);
  w.lhs = render_real(lhs);
  w.rhs = render_real(rhs);
  w.note = std::move(note);
  return w;
}

// Probes {1,8}^len in lex order, then opts.samples seeded tuples. check
// returns a witness on violation.
template <class CheckFn>
CheckReport run_sampled(const char* law, int tuple_len, const RunOptions& opts, CheckFn&& check) {
  CheckReport rep;
  rep.law = law;
  std::vector<double> xs(tuple_len);
  uint64_t examined = 0;
  const uint64_t probes = 1ull << tuple_len;
  for (uint64_t p = 0; p < probes; ++p) {
    for (int i = 0; i < tuple_len; ++i) xs[i] = ((p >> (tuple_len - 1 - i)) & 1) ? 8.0 : 1.0;
    ++examined;
    if (auto w = check(std::span<const double>(xs))) {
      rep.verdict = Verdict::Fail;
      rep.counts = examined;
      rep.witness = std::move(*w);
      return rep;
    }
  }
  for (uint64_t s = 0; s < opts.samples; ++s) {
    auto tuple = chain_sample_tuple(tuple_len, opts.seed, s);
    ++examined;
    if (auto w = check(std::span<const double>(tuple))) {
      rep.verdict = Verdict::Fail;
      rep.counts = examined;
      rep.witness = std::move(*w);
      return rep;
    }
  }
  rep.verdict = Verdict::SampledPass;
  rep.counts = examined;
  rep.note = "sampled";
  return rep;
}

}  // namespace

CheckReport chain_is_symmetric(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  return run_sampled("symmetry", n, opts, [&](std::span<const double> xs) -> std::optional<Witness> {
    std::vector<double> ys(xs.begin(), xs.end());
    double base = m.eval(ys);
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(ys[t], ys[t + 1]);
      double swapped = m.eval(ys);
      std::swap(ys[t], ys[t + 1]);
      if (!chain_eq(base, swapped))
        return chain_witness({ys}, {t + 1, t + 2}, base, swapped,
                             "swapping slots " + std::to_string(t + 1) + "," + std::to_string(t + 2) +
                                 " changes the value");
    }
    return std::nullopt;
  });
}

CheckReport chain_is_n_homomorphism(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  return run_sampled("n-homomorphism", n + 1, opts, [&](std::span<const double> all) -> std::optional<Witness> {
    std::vector<double> xs(all.begin(), all.end() - 1);
    const double y = all.back();
    double base = m.eval(xs);
    for (int i = 0; i < n; ++i) {
      const double orig = xs[i];
      xs[i] = y;
      double at_y = m.eval(xs);
      xs[i] = std::max(orig, y);
      double at_join = m.eval(xs);
      xs[i] = std::min(orig, y);
      double at_meet = m.eval(xs);
      xs[i] = orig;
      if (!chain_eq(at_join, std::max(base, at_y))) {
        std::vector<double> ys(xs);
        ys[i] = y;
        return chain_witness({std::vector<double>(xs), ys}, {i + 1}, at_join, std::max(base, at_y),
                             "join law in slot " + std::to_string(i + 1));
      }
      if (!chain_eq(at_meet, std::min(base, at_y))) {
        std::vector<double> ys(xs);
        ys[i] = y;
        return chain_witness({std::vector<double>(xs), ys}, {i + 1}, at_meet, std::min(base, at_y),
                             "meet law in slot " + std::to_string(i + 1));
      }
    }
    return std::nullopt;
  });
}

CheckReport chain_toi_def(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  return run_sampled("toi-def", n, opts, [&](std::span<const double> xs) -> std::optional<Witness> {
    std::vector<double> sorted(xs.begin(), xs.end());
    std::sort(sorted.begin(), sorted.end());
    double lhs = m.eval(xs);
    double rhs = m.eval(sorted);
    if (!chain_eq(lhs, rhs))
      return chain_witness({std::vector<double>(xs.begin(), xs.end())}, {}, lhs, rhs,
                           "value changes under total orderization");
    return std::nullopt;
  });
}

CheckReport chain_toi_cond2(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  if (n < 2) throw PreconditionError("condition 2 needs arity >= 2");
  return run_sampled("toi-cond2", n, opts, [&](std::span<const double> xs) -> std::optional<Witness> {
    std::vector<double> ys(xs.begin(), xs.end());
    double base = m.eval(ys);
    double lo = std::min(ys[0], ys[1]), hi = std::max(ys[0], ys[1]);
    std::vector<double> swapped(ys);
    swapped[0] = lo;
    swapped[1] = hi;
    double at_swap = m.eval(swapped);
    if (!chain_eq(base, at_swap))
      return chain_witness({ys}, {1, 2}, base, at_swap, "first-two meet/join swap changes the value");
    for (int t = 0; t + 1 < n; ++t) {
      std::swap(ys[t], ys[t + 1]);
      double transposed = m.eval(ys);
      std::swap(ys[t], ys[t + 1]);
      if (!chain_eq(base, transposed))
        return chain_witness({ys}, {t + 1, t + 2}, base, transposed,
                             "swapping slots " + std::to_string(t + 1) + "," + std::to_string(t + 2) +
                                 " changes the value");
    }
    return std::nullopt;
  });
}

CheckReport chain_toi_cond3(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  if (n < 2) throw PreconditionError("condition 3 needs arity >= 2");
  return run_sampled("toi-cond3", n, opts, [&](std::span<const double> xs) -> std::optional<Witness> {
    double base = m.eval(xs);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        std::vector<double> ys(xs.begin(), xs.end());
        ys[i] = std::min(xs[i], xs[j]);
        ys[j] = std::max(xs[i], xs[j]);
        double replaced = m.eval(ys);
        if (!chain_eq(base, replaced))
          return chain_witness({std::vector<double>(xs.begin(), xs.end())}, {i + 1, j + 1}, base, replaced,
                               "meet/join replacement in slots " + std::to_string(i + 1) + "," +
                                   std::to_string(j + 1) + " changes the value");
      }
    }
    return std::nullopt;
  });
}

CheckReport chain_toi_cond4(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  if (n < 2) throw PreconditionError("condition 4 needs arity >= 2");
  return run_sampled("toi-cond4", n, opts, [&](std::span<const double> xs) -> std::optional<Witness> {
    double base = m.eval(xs);
    for (int prefix = 2; prefix <= n; ++prefix) {
      std::vector<double> ys(xs.begin(), xs.end());
      std::sort(ys.begin(), ys.begin() + prefix);
      double ordered = m.eval(ys);
      if (!chain_eq(base, ordered))
        return chain_witness({std::vector<double>(xs.begin(), xs.end())}, {prefix}, base, ordered,
                             "m=" + std::to_string(prefix) + " prefix orderization changes the value");
    }
    return std::nullopt;
  });
}

CheckReport chain_diag_identities(const ChainMap& m, const RunOptions& opts) {
  const int n = m.arity();
  return run_sampled("diagonal-identities", 2, opts, [&](std::span<const double> pair) -> std::optional<Witness> {
    const double x = pair[0], y = pair[1];
    std::vector<double> tx(n, x), ty(n, y), tmeet(n, std::min(x, y)), tjoin(n, std::max(x, y));
    double px = m.eval(tx), py = m.eval(ty);
    double at_meet = m.eval(tmeet);
    if (!chain_eq(at_meet, std::min(px, py)))
      return chain_witness({{x, y}}, {}, at_meet, std::min(px, py), "diagonal meet identity fails");
    double at_join = m.eval(tjoin);
    if (!chain_eq(at_join, std::max(px, py)))
      return chain_witness({{x, y}}, {}, at_join, std::max(px, py), "diagonal join identity fails");
    return std::nullopt;
  });
}

}  // namespace latmed
