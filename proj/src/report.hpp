#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace latmed {

// Element of a finite lattice: a dense index into the lattice's element list,
// meaningful only relative to that lattice instance.
using ElemId = int32_t;

struct RunOptions {
  int parallelism = 0;        // worker threads; 0 = hardware concurrency
  uint64_t seed = 0;          // seeds every sampled or randomized stage
  uint64_t samples = 100000;  // sample count for implicit-chain checks

  int workers() const {
    if (parallelism > 0) return parallelism;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? static_cast<int>(hc) : 1;
  }
};

// sampled-pass is reserved for implicit-chain checks: no exhaustive claim is
// ever made about the real line.
enum class Verdict { Pass, Fail, SampledPass };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    default: return "sampled-pass";
  }
}

// Concrete evidence for a violated law. Invariant: replaying `input_ids`
// (finite case) or `real_inputs` (implicit-chain case) through the law
// reproduces lhs != rhs. Labels are rendered at capture time because a
// verification run may span several lattices.
struct Witness {
  std::vector<std::vector<std::string>> inputs;   // rendered tuples
  std::vector<std::vector<ElemId>> input_ids;     // finite tuples, for replay
  std::vector<std::vector<double>> real_inputs;   // implicit-chain tuples
  std::vector<int> slots;                         // 1-based, when slot-specific
  std::string lhs;
  std::string rhs;
  ElemId lhs_id = -1;
  ElemId rhs_id = -1;
  std::string note;
};

struct CheckReport {
  std::string law;
  Verdict verdict = Verdict::Pass;
  // Law instances examined in canonical (lexicographic) order: the full space
  // on pass, the witness position + 1 on fail. Independent of worker count.
  uint64_t counts = 0;
  std::optional<Witness> witness;
  std::string note;

  bool ok() const { return verdict != Verdict::Fail; }
};

// Result of replaying one named result over one lattice/map matrix leg.
struct VerificationRun {
  std::string theorem;
  std::string matrix;
  Verdict verdict = Verdict::Pass;
  std::vector<std::pair<std::string, uint64_t>> counts;  // insertion-ordered
  std::vector<Witness> witnesses;
  std::string note;

  bool ok() const { return verdict != Verdict::Fail; }

  void bump(const std::string& key, uint64_t delta) {
    for (auto& kv : counts) {
      if (kv.first == key) {
        kv.second += delta;
        return;
      }
    }
    counts.emplace_back(key, delta);
  }

  uint64_t count(const std::string& key) const {
    for (const auto& kv : counts)
      if (kv.first == key) return kv.second;
    return 0;
  }

  // Folds a sub-check into this run; sampled-pass does not upgrade to pass.
  void absorb(const CheckReport& r, const std::string& count_key) {
    bump(count_key, r.counts);
    if (r.verdict == Verdict::Fail) {
      verdict = Verdict::Fail;
      if (r.witness) witnesses.push_back(*r.witness);
    } else if (r.verdict == Verdict::SampledPass && verdict == Verdict::Pass) {
      verdict = Verdict::SampledPass;
    }
  }
};

}  // namespace latmed
