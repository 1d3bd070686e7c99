#include <doctest.h>

#include "theorems.hpp"

using namespace latmed;

namespace {

RunOptions serial() {
  RunOptions o;
  o.parallelism = 1;
  return o;
}

FiniteLattice::Ptr m3() {
  return FiniteLattice::make_explicit(
      {"0", "a", "b", "c", "1"},
      {{0, 0, 0, 0, 0}, {0, 1, 0, 0, 1}, {0, 0, 2, 0, 2}, {0, 0, 0, 3, 3}, {0, 1, 2, 3, 4}},
      {{0, 1, 2, 3, 4}, {1, 1, 4, 4, 4}, {2, 4, 2, 4, 4}, {3, 4, 4, 3, 4}, {4, 4, 4, 4, 4}});
}

}  // namespace

TEST_SUITE("theorems") {

TEST_CASE("median proposition suite passes exhaustively") {
  auto run = verify_prop_medians(FiniteLattice::make_chain(4), 3);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("tuples") == 84);
  CHECK(run.count("symmetry-instances") == 144);
  CHECK(run.count("chain-instances") == 228);
  CHECK(run.witnesses.empty());

  auto p2 = verify_prop_medians(FiniteLattice::make_powerset({"a", "b"}), 3);
  CHECK(p2.verdict == Verdict::Pass);
  CHECK(p2.count("tuples") == 4 + 16 + 64);
  CHECK(p2.count("chain-instances") == 0);
}

TEST_CASE("non-distributive lattices are rejected as hypothesis violations") {
  CHECK_THROWS_AS(verify_prop_medians(m3(), 3), PreconditionError);
  CHECK_THROWS_AS(verify_lemma_swap(m3(), 3), PreconditionError);
  CHECK_THROWS_AS(verify_lemma_extend(m3(), 3), PreconditionError);
  CHECK_THROWS_AS(verify_multihom_toi(m3(), m3(), 2), PreconditionError);
  CHECK_THROWS_AS(verify_charsoftoi(m3(), 2, MapSource::Builtins, 0), PreconditionError);
}

TEST_CASE("swap lemma counts every arity") {
  auto run = verify_lemma_swap(FiniteLattice::make_chain(3), 4);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("instances") == 423);
}

TEST_CASE("extension lemma covers all prefix positions") {
  auto run = verify_lemma_extend(FiniteLattice::make_powerset({"a", "b"}), 4);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("instances") == 832);

  auto empty = verify_lemma_extend(FiniteLattice::make_chain(3), 2);
  CHECK(empty.verdict == Verdict::Pass);
  CHECK(empty.count("instances") == 0);
  CHECK(empty.note == "no k>=2 instances at n<=2");
}

TEST_CASE("characterization agrees on every binary table") {
  auto run = verify_charsoftoi(FiniteLattice::make_chain(2), 2, MapSource::AllTables, 0);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("maps") == 16);
  CHECK(run.count("toi") == 8);
  CHECK(run.count("not-toi") == 8);
  CHECK(run.count("disagreements") == 0);
  CHECK(run.count("tables-scanned") == 16);
}

TEST_CASE("characterization agrees on seeded tables") {
  auto c3run = verify_charsoftoi(FiniteLattice::make_chain(3), 2, MapSource::SeededTables, 500);
  CHECK(c3run.verdict == Verdict::Pass);
  CHECK(c3run.count("maps") == 500);
  CHECK(c3run.count("toi") == 26);
  CHECK(c3run.count("disagreements") == 0);

  auto c2run = verify_charsoftoi(FiniteLattice::make_chain(2), 3, MapSource::SeededTables, 200);
  CHECK(c2run.count("maps") == 200);
  CHECK(c2run.count("toi") == 12);
}

TEST_CASE("characterization classifies the builtin maps") {
  auto run = verify_charsoftoi(FiniteLattice::make_chain(3), 3, MapSource::Builtins, 0);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("maps") == 9);
  CHECK(run.count("toi") == 6);
  CHECK(run.count("not-toi") == 3);
}

TEST_CASE("characterization capacity and arity bounds") {
  CHECK_THROWS_AS(verify_charsoftoi(FiniteLattice::make_chain(4), 2, MapSource::AllTables, 0),
                  CapacityError);
  CHECK_THROWS_AS(verify_charsoftoi(FiniteLattice::make_chain(2), 1, MapSource::AllTables, 0),
                  PreconditionError);
}

TEST_CASE("invariance coincides with symmetry among homomorphisms") {
  auto c2run = verify_multihom_toi(FiniteLattice::make_chain(2), FiniteLattice::make_chain(2), 2);
  CHECK(c2run.verdict == Verdict::Pass);
  CHECK(c2run.count("homs") == 6);
  CHECK(c2run.count("symmetric") == 4);
  CHECK(c2run.count("toi") == 4);
  CHECK(c2run.count("tables") == 16);

  auto c3run = verify_multihom_toi(FiniteLattice::make_chain(3), FiniteLattice::make_chain(3), 2);
  CHECK(c3run.count("homs") == 175);
  CHECK(c3run.count("symmetric") == 35);
  CHECK(c3run.count("toi") == 35);
}

TEST_CASE("the geometric mean separates the homomorphism laws from symmetry") {
  auto run = verify_multihom_toi_geomean();
  CHECK(run.verdict == Verdict::SampledPass);
  CHECK(run.count("hom-samples") == 100008);
  CHECK(run.count("symmetric") == 0);
  CHECK(run.count("toi") == 0);
  CHECK(run.note == "homomorphism laws sampled-pass; symmetry and TOI both fail: the equivalence holds");
}

TEST_CASE("sandwich bound holds for every symmetric homomorphism") {
  auto run = verify_sandwich(FiniteLattice::make_chain(2), FiniteLattice::make_chain(2), 2);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("symmetric-homs") == 4);
  CHECK(run.count("instances") == 16);
  CHECK_THROWS_AS(verify_sandwich(FiniteLattice::make_chain(2), FiniteLattice::make_chain(2), 1),
                  PreconditionError);
}

TEST_CASE("diagonal equivalences agree on all three forms") {
  auto run = verify_kusraev(FiniteLattice::make_chain(2), FiniteLattice::make_chain(2), 3);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("maps") == 5);
  CHECK(run.count("instances") == 80);
}

TEST_CASE("join-shift identity holds over all block shapes") {
  auto run = verify_alg_lemma(FiniteLattice::make_chain(3), FiniteLattice::make_chain(3), 2);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("symmetric-homs") == 35);
  CHECK(run.count("maps") == 35);
  CHECK(run.count("instances") == 315);
}

TEST_CASE("diagonals of symmetric homomorphisms are lattice homomorphisms") {
  auto run = verify_diags(FiniteLattice::make_chain(2), FiniteLattice::make_chain(2), 2);
  CHECK(run.verdict == Verdict::Pass);
  CHECK(run.count("symmetric-homs") == 4);
  CHECK(run.count("instances") == 16);

  auto geo = verify_diags_geomean();
  CHECK(geo.verdict == Verdict::SampledPass);
  CHECK(geo.count("samples") == 100004);
  CHECK(geo.note == "diagonal identities hold although the map is not symmetric");
}

TEST_CASE("the full matrix spans forty-four runs") {
  VerifierConfig cfg;
  auto out = run_verifier("all", cfg);
  CHECK(out.runs.size() == 44);
  CHECK(out.ok());
  bool any_sampled = false;
  for (const auto& r : out.runs) any_sampled = any_sampled || r.verdict == Verdict::SampledPass;
  CHECK(any_sampled);
}

TEST_CASE("config overrides narrow a verifier to one leg") {
  VerifierConfig cfg;
  cfg.lattice = FiniteLattice::make_chain(2);
  cfg.n_max = 3;
  auto out = run_verifier("lemma-swap", cfg);
  REQUIRE(out.runs.size() == 1);
  CHECK(out.runs[0].matrix == "2-element chain, n<=3");
  CHECK(out.runs[0].count("instances") == 32);

  VerifierConfig pair;
  pair.domain = FiniteLattice::make_chain(3);
  pair.arity = 2;
  auto sand = run_verifier("sandwich", pair);
  REQUIRE(sand.runs.size() == 1);
  CHECK(sand.runs[0].matrix == "3-element^2 -> 3-element");
  CHECK(sand.runs[0].count("symmetric-homs") == 35);

  VerifierConfig big;
  big.lattice = FiniteLattice::make_chain(4);
  auto chars = run_verifier("charsoftoi", big);
  REQUIRE(chars.runs.size() == 1);
  CHECK(chars.runs[0].count("maps") == 500);
}

TEST_CASE("unknown verifier ids are rejected by name") {
  VerifierConfig cfg;
  try {
    run_verifier("nope", cfg);
    FAIL("expected InvalidArgumentError");
  } catch (const InvalidArgumentError& e) {
    CHECK(std::string(e.what()).find("unknown verifier id 'nope'") != std::string::npos);
    CHECK(std::string(e.what()).find("prop-medians") != std::string::npos);
  }
  CHECK(verifier_ids().size() == 9);
}

TEST_CASE("worker count does not change verdicts or counts") {
  auto L = FiniteLattice::make_powerset({"a", "b", "c"});
  auto one = verify_lemma_swap(L, 4, serial());
  RunOptions eight;
  eight.parallelism = 8;
  auto many = verify_lemma_swap(L, 4, eight);
  CHECK(one.verdict == many.verdict);
  CHECK(one.counts == many.counts);
  CHECK(one.count("instances") == 18048);
}

}  // TEST_SUITE
