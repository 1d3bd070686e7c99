#include <doctest.h>

#include <algorithm>
#include <cstdlib>

#include "io.hpp"
#include "median.hpp"
#include "rng.hpp"

using namespace latmed;

namespace {

FiniteLattice::Ptr load_fixture(const char* name) {
  const char* dir = std::getenv("LATMED_FIXTURES");
  REQUIRE(dir != nullptr);
  return lattice_from_json(load_json_file(std::string(dir) + "/" + name));
}

std::vector<ElemId> ids(const FiniteLattice& L, std::initializer_list<const char*> labels) {
  std::vector<ElemId> out;
  for (const char* s : labels) {
    auto id = L.find(s);
    REQUIRE(id.has_value());
    out.push_back(*id);
  }
  return out;
}

// Reference total orderization built from the prefix recurrences
//   M_{1,m+1} = M_{1,m} ^ x_{m+1}
//   M_{k,m+1} = M_{k,m} ^ (M_{k-1,m} v x_{m+1})   for 2 <= k <= m
//   M_{m+1,m+1} = M_{m,m} v x_{m+1}
// It shares no code with the per-irreducible threshold path.
std::vector<ElemId> prefix_dp_to(const FiniteLattice& L, std::span<const ElemId> xs) {
  std::vector<ElemId> row{xs[0]};
  for (size_t m = 1; m < xs.size(); ++m) {
    std::vector<ElemId> next(m + 1);
    next[0] = L.meet_u(row[0], xs[m]);
    for (size_t k = 1; k < m; ++k) next[k] = L.meet_u(row[k], L.join_u(row[k - 1], xs[m]));
    next[m] = L.join_u(row[m - 1], xs[m]);
    row = std::move(next);
  }
  return row;
}

}  // namespace

TEST_SUITE("median") {

TEST_CASE("divisor(36) spot values") {
  auto d36 = FiniteLattice::make_divisor(36);
  auto xs = ids(*d36, {"4", "6", "9"});
  CHECK(d36->label(median_k_direct(*d36, xs, 2)) == "6");
  CHECK(d36->label(median_k_dual(*d36, xs, 2)) == "6");
  CHECK(d36->label(median_k_fast(*d36, xs, 2)) == "6");
  CHECK(d36->label(median_k(*d36, xs, 2)) == "6");
  CHECK(d36->label(median_k_direct(*d36, xs, 1)) == "1");
  CHECK(d36->label(median_k_direct(*d36, xs, 3)) == "36");
  // relative: M_{1,2}(4,6,...) is gcd(4,6)
  CHECK(d36->label(median_relative(*d36, xs, 1, 2)) == "2");
  CHECK(d36->label(median_relative(*d36, xs, 2, 2)) == "12");
}

TEST_CASE("chain medians are order statistics") {
  auto c5 = FiniteLattice::make_chain(5);
  std::vector<ElemId> xs{3, 0, 2};
  CHECK(median_k(*c5, xs, 1) == 0);
  CHECK(median_k(*c5, xs, 2) == 2);
  CHECK(median_k(*c5, xs, 3) == 3);
  CHECK(total_orderization(*c5, xs) == std::vector<ElemId>{0, 2, 3});
}

TEST_CASE("total orderization on the subset lattice") {
  auto p3 = FiniteLattice::make_powerset({"a", "b", "c"});
  auto xs = ids(*p3, {"{a}", "{b}", "{a,b}"});
  auto to = total_orderization(*p3, xs);
  CHECK(p3->label(to[0]) == "{}");
  CHECK(p3->label(to[1]) == "{a,b}");
  CHECK(p3->label(to[2]) == "{a,b}");
  // the result is a nondecreasing chain
  CHECK(p3->leq(to[0], to[1]));
  CHECK(p3->leq(to[1], to[2]));
}

TEST_CASE("direct, dual, and fast forms agree where the join law holds") {
  for (auto lat : {FiniteLattice::make_chain(4), FiniteLattice::make_powerset({"a", "b"}),
                   FiniteLattice::make_divisor(12)}) {
    const int32_t size = lat->size();
    for (int n = 1; n <= 3; ++n) {
      std::vector<ElemId> xs(n);
      uint64_t space = 1;
      for (int i = 0; i < n; ++i) space *= size;
      for (uint64_t idx = 0; idx < space; ++idx) {
        uint64_t rem = idx;
        for (int i = n - 1; i >= 0; --i) {
          xs[i] = static_cast<ElemId>(rem % size);
          rem /= size;
        }
        for (int k = 1; k <= n; ++k) {
          ElemId d = median_k_direct(*lat, xs, k);
          CHECK(d == median_k_dual(*lat, xs, k));
          CHECK(d == median_k_fast(*lat, xs, k));
        }
      }
    }
  }
}

TEST_CASE("duality breaks on M3") {
  auto m3 = load_fixture("m3.json");
  auto xs = ids(*m3, {"a", "b", "c"});
  ElemId direct = median_k_direct(*m3, xs, 2);
  ElemId dual = median_k_dual(*m3, xs, 2);
  CHECK(m3->label(direct) == "0");
  CHECK(m3->label(dual) == "1");
  CHECK(direct != dual);
}

TEST_CASE("fast path needs an embedding") {
  auto m3 = load_fixture("m3.json");
  std::vector<ElemId> xs{1, 2, 3};
  CHECK_THROWS_AS(median_k_fast(*m3, xs, 2), PreconditionError);
  // the subset-expansion forms still work there
  CHECK_NOTHROW(median_k_direct(*m3, xs, 2));
  CHECK_NOTHROW(median_k(*m3, xs, 2));
}

TEST_CASE("argument validation") {
  auto c3 = FiniteLattice::make_chain(3);
  std::vector<ElemId> xs{0, 1, 2};
  CHECK_THROWS_AS(median_k(*c3, xs, 0), InvalidArgumentError);
  CHECK_THROWS_AS(median_k(*c3, xs, 4), InvalidArgumentError);
  CHECK_THROWS_AS(median_k(*c3, std::span<const ElemId>{}, 1), InvalidArgumentError);
  CHECK_THROWS_AS(median_relative(*c3, xs, 1, 4), InvalidArgumentError);
  CHECK_THROWS_AS(median_relative(*c3, xs, 3, 2), InvalidArgumentError);
  std::vector<ElemId> bad{0, 3};
  CHECK_THROWS_AS(median_k(*c3, bad, 1), InvalidArgumentError);
}

TEST_CASE("subset expansion is capped, threshold count is not") {
  auto c2 = FiniteLattice::make_chain(2);
  std::vector<ElemId> xs(26, 0);
  CHECK_THROWS_AS(median_k_direct(*c2, xs, 13), CapacityError);
  CHECK_THROWS_AS(median_k_dual(*c2, xs, 13), CapacityError);
  // k=1 and k=n shortcut to plain folds before the cap
  CHECK(median_k_direct(*c2, xs, 1) == 0);
  CHECK(median_k_direct(*c2, xs, 26) == 0);
  CHECK(median_k_fast(*c2, xs, 13) == 0);
  CHECK(median_k(*c2, xs, 13) == 0);
}

TEST_CASE("threshold path matches the prefix recurrence at n=40") {
  auto p3 = FiniteLattice::make_powerset({"a", "b", "c"});
  for (uint64_t t = 0; t < 50; ++t) {
    SplitMix64 rng = stream_at(7, t);
    std::vector<ElemId> xs(40);
    for (auto& x : xs) x = static_cast<ElemId>(rng.below(8));
    auto got = total_orderization(*p3, xs);
    auto want = prefix_dp_to(*p3, xs);
    CHECK(got == want);
    CHECK(median_k_fast(*p3, xs, 20) == want[19]);
  }
}

TEST_CASE("medians are monotone in k") {
  auto d36 = FiniteLattice::make_divisor(36);
  auto xs = ids(*d36, {"4", "18", "9", "6"});
  auto to = total_orderization(*d36, xs);
  for (size_t k = 0; k + 1 < to.size(); ++k) CHECK(d36->leq(to[k], to[k + 1]));
}

}  // TEST_SUITE
