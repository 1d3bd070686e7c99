#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include <json.hpp>
#include <latmed/latmed.h>

using Json = nlohmann::ordered_json;

namespace {

struct Str {
  char* p = nullptr;
  ~Str() { latmed_string_free(p); }
  std::string get() const { return p ? std::string(p) : std::string(); }
};

struct Lattice {
  latmed_lattice* h = nullptr;
  ~Lattice() { latmed_lattice_free(h); }
};

struct Map {
  latmed_map* h = nullptr;
  ~Map() { latmed_map_free(h); }
};

latmed_lattice* must_lattice(const char* json, Lattice& slot) {
  Str err;
  REQUIRE(latmed_lattice_from_json(json, &slot.h, &err.p) == LATMED_OK);
  return slot.h;
}

constexpr const char* kChain2 = R"({"kind":"chain","size":2})";
constexpr const char* kChain5 = R"({"kind":"chain","size":5})";
constexpr const char* kDivisor36 = R"({"kind":"divisor","n":36})";
constexpr const char* kM3 = R"({
  "kind":"explicit","labels":["0","a","b","c","1"],
  "meet":[[0,0,0,0,0],[0,1,0,0,1],[0,0,2,0,2],[0,0,0,3,3],[0,1,2,3,4]],
  "join":[[0,1,2,3,4],[1,1,4,4,4],[2,4,2,4,4],[3,4,4,3,4],[4,4,4,4,4]]})";

}  // namespace

TEST_CASE("version string is static") {
  CHECK(std::strcmp(latmed_version(), "1.0.0") == 0);
  CHECK(latmed_version() == latmed_version());
}

TEST_CASE("lattice lifecycle through the C surface") {
  Lattice lat;
  must_lattice(kChain5, lat);
  CHECK(latmed_lattice_size(lat.h) == 5);

  Str label, err;
  REQUIRE(latmed_lattice_label(lat.h, 3, &label.p, &err.p) == LATMED_OK);
  CHECK(label.get() == "3");

  int32_t id = -1;
  REQUIRE(latmed_lattice_find(lat.h, "3", &id, &err.p) == LATMED_OK);
  CHECK(id == 3);

  int32_t m = -1, j = -1, le = -1;
  REQUIRE(latmed_lattice_meet(lat.h, 3, 1, &m, &err.p) == LATMED_OK);
  REQUIRE(latmed_lattice_join(lat.h, 3, 1, &j, &err.p) == LATMED_OK);
  REQUIRE(latmed_lattice_leq(lat.h, 1, 3, &le, &err.p) == LATMED_OK);
  CHECK(m == 1);
  CHECK(j == 3);
  CHECK(le == 1);

  Str dump;
  REQUIRE(latmed_lattice_to_json(lat.h, &dump.p, &err.p) == LATMED_OK);
  Lattice back;
  must_lattice(dump.p, back);
  CHECK(latmed_lattice_size(back.h) == 5);
}

TEST_CASE("errors carry a message and the right status") {
  Lattice bad;
  Str err;
  CHECK(latmed_lattice_from_json("{nope", &bad.h, &err.p) == LATMED_ERR_FORMAT);
  CHECK(err.p != nullptr);
  CHECK(bad.h == nullptr);

  Str err2;
  CHECK(latmed_lattice_from_json(nullptr, &bad.h, &err2.p) == LATMED_ERR_INVALID_ARGUMENT);

  Lattice lat;
  must_lattice(kChain2, lat);
  Str label, err3;
  CHECK(latmed_lattice_label(lat.h, 7, &label.p, &err3.p) == LATMED_ERR_INVALID_ARGUMENT);
  CHECK(label.p == nullptr);

  int32_t id = -1;
  Str err4;
  CHECK(latmed_lattice_find(lat.h, "seven", &id, &err4.p) == LATMED_ERR_FORMAT);
  CHECK(err4.get().find("seven") != std::string::npos);

  CHECK(latmed_lattice_size(nullptr) == 0);
  int32_t out = -1;
  Str err5;
  CHECK(latmed_lattice_meet(nullptr, 0, 0, &out, &err5.p) == LATMED_ERR_INVALID_ARGUMENT);
}

TEST_CASE("validation reports through status codes") {
  Lattice m3;
  must_lattice(kM3, m3);
  Str rep, err;
  CHECK(latmed_lattice_validate(m3.h, nullptr, &rep.p, &err.p) == LATMED_OK);
  CHECK(Json::parse(rep.get())["verdict"] == "pass");

  Str drep, derr;
  CHECK(latmed_lattice_check_distributive(m3.h, nullptr, &drep.p, &derr.p) == LATMED_ERR_CHECK_FAILED);
  Json dj = Json::parse(drep.get());
  CHECK(dj["verdict"] == "fail");
  CHECK(dj.contains("witness"));

  Lattice broken;
  Str berr;
  const char* corrupt = R"({"kind":"explicit","labels":["0","1"],
                            "meet":[[0,0],[1,1]],"join":[[0,1],[1,1]]})";
  REQUIRE(latmed_lattice_from_json(corrupt, &broken.h, &berr.p) == LATMED_OK);
  Str brep, berr2;
  CHECK(latmed_lattice_validate(broken.h, nullptr, &brep.p, &berr2.p) == LATMED_ERR_CHECK_FAILED);
  CHECK(Json::parse(brep.get())["verdict"] == "fail");
}

TEST_CASE("median entry points") {
  Lattice d36;
  must_lattice(kDivisor36, d36);
  Str err;
  int32_t ids[3];
  const char* labels[3] = {"4", "6", "9"};
  for (int i = 0; i < 3; ++i)
    REQUIRE(latmed_lattice_find(d36.h, labels[i], &ids[i], &err.p) == LATMED_OK);

  int32_t out = -1;
  REQUIRE(latmed_median(d36.h, ids, 3, 2, nullptr, &out, &err.p) == LATMED_OK);
  Str med;
  REQUIRE(latmed_lattice_label(d36.h, out, &med.p, &err.p) == LATMED_OK);
  CHECK(med.get() == "6");

  int32_t fast = -1, direct = -1;
  REQUIRE(latmed_median(d36.h, ids, 3, 2, "fast", &fast, &err.p) == LATMED_OK);
  REQUIRE(latmed_median(d36.h, ids, 3, 2, "direct", &direct, &err.p) == LATMED_OK);
  CHECK(fast == out);
  CHECK(direct == out);

  Str err2;
  CHECK(latmed_median(d36.h, ids, 3, 2, "psychic", &out, &err2.p) == LATMED_ERR_INVALID_ARGUMENT);
  Str err3;
  CHECK(latmed_median(d36.h, ids, 3, 9, nullptr, &out, &err3.p) == LATMED_ERR_INVALID_ARGUMENT);

  int32_t rel = -1;
  REQUIRE(latmed_median_relative(d36.h, ids, 3, 1, 2, &rel, &err.p) == LATMED_OK);
  Str rl;
  REQUIRE(latmed_lattice_label(d36.h, rel, &rl.p, &err.p) == LATMED_OK);
  CHECK(rl.get() == "2");

  Lattice c5;
  must_lattice(kChain5, c5);
  int32_t xs[3] = {3, 0, 2};
  int32_t sorted[3] = {-1, -1, -1};
  REQUIRE(latmed_total_orderization(c5.h, xs, 3, sorted, &err.p) == LATMED_OK);
  CHECK(sorted[0] == 0);
  CHECK(sorted[1] == 2);
  CHECK(sorted[2] == 3);
}

TEST_CASE("finite maps evaluate by index") {
  Lattice c2;
  must_lattice(kChain2, c2);
  Map proj;
  Str err;
  REQUIRE(latmed_map_from_json(R"({"arity":2,"body":{"builtin":"projection","i":1}})", c2.h, c2.h,
                               &proj.h, &err.p) == LATMED_OK);
  CHECK(latmed_map_arity(proj.h) == 2);
  CHECK(latmed_map_arity(nullptr) == 0);

  int32_t xs[2] = {1, 0};
  int32_t out = -1;
  REQUIRE(latmed_map_eval(proj.h, xs, 2, &out, &err.p) == LATMED_OK);
  CHECK(out == 1);

  double real_out = 0;
  double reals[2] = {1.0, 8.0};
  Str err2;
  CHECK(latmed_map_eval_real(proj.h, reals, 2, &real_out, &err2.p) == LATMED_ERR_PRECONDITION);
}

TEST_CASE("implicit-chain maps evaluate by value") {
  Map geo;
  Str err;
  REQUIRE(latmed_map_from_json(R"({"builtin":"weighted-geomean","w":[0.3333333333,0.6666666667]})",
                               nullptr, nullptr, &geo.h, &err.p) == LATMED_OK);
  CHECK(latmed_map_arity(geo.h) == 2);

  double xs[2] = {1.0, 8.0};
  double out = 0;
  REQUIRE(latmed_map_eval_real(geo.h, xs, 2, &out, &err.p) == LATMED_OK);
  CHECK(std::fabs(out - 4.0) <= 1e-6);

  int32_t ids[2] = {0, 1};
  int32_t iout = -1;
  Str err2;
  CHECK(latmed_map_eval(geo.h, ids, 2, &iout, &err2.p) == LATMED_ERR_PRECONDITION);
}

TEST_CASE("named checks return reports and statuses") {
  Lattice c2;
  must_lattice(kChain2, c2);
  Map proj;
  Str err;
  REQUIRE(latmed_map_from_json(R"({"arity":2,"body":{"builtin":"projection","i":1}})", c2.h, c2.h,
                               &proj.h, &err.p) == LATMED_OK);

  Str rep;
  CHECK(latmed_check(proj.h, "toi-def", nullptr, &rep.p, &err.p) == LATMED_ERR_CHECK_FAILED);
  Json j = Json::parse(rep.get());
  CHECK(j["verdict"] == "fail");
  CHECK(j["witness"]["lhs"] == "1");
  CHECK(j["witness"]["rhs"] == "0");

  Str hom;
  CHECK(latmed_check(proj.h, "hom", nullptr, &hom.p, &err.p) == LATMED_OK);
  CHECK(Json::parse(hom.get())["verdict"] == "pass");

  Str bad, err2;
  CHECK(latmed_check(proj.h, "entropy", nullptr, &bad.p, &err2.p) == LATMED_ERR_INVALID_ARGUMENT);

  Map geo;
  REQUIRE(latmed_map_from_json(R"({"builtin":"weighted-geomean","w":[0.5,0.5]})", nullptr, nullptr,
                               &geo.h, &err.p) == LATMED_OK);
  Str sampled;
  CHECK(latmed_check(geo.h, "hom", R"({"samples":500,"parallelism":1})", &sampled.p, &err.p) ==
        LATMED_OK);
  Json sj = Json::parse(sampled.get());
  CHECK(sj["verdict"] == "sampled-pass");
  CHECK(sj["counts"] == 508);
}

TEST_CASE("homomorphism enumeration serializes its tables") {
  Lattice c2;
  must_lattice(kChain2, c2);
  Str out, err;
  REQUIRE(latmed_enumerate_homs(c2.h, c2.h, 2, 0, &out.p, &err.p) == LATMED_OK);
  Json j = Json::parse(out.get());
  CHECK(j["homs"] == 6);
  CHECK(j["table_space"] == 16);
  CHECK(j["maps"].size() == 6);
  CHECK(j["maps"][0] == Json::parse("[0,0,0,0]"));
  CHECK(j["maps"][2] == Json::parse("[0,0,1,1]"));

  Str sym;
  REQUIRE(latmed_enumerate_homs(c2.h, c2.h, 2, 1, &sym.p, &err.p) == LATMED_OK);
  CHECK(Json::parse(sym.get())["homs"] == 4);

  Lattice c4;
  must_lattice(R"({"kind":"chain","size":4})", c4);
  Str big, err2;
  CHECK(latmed_enumerate_homs(c4.h, c4.h, 2, 0, &big.p, &err2.p) == LATMED_ERR_CAPACITY);
  CHECK(err2.get().find("24") != std::string::npos);
}

TEST_CASE("verifiers run from a config document") {
  Str rep, err;
  CHECK(latmed_verify("lemma-swap", R"({"lattice":{"kind":"chain","size":2},"n_max":3})", &rep.p,
                      &err.p) == LATMED_OK);
  Json j = Json::parse(rep.get());
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["verdict"] == "pass");
  CHECK(j[0]["counts"]["instances"] == 32);

  Str bad, err2;
  CHECK(latmed_verify("nope", nullptr, &bad.p, &err2.p) == LATMED_ERR_INVALID_ARGUMENT);
  Str err3;
  CHECK(latmed_verify(nullptr, nullptr, &bad.p, &err3.p) == LATMED_ERR_INVALID_ARGUMENT);
  Str err4;
  CHECK(latmed_verify("lemma-swap", "{broken", &bad.p, &err4.p) == LATMED_ERR_FORMAT);
}

TEST_CASE("null buffers are rejected, not dereferenced") {
  Lattice c2;
  must_lattice(kChain2, c2);
  Str err;
  int32_t out = -1;
  CHECK(latmed_median(c2.h, nullptr, 2, 1, nullptr, &out, &err.p) == LATMED_ERR_INVALID_ARGUMENT);
  Str err2;
  CHECK(latmed_median(nullptr, nullptr, 0, 1, nullptr, &out, &err2.p) == LATMED_ERR_INVALID_ARGUMENT);
  Str err3;
  CHECK(latmed_check(nullptr, "hom", nullptr, nullptr, &err3.p) == LATMED_ERR_INVALID_ARGUMENT);
}

