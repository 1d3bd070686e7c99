#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <sys/wait.h>
#include <vector>

#include <json.hpp>

using Json = nlohmann::ordered_json;

namespace {

struct CliResult {
  int exit_code;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const char* bin = std::getenv("LATMED_CLI");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
  int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string fx(const char* name) {
  const char* dir = std::getenv("LATMED_FIXTURES");
  REQUIRE(dir != nullptr);
  return std::string(dir) + "/" + name;
}

Json envelope(const CliResult& r) {
  Json j = Json::parse(r.out, nullptr, false);
  REQUIRE_FALSE(j.is_discarded());
  return j;
}

std::vector<std::string> keys_of(const Json& j) {
  std::vector<std::string> out;
  for (auto it = j.begin(); it != j.end(); ++it) out.push_back(it.key());
  return out;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("median prints the bare label") {
  auto r = run_cli("median --k 2 --lattice " + fx("divisor36.json") + " --elements 4,6,9");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "6\n");

  auto lo = run_cli("median --k 1 --m 2 --lattice " + fx("divisor36.json") + " --elements 4,6,9");
  CHECK(lo.out == "2\n");
  auto hi = run_cli("median --k 2 --m 2 --lattice " + fx("divisor36.json") + " --elements 4,6,9");
  CHECK(hi.out == "12\n");
}

TEST_CASE("total orderization joins labels with commas") {
  auto r = run_cli("to --lattice " + fx("c5.json") + " --elements 3,0,2");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0,2,3\n");

  auto sets = run_cli("to --lattice " + fx("p2.json") + " --elements '{a},{b}'");
  CHECK(sets.exit_code == 0);
  CHECK(sets.out == "{},{a,b}\n");
}

TEST_CASE("envelopes keep a fixed field order with the timestamp last") {
  auto r = run_cli("median --k 2 --lattice " + fx("divisor36.json") +
                   " --elements 4,6,9 --format json");
  CHECK(r.exit_code == 0);
  Json env = envelope(r);
  CHECK(keys_of(env) == std::vector<std::string>{"command", "inputs", "verdict", "result",
                                                 "witnesses", "counts", "seed", "timestamp"});
  CHECK(env["command"] == "median");
  CHECK(env["verdict"] == "pass");
  CHECK(env["result"] == "6");
  CHECK(env["inputs"]["k"] == 2);
  CHECK(env["inputs"]["mode"] == "auto");
  CHECK(r.out.find('\n') == r.out.size() - 1);
}

TEST_CASE("orderization check fails with the definition witness") {
  auto r = run_cli("check toi --condition all --lattice " + fx("c2.json") + " --map " +
                   fx("proj1.json") + " --format json");
  CHECK(r.exit_code == 1);
  Json env = envelope(r);
  CHECK(env["command"] == "check toi");
  CHECK(env["verdict"] == "fail");
  CHECK(env["inputs"]["condition"] == "all");
  REQUIRE(env["witnesses"].size() == 1);
  const Json& w = env["witnesses"][0];
  CHECK(w["inputs"] == Json::parse(R"([["1","0"],["0","1"]])"));
  CHECK(w["lhs"] == "1");
  CHECK(w["rhs"] == "0");
  CHECK(env["counts"]["instances"] == 11);
  CHECK(env["note"] == "c2=fail c3=fail def=fail c4=fail");

  auto def = run_cli("check toi --condition def --lattice " + fx("c2.json") + " --map " +
                     fx("proj1.json"));
  CHECK(def.exit_code == 1);
  CHECK(def.out.find("toi-def: fail (3 instances)") == 0);
  CHECK(def.out.find("witness: (1,0) (0,1) lhs=1 rhs=0") != std::string::npos);
}

TEST_CASE("invariant maps pass every condition") {
  auto r = run_cli("check toi --condition all --lattice " + fx("c2.json") + " --map " +
                   fx("xor.json") + " --format json");
  CHECK(r.exit_code == 0);
  Json env = envelope(r);
  CHECK(env["verdict"] == "pass");
  CHECK(env["witnesses"].empty());
}

TEST_CASE("symmetry check on the implicit chain") {
  auto r = run_cli("check symmetric --map " + fx("geomean.json") + " --format json");
  CHECK(r.exit_code == 1);
  Json env = envelope(r);
  CHECK(env["verdict"] == "fail");
  REQUIRE(env["witnesses"].size() == 1);
  CHECK(env["witnesses"][0]["reals"] == Json::parse("[[1.0,8.0]]"));
  double lhs = std::strtod(env["witnesses"][0]["lhs"].get<std::string>().c_str(), nullptr);
  double rhs = std::strtod(env["witnesses"][0]["rhs"].get<std::string>().c_str(), nullptr);
  CHECK(std::fabs(lhs - 4.0) <= 1e-6);
  CHECK(std::fabs(rhs - 2.0) <= 1e-6);
}

TEST_CASE("homomorphism check on the implicit chain samples") {
  auto r = run_cli("check hom --map " + fx("geomean.json") + " --format json");
  CHECK(r.exit_code == 0);
  Json env = envelope(r);
  CHECK(env["verdict"] == "sampled-pass");
  CHECK(env["counts"]["instances"] == 100008);
  CHECK(env["inputs"]["samples"] == 100000);
}

TEST_CASE("lattice validation and distributivity split into two checks") {
  auto ok = run_cli("lattice-validate --lattice " + fx("m3.json"));
  CHECK(ok.exit_code == 0);

  auto dist = run_cli("lattice-validate --lattice " + fx("m3.json") +
                      " --distributive --format json");
  CHECK(dist.exit_code == 1);
  Json env = envelope(dist);
  CHECK(env["command"] == "lattice-validate --distributive");
  CHECK(env["verdict"] == "fail");
  REQUIRE(env["witnesses"].size() == 1);
  CHECK(env["witnesses"][0]["inputs"][0].size() == 3);

  auto broken = run_cli("lattice-validate --lattice " + fx("corrupt.json") + " --format json");
  CHECK(broken.exit_code == 1);
  Json benv = envelope(broken);
  CHECK(benv["verdict"] == "fail");
  REQUIRE(benv["witnesses"].size() == 1);
}

TEST_CASE("enumeration lists tables after the summary line") {
  auto r = run_cli("enumerate-homs --domain " + fx("c2.json") + " --arity 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("homs=6 table_space=16 tables_visited=6") == 0);
  CHECK(r.out.find("0,0,1,1\n") != std::string::npos);

  auto sym = run_cli("enumerate-homs --domain " + fx("c2.json") + " --arity 2 --symmetric --format json");
  Json env = envelope(sym);
  CHECK(env["counts"]["homs"] == 4);
  CHECK(env["result"].size() == 4);
}

TEST_CASE("verifier runs aggregate counts into the envelope") {
  auto r = run_cli("verify multihom-toi --domain " + fx("c2.json") + " --codomain " + fx("c2.json") +
                   " --arity 2 --format json");
  CHECK(r.exit_code == 0);
  Json env = envelope(r);
  CHECK(env["command"] == "verify multihom-toi");
  CHECK(env["verdict"] == "pass");
  REQUIRE(env["runs"].size() == 1);
  CHECK(env["counts"]["homs"] == 6);
  CHECK(env["counts"]["symmetric"] == 4);
  CHECK(env["counts"]["toi"] == 4);
  CHECK(env["counts"]["tables"] == 16);

  auto text = run_cli("verify lemma-extend --lattice " + fx("c3.json") + " --n-max 2");
  CHECK(text.exit_code == 0);
  CHECK(text.out.find("lemma-extend [3-element chain, n<=2]: pass (instances=0)") == 0);
  CHECK(text.out.find("note: no k>=2 instances at n<=2") != std::string::npos);
  CHECK(text.out.find("verify lemma-extend: pass\n") != std::string::npos);
}

TEST_CASE("worker count never changes the envelope") {
  const std::string base = "verify charsoftoi --lattice " + fx("c2.json") + " --format json --parallelism ";
  auto one = run_cli(base + "1");
  auto four = run_cli(base + "4");
  CHECK(one.exit_code == 0);
  CHECK(four.exit_code == 0);
  Json a = envelope(one), b = envelope(four);
  a.erase("timestamp");
  b.erase("timestamp");
  CHECK(a.dump() == b.dump());
  CHECK(a["counts"]["maps"] == 16);
  CHECK(a["counts"]["toi"] == 8);
}

TEST_CASE("usage problems exit with code two") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("median --lattice " + fx("c2.json") + " --elements 0,1").exit_code == 2);
  CHECK(run_cli("check bogus --map " + fx("xor.json")).exit_code == 2);
  CHECK(run_cli("median --k 1 --lattice /nonexistent.json --elements 1").exit_code == 2);
  CHECK(run_cli("median --k 9 --lattice " + fx("c2.json") + " --elements 0,1").exit_code == 2);
  CHECK(run_cli("verify unknown-id").exit_code == 2);
}

TEST_CASE("capacity and precondition problems exit with code three") {
  CHECK(run_cli("enumerate-homs --domain " + fx("c4.json") + " --arity 2").exit_code == 3);
  CHECK(run_cli("median --k 2 --mode fast --lattice " + fx("m3.json") + " --elements a,b,c")
            .exit_code == 3);
  CHECK(run_cli("verify prop-medians --lattice " + fx("m3.json")).exit_code == 3);
}

}  // TEST_SUITE
