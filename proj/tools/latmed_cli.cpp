#include <cstdint>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include <latmed/latmed.h>

namespace {

using Json = nlohmann::ordered_json;

// Exit codes: 0 pass, 1 check failed, 2 usage/format, 3 capacity/precondition,
// 4 internal.
int status_to_exit(latmed_status s) {
  switch (s) {
    case LATMED_OK: return 0;
    case LATMED_ERR_CHECK_FAILED: return 1;
    case LATMED_ERR_FORMAT:
    case LATMED_ERR_INVALID_ARGUMENT: return 2;
    case LATMED_ERR_CAPACITY:
    case LATMED_ERR_PRECONDITION: return 3;
    default: return 4;
  }
}

struct CliError {
  int exit_code;
  std::string message;
};

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { latmed_string_free(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

[[noreturn]] void fail_status(latmed_status rc, OwnedString& err) {
  throw CliError{status_to_exit(rc), err.p ? err.str() : "unknown error"};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{2, "cannot open file: " + path};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

using LatticeHandle = std::unique_ptr<latmed_lattice, decltype(&latmed_lattice_free)>;
using MapHandle = std::unique_ptr<latmed_map, decltype(&latmed_map_free)>;

LatticeHandle load_lattice(const std::string& path) {
  const std::string text = read_file(path);
  latmed_lattice* lat = nullptr;
  OwnedString err;
  if (auto rc = latmed_lattice_from_json(text.c_str(), &lat, &err.p)) fail_status(rc, err);
  return {lat, &latmed_lattice_free};
}

std::string label_of(const latmed_lattice* lat, int32_t elem) {
  OwnedString out, err;
  if (auto rc = latmed_lattice_label(lat, elem, &out.p, &err.p)) fail_status(rc, err);
  return out.str();
}

// Comma split honoring braces/parens, so "{a,b},{a}" stays two labels.
std::vector<std::string> split_elements(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (char ch : text) {
    if (ch == '{' || ch == '(') ++depth;
    if (ch == '}' || ch == ')') --depth;
    if (ch == ',' && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  parts.push_back(cur);
  return parts;
}

std::vector<int32_t> parse_elements(const latmed_lattice* lat, const std::string& text) {
  std::vector<int32_t> out;
  for (const auto& part : split_elements(text)) {
    int32_t id = 0;
    OwnedString err;
    if (auto rc = latmed_lattice_find(lat, part.c_str(), &id, &err.p)) fail_status(rc, err);
    out.push_back(id);
  }
  return out;
}

struct CommonOpts {
  std::string format = "text";
  uint64_t seed = 0;
  uint64_t samples = 100000;
  int parallelism = 0;

  std::string options_json() const {
    Json j;
    j["seed"] = seed;
    j["samples"] = samples;
    j["parallelism"] = parallelism;
    return j.dump();
  }
};

void add_common(CLI::App* sub, CommonOpts& c) {
  sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  sub->add_option("--seed", c.seed, "Seed for sampled or randomized stages");
  sub->add_option("--samples", c.samples, "Sample count for implicit-chain checks");
  sub->add_option("--parallelism", c.parallelism, "Worker threads (0 = all cores)");
}

std::string timestamp_utc() {
  std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

// One line, fixed field order; the timestamp comes last so regression diffs
// can strip it.
void emit_envelope(const std::string& command, Json inputs, const std::string& verdict, Json extra,
                   Json witnesses, Json counts, uint64_t seed) {
  Json env;
  env["command"] = command;
  env["inputs"] = std::move(inputs);
  env["verdict"] = verdict;
  for (auto& [k, v] : extra.items()) env[k] = v;
  env["witnesses"] = std::move(witnesses);
  env["counts"] = std::move(counts);
  env["seed"] = seed;
  env["timestamp"] = timestamp_utc();
  std::printf("%s\n", env.dump().c_str());
}

std::string witness_text(const Json& w) {
  std::string s = "witness:";
  if (w.contains("inputs") && !w["inputs"].empty()) {
    for (const auto& t : w["inputs"]) {
      s += " (";
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += t[i].get<std::string>();
      }
      s += ")";
    }
  } else if (w.contains("reals")) {
    for (const auto& t : w["reals"]) {
      s += " (";
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) s += ",";
        s += Json(t[i]).dump();
      }
      s += ")";
    }
  }
  if (w.contains("slots")) {
    s += " slots(";
    const auto& sl = w["slots"];
    for (size_t i = 0; i < sl.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(sl[i].get<int>());
    }
    s += ")";
  }
  s += " lhs=" + w.value("lhs", std::string()) + " rhs=" + w.value("rhs", std::string());
  if (w.contains("note")) s += "  [" + w["note"].get<std::string>() + "]";
  return s;
}

void print_check_text(const Json& rep) {
  std::printf("%s: %s (%llu instances%s%s)\n", rep.value("law", std::string("check")).c_str(),
              rep.value("verdict", std::string()).c_str(),
              static_cast<unsigned long long>(rep.value("counts", 0ull)),
              rep.contains("note") ? "; " : "",
              rep.contains("note") ? rep["note"].get<std::string>().c_str() : "");
  if (rep.contains("witness")) std::printf("  %s\n", witness_text(rep["witness"]).c_str());
}

void print_run_text(const Json& run) {
  std::string counts;
  if (run.contains("counts"))
    for (const auto& [k, v] : run["counts"].items()) {
      if (!counts.empty()) counts += ", ";
      counts += k + "=" + Json(v).dump();
    }
  std::printf("%s [%s]: %s (%s)\n", run.value("theorem", std::string()).c_str(),
              run.value("matrix", std::string()).c_str(), run.value("verdict", std::string()).c_str(),
              counts.c_str());
  if (run.contains("note")) std::printf("  note: %s\n", run["note"].get<std::string>().c_str());
  if (run.contains("witnesses"))
    for (const auto& w : run["witnesses"]) std::printf("  %s\n", witness_text(w).c_str());
}

// ---- subcommand handlers ----

int run_lattice_validate(const std::string& lattice_path, bool distributive, const CommonOpts& c) {
  LatticeHandle lat = load_lattice(lattice_path);
  OwnedString report, err;
  latmed_status rc =
      distributive
          ? latmed_lattice_check_distributive(lat.get(), c.options_json().c_str(), &report.p, &err.p)
          : latmed_lattice_validate(lat.get(), c.options_json().c_str(), &report.p, &err.p);
  if (rc != LATMED_OK && rc != LATMED_ERR_CHECK_FAILED) fail_status(rc, err);
  Json rep = Json::parse(report.str());
  if (c.format == "json") {
    Json inputs;
    inputs["lattice"] = lattice_path;
    if (distributive) inputs["distributive"] = true;
    Json witnesses = Json::array();
    if (rep.contains("witness")) witnesses.push_back(rep["witness"]);
    Json counts;
    counts["instances"] = rep.value("counts", 0ull);
    emit_envelope(distributive ? "lattice-validate --distributive" : "lattice-validate",
                  std::move(inputs), rep.value("verdict", std::string()), Json::object(),
                  std::move(witnesses), std::move(counts), c.seed);
  } else {
    print_check_text(rep);
  }
  return status_to_exit(rc);
}

int run_median(const std::string& lattice_path, int k, int m, bool has_m,
               const std::string& elements, const std::string& mode, const CommonOpts& c) {
  LatticeHandle lat = load_lattice(lattice_path);
  auto xs = parse_elements(lat.get(), elements);
  int32_t out = 0;
  OwnedString err;
  latmed_status rc =
      has_m ? latmed_median_relative(lat.get(), xs.data(), static_cast<int32_t>(xs.size()), k, m,
                                     &out, &err.p)
            : latmed_median(lat.get(), xs.data(), static_cast<int32_t>(xs.size()), k, mode.c_str(),
                            &out, &err.p);
  if (rc != LATMED_OK) fail_status(rc, err);
  const std::string label = label_of(lat.get(), out);
  if (c.format == "json") {
    Json inputs;
    inputs["lattice"] = lattice_path;
    inputs["elements"] = elements;
    inputs["k"] = k;
    if (has_m) inputs["m"] = m;
    if (!has_m) inputs["mode"] = mode;
    Json extra;
    extra["result"] = label;
    emit_envelope("median", std::move(inputs), "pass", std::move(extra), Json::array(),
                  Json::object(), c.seed);
  } else {
    std::printf("%s\n", label.c_str());
  }
  return 0;
}

int run_to(const std::string& lattice_path, const std::string& elements, const CommonOpts& c) {
  LatticeHandle lat = load_lattice(lattice_path);
  auto xs = parse_elements(lat.get(), elements);
  std::vector<int32_t> out(xs.size());
  OwnedString err;
  if (auto rc = latmed_total_orderization(lat.get(), xs.data(), static_cast<int32_t>(xs.size()),
                                          out.data(), &err.p))
    fail_status(rc, err);
  std::vector<std::string> labels;
  labels.reserve(out.size());
  for (int32_t id : out) labels.push_back(label_of(lat.get(), id));
  if (c.format == "json") {
    Json inputs;
    inputs["lattice"] = lattice_path;
    inputs["elements"] = elements;
    Json extra;
    extra["result"] = labels;
    emit_envelope("to", std::move(inputs), "pass", std::move(extra), Json::array(), Json::object(),
                  c.seed);
  } else {
    std::string line;
    for (size_t i = 0; i < labels.size(); ++i) {
      if (i) line += ",";
      line += labels[i];
    }
    std::printf("%s\n", line.c_str());
  }
  return 0;
}

int run_check(const std::string& which, const std::string& condition, const std::string& lattice_path,
              const std::string& map_path, const CommonOpts& c) {
  LatticeHandle lat{nullptr, &latmed_lattice_free};
  if (!lattice_path.empty()) lat = load_lattice(lattice_path);
  const std::string map_text = read_file(map_path);
  latmed_map* map_raw = nullptr;
  OwnedString err;
  if (auto rc = latmed_map_from_json(map_text.c_str(), lat.get(), lat.get(), &map_raw, &err.p))
    fail_status(rc, err);
  MapHandle map{map_raw, &latmed_map_free};

  std::string check = which;
  if (which == "toi") {
    if (condition == "def") check = "toi-def";
    else if (condition == "all") check = "toi-all";
    else check = "toi-" + condition;
  }
  OwnedString report;
  latmed_status rc = latmed_check(map.get(), check.c_str(), c.options_json().c_str(), &report.p, &err.p);
  if (rc != LATMED_OK && rc != LATMED_ERR_CHECK_FAILED) fail_status(rc, err);
  Json rep = Json::parse(report.str());
  if (c.format == "json") {
    Json inputs;
    if (!lattice_path.empty()) inputs["lattice"] = lattice_path;
    inputs["map"] = map_path;
    inputs["check"] = which;
    if (which == "toi") inputs["condition"] = condition;
    inputs["samples"] = c.samples;
    Json witnesses = Json::array();
    if (rep.contains("witness")) witnesses.push_back(rep["witness"]);
    Json counts;
    counts["instances"] = rep.value("counts", 0ull);
    Json extra;
    if (rep.contains("note")) extra["note"] = rep["note"];
    emit_envelope("check " + which, std::move(inputs), rep.value("verdict", std::string()),
                  std::move(extra), std::move(witnesses), std::move(counts), c.seed);
  } else {
    print_check_text(rep);
  }
  return status_to_exit(rc);
}

int run_enumerate(const std::string& domain_path, const std::string& codomain_path, int arity,
                  bool symmetric, const CommonOpts& c) {
  LatticeHandle dom = load_lattice(domain_path);
  LatticeHandle cod{nullptr, &latmed_lattice_free};
  if (!codomain_path.empty()) cod = load_lattice(codomain_path);
  OwnedString out, err;
  if (auto rc = latmed_enumerate_homs(dom.get(), cod ? cod.get() : dom.get(), arity,
                                      symmetric ? 1 : 0, &out.p, &err.p))
    fail_status(rc, err);
  Json res = Json::parse(out.str());
  if (c.format == "json") {
    Json inputs;
    inputs["domain"] = domain_path;
    inputs["codomain"] = codomain_path.empty() ? domain_path : codomain_path;
    inputs["arity"] = arity;
    if (symmetric) inputs["symmetric"] = true;
    Json counts;
    counts["homs"] = res["homs"];
    counts["table_space"] = res["table_space"];
    counts["tables_visited"] = res["tables_visited"];
    Json extra;
    extra["result"] = res["maps"];
    emit_envelope("enumerate-homs", std::move(inputs), "pass", std::move(extra), Json::array(),
                  std::move(counts), c.seed);
  } else {
    std::printf("homs=%s table_space=%s tables_visited=%s\n", Json(res["homs"]).dump().c_str(),
                Json(res["table_space"]).dump().c_str(), Json(res["tables_visited"]).dump().c_str());
    for (const auto& t : res["maps"]) {
      std::string row;
      for (size_t i = 0; i < t.size(); ++i) {
        if (i) row += ",";
        row += Json(t[i]).dump();
      }
      std::printf("%s\n", row.c_str());
    }
  }
  return 0;
}

int run_verify(const std::string& id, const std::string& lattice_path, const std::string& domain_path,
               const std::string& codomain_path, int arity, bool has_arity, int n_max, bool has_n_max,
               const CommonOpts& c) {
  Json cfg;
  if (!lattice_path.empty()) cfg["lattice"] = Json::parse(read_file(lattice_path));
  if (!domain_path.empty()) cfg["domain"] = Json::parse(read_file(domain_path));
  if (!codomain_path.empty()) cfg["codomain"] = Json::parse(read_file(codomain_path));
  if (has_arity) cfg["arity"] = arity;
  if (has_n_max) cfg["n_max"] = n_max;
  cfg["seed"] = c.seed;
  cfg["samples"] = c.samples;
  cfg["parallelism"] = c.parallelism;

  OwnedString report, err;
  latmed_status rc = latmed_verify(id.c_str(), cfg.dump().c_str(), &report.p, &err.p);
  if (rc != LATMED_OK && rc != LATMED_ERR_CHECK_FAILED) fail_status(rc, err);
  Json runs = Json::parse(report.str());

  bool sampled = false;
  for (const auto& r : runs)
    if (r.value("verdict", std::string()) == "sampled-pass") sampled = true;
  const std::string verdict =
      rc == LATMED_ERR_CHECK_FAILED ? "fail" : (sampled ? "sampled-pass" : "pass");

  if (c.format == "json") {
    Json inputs;
    inputs["id"] = id;
    if (!lattice_path.empty()) inputs["lattice"] = lattice_path;
    if (!domain_path.empty()) inputs["domain"] = domain_path;
    if (!codomain_path.empty()) inputs["codomain"] = codomain_path;
    if (has_arity) inputs["arity"] = arity;
    if (has_n_max) inputs["n_max"] = n_max;
    inputs["samples"] = c.samples;
    Json witnesses = Json::array();
    Json counts = Json::object();
    for (const auto& r : runs) {
      if (r.contains("witnesses"))
        for (const auto& w : r["witnesses"]) witnesses.push_back(w);
      if (r.contains("counts"))
        for (const auto& [k, v] : r["counts"].items())
          counts[k] = counts.value(k, 0ull) + v.get<uint64_t>();
    }
    Json extra;
    extra["runs"] = runs;
    emit_envelope("verify " + id, std::move(inputs), verdict, std::move(extra), std::move(witnesses),
                  std::move(counts), c.seed);
  } else {
    for (const auto& r : runs) print_run_text(r);
    std::printf("verify %s: %s\n", id.c_str(), verdict.c_str());
  }
  return status_to_exit(rc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Finite distributive lattices: medians, map laws, and result verifiers"};
  app.require_subcommand(1);

  int exit_code = 0;

  // lattice-validate
  auto* sc_validate = app.add_subcommand("lattice-validate", "Scan the lattice laws over all tuples");
  static std::string v_lattice;
  static bool v_distributive = false;
  static CommonOpts v_opts;
  sc_validate->add_option("--lattice", v_lattice, "Lattice file")->required();
  sc_validate->add_flag("--distributive", v_distributive, "Check the distributive law instead");
  add_common(sc_validate, v_opts);
  sc_validate->callback([&] { exit_code = run_lattice_validate(v_lattice, v_distributive, v_opts); });

  // median
  auto* sc_median = app.add_subcommand("median", "k-th lattice median of the given elements");
  static std::string m_lattice, m_elements, m_mode = "auto";
  static int m_k = 0, m_m = 0;
  static CommonOpts m_opts;
  sc_median->add_option("--lattice", m_lattice, "Lattice file")->required();
  sc_median->add_option("--k", m_k, "Median index, 1-based")->required();
  auto* m_m_opt = sc_median->add_option("--m", m_m, "Prefix length for the relative median");
  sc_median->add_option("--elements", m_elements, "Comma-separated element labels")->required();
  sc_median->add_option("--mode", m_mode, "Evaluation strategy")
      ->check(CLI::IsMember({"auto", "direct", "dual", "fast"}));
  add_common(sc_median, m_opts);
  sc_median->callback([&] {
    exit_code = run_median(m_lattice, m_k, m_m, m_m_opt->count() > 0, m_elements, m_mode, m_opts);
  });

  // to
  auto* sc_to = app.add_subcommand("to", "Total orderization (M_1(x),...,M_n(x))");
  static std::string t_lattice, t_elements;
  static CommonOpts t_opts;
  sc_to->add_option("--lattice", t_lattice, "Lattice file")->required();
  sc_to->add_option("--elements", t_elements, "Comma-separated element labels")->required();
  add_common(sc_to, t_opts);
  sc_to->callback([&] { exit_code = run_to(t_lattice, t_elements, t_opts); });

  // check
  auto* sc_check = app.add_subcommand("check", "Check a map law: toi, symmetric, or hom");
  static std::string c_which, c_condition = "all", c_lattice, c_map;
  static CommonOpts c_opts;
  sc_check->add_option("which", c_which, "Law to check")
      ->required()
      ->check(CLI::IsMember({"toi", "symmetric", "hom"}));
  sc_check->add_option("--condition", c_condition, "TOI condition")
      ->check(CLI::IsMember({"def", "c2", "c3", "c4", "all"}));
  sc_check->add_option("--lattice", c_lattice, "Domain/codomain lattice for maps without one");
  sc_check->add_option("--map", c_map, "Map file")->required();
  add_common(sc_check, c_opts);
  sc_check->callback([&] { exit_code = run_check(c_which, c_condition, c_lattice, c_map, c_opts); });

  // enumerate-homs
  auto* sc_enum = app.add_subcommand("enumerate-homs", "All lattice homomorphisms domain^n -> codomain");
  static std::string e_domain, e_codomain;
  static int e_arity = 0;
  static bool e_symmetric = false;
  static CommonOpts e_opts;
  sc_enum->add_option("--domain", e_domain, "Domain lattice file")->required();
  sc_enum->add_option("--codomain", e_codomain, "Codomain lattice file (default: domain)");
  sc_enum->add_option("--arity", e_arity, "Arity n")->required();
  sc_enum->add_flag("--symmetric", e_symmetric, "Keep only symmetric homomorphisms");
  add_common(sc_enum, e_opts);
  sc_enum->callback(
      [&] { exit_code = run_enumerate(e_domain, e_codomain, e_arity, e_symmetric, e_opts); });

  // verify
  auto* sc_verify = app.add_subcommand("verify", "Replay a verified result over its lattice matrix");
  static std::string y_id, y_lattice, y_domain, y_codomain;
  static int y_arity = 0, y_n_max = 0;
  static CommonOpts y_opts;
  sc_verify->add_option("id", y_id, "Verifier id or 'all'")->required();
  sc_verify->add_option("--lattice", y_lattice, "Single-lattice verifier override");
  sc_verify->add_option("--domain", y_domain, "Enumeration domain override");
  sc_verify->add_option("--codomain", y_codomain, "Enumeration codomain override");
  auto* y_arity_opt = sc_verify->add_option("--arity", y_arity, "Arity override");
  auto* y_n_max_opt = sc_verify->add_option("--n-max", y_n_max, "Max arity for median verifiers");
  add_common(sc_verify, y_opts);
  sc_verify->callback([&] {
    exit_code = run_verify(y_id, y_lattice, y_domain, y_codomain, y_arity, y_arity_opt->count() > 0,
                           y_n_max, y_n_max_opt->count() > 0, y_opts);
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::fprintf(stderr, "error: %s\n", e.message.c_str());
    return e.exit_code;
  }
  return exit_code;
}
