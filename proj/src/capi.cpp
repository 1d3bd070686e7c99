#include "latmed/latmed.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "io.hpp"
#include "median.hpp"
#include "theorems.hpp"
#include "toi.hpp"

using namespace latmed;

struct latmed_lattice {
  FiniteLattice::Ptr impl;
};

struct latmed_map {
  AnyMap impl;
};

namespace {

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

void set_out(char** out, const std::string& s) {
  if (out) *out = dup_string(s);
}

template <typename F>
latmed_status guarded(char** err, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    set_out(err, e.what());
    return static_cast<latmed_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    set_out(err, e.what());
    return LATMED_ERR_INTERNAL;
  }
}

RunOptions parse_options(const char* options_json) {
  RunOptions o;
  if (!options_json || !*options_json) return o;
  Json j = parse_json_text(options_json, "options");
  if (!j.is_object()) throw FormatError("options must be an object");
  if (j.contains("seed")) o.seed = j["seed"].get<uint64_t>();
  if (j.contains("samples")) o.samples = j["samples"].get<uint64_t>();
  if (j.contains("parallelism")) o.parallelism = j["parallelism"].get<int>();
  return o;
}

latmed_status finish_check(const CheckReport& r, char** report) {
  set_out(report, check_to_json(r).dump());
  return r.ok() ? LATMED_OK : LATMED_ERR_CHECK_FAILED;
}

const latmed_lattice* require(const latmed_lattice* lat) {
  if (!lat) throw InvalidArgumentError("lattice handle is null");
  return lat;
}

const latmed_map* require(const latmed_map* map) {
  if (!map) throw InvalidArgumentError("map handle is null");
  return map;
}

std::span<const ElemId> tuple_span(const int32_t* xs, int32_t n) {
  if (n < 0 || (n > 0 && !xs)) throw InvalidArgumentError("element buffer is null or negative-sized");
  return {xs, static_cast<size_t>(n)};
}

}  // namespace

extern "C" {

const char* latmed_version(void) { return "1.0.0"; }

void latmed_string_free(char* s) { std::free(s); }

latmed_status latmed_lattice_from_json(const char* json_text, latmed_lattice** out, char** err) {
  return guarded(err, [&] {
    if (!json_text || !out) throw InvalidArgumentError("json_text and out must not be null");
    auto L = lattice_from_json(parse_json_text(json_text, "lattice text"));
    *out = new latmed_lattice{std::move(L)};
    return LATMED_OK;
  });
}

void latmed_lattice_free(latmed_lattice* lat) { delete lat; }

int32_t latmed_lattice_size(const latmed_lattice* lat) { return lat ? lat->impl->size() : 0; }

latmed_status latmed_lattice_label(const latmed_lattice* lat, int32_t elem, char** out, char** err) {
  return guarded(err, [&] {
    require(lat)->impl->check_element(elem);
    set_out(out, lat->impl->label(elem));
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_find(const latmed_lattice* lat, const char* label, int32_t* out,
                                  char** err) {
  return guarded(err, [&] {
    if (!label || !out) throw InvalidArgumentError("label and out must not be null");
    auto id = require(lat)->impl->find(label);
    if (!id) throw FormatError("unknown lattice element \"" + std::string(label) + "\"");
    *out = *id;
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_meet(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                  char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    *out = require(lat)->impl->meet(a, b);
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_join(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                  char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    *out = require(lat)->impl->join(a, b);
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_leq(const latmed_lattice* lat, int32_t a, int32_t b, int32_t* out,
                                 char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    *out = require(lat)->impl->leq(a, b) ? 1 : 0;
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_to_json(const latmed_lattice* lat, char** out, char** err) {
  return guarded(err, [&] {
    set_out(out, lattice_to_json(*require(lat)->impl).dump());
    return LATMED_OK;
  });
}

latmed_status latmed_lattice_validate(const latmed_lattice* lat, const char* options_json,
                                      char** report, char** err) {
  return guarded(err, [&] {
    return finish_check(require(lat)->impl->validate(parse_options(options_json)), report);
  });
}

latmed_status latmed_lattice_check_distributive(const latmed_lattice* lat, const char* options_json,
                                                char** report, char** err) {
  return guarded(err, [&] {
    return finish_check(require(lat)->impl->check_distributive(parse_options(options_json)), report);
  });
}

latmed_status latmed_median(const latmed_lattice* lat, const int32_t* xs, int32_t n, int32_t k,
                            const char* mode, int32_t* out, char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    const FiniteLattice& L = *require(lat)->impl;
    auto span = tuple_span(xs, n);
    const std::string m = mode && *mode ? mode : "auto";
    if (m == "auto") *out = median_k(L, span, k);
    else if (m == "direct") *out = median_k_direct(L, span, k);
    else if (m == "dual") *out = median_k_dual(L, span, k);
    else if (m == "fast") *out = median_k_fast(L, span, k);
    else throw InvalidArgumentError("unknown median mode \"" + m + "\"");
    return LATMED_OK;
  });
}

latmed_status latmed_median_relative(const latmed_lattice* lat, const int32_t* xs, int32_t n,
                                     int32_t k, int32_t m, int32_t* out, char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    *out = median_relative(*require(lat)->impl, tuple_span(xs, n), k, m);
    return LATMED_OK;
  });
}

latmed_status latmed_total_orderization(const latmed_lattice* lat, const int32_t* xs, int32_t n,
                                        int32_t* out, char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    auto sorted = total_orderization(*require(lat)->impl, tuple_span(xs, n));
    std::memcpy(out, sorted.data(), sorted.size() * sizeof(int32_t));
    return LATMED_OK;
  });
}

latmed_status latmed_map_from_json(const char* json_text, const latmed_lattice* domain,
                                   const latmed_lattice* codomain, latmed_map** out, char** err) {
  return guarded(err, [&] {
    if (!json_text || !out) throw InvalidArgumentError("json_text and out must not be null");
    AnyMap m = map_from_json(parse_json_text(json_text, "map text"),
                             domain ? domain->impl : FiniteLattice::Ptr{},
                             codomain ? codomain->impl : FiniteLattice::Ptr{});
    *out = new latmed_map{std::move(m)};
    return LATMED_OK;
  });
}

void latmed_map_free(latmed_map* map) { delete map; }

int32_t latmed_map_arity(const latmed_map* map) {
  if (!map) return 0;
  return std::visit([](const auto& m) { return m.arity(); }, map->impl);
}

latmed_status latmed_map_eval(const latmed_map* map, const int32_t* xs, int32_t n, int32_t* out,
                              char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    const auto* m = std::get_if<MultiMap>(&require(map)->impl);
    if (!m)
      throw PreconditionError("this map evaluates on the implicit real chain; use latmed_map_eval_real");
    *out = m->eval(tuple_span(xs, n));
    return LATMED_OK;
  });
}

latmed_status latmed_map_eval_real(const latmed_map* map, const double* xs, int32_t n, double* out,
                                   char** err) {
  return guarded(err, [&] {
    if (!out) throw InvalidArgumentError("out must not be null");
    const auto* m = std::get_if<ChainMap>(&require(map)->impl);
    if (!m) throw PreconditionError("this is a finite-lattice map; use latmed_map_eval");
    if (n < 0 || (n > 0 && !xs)) throw InvalidArgumentError("element buffer is null or negative-sized");
    *out = m->eval(std::span<const double>(xs, static_cast<size_t>(n)));
    return LATMED_OK;
  });
}

latmed_status latmed_check(const latmed_map* map, const char* check, const char* options_json,
                           char** report, char** err) {
  return guarded(err, [&] {
    if (!check) throw InvalidArgumentError("check name must not be null");
    const RunOptions opts = parse_options(options_json);
    const std::string name = check;
    const AnyMap& am = require(map)->impl;

    if (const auto* m = std::get_if<MultiMap>(&am)) {
      if (name == "symmetric") return finish_check(is_symmetric(*m, opts), report);
      if (name == "hom") return finish_check(is_n_homomorphism(*m, opts), report);
      if (name == "toi-def") return finish_check(check_toi_def(*m, opts), report);
      if (name == "toi-c2") return finish_check(check_toi_cond2(*m, opts), report);
      if (name == "toi-c3") return finish_check(check_toi_cond3(*m, opts), report);
      if (name == "toi-c4") return finish_check(check_toi_cond4(*m, opts), report);
      if (name == "toi-all") return finish_check(cross_check(*m, opts).summary(), report);
    } else {
      const auto& c = std::get<ChainMap>(am);
      if (name == "symmetric") return finish_check(chain_is_symmetric(c, opts), report);
      if (name == "hom") return finish_check(chain_is_n_homomorphism(c, opts), report);
      if (name == "toi-def") return finish_check(chain_toi_def(c, opts), report);
      if (name == "toi-c2") return finish_check(chain_toi_cond2(c, opts), report);
      if (name == "toi-c3") return finish_check(chain_toi_cond3(c, opts), report);
      if (name == "toi-c4") return finish_check(chain_toi_cond4(c, opts), report);
      if (name == "toi-all") return finish_check(cross_check(c, opts).summary(), report);
    }
    throw InvalidArgumentError("unknown check \"" + name +
                               "\"; expected symmetric, hom, toi-def, toi-c2, toi-c3, toi-c4, or toi-all");
  });
}

latmed_status latmed_enumerate_homs(const latmed_lattice* domain, const latmed_lattice* codomain,
                                    int32_t arity, int32_t symmetric_only, char** out, char** err) {
  return guarded(err, [&] {
    EnumResult res = enumerate_bihoms(require(domain)->impl, require(codomain)->impl, arity,
                                      symmetric_only != 0);
    Json j;
    Json maps = Json::array();
    for (const auto& m : res.maps) {
      const auto& table = std::get<MultiMap::Table>(m.body());
      maps.push_back(table.values);
    }
    j["maps"] = std::move(maps);
    j["homs"] = res.maps.size();
    j["table_space"] = res.table_space;
    j["tables_visited"] = res.tables_visited;
    set_out(out, j.dump());
    return LATMED_OK;
  });
}

latmed_status latmed_verify(const char* id, const char* config_json, char** report, char** err) {
  return guarded(err, [&] {
    if (!id) throw InvalidArgumentError("verifier id must not be null");
    VerifierConfig cfg;
    RunOptions opts;
    if (config_json && *config_json) {
      Json j = parse_json_text(config_json, "config");
      if (!j.is_object()) throw FormatError("config must be an object");
      if (j.contains("lattice")) cfg.lattice = lattice_from_json(j["lattice"]);
      if (j.contains("domain")) cfg.domain = lattice_from_json(j["domain"]);
      if (j.contains("codomain")) cfg.codomain = lattice_from_json(j["codomain"]);
      if (j.contains("arity")) cfg.arity = j["arity"].get<int>();
      if (j.contains("n_max")) cfg.n_max = j["n_max"].get<int>();
      if (j.contains("seed")) opts.seed = j["seed"].get<uint64_t>();
      if (j.contains("samples")) opts.samples = j["samples"].get<uint64_t>();
      if (j.contains("parallelism")) opts.parallelism = j["parallelism"].get<int>();
    }
    VerifyOutcome out_runs = run_verifier(id, cfg, opts);
    Json arr = Json::array();
    for (const auto& r : out_runs.runs) arr.push_back(run_to_json(r));
    set_out(report, arr.dump());
    return out_runs.ok() ? LATMED_OK : LATMED_ERR_CHECK_FAILED;
  });
}

}  // extern "C"
