#include "io.hpp"

#include <fstream>
#include <sstream>

namespace latmed {
namespace {

[[noreturn]] void format_fail(const std::string& msg) { throw FormatError(msg); }

const Json& need(const Json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) format_fail(std::string(what) + " is missing the \"" + key + "\" field");
  return *it;
}

std::string need_string(const Json& j, const char* key, const char* what) {
  const Json& v = need(j, key, what);
  if (!v.is_string()) format_fail(std::string(what) + " field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

int64_t need_int(const Json& j, const char* key, const char* what) {
  const Json& v = need(j, key, what);
  if (!v.is_number_integer()) format_fail(std::string(what) + " field \"" + key + "\" must be an integer");
  return v.get<int64_t>();
}

std::vector<std::string> string_list(const Json& j, const char* what) {
  if (!j.is_array()) format_fail(std::string(what) + " must be an array of strings");
  std::vector<std::string> out;
  out.reserve(j.size());
  for (const auto& e : j) {
    if (!e.is_string()) format_fail(std::string(what) + " must contain only strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

std::vector<std::vector<ElemId>> id_table(const Json& j, const char* what) {
  if (!j.is_array()) format_fail(std::string(what) + " must be an array of rows");
  std::vector<std::vector<ElemId>> out;
  out.reserve(j.size());
  for (const auto& row : j) {
    if (!row.is_array()) format_fail(std::string(what) + " rows must be arrays");
    std::vector<ElemId> r;
    r.reserve(row.size());
    for (const auto& e : row) {
      if (!e.is_number_integer()) format_fail(std::string(what) + " entries must be integers");
      r.push_back(e.get<ElemId>());
    }
    out.push_back(std::move(r));
  }
  return out;
}

ElemId resolve_value(const Json& v, const FiniteLattice& cod, const char* what) {
  if (v.is_number_integer()) {
    int64_t raw = v.get<int64_t>();
    if (raw < 0 || raw >= cod.size())
      format_fail(std::string(what) + " index " + std::to_string(raw) + " is out of range");
    return static_cast<ElemId>(raw);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (auto id = cod.find(s)) return *id;
    format_fail(std::string(what) + " label \"" + s + "\" is not in the codomain");
  }
  format_fail(std::string(what) + " values must be indices or labels");
}

int resolve_set_value(const Json& v, const BareSet& cod, const char* what) {
  if (v.is_number_integer()) {
    int64_t raw = v.get<int64_t>();
    if (raw < 0 || raw >= static_cast<int64_t>(cod.labels.size()))
      format_fail(std::string(what) + " index " + std::to_string(raw) + " is out of range");
    return static_cast<int>(raw);
  }
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    for (size_t i = 0; i < cod.labels.size(); ++i)
      if (cod.labels[i] == s) return static_cast<int>(i);
    format_fail(std::string(what) + " label \"" + s + "\" is not in the codomain set");
  }
  format_fail(std::string(what) + " values must be indices or labels");
}

bool is_chain_map_body(const Json& body) {
  return body.is_object() && body.contains("builtin") && body["builtin"].is_string() &&
         body["builtin"].get<std::string>() == "weighted-geomean";
}

ChainMap chain_map_from_body(const Json& body) {
  const Json& w = need(body, "w", "weighted-geomean");
  if (!w.is_array() || w.size() != 2 || !w[0].is_number() || !w[1].is_number())
    format_fail("weighted-geomean needs \"w\": [w1, w2]");
  return ChainMap::weighted_geomean(w[0].get<double>(), w[1].get<double>());
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& origin) {
  Json j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) format_fail(origin + " is not valid structured text");
  return j;
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) format_fail("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str(), path);
}

FiniteLattice::Ptr lattice_from_json(const Json& j) {
  if (!j.is_object()) format_fail("a lattice description must be an object");
  const std::string kind = need_string(j, "kind", "lattice");

  if (kind == "chain") {
    return FiniteLattice::make_chain(static_cast<int64_t>(need_int(j, "size", "chain lattice")));
  }
  if (kind == "powerset") {
    return FiniteLattice::make_powerset(string_list(need(j, "ground", "powerset lattice"), "\"ground\""));
  }
  if (kind == "divisor") {
    return FiniteLattice::make_divisor(static_cast<int64_t>(need_int(j, "n", "divisor lattice")));
  }
  if (kind == "product") {
    const Json& f = need(j, "factors", "product lattice");
    if (!f.is_array() || f.size() != 2) format_fail("product lattice needs exactly two factors");
    return FiniteLattice::make_product(lattice_from_json(f[0]), lattice_from_json(f[1]));
  }
  if (kind == "downset") {
    auto elements = string_list(need(j, "elements", "downset lattice"), "\"elements\"");
    const Json& cv = need(j, "covers", "downset lattice");
    if (!cv.is_array()) format_fail("\"covers\" must be an array of [lower, upper] pairs");
    std::vector<std::pair<std::string, std::string>> covers;
    covers.reserve(cv.size());
    for (const auto& e : cv) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
        format_fail("each cover must be an array [lower, upper] of element names");
      covers.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
    }
    return FiniteLattice::make_downset(elements, covers);
  }
  if (kind == "explicit") {
    auto labels = string_list(need(j, "labels", "explicit lattice"), "\"labels\"");
    auto meet = id_table(need(j, "meet", "explicit lattice"), "\"meet\"");
    auto join = id_table(need(j, "join", "explicit lattice"), "\"join\"");
    return FiniteLattice::make_explicit(labels, meet, join);
  }
  format_fail("unknown lattice kind \"" + kind + "\"");
}

Json lattice_to_json(const FiniteLattice& L) {
  Json j;
  switch (L.kind()) {
    case LatticeKind::Chain:
      j["kind"] = "chain";
      j["size"] = L.size();
      return j;
    case LatticeKind::Powerset:
      j["kind"] = "powerset";
      j["ground"] = L.ground();
      return j;
    case LatticeKind::Divisor:
      j["kind"] = "divisor";
      j["n"] = L.divisor_n();
      return j;
    case LatticeKind::Product:
      j["kind"] = "product";
      j["factors"] = Json::array({lattice_to_json(*L.factor(0)), lattice_to_json(*L.factor(1))});
      return j;
    case LatticeKind::Downset: {
      j["kind"] = "downset";
      j["elements"] = L.poset_elements();
      Json covers = Json::array();
      for (const auto& [lower, upper] : L.poset_covers()) covers.push_back(Json::array({lower, upper}));
      j["covers"] = std::move(covers);
      return j;
    }
    case LatticeKind::Explicit:
      break;
  }
  j["kind"] = "explicit";
  Json labels = Json::array();
  for (ElemId x = 0; x < L.size(); ++x) labels.push_back(L.label(x));
  j["labels"] = std::move(labels);
  Json meet = Json::array(), join = Json::array();
  for (ElemId a = 0; a < L.size(); ++a) {
    Json mrow = Json::array(), jrow = Json::array();
    for (ElemId b = 0; b < L.size(); ++b) {
      mrow.push_back(L.meet_u(a, b));
      jrow.push_back(L.join_u(a, b));
    }
    meet.push_back(std::move(mrow));
    join.push_back(std::move(jrow));
  }
  j["meet"] = std::move(meet);
  j["join"] = std::move(join);
  return j;
}

AnyMap map_from_json(const Json& j, FiniteLattice::Ptr fallback_domain,
                     FiniteLattice::Ptr fallback_codomain) {
  if (!j.is_object()) format_fail("a map description must be an object");

  // Top-level shorthand for the implicit-chain builtin.
  if (is_chain_map_body(j)) return chain_map_from_body(j);
  const Json& body = need(j, "body", "map");
  if (!body.is_object()) format_fail("map \"body\" must be an object");
  if (is_chain_map_body(body)) return chain_map_from_body(body);

  FiniteLattice::Ptr domain = fallback_domain;
  if (j.contains("domain")) domain = lattice_from_json(j["domain"]);
  if (!domain) format_fail("map has no domain lattice; supply one in the file or via the command line");

  MultiMap::Codomain codomain;
  bool have_codomain = false;
  if (j.contains("codomain")) {
    const Json& c = j["codomain"];
    if (c.is_object() && c.contains("kind") && c["kind"].is_string() &&
        c["kind"].get<std::string>() == "set") {
      codomain = BareSet{string_list(need(c, "labels", "bare-set codomain"), "\"labels\"")};
    } else {
      codomain = lattice_from_json(c);
    }
    have_codomain = true;
  } else if (fallback_codomain) {
    codomain = fallback_codomain;
    have_codomain = true;
  }

  int arity = 0;
  if (j.contains("arity")) {
    if (!j["arity"].is_number_integer()) format_fail("map \"arity\" must be an integer");
    arity = j["arity"].get<int>();
  }

  if (body.contains("table")) {
    const Json& t = body["table"];
    if (!t.is_array()) format_fail("map \"table\" must be a flat row-major array");
    if (!have_codomain) {
      codomain = domain;
      have_codomain = true;
    }
    if (arity == 0) {
      // Infer arity from the table length when absent.
      uint64_t cells = t.size(), sz = static_cast<uint64_t>(domain->size());
      int n = 0;
      uint64_t acc = 1;
      while (acc < cells && n < 16) {
        acc *= sz;
        ++n;
      }
      if (acc != cells) format_fail("table length does not match any power of the domain size");
      arity = n == 0 ? 1 : n;
    }
    std::vector<ElemId> values;
    values.reserve(t.size());
    if (std::holds_alternative<FiniteLattice::Ptr>(codomain)) {
      const auto& cod = *std::get<FiniteLattice::Ptr>(codomain);
      for (const auto& v : t) values.push_back(resolve_value(v, cod, "table"));
    } else {
      const auto& cod = std::get<BareSet>(codomain);
      for (const auto& v : t) values.push_back(resolve_set_value(v, cod, "table"));
    }
    return MultiMap(arity, domain, codomain, MultiMap::Table{std::move(values)});
  }

  const std::string builtin = need_string(body, "builtin", "map body");
  if (arity == 0) arity = 2;
  if (!have_codomain) codomain = domain;

  if (builtin == "projection") {
    return MultiMap(arity, domain, codomain,
                    MultiMap::Projection{static_cast<int>(need_int(body, "i", "projection"))});
  }
  if (builtin == "median") {
    return MultiMap(arity, domain, codomain,
                    MultiMap::MedianK{static_cast<int>(need_int(body, "k", "median"))});
  }
  if (builtin == "constant") {
    const Json& c = need(body, "c", "constant");
    ElemId value;
    if (std::holds_alternative<FiniteLattice::Ptr>(codomain))
      value = resolve_value(c, *std::get<FiniteLattice::Ptr>(codomain), "constant");
    else
      value = resolve_set_value(c, std::get<BareSet>(codomain), "constant");
    return MultiMap(arity, domain, codomain, MultiMap::Constant{value});
  }
  if (builtin == "composition") {
    AnyMap inner = map_from_json(need(body, "inner", "composition"), domain, nullptr);
    if (!std::holds_alternative<MultiMap>(inner))
      format_fail("composition parts must be finite-lattice maps");
    const MultiMap& in = std::get<MultiMap>(inner);
    const auto* mid = std::get_if<FiniteLattice::Ptr>(&in.codomain());
    if (!mid || !*mid) format_fail("composition inner map must have a lattice codomain");
    AnyMap outer = map_from_json(need(body, "outer", "composition"), *mid, nullptr);
    if (!std::holds_alternative<MultiMap>(outer))
      format_fail("composition parts must be finite-lattice maps");
    auto comp = MultiMap::Composition{std::make_shared<MultiMap>(std::get<MultiMap>(std::move(inner))),
                                      std::make_shared<MultiMap>(std::get<MultiMap>(std::move(outer)))};
    MultiMap::Codomain final_cod = comp.outer->codomain();
    return MultiMap(in.arity(), domain, final_cod, std::move(comp));
  }
  format_fail("unknown map builtin \"" + builtin + "\"");
}

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

std::vector<ElemId> parse_elements(const FiniteLattice& L, const std::string& text) {
  std::vector<ElemId> out;
  for (const auto& part : split_elements(text)) {
    auto id = L.find(part);
    if (!id) throw FormatError("unknown lattice element \"" + part + "\"");
    out.push_back(*id);
  }
  return out;
}

Json witness_to_json(const Witness& w) {
  Json j;
  j["inputs"] = w.inputs;
  if (!w.real_inputs.empty()) j["reals"] = w.real_inputs;
  if (!w.slots.empty()) j["slots"] = w.slots;
  j["lhs"] = w.lhs;
  j["rhs"] = w.rhs;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

Json check_to_json(const CheckReport& r) {
  Json j;
  j["law"] = r.law;
  j["verdict"] = to_string(r.verdict);
  j["counts"] = r.counts;
  if (r.witness) j["witness"] = witness_to_json(*r.witness);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

Json run_to_json(const VerificationRun& r) {
  Json j;
  j["theorem"] = r.theorem;
  j["matrix"] = r.matrix;
  j["verdict"] = to_string(r.verdict);
  Json counts = Json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  j["counts"] = std::move(counts);
  Json ws = Json::array();
  for (const auto& w : r.witnesses) ws.push_back(witness_to_json(w));
  j["witnesses"] = std::move(ws);
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

namespace {

std::string tuple_text(const std::vector<std::string>& t) {
  std::string s = "(";
  for (size_t i = 0; i < t.size(); ++i) {
    if (i) s += ",";
    s += t[i];
  }
  return s + ")";
}

}  // namespace

std::string witness_to_text(const Witness& w) {
  std::string s = "witness:";
  for (const auto& t : w.inputs) s += " " + tuple_text(t);
  if (!w.slots.empty()) {
    s += " slots(";
    for (size_t i = 0; i < w.slots.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(w.slots[i]);
    }
    s += ")";
  }
  s += " lhs=" + w.lhs + " rhs=" + w.rhs;
  if (!w.note.empty()) s += "  [" + w.note + "]";
  return s;
}

std::string check_to_text(const CheckReport& r) {
  std::string s = r.law + ": " + to_string(r.verdict) + " (" + std::to_string(r.counts) + " instances";
  if (!r.note.empty()) s += "; " + r.note;
  s += ")";
  if (r.witness) s += "\n  " + witness_to_text(*r.witness);
  return s;
}

std::string run_to_text(const VerificationRun& r) {
  std::string s = r.theorem + " [" + r.matrix + "]: " + to_string(r.verdict);
  if (!r.counts.empty()) {
    s += " (";
    for (size_t i = 0; i < r.counts.size(); ++i) {
      if (i) s += ", ";
      s += r.counts[i].first + "=" + std::to_string(r.counts[i].second);
    }
    s += ")";
  }
  if (!r.note.empty()) s += "\n  note: " + r.note;
  for (const auto& w : r.witnesses) s += "\n  " + witness_to_text(w);
  return s;
}

}  // namespace latmed
