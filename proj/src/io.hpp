#pragma once

#include <string>
#include <variant>

#include <json.hpp>

#include "chain.hpp"
#include "lattice.hpp"
#include "maps.hpp"
#include "report.hpp"

namespace latmed {

using Json = nlohmann::ordered_json;

// Either a finite-lattice map or a builtin map on the implicit positive-real
// chain; the two evaluate and report through disjoint code paths.
using AnyMap = std::variant<MultiMap, ChainMap>;

Json parse_json_text(const std::string& text, const std::string& origin);
Json load_json_file(const std::string& path);

FiniteLattice::Ptr lattice_from_json(const Json& j);
// Emits the construction form (chain, powerset, ...) so that parse(emit(L))
// rebuilds the same representation; explicit lattices emit their tables.
Json lattice_to_json(const FiniteLattice& L);

// `fallback_domain`/`fallback_codomain` fill in maps whose file omits the
// lattices (the CLI passes --lattice / --domain / --codomain there).
AnyMap map_from_json(const Json& j, FiniteLattice::Ptr fallback_domain,
                     FiniteLattice::Ptr fallback_codomain);

// Comma-separated element labels, honoring braces and parens so product and
// powerset labels survive: "{a,b},{a}" is two elements.
std::vector<std::string> split_elements(const std::string& text);
std::vector<ElemId> parse_elements(const FiniteLattice& L, const std::string& text);

Json witness_to_json(const Witness& w);
Json check_to_json(const CheckReport& r);
Json run_to_json(const VerificationRun& r);

std::string witness_to_text(const Witness& w);
std::string check_to_text(const CheckReport& r);
std::string run_to_text(const VerificationRun& r);

}  // namespace latmed
