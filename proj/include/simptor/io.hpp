#pragma once

#include <string>
#include <string_view>

#include "json.hpp"
#include "simptor/caps.hpp"
#include "simptor/chain.hpp"
#include "simptor/errors.hpp"
#include "simptor/group.hpp"
#include "simptor/simplicial.hpp"

namespace simptor {

using json = nlohmann::json;

// Groups: {"label", "order", "table": [[...]]}. A string is read as a builtin
// spec ("Z4", "D4", "S3", "Z2xZ2").
json to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const json& j, const Caps& caps = {});

// Standalone homs carry their groups inline.
json to_json(const GroupHom& f);
GroupHom hom_from_json(const json& j, const Caps& caps = {});

// {"degree_bound", "objects": [...], "differentials": [...]}, degree 0 first.
// differentials[k] is delta_{k+1}; its source/target are written as labels.
json to_json(const BoundedChainComplex& c);
BoundedChainComplex complex_from_json(const json& j, const Caps& caps = {});

// {"degree_bound", "levels", "faces": {"n,i": hom}, "degeneracies": {"n,i": hom}}.
json to_json(const TruncatedSimplicialGroup& x);
TruncatedSimplicialGroup simplicial_from_json(const json& j, const Caps& caps = {});

json to_json(const Subgroup& s);  // sorted element indices

enum class ObjectKind { kGroup, kHom, kComplex, kSimplicial };
ObjectKind detect_kind(const json& j);

// Zk, Dk (order 2k), Sk, and products joined by 'x'. "1" is the trivial group.
FiniteGroup parse_group_spec(std::string_view spec, const Caps& caps = {});
// dis(G,D), ind(G,D), em(A,n,D).
TruncatedSimplicialGroup parse_simplicial_spec(std::string_view spec, const Caps& caps = {});
bool is_simplicial_spec(std::string_view spec);

json parse_json_text(std::string_view text);  // kParseError on malformed input
json read_json_file(const std::string& path);
// Sorted keys, two-space indent, trailing newline.
std::string dump_canonical(const json& j);

json error_json(const Error& e);

// {"order", "abelian", "invariants"?}.
json group_summary(const FiniteGroup& g);
json level_orders(const BoundedChainComplex& c);
json level_orders(const TruncatedSimplicialGroup& x);
// "id", "zero", "geq:<n>", "ngeq:<n>".
RadicalSpec parse_radical_spec(std::string_view text);

}  // namespace simptor
