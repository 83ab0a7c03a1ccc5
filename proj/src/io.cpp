#include "simptor/io.hpp"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "simptor/errors.hpp"

namespace simptor {

namespace {

void require_keys(const json& j, std::initializer_list<const char*> keys, const std::string& what) {
  if (!j.is_object()) fail(ErrorCode::kValidationError, what + " must be a JSON object");
  std::set<std::string> allowed(keys.begin(), keys.end());
  for (const auto& [k, v] : j.items()) {
    if (!allowed.count(k)) fail(ErrorCode::kValidationError, what + " has unknown field \"" + k + "\"");
  }
  for (const char* k : keys) {
    if (!j.contains(k)) fail(ErrorCode::kValidationError, what + " is missing \"" + std::string(k) + "\"");
  }
}

std::size_t as_size(const json& j, const std::string& what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) fail(ErrorCode::kValidationError, what + " must be a non-negative integer");
  return j.get<std::size_t>();
}

std::vector<Elem> as_map(const json& j, std::size_t length, std::size_t bound, const std::string& what) {
  if (!j.is_array() || j.size() != length) {
    fail(ErrorCode::kValidationError, what + " must be an array of " + std::to_string(length) + " integers");
  }
  std::vector<Elem> out;
  out.reserve(length);
  for (const auto& v : j) {
    std::size_t x = as_size(v, what + " entry");
    if (x >= bound) fail(ErrorCode::kValidationError, what + " entry " + std::to_string(x) + " out of range");
    out.push_back(static_cast<Elem>(x));
  }
  return out;
}

json map_json(const std::vector<Elem>& map) {
  json a = json::array();
  for (Elem x : map) a.push_back(x);
  return a;
}

json positional_hom(const GroupHom& f) {
  return {{"source", f.source.label()}, {"target", f.target.label()}, {"map", map_json(f.map)}};
}

// A hom whose groups are fixed by its position in a complex or simplicial object.
GroupHom positional_hom_from_json(const json& j, const FiniteGroup& source, const FiniteGroup& target,
                                  const std::string& what, const Caps& caps) {
  require_keys(j, {"source", "target", "map"}, what);
  auto check_side = [&](const json& side, const FiniteGroup& g, const char* name) {
    if (side.is_string()) {
      if (side.get<std::string>() != g.label()) {
        fail(ErrorCode::kValidationError, what + " " + name + " \"" + side.get<std::string>() + "\" does not match \"" +
                                              g.label() + "\"");
      }
      return;
    }
    auto inline_group = group_from_json(side, caps);
    if (inline_group.order() != g.order() || inline_group.table() != g.table()) {
      fail(ErrorCode::kValidationError, what + " " + name + " differs from the group at its position");
    }
  };
  check_side(j["source"], source, "source");
  check_side(j["target"], target, "target");
  return GroupHom::checked(source, target, as_map(j["map"], source.order(), target.order(), what + " map"));
}

std::vector<std::string> split_top_level(std::string_view s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

int parse_int(std::string_view s, const std::string& what) {
  int v = 0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size() || s.empty()) {
    fail(ErrorCode::kParseError, "expected an integer for " + what + ", got \"" + std::string(s) + "\"");
  }
  return v;
}

}  // namespace

json to_json(const FiniteGroup& g) {
  json rows = json::array();
  const std::size_t n = g.order();
  for (Elem a = 0; a < n; ++a) {
    json row = json::array();
    for (Elem b = 0; b < n; ++b) row.push_back(g.mul(a, b));
    rows.push_back(std::move(row));
  }
  return {{"label", g.label()}, {"order", n}, {"table", std::move(rows)}};
}

FiniteGroup group_from_json(const json& j, const Caps& caps) {
  if (j.is_string()) return parse_group_spec(j.get<std::string>(), caps);
  require_keys(j, {"label", "order", "table"}, "group");
  if (!j["label"].is_string()) fail(ErrorCode::kValidationError, "group label must be a string");
  std::size_t n = as_size(j["order"], "group order");
  if (n == 0) fail(ErrorCode::kValidationError, "group order must be positive");
  if (n > caps.max_order) {
    fail(ErrorCode::kOrderCap, "order " + std::to_string(n) + " exceeds max-order " + std::to_string(caps.max_order));
  }
  const auto& rows = j["table"];
  if (!rows.is_array() || rows.size() != n) fail(ErrorCode::kValidationError, "group table must have order rows");
  std::vector<Elem> table;
  table.reserve(n * n);
  for (const auto& row : rows) {
    auto r = as_map(row, n, n, "group table row");
    table.insert(table.end(), r.begin(), r.end());
  }
  return FiniteGroup::from_table(n, std::move(table), j["label"].get<std::string>(), caps);
}

json to_json(const GroupHom& f) {
  return {{"source", to_json(f.source)}, {"target", to_json(f.target)}, {"map", map_json(f.map)}};
}

GroupHom hom_from_json(const json& j, const Caps& caps) {
  require_keys(j, {"source", "target", "map"}, "hom");
  auto source = group_from_json(j["source"], caps);
  auto target = group_from_json(j["target"], caps);
  return GroupHom::checked(source, target, as_map(j["map"], source.order(), target.order(), "hom map"));
}

json to_json(const BoundedChainComplex& c) {
  json objects = json::array();
  json diffs = json::array();
  for (int i = 0; i <= c.degree_bound(); ++i) objects.push_back(to_json(c.object(i)));
  for (int i = 1; i <= c.degree_bound(); ++i) diffs.push_back(positional_hom(c.delta(i)));
  return {{"degree_bound", c.degree_bound()}, {"objects", std::move(objects)}, {"differentials", std::move(diffs)}};
}

BoundedChainComplex complex_from_json(const json& j, const Caps& caps) {
  require_keys(j, {"degree_bound", "objects", "differentials"}, "complex");
  const std::size_t D = as_size(j["degree_bound"], "degree_bound");
  if (!j["objects"].is_array() || j["objects"].size() != D + 1) {
    fail(ErrorCode::kValidationError, "complex needs degree_bound + 1 objects");
  }
  if (!j["differentials"].is_array() || j["differentials"].size() != D) {
    fail(ErrorCode::kValidationError, "complex needs degree_bound differentials");
  }
  std::vector<FiniteGroup> objects;
  for (const auto& g : j["objects"]) objects.push_back(group_from_json(g, caps));
  std::vector<GroupHom> diffs;
  for (std::size_t k = 0; k < D; ++k) {
    diffs.push_back(positional_hom_from_json(j["differentials"][k], objects[k + 1], objects[k],
                                             "delta_" + std::to_string(k + 1), caps));
  }
  return make_complex(std::move(objects), std::move(diffs));
}

json to_json(const TruncatedSimplicialGroup& x) {
  json levels = json::array();
  json faces = json::object();
  json degs = json::object();
  const int D = x.degree_bound();
  for (int n = 0; n <= D; ++n) levels.push_back(to_json(x.level(n)));
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) faces[std::to_string(n) + "," + std::to_string(i)] = positional_hom(x.d(n, i));
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) degs[std::to_string(n) + "," + std::to_string(i)] = positional_hom(x.s(n, i));
  }
  return {{"degree_bound", D}, {"levels", std::move(levels)}, {"faces", std::move(faces)}, {"degeneracies", std::move(degs)}};
}

TruncatedSimplicialGroup simplicial_from_json(const json& j, const Caps& caps) {
  require_keys(j, {"degree_bound", "levels", "faces", "degeneracies"}, "simplicial group");
  const int D = static_cast<int>(as_size(j["degree_bound"], "degree_bound"));
  if (!j["levels"].is_array() || j["levels"].size() != static_cast<std::size_t>(D + 1)) {
    fail(ErrorCode::kValidationError, "simplicial group needs degree_bound + 1 levels");
  }
  TruncatedSimplicialGroup x;
  for (const auto& g : j["levels"]) x.levels.push_back(group_from_json(g, caps));
  x.faces.resize(static_cast<std::size_t>(D + 1));
  x.degeneracies.resize(static_cast<std::size_t>(D + 1));
  const auto& faces = j["faces"];
  const auto& degs = j["degeneracies"];
  if (!faces.is_object() || !degs.is_object()) fail(ErrorCode::kValidationError, "faces and degeneracies must be objects");
  std::size_t face_count = 0;
  std::size_t deg_count = 0;
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) {
      auto key = std::to_string(n) + "," + std::to_string(i);
      if (!faces.contains(key)) fail(ErrorCode::kValidationError, "missing face \"" + key + "\"");
      x.faces[n].push_back(positional_hom_from_json(faces[key], x.level(n), x.level(n - 1), "face " + key, caps));
      ++face_count;
    }
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) {
      auto key = std::to_string(n) + "," + std::to_string(i);
      if (!degs.contains(key)) fail(ErrorCode::kValidationError, "missing degeneracy \"" + key + "\"");
      x.degeneracies[n].push_back(
          positional_hom_from_json(degs[key], x.level(n), x.level(n + 1), "degeneracy " + key, caps));
      ++deg_count;
    }
  }
  if (faces.size() != face_count) fail(ErrorCode::kValidationError, "unexpected face keys");
  if (degs.size() != deg_count) fail(ErrorCode::kValidationError, "unexpected degeneracy keys");
  require_simplicial(x);
  return x;
}

json to_json(const Subgroup& s) { return map_json(s.elements); }

ObjectKind detect_kind(const json& j) {
  if (j.is_string()) return is_simplicial_spec(j.get<std::string>()) ? ObjectKind::kSimplicial : ObjectKind::kGroup;
  if (!j.is_object()) fail(ErrorCode::kValidationError, "expected a JSON object");
  if (j.contains("levels")) return ObjectKind::kSimplicial;
  if (j.contains("objects")) return ObjectKind::kComplex;
  if (j.contains("map")) return ObjectKind::kHom;
  if (j.contains("table")) return ObjectKind::kGroup;
  fail(ErrorCode::kValidationError, "cannot tell which kind of object this is");
}

FiniteGroup parse_group_spec(std::string_view spec, const Caps& caps) {
  auto parts = split_top_level(spec, 'x');
  std::optional<FiniteGroup> out;
  for (const auto& p : parts) {
    if (p.empty()) fail(ErrorCode::kParseError, "empty factor in \"" + std::string(spec) + "\"");
    FiniteGroup g = trivial_group();
    if (p == "1") {
      g = trivial_group();
    } else {
      int k = parse_int(std::string_view(p).substr(1), "group spec");
      if (k < 1) fail(ErrorCode::kParseError, "group parameter must be positive in \"" + p + "\"");
      switch (p[0]) {
        case 'Z': g = cyclic(static_cast<std::size_t>(k), caps); break;
        case 'D': g = dihedral(static_cast<std::size_t>(k), caps); break;
        case 'S': g = symmetric(static_cast<std::size_t>(k), caps); break;
        default: fail(ErrorCode::kParseError, "unknown group \"" + p + "\"; expected Zk, Dk or Sk");
      }
    }
    out = out ? direct_product(*out, g, caps) : g;
  }
  return *out;
}

bool is_simplicial_spec(std::string_view spec) { return spec.find('(') != std::string_view::npos; }

TruncatedSimplicialGroup parse_simplicial_spec(std::string_view spec, const Caps& caps) {
  auto open = spec.find('(');
  if (open == std::string_view::npos || spec.back() != ')') {
    fail(ErrorCode::kParseError, "expected dis(G,D), ind(G,D) or em(A,n,D), got \"" + std::string(spec) + "\"");
  }
  auto name = spec.substr(0, open);
  auto args = split_top_level(spec.substr(open + 1, spec.size() - open - 2), ',');
  if (name == "dis" || name == "ind") {
    if (args.size() != 2) fail(ErrorCode::kParseError, std::string(name) + " takes (G, D)");
    auto g = parse_group_spec(args[0], caps);
    int D = parse_int(args[1], "D");
    return name == "dis" ? discrete(g, D) : indiscrete(g, D, caps);
  }
  if (name == "em") {
    if (args.size() != 3) fail(ErrorCode::kParseError, "em takes (A, n, D)");
    return eilenberg_maclane(parse_group_spec(args[0], caps), parse_int(args[1], "n"), parse_int(args[2], "D"), caps);
  }
  fail(ErrorCode::kParseError, "unknown builtin \"" + std::string(name) + "\"");
}

json parse_json_text(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::kParseError, e.what());
  }
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::kParseError, "cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

std::string dump_canonical(const json& j) { return j.dump(2) + "\n"; }

json error_json(const Error& e) {
  return {{"error", std::string(error_name(e.code()))}, {"message", e.what()}, {"exit_status", exit_status(e.code())}};
}

json group_summary(const FiniteGroup& g) {
  json j = {{"order", g.order()}, {"abelian", g.is_abelian()}};
  if (g.is_abelian()) j["invariants"] = abelian_invariants(g);
  return j;
}

json level_orders(const BoundedChainComplex& c) {
  json a = json::array();
  for (int i = 0; i <= c.degree_bound(); ++i) a.push_back(c.object(i).order());
  return a;
}

json level_orders(const TruncatedSimplicialGroup& x) {
  json a = json::array();
  for (const auto& g : x.levels) a.push_back(g.order());
  return a;
}

RadicalSpec parse_radical_spec(std::string_view text) {
  if (text == "id" || text == "whole") return {RadicalSpec::kWhole, 0};
  if (text == "zero" || text == "0") return {RadicalSpec::kZero, 0};
  auto colon = text.find(':');
  if (colon != std::string_view::npos) {
    auto kind = text.substr(0, colon);
    auto digits = text.substr(colon + 1);
    int n = -1;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec != std::errc{} || ptr != digits.data() + digits.size() || n < 0) {
      fail(ErrorCode::kParseError, "bad degree in \"" + std::string(text) + "\"");
    }
    if (kind == "geq") return {RadicalSpec::kGeq, n};
    if (kind == "ngeq") return {RadicalSpec::kNgeq, n};
  }
  fail(ErrorCode::kParseError, "expected id, zero, geq:<n> or ngeq:<n>, got \"" + std::string(text) + "\"");
}

}  // namespace simptor
