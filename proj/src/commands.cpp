#include "simptor/commands.hpp"

#include <filesystem>
#include <sstream>

#include "simptor/errors.hpp"
#include "simptor/verify.hpp"

namespace simptor {

namespace {

const BoundedChainComplex& need_complex(const Input& in, const std::string& verb) {
  if (!in.complex) fail(ErrorCode::kValidationError, verb + " expects a chain complex");
  return *in.complex;
}

const TruncatedSimplicialGroup& need_simplicial(const Input& in, const std::string& verb) {
  if (!in.simplicial) fail(ErrorCode::kValidationError, verb + " expects a simplicial group");
  return *in.simplicial;
}

std::string orders_text(const json& orders) {
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? " " : "") + std::to_string(orders[i].get<std::size_t>());
  return s;
}

std::string group_text(const FiniteGroup& g) {
  if (g.is_trivial()) return "0";
  if (!g.is_abelian()) return "nonabelian, order " + std::to_string(g.order());
  std::string s;
  for (auto k : abelian_invariants(g)) s += (s.empty() ? "Z" : " x Z") + std::to_string(k);
  return s;
}

json subobject_levels(const std::vector<Subgroup>& levels) {
  json a = json::array();
  for (const auto& s : levels) a.push_back(to_json(s));
  return a;
}

json subgroup_orders(const std::vector<Subgroup>& levels) {
  json a = json::array();
  for (const auto& l : levels) a.push_back(l.order());
  return a;
}

json homotopy_rows(const TruncatedSimplicialGroup& x, std::string& text) {
  json rows = json::array();
  auto m = moore_complex(x).complex;
  for (int i = 0; i <= x.degree_bound(); ++i) {
    auto g = homology_H(m, i);
    json row = group_summary(g);
    row["n"] = i;
    row["truncation_sensitive"] = truncation_sensitive(x, i);
    rows.push_back(row);
    text += "pi_" + std::to_string(i) + " = " + group_text(g) + (truncation_sensitive(x, i) ? "  (truncation-sensitive)" : "") + "\n";
  }
  return rows;
}

template <class Tower>
json tower_rows(const Tower& t) {
  if (auto bad = t.check()) fail(ErrorCode::kNotNested, *bad);
  json rows = json::array();
  for (const auto& r : t.rows) rows.push_back({{"name", r.name}, {"orders", subgroup_orders(r.sub.levels)}});
  return rows;
}

}  // namespace

Input load_input(const json& j, const Caps& caps) {
  Input in;
  in.kind = detect_kind(j);
  switch (in.kind) {
    case ObjectKind::kGroup: in.group = group_from_json(j, caps); break;
    case ObjectKind::kHom:
      in.hom = hom_from_json(j, caps);
      in.complex = make_complex({in.hom->target, in.hom->source}, {*in.hom});
      break;
    case ObjectKind::kComplex: in.complex = complex_from_json(j, caps); break;
    case ObjectKind::kSimplicial:
      in.simplicial = j.is_string() ? parse_simplicial_spec(j.get<std::string>(), caps) : simplicial_from_json(j, caps);
      break;
  }
  return in;
}

Input load_input(const std::string& source, const Caps& caps) {
  if (!source.empty() && (source.front() == '{' || source.front() == '[')) return load_input(parse_json_text(source), caps);
  std::error_code ec;
  if (std::filesystem::is_regular_file(source, ec)) return load_input(read_json_file(source), caps);
  return load_input(json(source), caps);
}

CommandOutput run_build(const Input& in) {
  CommandOutput out;
  std::ostringstream t;
  switch (in.kind) {
    case ObjectKind::kGroup:
      out.value = to_json(in.group);
      t << in.group.label() << ": " << group_text(in.group) << "\n";
      break;
    case ObjectKind::kHom:
      out.value = to_json(*in.hom);
      t << "hom " << in.hom->source.order() << " -> " << in.hom->target.order() << "\n";
      break;
    case ObjectKind::kComplex:
      out.value = to_json(*in.complex);
      t << "complex, orders by degree: " << orders_text(level_orders(*in.complex)) << "\n";
      break;
    case ObjectKind::kSimplicial:
      out.value = to_json(*in.simplicial);
      t << "simplicial group, level orders: " << orders_text(level_orders(*in.simplicial)) << "\n";
      break;
  }
  out.text = t.str();
  return out;
}

CommandOutput run_moore(const Input& in) {
  auto mc = moore_complex(need_simplicial(in, "moore")).complex;
  return {to_json(mc), "N orders by degree: " + orders_text(level_orders(mc)) + "\n"};
}

CommandOutput run_homotopy(const Input& in) {
  CommandOutput out;
  if (in.complex) {
    json rows = json::array();
    for (int i = 0; i <= in.complex->degree_bound(); ++i) {
      auto h = homology_H(*in.complex, i);
      json row = group_summary(h);
      row["n"] = i;
      rows.push_back(row);
      out.text += "H_" + std::to_string(i) + " = " + group_text(h) + "\n";
    }
    out.value = {{"homology", rows}};
  } else {
    out.value = {{"homotopy", homotopy_rows(need_simplicial(in, "homotopy"), out.text)}};
  }
  return out;
}

CommandOutput run_radical(const Input& in, const std::string& theory, int n) {
  std::vector<Subgroup> torsion;
  json quotient, quotient_orders;
  if (theory == "cok" || theory == "ker") {
    const auto& c = need_complex(in, "radical --theory " + theory);
    auto r = theory == "cok" ? radical_cok(c, n) : radical_ker(c, n);
    torsion = r.torsion.levels;
    quotient = to_json(r.ses.right);
    quotient_orders = level_orders(r.ses.right);
  } else if (theory == "geq" || theory == "ngeq") {
    const auto& x = need_simplicial(in, "radical --theory " + theory);
    auto r = theory == "geq" ? mu_geq(x, n) : mu_ngeq(x, n);
    torsion = r.torsion.levels;
    quotient = to_json(r.quotient.object);
    quotient_orders = level_orders(r.quotient.object);
  } else {
    fail(ErrorCode::kParseError, "unknown theory \"" + theory + "\"");
  }
  auto torsion_orders = subgroup_orders(torsion);
  CommandOutput out;
  out.value = {{"theory", theory}, {"n", n}, {"torsion", subobject_levels(torsion)},
               {"torsion_orders", torsion_orders}, {"quotient", quotient}};
  out.text = theory + "_" + std::to_string(n) + " torsion orders: " + orders_text(torsion_orders) +
             "\nquotient orders: " + orders_text(quotient_orders) + "\n";
  return out;
}

CommandOutput run_cot(const Input& in, int n) {
  if (in.complex) {
    auto c = cotruncate_above(*in.complex, n).complex;
    return {to_json(c), "cot_" + std::to_string(n) + " orders by degree: " + orders_text(level_orders(c)) + "\n"};
  }
  auto c = porter_cotruncation(need_simplicial(in, "cot"), n).object;
  return {to_json(c), "Cot_" + std::to_string(n) + " level orders: " + orders_text(level_orders(c)) + "\n"};
}

CommandOutput run_cosk(const Input& in, int n, const Caps& caps) {
  if (in.complex) {
    auto c = coskeleton_chain(*in.complex, n);
    return {to_json(c), "cosk_" + std::to_string(n) + " orders by degree: " + orders_text(level_orders(c)) + "\n"};
  }
  auto c = coskeleton_simplicial(need_simplicial(in, "cosk"), n, caps).object;
  return {to_json(c), "Cosk_" + std::to_string(n) + " level orders: " + orders_text(level_orders(c)) + "\n"};
}

CommandOutput run_lattice(const Input& in) {
  if (in.complex) {
    auto t = lattice_chain(*in.complex);
    return {{{"rows", tower_rows(t)}}, render_tower(t)};
  }
  auto t = lattice_simplicial(need_simplicial(in, "lattice"));
  return {{{"rows", tower_rows(t)}}, render_tower(t)};
}

CommandOutput run_em(const std::string& group, int n, int D, const Caps& caps) {
  auto x = eilenberg_maclane(parse_group_spec(group, caps), n, D, caps);
  return {to_json(x), "K(" + group + "," + std::to_string(n) + ") level orders: " + orders_text(level_orders(x)) + "\n"};
}

CommandOutput run_pi(const Input& in, const std::string& upper, const std::string& lower) {
  auto x = need_simplicial(in, "pi");
  auto q = fundamental_functor(x, parse_radical_spec(upper), parse_radical_spec(lower)).object;
  std::string text;
  auto h = homotopy_rows(q, text);
  return {{{"object", to_json(q)}, {"homotopy", h}, {"level_orders", level_orders(q)}},
          upper + " / " + lower + " level orders: " + orders_text(level_orders(q)) + "\n" + text};
}

CommandOutput run_verify(const std::string& suite, std::uint64_t seed, const Caps& caps) {
  std::vector<std::string> suites;
  if (suite == "all") {
    suites = suite_names();
  } else {
    suites = {suite};
  }
  Corpus corpus;
  corpus.seed = seed;
  bool chain = false, simp = false;
  for (const auto& s : suites) {
    chain = chain || suite_needs_chain(s);
    simp = simp || suite_needs_simplicial(s);
  }
  if (chain) corpus.complexes = chain_corpus(seed, caps);
  if (simp) corpus.simplicials = simplicial_corpus(seed, caps);
  std::vector<CheckResult> results;
  for (const auto& s : suites) {
    auto r = run_suite(s, corpus, caps);
    results.insert(results.end(), r.begin(), r.end());
  }
  CommandOutput out;
  out.value = report_json(results, seed);
  std::ostringstream t;
  for (const auto& [name, counts] : out.value["summary"].items()) {
    t << name << ": " << counts["pass"] << " pass, " << counts["fail"] << " fail, " << counts["skipped"] << " skipped\n";
  }
  for (const auto& r : results) {
    if (r.status == Status::kFail) t << "FAIL " << r.suite << " " << r.id << "\n";
  }
  out.text = t.str();
  out.status = any_failed(results) ? 1 : 0;
  return out;
}

}  // namespace simptor
