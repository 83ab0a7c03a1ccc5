#include "simptor/verify.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <random>

#include "simptor/errors.hpp"

namespace simptor {

namespace {

using Outcome = std::optional<std::string>;

Outcome expect(bool ok, const std::string& detail) { return ok ? Outcome{} : Outcome{detail}; }

std::string orders_of(const BoundedChainComplex& c) {
  std::string s;
  for (int i = 0; i <= c.degree_bound(); ++i) s += (i ? "," : "") + std::to_string(c.object(i).order());
  return s;
}

std::string orders_of(const TruncatedSimplicialGroup& x) {
  std::string s;
  for (int i = 0; i <= x.degree_bound(); ++i) s += (i ? "," : "") + std::to_string(x.level(i).order());
  return s;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

std::uint64_t ipow(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

class Recorder {
 public:
  Recorder(std::string suite, std::vector<CheckResult>& out) : suite_(std::move(suite)), out_(out) {}

  void run(const std::string& id, const std::function<Outcome()>& body, const std::function<json()>& witness) {
    CheckResult r;
    r.suite = suite_;
    r.id = id;
    try {
      if (auto bad = body()) {
        r.status = Status::kFail;
        r.witness = witness();
        r.witness["detail"] = *bad;
      }
    } catch (const Error& e) {
      if (is_cap_error(e.code())) {
        r.status = Status::kSkipped;
        r.reason = e.what();
      } else {
        r.status = Status::kFail;
        r.witness = witness();
        r.witness["error"] = e.what();
      }
    }
    out_.push_back(std::move(r));
  }

 private:
  std::string suite_;
  std::vector<CheckResult>& out_;
};

std::string case_id(const std::string& object, const std::string& claim, std::initializer_list<std::pair<const char*, int>> params = {}) {
  std::string s = object + "/" + claim;
  for (const auto& [k, v] : params) s += std::string("/") + k + "=" + std::to_string(v);
  return s;
}

json complex_witness(const NamedComplex& c, std::uint64_t seed) {
  return {{"object", c.name}, {"seed", seed}, {"complex", to_json(c.complex)}};
}

json simplicial_witness(const NamedSimplicial& s, std::uint64_t seed) {
  json w = {{"object", s.name}, {"seed", seed}};
  bool small = std::all_of(s.object.levels.begin(), s.object.levels.end(), [](const FiniteGroup& g) { return g.order() <= 64; });
  if (small) w["simplicial"] = to_json(s.object);
  return w;
}

bool wanted(const Claims& claims, const std::string& claim) { return claims.empty() || claims.count(claim) > 0; }

// ---------------------------------------------------------------------------
// Corpus construction

FiniteGroup semidirect(const FiniteGroup& m, const FiniteGroup& g, const std::function<Elem(Elem, Elem)>& act,
                       const std::string& label) {
  const std::size_t gn = g.order();
  const std::size_t n = m.order() * gn;
  std::vector<Elem> inverse(n);
  for (Elem e = 0; e < n; ++e) {
    Elem mm = static_cast<Elem>(e / gn);
    Elem gg = static_cast<Elem>(e % gn);
    Elem gi = g.inv(gg);
    inverse[e] = static_cast<Elem>(act(gi, m.inv(mm)) * gn + gi);
  }
  return FiniteGroup::from_rule(
      n,
      [m, g, act, gn](Elem a, Elem b) {
        Elem ma = static_cast<Elem>(a / gn), ga = static_cast<Elem>(a % gn);
        Elem mb = static_cast<Elem>(b / gn), gb = static_cast<Elem>(b % gn);
        return static_cast<Elem>(m.mul(ma, act(ga, mb)) * gn + g.mul(ga, gb));
      },
      std::move(inverse), label);
}

struct CrossedModule {
  std::string name;
  FiniteGroup m;
  FiniteGroup g;
  std::vector<Elem> boundary;              // M -> G
  std::function<Elem(Elem, Elem)> act;     // (g, m) -> g.m
};

// Nerve of the internal groupoid M x| G => G, truncated at D.
TruncatedSimplicialGroup nerve(const CrossedModule& cm, int D, const Caps& caps) {
  const auto& g = cm.g;
  const auto& m = cm.m;
  const std::size_t gn = g.order();
  auto arrows = semidirect(m, g, cm.act, m.label() + "x|" + g.label());
  std::vector<Elem> target(arrows.order()), source(arrows.order()), unit(gn);
  for (Elem e = 0; e < arrows.order(); ++e) {
    target[e] = g.mul(cm.boundary[e / gn], static_cast<Elem>(e % gn));
    source[e] = static_cast<Elem>(e % gn);
  }
  for (Elem x = 0; x < gn; ++x) unit[x] = x;
  TruncatedSimplicialGroup y;
  y.levels = {g, arrows};
  y.faces = {{}, {GroupHom::checked(arrows, g, target), GroupHom::checked(arrows, g, source)}};
  y.degeneracies = {{GroupHom::checked(g, arrows, unit)}, {}};
  require_simplicial(y);

  // Composable pairs: the middle edge is the composite of the outer two.
  auto k = simplicial_kernel(y, caps);
  std::vector<char> mask(k.group.order(), 0);
  for (Elem t = 0; t < k.group.order(); ++t) {
    Elem x0 = k.projections[0].map[t], x1 = k.projections[1].map[t], x2 = k.projections[2].map[t];
    mask[t] = (x1 / gn) == m.mul(static_cast<Elem>(x0 / gn), static_cast<Elem>(x2 / gn));
  }
  Subgroup pairs{k.group, {}};
  for (Elem t = 0; t < mask.size(); ++t) {
    if (mask[t]) pairs.elements.push_back(t);
  }
  if (generated_subgroup(k.group, subgroup_generators(pairs)).order() != pairs.order()) {
    fail(ErrorCode::kValidationError, cm.name + " is not a crossed module");
  }
  auto emb = subgroup_group(pairs, "N2(" + cm.name + ")");
  auto whole = whole_embedding(arrows);
  TruncatedSimplicialGroup x;
  x.levels = {g, arrows, emb.group};
  x.faces = {{}, y.faces[1], {}};
  for (const auto& p : k.projections) x.faces[2].push_back(restrict_hom(p, emb, whole));
  x.degeneracies = {y.degeneracies[0], {}, {}};
  for (const auto& s : k.degeneracies) x.degeneracies[1].push_back(restrict_hom(s, whole, emb));
  require_simplicial(x);
  if (D <= 2) return truncate(x, D);
  return coskeleton_extend(x, D, caps);
}

CrossedModule normal_inclusion(const std::string& name, const FiniteGroup& g, const Subgroup& n) {
  auto emb = subgroup_group(n, name + ".M");
  auto local = emb.local;
  auto incl = emb.inclusion.map;
  return {name, emb.group, g, incl, [g, incl, local](Elem x, Elem y) { return static_cast<Elem>(local[g.conj(x, incl[y])]); }};
}

CrossedModule central(const std::string& name, const FiniteGroup& g, Elem z) {
  auto m = cyclic(g.element_order(z));
  std::vector<Elem> boundary(m.order());
  for (Elem k = 0; k < m.order(); ++k) boundary[k] = g.pow(z, k);
  return {name, m, g, boundary, [](Elem, Elem y) { return y; }};
}

// Trivial boundary, G acting through `aut` (an automorphism of M given as a map) by powers.
CrossedModule acting(const std::string& name, const FiniteGroup& m, const FiniteGroup& g, std::vector<Elem> aut) {
  std::vector<std::vector<Elem>> powers{std::vector<Elem>(m.order())};
  for (Elem y = 0; y < m.order(); ++y) powers[0][y] = y;
  for (std::size_t p = 1; p < g.order(); ++p) {
    std::vector<Elem> next(m.order());
    for (Elem y = 0; y < m.order(); ++y) next[y] = aut[powers.back()[y]];
    powers.push_back(std::move(next));
  }
  return {name, m, g, std::vector<Elem>(m.order(), 0), [powers](Elem x, Elem y) { return powers[x][y]; }};
}

std::vector<Subgroup> normal_subgroups(const FiniteGroup& g) {
  std::vector<Subgroup> out;
  for (Elem x = 1; x < g.order(); ++x) {
    auto n = normal_closure_of(g, std::vector<Elem>{x});
    if (n.is_whole()) continue;
    if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
  }
  return out;
}

TruncatedSimplicialGroup levelwise_product(const TruncatedSimplicialGroup& x, const TruncatedSimplicialGroup& y,
                                           const Caps& caps) {
  const int D = std::min(x.degree_bound(), y.degree_bound());
  TruncatedSimplicialGroup p;
  std::vector<std::vector<FiniteGroup>> factors;
  for (int n = 0; n <= D; ++n) {
    factors.push_back({x.level(n), y.level(n)});
    p.levels.push_back(product_of(factors.back(), x.level(n).label() + "x" + y.level(n).label(), caps));
  }
  auto pair_map = [&](const GroupHom& f, const GroupHom& h, int from, int to) {
    std::vector<Elem> map(p.level(from).order());
    for (Elem e = 0; e < map.size(); ++e) {
      auto d = product_digits(factors[from], e);
      std::vector<Elem> img{f.map[d[0]], h.map[d[1]]};
      map[e] = product_index(factors[to], img);
    }
    return GroupHom{p.level(from), p.level(to), std::move(map)};
  };
  p.faces.resize(D + 1);
  p.degeneracies.resize(D + 1);
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) p.faces[n].push_back(pair_map(x.d(n, i), y.d(n, i), n, n - 1));
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) p.degeneracies[n].push_back(pair_map(x.s(n, i), y.s(n, i), n, n + 1));
  }
  require_simplicial(p);
  return p;
}

}  // namespace

std::vector<NamedComplex> chain_corpus(std::uint64_t seed, const Caps& caps) {
  std::vector<NamedComplex> out;
  auto z2 = cyclic(2, caps), z3 = cyclic(3, caps), z4 = cyclic(4, caps);
  auto times2 = [&](const FiniteGroup& a) {
    std::vector<Elem> map(a.order());
    for (Elem x = 0; x < a.order(); ++x) map[x] = a.mul(x, x);
    return GroupHom::checked(a, a, map);
  };
  out.push_back({"lattice-example", make_complex({z4, z4, z4}, {times2(z4), times2(z4)})});
  out.push_back({"zero", concentrated(trivial_group(), 0, 2)});
  out.push_back({"s3-at-1", concentrated(symmetric(3, caps), 1, 2)});
  out.push_back({"z4-onto-z2", make_complex({z2, z4}, {GroupHom::checked(z4, z2, {0, 1, 0, 1})})});
  {
    auto d4 = dihedral(4, caps);
    Elem a = d4.named_generators()[0].second;
    auto incl = subgroup_group(generated_subgroup(d4, std::vector<Elem>{a})).inclusion;
    out.push_back({"d4-reflection", make_complex({d4, incl.source}, {incl})});
  }

  std::vector<FiniteGroup> pool = {
      z2, z3, z4, cyclic(6, caps), cyclic(8, caps), direct_product(z2, z2, caps), direct_product(z2, z4, caps),
      symmetric(3, caps), dihedral(4, caps), direct_product(direct_product(z2, z2, caps), z2, caps),
      direct_product(z4, z4, caps), dihedral(6, caps), dihedral(8, caps), trivial_group()};
  std::map<std::pair<std::size_t, std::size_t>, std::vector<GroupHom>> homs;
  auto homs_between = [&](std::size_t s, std::size_t t) -> const std::vector<GroupHom>& {
    auto key = std::make_pair(s, t);
    auto it = homs.find(key);
    if (it == homs.end()) {
      auto h = all_homomorphisms(pool[s], pool[t], 100'000);
      it = homs.emplace(key, h ? std::move(*h) : std::vector<GroupHom>{GroupHom::zero(pool[s], pool[t])}).first;
    }
    return it->second;
  };

  std::mt19937_64 rng(seed);
  std::size_t made = 0, nonproper = 0;
  for (int attempt = 0; attempt < 20'000 && made < kRandomComplexes; ++attempt) {
    const int D = 1 + static_cast<int>(rng() % 3);
    std::vector<std::size_t> idx;
    for (int i = 0; i <= D; ++i) idx.push_back(static_cast<std::size_t>(rng() % pool.size()));
    std::vector<GroupHom> diffs;
    for (int k = 1; k <= D; ++k) {
      std::vector<const GroupHom*> ok;
      for (const auto& f : homs_between(idx[k], idx[k - 1])) {
        if (k >= 2 && !is_zero(compose(diffs.back(), f))) continue;
        ok.push_back(&f);
      }
      std::vector<const GroupHom*> nonzero;
      for (auto* f : ok) {
        if (!is_zero(*f)) nonzero.push_back(f);
      }
      const auto& choose = (!nonzero.empty() && rng() % 5 != 0) ? nonzero : ok;
      diffs.push_back(*choose[static_cast<std::size_t>(rng() % choose.size())]);
    }
    std::vector<FiniteGroup> objects;
    for (auto i : idx) objects.push_back(pool[i]);
    auto c = make_complex(std::move(objects), std::move(diffs));
    char name[32];
    if (c.proper()) {
      std::snprintf(name, sizeof name, "rand-%02zu", made++);
      out.push_back({name, std::move(c)});
    } else if (nonproper < 3) {
      std::snprintf(name, sizeof name, "nonproper-%zu", nonproper++);
      out.push_back({name, std::move(c)});
    }
  }
  return out;
}

std::vector<NamedSimplicial> simplicial_corpus(std::uint64_t seed, const Caps& caps) {
  std::vector<NamedSimplicial> out;
  auto z2 = cyclic(2, caps), z3 = cyclic(3, caps), z4 = cyclic(4, caps);
  auto v4 = direct_product(z2, z2, caps).with_label("V4");
  auto s3 = symmetric(3, caps), d4 = dihedral(4, caps);

  out.push_back({"dis(Z2,4)", discrete(z2, 4)});
  out.push_back({"dis(Z3,3)", discrete(z3, 3)});
  out.push_back({"dis(S3,3)", discrete(s3, 3)});
  out.push_back({"dis(D4,3)", discrete(d4, 3)});
  out.push_back({"ind(Z2,4)", indiscrete(z2, 4, caps)});
  out.push_back({"ind(Z3,3)", indiscrete(z3, 3, caps)});
  out.push_back({"ind(S3,3)", indiscrete(s3, 3, caps)});
  out.push_back({"ind(D4,3)", indiscrete(d4, 3, caps)});
  for (const auto& [a, label] : {std::pair{z2, "Z2"}, std::pair{z3, "Z3"}, std::pair{z4, "Z4"}, std::pair{v4, "V4"}}) {
    out.push_back({std::string("em(") + label + ",1,3)", eilenberg_maclane(a, 1, 3, caps)});
    const int D = a.order() <= 3 ? 4 : 3;
    out.push_back({std::string("em(") + label + ",2," + std::to_string(D) + ")", eilenberg_maclane(a, 2, D, caps)});
  }

  Elem b = d4.named_generators()[1].second;  // rotation of order 4
  std::vector<CrossedModule> modules;
  modules.push_back(normal_inclusion("nerve(A3<S3)", s3, normal_closure_of(s3, std::vector<Elem>{3})));
  modules.push_back(normal_inclusion("nerve(<b><D4)", d4, generated_subgroup(d4, std::vector<Elem>{b})));
  modules.push_back(central("nerve(Z2->Z4)", z4, 2));
  modules.push_back(central("nerve(Z2->Z(D4))", d4, d4.mul(b, b)));
  modules.push_back(acting("nerve(Z2 on Z3)", z3, z2, {0, 2, 1}));
  modules.push_back(acting("nerve(Z2 on Z4)", z4, z2, {0, 3, 2, 1}));
  modules.push_back(acting("nerve(Z3 on V4)", v4, z3, {0, 3, 1, 2}));

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::vector<std::pair<std::string, FiniteGroup>> hosts = {
      {"S3", s3}, {"D4", d4}, {"Z2xZ4", direct_product(z2, z4, caps)}, {"Z6", cyclic(6, caps)}, {"D6", dihedral(6, caps)}};
  for (int r = 0; r < 2; ++r) {
    const auto& [hname, host] = hosts[static_cast<std::size_t>(rng() % hosts.size())];
    auto normals = normal_subgroups(host);
    const auto& n = normals[static_cast<std::size_t>(rng() % normals.size())];
    modules.push_back(normal_inclusion("nerve(rand" + std::to_string(r) + ":" + std::to_string(n.order()) + "<" + hname + ")",
                                       host, n));
    std::vector<Elem> centre;
    for (Elem z = 1; z < host.order(); ++z) {
      bool is_central = true;
      for (Elem y = 0; y < host.order() && is_central; ++y) is_central = host.mul(z, y) == host.mul(y, z);
      if (is_central) centre.push_back(z);
    }
    if (!centre.empty()) {
      Elem z = centre[static_cast<std::size_t>(rng() % centre.size())];
      modules.push_back(central("nerve(rand" + std::to_string(r) + ":Z" + std::to_string(host.element_order(z)) +
                                    "->Z(" + hname + "))",
                                host, z));
    }
  }
  for (const auto& cm : modules) out.push_back({cm.name, nerve(cm, 3, caps)});

  out.push_back({"dis(Z2,3)*em(Z3,1,3)", levelwise_product(discrete(z2, 3), eilenberg_maclane(z3, 1, 3, caps), caps)});
  out.push_back({"em(Z2,1,3)*em(Z2,2,3)",
                 levelwise_product(eilenberg_maclane(z2, 1, 3, caps), eilenberg_maclane(z2, 2, 3, caps), caps)});
  return out;
}

Corpus build_corpus(std::uint64_t seed, const Caps& caps) {
  return {seed, chain_corpus(seed, caps), simplicial_corpus(seed, caps)};
}

std::string status_name(Status s) {
  switch (s) {
    case Status::kPass: return "pass";
    case Status::kFail: return "fail";
    case Status::kSkipped: return "skipped";
  }
  return "?";
}

json to_json(const CheckResult& r) {
  json j = {{"suite", r.suite}, {"case", r.id}, {"status", status_name(r.status)}};
  if (r.status == Status::kSkipped) j["reason"] = r.reason;
  if (r.status == Status::kFail) j["witness"] = r.witness;
  return j;
}

// ---------------------------------------------------------------------------
// TT1

namespace {

bool cok_torsion(const BoundedChainComplex& t, int n) {
  for (int i = 0; i < n - 1; ++i) {
    if (!t.object(i).is_trivial()) return false;
  }
  return n == 0 || is_surjective(t.delta(n));
}

bool cok_free(const BoundedChainComplex& f, int n) {
  for (int i = n; i <= f.degree_bound(); ++i) {
    if (!f.object(i).is_trivial()) return false;
  }
  return true;
}

bool ker_torsion(const BoundedChainComplex& t, int n) {
  for (int i = 0; i < n && i <= t.degree_bound(); ++i) {
    if (!t.object(i).is_trivial()) return false;
  }
  return true;
}

bool ker_free(const BoundedChainComplex& f, int n) {
  for (int i = n + 1; i <= f.degree_bound(); ++i) {
    if (!f.object(i).is_trivial()) return false;
  }
  return n == 0 || is_injective(f.delta(n));
}

bool tiny(const BoundedChainComplex& c) {
  for (int i = 0; i <= c.degree_bound(); ++i) {
    if (c.object(i).order() > 8) return false;
  }
  return true;
}

}  // namespace

std::vector<CheckResult> suite_tt1(const Corpus& corpus, const Caps& caps) {
  std::vector<CheckResult> out;
  Recorder rec("tt1", out);
  const std::uint64_t cap = caps.hom_family_cap;

  auto check_pair = [&](const std::string& id, const BoundedChainComplex& t, const BoundedChainComplex& f,
                        bool classes_ok) {
    rec.run(
        id,
        [&]() -> Outcome {
          if (!classes_ok) return "pair is not torsion / torsion-free";
          auto found = enumerate_chain_maps(t, f, cap);
          if (!found.exhaustive) fail(ErrorCode::kOrderCap, std::to_string(found.candidates) + " hom families exceed hom-cap");
          if (found.maps.size() != 1) return std::to_string(found.maps.size()) + " chain maps";
          return expect(is_zero(found.maps[0]), "the only chain map is nonzero");
        },
        [&] { return json{{"torsion", to_json(t)}, {"torsion_free", to_json(f)}}; });
  };

  {
    auto z2 = cyclic(2, caps), z4 = cyclic(4, caps);
    auto t = make_complex({z2, z4}, {GroupHom::checked(z4, z2, {0, 1, 0, 1})});
    auto f = concentrated(z2, 0, 1);
    check_pair("example/cok_1", t, f, cok_torsion(t, 1) && cok_free(f, 1));
    auto zero = concentrated(trivial_group(), 0, 1);
    check_pair("example/zero-torsion", zero, f, true);
  }

  std::vector<const NamedComplex*> small;
  for (const auto& c : corpus.complexes) {
    if (c.complex.proper() && tiny(c.complex)) small.push_back(&c);
  }
  const std::size_t per_side = 8;
  for (int n = 1; n <= 3; ++n) {
    for (const char* theory : {"cok", "ker"}) {
      const bool cok = theory[0] == 'c';
      std::vector<std::pair<std::string, BoundedChainComplex>> torsion, free;
      for (const auto* c : small) {
        if (n > c->complex.degree_bound() + 1) continue;
        auto r = cok ? radical_cok(c->complex, n) : radical_ker(c->complex, n);
        if (!r.torsion.is_zero() && torsion.size() < per_side) torsion.emplace_back(c->name, as_complex(r.torsion).complex);
        bool right_zero = true;
        for (int i = 0; i <= r.ses.right.degree_bound(); ++i) right_zero = right_zero && r.ses.right.object(i).is_trivial();
        if (!right_zero && free.size() < per_side) free.emplace_back(c->name, r.ses.right);
      }
      for (const auto& [tn, t] : torsion) {
        for (const auto& [fname, f] : free) {
          bool ok = cok ? (cok_torsion(t, n) && cok_free(f, n)) : (ker_torsion(t, n) && ker_free(f, n));
          check_pair(std::string(theory) + "_" + std::to_string(n) + "/" + tn + "->" + fname, t, f, ok);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// SES exactness

std::vector<CheckResult> suite_ses_exactness(const Corpus& corpus, const Caps& caps) {
  (void)caps;
  std::vector<CheckResult> out;
  Recorder rec("ses", out);
  for (const auto& nc : corpus.complexes) {
    const auto& c = nc.complex;
    auto witness = [&] { return complex_witness(nc, corpus.seed); };
    if (!c.proper()) {
      rec.run(case_id(nc.name, "rejects-nonproper"),
              [&]() -> Outcome {
                try {
                  radical_cok(c, 1);
                } catch (const Error& e) {
                  return expect(e.code() == ErrorCode::kNotProper, e.what());
                }
                return "radical_cok accepted a non-proper complex";
              },
              witness);
      continue;
    }
    for (int n = 0; n <= c.degree_bound() + 1; ++n) {
      rec.run(case_id(nc.name, "cok", {{"n", n}}), [&] { return check_exact(radical_cok(c, n).ses); }, witness);
      rec.run(case_id(nc.name, "ker", {{"n", n}}), [&] { return check_exact(radical_ker(c, n).ses); }, witness);
    }
  }
  for (const auto& ns : corpus.simplicials) {
    const auto& x = ns.object;
    auto witness = [&] { return simplicial_witness(ns, corpus.seed); };
    auto exact = [&](const SimplicialSubobject& t) -> Outcome {
      auto q = quotient_simplicial(x, t);
      for (int m = 0; m <= x.degree_bound(); ++m) {
        const auto& p = q.levels[static_cast<std::size_t>(m)].projection;
        if (!is_surjective(p)) return "projection not surjective at level " + std::to_string(m);
        if (!(kernel(p) == t.at(m))) return "kernel differs from the torsion part at level " + std::to_string(m);
      }
      return std::nullopt;
    };
    for (int n = 0; n <= x.degree_bound() + 1; ++n) {
      rec.run(case_id(ns.name, "mu_geq", {{"n", n}}), [&] { return exact(mu_geq_torsion(x, n)); }, witness);
    }
    for (int n = 0; n <= x.degree_bound(); ++n) {
      rec.run(case_id(ns.name, "mu_ngeq", {{"n", n}}), [&] { return exact(porter_cotruncation(x, n).kernel); }, witness);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homology

std::vector<CheckResult> suite_homology(const Corpus& corpus, const Caps& caps, const Claims& claims) {
  std::vector<CheckResult> out;
  Recorder rec("homology", out);
  for (const auto& nc : corpus.complexes) {
    if (!nc.complex.proper()) continue;
    std::vector<TableCell> cells;
    std::optional<Error> err;
    try {
      cells = homology_table_check(nc.complex, caps);
    } catch (const Error& e) {
      err = e;
    }
    auto witness = [&] { return complex_witness(nc, corpus.seed); };
    if (err) {
      rec.run(case_id(nc.name, "table"), [&]() -> Outcome { throw *err; }, witness);
      continue;
    }
    for (const auto& cell : cells) {
      const std::string claim = cell.part.size() == 1 ? "part-" + cell.part : cell.part;
      if (!wanted(claims, claim)) continue;
      rec.run(case_id(nc.name, claim, {{"n", cell.n}, {"m", cell.m}, {"i", cell.i}}),
              [&] { return expect(cell.ok, cell.detail.empty() ? "mismatch" : cell.detail); }, witness);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lattice

std::vector<CheckResult> suite_lattice(const Corpus& corpus, const Caps& caps) {
  (void)caps;
  std::vector<CheckResult> out;
  Recorder rec("lattice", out);
  for (const auto& nc : corpus.complexes) {
    if (!nc.complex.proper()) continue;
    auto t = lattice_chain(nc.complex);
    for (std::size_t r = 0; r + 1 < t.rows.size(); ++r) {
      rec.run(case_id(nc.name, t.rows[r + 1].name + "<=" + t.rows[r].name),
              [&] { return expect(is_subcomplex_of(t.rows[r + 1].sub, t.rows[r].sub), "inclusion fails"); },
              [&] { return complex_witness(nc, corpus.seed); });
    }
  }
  for (const auto& ns : corpus.simplicials) {
    std::optional<SimplicialTower> t;
    rec.run(case_id(ns.name, "tower"),
            [&]() -> Outcome {
              t = lattice_simplicial(ns.object);
              return std::nullopt;
            },
            [&] { return simplicial_witness(ns, corpus.seed); });
    if (!t) continue;
    for (std::size_t r = 0; r + 1 < t->rows.size(); ++r) {
      rec.run(case_id(ns.name, t->rows[r + 1].name + "<=" + t->rows[r].name),
              [&] { return expect(is_subobject_of(t->rows[r + 1].sub, t->rows[r].sub), "inclusion fails"); },
              [&] { return simplicial_witness(ns, corpus.seed); });
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Simplicial theorems

namespace {

// pi_0..pi_{D-1}: the homotopy groups that do not depend on the truncation.
std::vector<FiniteGroup> stable_homotopy(const TruncatedSimplicialGroup& x) {
  auto m = moore_complex(x).complex;
  std::vector<FiniteGroup> out;
  for (int i = 0; i < x.degree_bound(); ++i) out.push_back(homology_H(m, i));
  return out;
}

Outcome compare_homotopy(const std::vector<FiniteGroup>& got, const std::function<std::optional<FiniteGroup>(int)>& want,
                         const Caps& caps) {
  for (int i = 0; i < static_cast<int>(got.size()); ++i) {
    auto w = want(i);
    const auto& g = got[static_cast<std::size_t>(i)];
    bool ok = w ? are_isomorphic(g, *w, caps) : g.is_trivial();
    if (!ok) {
      return "pi_" + std::to_string(i) + " has order " + std::to_string(g.order()) + ", expected " +
             (w ? std::to_string(w->order()) : std::string("1"));
    }
  }
  return std::nullopt;
}

class RadicalCache {
 public:
  explicit RadicalCache(const TruncatedSimplicialGroup& x) : x_(x) {}
  const SimplicialSubobject& get(RadicalSpec r) {
    auto key = std::make_pair(static_cast<int>(r.kind), r.n);
    auto it = cache_.find(key);
    if (it == cache_.end()) it = cache_.emplace(key, radical_subobject(x_, r)).first;
    return it->second;
  }
  std::vector<FiniteGroup> quotient_homotopy(RadicalSpec upper, RadicalSpec lower) {
    return stable_homotopy(quotient_simplicial(get(upper), get(lower)).object);
  }

 private:
  const TruncatedSimplicialGroup& x_;
  std::map<std::pair<int, int>, SimplicialSubobject> cache_;
};

RadicalSpec geq(int n) { return {RadicalSpec::kGeq, n}; }
RadicalSpec ngeq(int n) { return {RadicalSpec::kNgeq, n}; }

bool degreewise_iso(const BoundedChainComplex& a, const BoundedChainComplex& b, const Caps& caps, std::string& where) {
  const int D = std::max(a.degree_bound(), b.degree_bound());
  for (int i = 0; i <= D; ++i) {
    if (!are_isomorphic(a.object(i), b.object(i), caps)) {
      where = "degree " + std::to_string(i) + ": " + std::to_string(a.object(i).order()) + " vs " +
              std::to_string(b.object(i).order());
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<CheckResult> suite_simplicial_theorems(const Corpus& corpus, const Caps& caps, const Claims& claims) {
  std::vector<CheckResult> out;
  Recorder rec("simplicial", out);

  if (wanted(claims, "eilenberg-maclane")) {
    auto z2 = cyclic(2, caps), z3 = cyclic(3, caps), z4 = cyclic(4, caps);
    auto v4 = direct_product(z2, z2, caps).with_label("V4");
    for (const auto& a : {z2, z3, z4, v4}) {
      for (int n = 1; n <= 2; ++n) {
        const int D = n + 2;
        const std::string name = "em(" + a.label() + "," + std::to_string(n) + "," + std::to_string(D) + ")";
        rec.run(case_id(name, "eilenberg-maclane"),
                [&]() -> Outcome {
                  auto x = eilenberg_maclane(a, n, D, caps);
                  if (!validate_simplicial(x).ok) return "not simplicial";
                  for (int m = 0; m <= D; ++m) {
                    if (x.level(m).order() != ipow(a.order(), binom(m, n))) return "level orders " + orders_of(x);
                  }
                  auto moore = moore_complex(x).complex;
                  for (int i = 0; i <= D; ++i) {
                    bool ok = i == n ? are_isomorphic(moore.object(i), a, caps) : moore.object(i).is_trivial();
                    if (!ok) return "Moore complex " + orders_of(moore);
                  }
                  return compare_homotopy(stable_homotopy(x), [&](int i) -> std::optional<FiniteGroup> {
                    if (i == n) return a;
                    return std::nullopt;
                  }, caps);
                },
                [&] { return json{{"object", name}}; });
      }
    }
  }

  for (const auto& ns : corpus.simplicials) {
    const auto& x = ns.object;
    const int D = x.degree_bound();
    auto witness = [&] { return simplicial_witness(ns, corpus.seed); };
    auto mx = moore_complex(x).complex;
    auto pi = stable_homotopy(x);
    auto pi_at = [&](int i) -> std::optional<FiniteGroup> {
      if (i < 0 || i >= D) return std::nullopt;
      return pi[static_cast<std::size_t>(i)];
    };
    RadicalCache radicals(x);

    if (wanted(claims, "moore-proper")) {
      rec.run(case_id(ns.name, "moore-proper"), [&] { return expect(validate_complex(mx).proper, "Moore complex not proper"); }, witness);
    }
    if (wanted(claims, "homotopy-abelian")) {
      for (int n = 1; n < D; ++n) {
        rec.run(case_id(ns.name, "homotopy-abelian", {{"n", n}}),
                [&] { return expect(pi[static_cast<std::size_t>(n)].is_abelian(), "pi_n is not abelian"); }, witness);
      }
    }
    if (wanted(claims, "semidirect")) {
      for (int n = 0; n <= D; ++n) {
        rec.run(case_id(ns.name, "semidirect", {{"n", n}}),
                [&] { return semidirect_filtration(x, n).mismatch(); }, witness);
      }
    }
    if (wanted(claims, "norcosk")) {
      for (int n = 0; n <= D; ++n) {
        std::optional<BoundedChainComplex> nc;
        for (int i = 0; i <= D; ++i) {
          rec.run(case_id(ns.name, "norcosk", {{"n", n}, {"i", i}}),
                  [&]() -> Outcome {
                    if (!nc) nc = moore_complex(coskeleton_simplicial(x, n, caps).object).complex;
                    const auto& got = nc->object(i);
                    if (i <= n) return expect(are_isomorphic(got, mx.object(i), caps), "differs from N(x)");
                    if (i == n + 1) {
                      return expect(are_isomorphic(got, subgroup_group(kernel(mx.delta(n))).group, caps),
                                    "differs from ker(delta_n)");
                    }
                    return expect(got.is_trivial(), "nonzero above n+1");
                  },
                  witness);
        }
      }
    }
    if (wanted(claims, "cotnorm")) {
      for (int n = 0; n <= D; ++n) {
        std::optional<BoundedChainComplex> left, right;
        for (int i = 0; i <= D; ++i) {
          rec.run(case_id(ns.name, "cotnorm", {{"n", n}, {"i", i}}),
                  [&]() -> Outcome {
                    if (!left) left = moore_complex(porter_cotruncation(x, n).object).complex;
                    if (!right) right = cotruncate_above(mx, n).complex;
                    return expect(are_isomorphic(left->object(i), right->object(i), caps),
                                  std::to_string(left->object(i).order()) + " vs " + std::to_string(right->object(i).order()));
                  },
                  witness);
        }
      }
    }
    if (wanted(claims, "porter-unit")) {
      for (int n = 0; n <= D; ++n) {
        rec.run(case_id(ns.name, "porter-unit", {{"n", n}}),
                [&]() -> Outcome {
                  auto p = porter_cotruncation(x, n);
                  for (const auto& u : p.unit) {
                    if (!is_surjective(u)) return "unit not surjective";
                  }
                  for (int i = 0; i < n && i <= D; ++i) {
                    if (p.object.level(i).order() != x.level(i).order()) return "level below n changed";
                  }
                  return compare_homotopy(stable_homotopy(p.object), [&](int i) {
                    return i <= n ? pi_at(i) : std::nullopt;
                  }, caps);
                },
                witness);
      }
    }
    if (wanted(claims, "porter-kernel")) {
      for (int n = 0; n + 1 < D; ++n) {
        rec.run(case_id(ns.name, "porter-kernel", {{"n", n}}),
                [&] {
                  return compare_homotopy(radicals.quotient_homotopy(ngeq(n), ngeq(n + 1)), [&](int i) {
                    return i == n + 1 ? pi_at(i) : std::nullopt;
                  }, caps);
                },
                witness);
      }
    }
    if (wanted(claims, "radical-moore")) {
      std::string where;
      for (int n = 0; n <= D + 1; ++n) {
        rec.run(case_id(ns.name, "radical-moore-geq", {{"n", n}}),
                [&] {
                  auto left = moore_complex(as_simplicial(radicals.get(geq(n))).object).complex;
                  auto right = as_complex(radical_ker(mx, n).torsion).complex;
                  return expect(degreewise_iso(left, right, caps, where), where);
                },
                witness);
      }
      for (int n = 0; n <= D; ++n) {
        rec.run(case_id(ns.name, "radical-moore-ngeq", {{"n", n}}),
                [&] {
                  auto left = moore_complex(as_simplicial(radicals.get(ngeq(n))).object).complex;
                  auto right = as_complex(radical_cok(mx, n + 1).torsion).complex;
                  return expect(degreewise_iso(left, right, caps, where), where);
                },
                witness);
      }
    }
    if (wanted(claims, "mu-cross-check")) {
      for (int n = 1; n <= D; ++n) {
        rec.run(case_id(ns.name, "mu-cross-check", {{"n", n}}),
                [&] {
                  return expect(mu_geq_torsion_via_coskeleton(x, n, caps) == radicals.get(geq(n)),
                                "recursive and coskeleton kernels differ");
                },
                witness);
      }
    }
    if (wanted(claims, "membership")) {
      for (int n = 0; n <= D; ++n) {
        rec.run(case_id(ns.name, "membership-geq", {{"n", n}}),
                [&] {
                  auto t = as_simplicial(radicals.get(geq(n))).object;
                  return expect(torsion_membership(t, Theory::kGeq, n, caps), "torsion part fails the characterization");
                },
                witness);
        rec.run(case_id(ns.name, "membership-ngeq", {{"n", n}}),
                [&] {
                  auto t = as_simplicial(radicals.get(ngeq(n))).object;
                  return expect(torsion_membership(t, Theory::kNgeq, n, caps), "torsion part fails the characterization");
                },
                witness);
      }
    }
    if (wanted(claims, "funsimgrp")) {
      auto pi_range = [&](int lo, int hi) {
        return [&, lo, hi](int i) { return (i >= lo && i <= hi) ? pi_at(i) : std::nullopt; };
      };
      for (int n = 0; n < D; ++n) {
        rec.run(case_id(ns.name, "funsimgrp-1", {{"n", n}}),
                [&]() -> Outcome {
                  for (auto r : {ngeq(n), geq(n + 1)}) {
                    auto got = stable_homotopy(as_simplicial(radicals.get(r)).object);
                    if (auto bad = compare_homotopy(got, pi_range(n + 1, D), caps)) return r.to_string() + ": " + *bad;
                  }
                  return std::nullopt;
                },
                witness);
        rec.run(case_id(ns.name, "funsimgrp-2", {{"n", n}}),
                [&]() -> Outcome {
                  RadicalSpec whole{};
                  for (auto r : {ngeq(n), geq(n + 1)}) {
                    if (auto bad = compare_homotopy(radicals.quotient_homotopy(whole, r), pi_range(0, n), caps)) {
                      return "X/" + r.to_string() + ": " + *bad;
                    }
                  }
                  return std::nullopt;
                },
                witness);
        rec.run(case_id(ns.name, "funsimgrp-3", {{"n", n}}),
                [&] { return compare_homotopy(radicals.quotient_homotopy(ngeq(n), geq(n + 1)), pi_range(1, 0), caps); },
                witness);
        rec.run(case_id(ns.name, "funsimgrp-6", {{"n", n}}),
                [&] {
                  return compare_homotopy(radicals.quotient_homotopy(ngeq(n), geq(n + 2)), pi_range(n + 1, n + 1), caps);
                },
                witness);
        for (int m = n + 1; m <= D; ++m) {
          rec.run(case_id(ns.name, "funsimgrp-4", {{"n", n}, {"m", m}}),
                  [&] { return compare_homotopy(radicals.quotient_homotopy(ngeq(n), geq(m + 1)), pi_range(n + 1, m), caps); },
                  witness);
          rec.run(case_id(ns.name, "funsimgrp-5", {{"n", n}, {"m", m}}),
                  [&]() -> Outcome {
                    const std::pair<RadicalSpec, RadicalSpec> quotients[] = {
                        {ngeq(n), ngeq(m)}, {geq(n + 1), geq(m + 1)}, {geq(n + 1), ngeq(m)}};
                    auto base = radicals.quotient_homotopy(ngeq(n), geq(m + 1));
                    for (const auto& [u, l] : quotients) {
                      auto got = radicals.quotient_homotopy(u, l);
                      auto bad = compare_homotopy(got, [&](int i) { return std::optional<FiniteGroup>(base[static_cast<std::size_t>(i)]); }, caps);
                      if (bad) return u.to_string() + "/" + l.to_string() + ": " + *bad;
                    }
                    return std::nullopt;
                  },
                  witness);
        }
      }
    }
    if (wanted(claims, "kanEL")) {
      for (int n = 0; n + 1 < D; ++n) {
        rec.run(case_id(ns.name, "kanEL", {{"n", n}}),
                [&]() -> Outcome {
                  auto q = quotient_simplicial(radicals.get(geq(n + 1)), radicals.get(ngeq(n + 1))).object;
                  const auto a = pi[static_cast<std::size_t>(n + 1)].order();
                  for (int m = 0; m <= D; ++m) {
                    if (q.level(m).order() != ipow(a, binom(m, n + 1))) return "level orders " + orders_of(q);
                  }
                  return compare_homotopy(stable_homotopy(q), [&](int i) { return i == n + 1 ? pi_at(i) : std::nullopt; }, caps);
                },
                witness);
      }
    }
    if (wanted(claims, "cot0-discrete")) {
      rec.run(case_id(ns.name, "cot0-discrete"),
              [&]() -> Outcome {
                auto c = porter_cotruncation(x, 0).object;
                auto pi0 = homology_H(mx, 0);
                for (int m = 0; m <= D; ++m) {
                  if (!are_isomorphic(c.level(m), pi0, caps)) return "level " + std::to_string(m) + " is not pi_0";
                  for (int i = 0; m > 0 && i <= m; ++i) {
                    if (!is_injective(c.d(m, i)) || !is_surjective(c.d(m, i))) return "face is not a bijection";
                  }
                }
                return std::nullopt;
              },
              witness);
    }
    if (wanted(claims, "groupoid") && D >= 2) {
      rec.run(case_id(ns.name, "groupoid"),
              [&]() -> Outcome {
                auto g = fundamental_groupoid_graph(x);
                const auto& k = radicals.get(ngeq(1));
                if (!k.at(0).is_trivial()) return "Cot_1 changes level 0";
                if (!(k.at(1) == g.relations)) return "Cot_1 level 1 differs from X_1/d_2(N_2)";
                return expect(same_map(compose(g.d0, g.s0), GroupHom::identity(g.objects)) &&
                                  same_map(compose(g.d1, g.s0), GroupHom::identity(g.objects)),
                              "s_0 is not a section");
              },
              witness);
    }
    if (wanted(claims, "eilenberg-maclane")) {
      int at = -1, nonzero = 0;
      for (int i = 0; i <= D; ++i) {
        if (!mx.object(i).is_trivial()) {
          ++nonzero;
          at = i;
        }
      }
      if (nonzero == 1 && at >= 1 && mx.object(at).is_abelian()) {
        rec.run(case_id(ns.name, "em-recognition", {{"n", at}}),
                [&]() -> Outcome {
                  const auto a = mx.object(at);
                  for (int m = 0; m <= D; ++m) {
                    if (x.level(m).order() != ipow(a.order(), binom(m, at))) return "level orders " + orders_of(x);
                  }
                  auto k = eilenberg_maclane(a, at, D, caps);
                  auto want = stable_homotopy(k);
                  return compare_homotopy(pi, [&](int i) -> std::optional<FiniteGroup> {
                    if (want[static_cast<std::size_t>(i)].is_trivial()) return std::nullopt;
                    return want[static_cast<std::size_t>(i)];
                  }, caps);
                },
                witness);
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counterexample

std::vector<CheckResult> suite_counterexample(const Corpus& corpus, const Caps& caps) {
  std::vector<CheckResult> out;
  Recorder rec("counterexample", out);
  auto report_json = [](const CounterexampleReport& r) {
    return json{{"cot0_order", r.cot0_order}, {"kernel_order_degree0", r.kernel_order_degree0},
                {"kernel_order_degree1", r.kernel_order_degree1}, {"cot0_of_kernel_order", r.cot0_of_kernel_order},
                {"nontrivial", r.nontrivial}};
  };
  {
    CounterexampleReport r;
    rec.run("d4",
            [&] {
              r = d4_counterexample();
              return expect(r.nontrivial && r.cot0_of_kernel_order == 2,
                            "cot_0 of the kernel has order " + std::to_string(r.cot0_of_kernel_order));
            },
            [&] { return report_json(r); });
  }
  auto z4 = cyclic(4, caps);
  auto contrast = [&](const std::string& id, const GroupHom& f, json w) {
    CounterexampleReport r;
    rec.run(id,
            [&] {
              r = cot0_kernel_report(f);
              return expect(r.cot0_of_kernel_order == 1, "cot_0 of the kernel has order " + std::to_string(r.cot0_of_kernel_order));
            },
            [&] {
              w["report"] = report_json(r);
              return w;
            });
  };
  contrast("times2-z4", GroupHom::checked(z4, z4, {0, 2, 0, 2}), json::object());
  contrast("zero-z3-z4", GroupHom::zero(cyclic(3, caps), z4), json::object());
  for (const auto& nc : corpus.complexes) {
    if (!nc.complex.proper()) continue;
    for (int n = 1; n <= nc.complex.degree_bound(); ++n) {
      contrast(case_id(nc.name, "proper-arrow", {{"n", n}}), nc.complex.delta(n), complex_witness(nc, corpus.seed));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"tt1", "ses", "homology", "lattice", "simplicial", "counterexample"};
  return names;
}

bool suite_needs_simplicial(const std::string& suite) {
  return suite == "ses" || suite == "lattice" || suite == "simplicial";
}

bool suite_needs_chain(const std::string& suite) { return suite != "simplicial"; }

std::vector<CheckResult> run_suite(const std::string& name, const Corpus& corpus, const Caps& caps) {
  if (name == "tt1") return suite_tt1(corpus, caps);
  if (name == "ses") return suite_ses_exactness(corpus, caps);
  if (name == "homology") return suite_homology(corpus, caps);
  if (name == "lattice") return suite_lattice(corpus, caps);
  if (name == "simplicial") return suite_simplicial_theorems(corpus, caps);
  if (name == "counterexample") return suite_counterexample(corpus, caps);
  fail(ErrorCode::kInvalidArgument, "unknown suite \"" + name + "\"");
}

json report_json(const std::vector<CheckResult>& results, std::uint64_t seed) {
  json list = json::array();
  json summary = json::object();
  for (const auto& r : results) {
    list.push_back(to_json(r));
    auto& s = summary[r.suite];
    if (s.is_null()) s = {{"pass", 0}, {"fail", 0}, {"skipped", 0}};
    s[status_name(r.status)] = s[status_name(r.status)].get<int>() + 1;
  }
  return {{"seed", seed}, {"results", std::move(list)}, {"summary", std::move(summary)}};
}

bool any_failed(const std::vector<CheckResult>& results) {
  return std::any_of(results.begin(), results.end(), [](const CheckResult& r) { return r.status == Status::kFail; });
}

}  // namespace simptor
