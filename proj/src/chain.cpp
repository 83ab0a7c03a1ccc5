#include "simptor/chain.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>

#include "simptor/errors.hpp"

namespace simptor {

namespace {

std::string deg(int i) { return std::to_string(i); }

FiniteGroup trivial_cached() {
  static const FiniteGroup g = trivial_group();
  return g;
}

// delta restricted to subgroup levels, as a map between their own groups.
GroupHom restricted_delta(const GroupHom& d, const Embedded& s, const Embedded& t) {
  return restrict_hom(d, s, t);
}

Subgroup local_subgroup(const Embedded& e, const Subgroup& s) {
  std::vector<Elem> out;
  out.reserve(s.elements.size());
  for (Elem x : s.elements) {
    std::int64_t y = e.local[x];
    if (y < 0) fail(ErrorCode::kInvalidArgument, "inner subcomplex is not contained in the outer one");
    out.push_back(static_cast<Elem>(y));
  }
  std::sort(out.begin(), out.end());
  return {e.group, std::move(out)};
}

}  // namespace

// ---------------------------------------------------------------------------
// BoundedChainComplex

BoundedChainComplex::BoundedChainComplex() : objects_{trivial_cached()}, proper_{true} {}

FiniteGroup BoundedChainComplex::object(int i) const {
  if (i < 0 || i > degree_bound()) return trivial_cached();
  return objects_[static_cast<std::size_t>(i)];
}

GroupHom BoundedChainComplex::delta(int i) const {
  if (i <= 0 || i > degree_bound()) return GroupHom::zero(object(i), object(i - 1));
  return differentials_[static_cast<std::size_t>(i - 1)];
}

bool BoundedChainComplex::proper() const {
  return std::all_of(proper_.begin(), proper_.end(), [](bool b) { return b; });
}

bool BoundedChainComplex::proper_at(int i) const {
  if (i < 1 || i > degree_bound()) return true;
  return proper_[static_cast<std::size_t>(i)];
}

BoundedChainComplex make_complex(std::vector<FiniteGroup> objects, std::vector<GroupHom> differentials) {
  if (objects.empty()) fail(ErrorCode::kInvalidArgument, "a complex needs at least the degree-0 object");
  if (differentials.size() + 1 != objects.size()) {
    fail(ErrorCode::kInvalidArgument, std::to_string(objects.size()) + " objects need " +
                                          std::to_string(objects.size() - 1) + " differentials, got " +
                                          std::to_string(differentials.size()));
  }
  for (std::size_t i = 1; i < objects.size(); ++i) {
    auto& d = differentials[i - 1];
    if (d.map.size() != objects[i].order() || d.target.order() != objects[i - 1].order()) {
      fail(ErrorCode::kInvalidArgument, "delta_" + std::to_string(i) + " has the wrong shape");
    }
    d.source = objects[i];
    d.target = objects[i - 1];
    if (!is_homomorphism(d.source, d.target, d.map)) {
      fail(ErrorCode::kInvalidHom, "delta_" + std::to_string(i) + " is not a homomorphism");
    }
  }
  for (std::size_t i = 2; i < objects.size(); ++i) {
    const auto& top = differentials[i - 1];
    const auto& low = differentials[i - 2];
    for (Elem x = 0; x < top.map.size(); ++x) {
      if (low.map[top.map[x]] != 0) {
        fail(ErrorCode::kCompositionNonzero, "delta_" + std::to_string(i - 1) + " delta_" + std::to_string(i) +
                                                 " != 0 at degree " + std::to_string(i) + ", witness element " +
                                                 std::to_string(x));
      }
    }
  }
  BoundedChainComplex c;
  c.objects_ = std::move(objects);
  c.differentials_ = std::move(differentials);
  c.proper_.assign(c.objects_.size(), true);
  for (std::size_t i = 1; i < c.objects_.size(); ++i) c.proper_[i] = is_proper(c.differentials_[i - 1]);
  return c;
}

BoundedChainComplex concentrated(const FiniteGroup& g, int n, int bound) {
  const int d = std::max(n, bound);
  std::vector<FiniteGroup> objects(static_cast<std::size_t>(d + 1), trivial_cached());
  objects[static_cast<std::size_t>(n)] = g;
  std::vector<GroupHom> diffs;
  for (int i = 1; i <= d; ++i) diffs.push_back(GroupHom::zero(objects[i], objects[i - 1]));
  return make_complex(std::move(objects), std::move(diffs));
}

ComplexReport validate_complex(const BoundedChainComplex& c) {
  ComplexReport r;
  r.proper_at.assign(static_cast<std::size_t>(c.degree_bound() + 1), true);
  for (int i = 1; i <= c.degree_bound(); ++i) r.proper_at[i] = c.proper_at(i);
  r.proper = c.proper();
  return r;
}

// ---------------------------------------------------------------------------
// Chain maps and subcomplexes

GroupHom ChainMap::at(int i) const {
  if (i < 0 || i >= static_cast<int>(components.size())) {
    return GroupHom::zero(source.object(i), target.object(i));
  }
  return components[static_cast<std::size_t>(i)];
}

ChainMap make_chain_map(const BoundedChainComplex& source, const BoundedChainComplex& target,
                        std::vector<GroupHom> components) {
  const int top = std::max(source.degree_bound(), target.degree_bound());
  if (static_cast<int>(components.size()) != top + 1) {
    fail(ErrorCode::kInvalidArgument, "chain map needs " + std::to_string(top + 1) + " components");
  }
  for (int i = 0; i <= top; ++i) {
    auto& f = components[static_cast<std::size_t>(i)];
    if (f.map.size() != source.object(i).order() || f.target.order() != target.object(i).order()) {
      fail(ErrorCode::kInvalidHom, "component " + deg(i) + " has the wrong shape");
    }
    f.source = source.object(i);
    f.target = target.object(i);
    if (!is_homomorphism(f.source, f.target, f.map)) {
      fail(ErrorCode::kInvalidHom, "component " + deg(i) + " is not a homomorphism");
    }
  }
  for (int i = 1; i <= top; ++i) {
    const auto& f = components[static_cast<std::size_t>(i)];
    const auto& g = components[static_cast<std::size_t>(i - 1)];
    auto d = source.delta(i);
    auto e = target.delta(i);
    for (Elem x = 0; x < f.map.size(); ++x) {
      if (g.map[d.map[x]] != e.map[f.map[x]]) {
        fail(ErrorCode::kInvalidHom, "square at degree " + deg(i) + " does not commute at element " +
                                         std::to_string(x));
      }
    }
  }
  return {source, target, std::move(components)};
}

bool is_zero(const ChainMap& f) {
  return std::all_of(f.components.begin(), f.components.end(), [](const GroupHom& h) { return is_zero(h); });
}

bool SubComplex::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](const Subgroup& s) { return s.is_trivial(); });
}

SubComplex zero_subcomplex(const BoundedChainComplex& c) {
  SubComplex s{c, {}};
  for (int i = 0; i <= c.degree_bound(); ++i) s.levels.push_back(Subgroup::trivial(c.object(i)));
  return s;
}

SubComplex whole_subcomplex(const BoundedChainComplex& c) {
  SubComplex s{c, {}};
  for (int i = 0; i <= c.degree_bound(); ++i) s.levels.push_back(Subgroup::whole(c.object(i)));
  return s;
}

bool is_subcomplex_of(const SubComplex& a, const SubComplex& b) {
  if (a.levels.size() != b.levels.size()) return false;
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (!is_subset(a.levels[i], b.levels[i])) return false;
  }
  return true;
}

bool operator==(const SubComplex& a, const SubComplex& b) {
  return a.levels.size() == b.levels.size() && std::equal(a.levels.begin(), a.levels.end(), b.levels.begin());
}

EmbeddedComplex as_complex(const SubComplex& s) {
  const auto& c = s.parent;
  const int d = c.degree_bound();
  EmbeddedComplex out;
  std::vector<FiniteGroup> objects;
  for (int i = 0; i <= d; ++i) {
    out.levels.push_back(subgroup_group(s.at(i), c.object(i).label() + "'"));
    objects.push_back(out.levels.back().group);
  }
  std::vector<GroupHom> diffs;
  for (int i = 1; i <= d; ++i) {
    diffs.push_back(restricted_delta(c.delta(i), out.levels[i], out.levels[i - 1]));
  }
  out.complex = make_complex(std::move(objects), std::move(diffs));
  std::vector<GroupHom> incl;
  for (int i = 0; i <= d; ++i) incl.push_back(out.levels[i].inclusion);
  out.inclusion = {out.complex, c, std::move(incl)};
  return out;
}

QuotientComplex quotient_complex(const BoundedChainComplex& c, const SubComplex& sub) {
  const int d = c.degree_bound();
  QuotientComplex out;
  std::vector<FiniteGroup> objects;
  for (int i = 0; i <= d; ++i) {
    if (!is_normal(sub.at(i))) fail(ErrorCode::kNotNormalLevel, "level " + deg(i) + " is not normal");
    out.levels.push_back(quotient(c.object(i), sub.at(i), c.object(i).label() + "/N"));
    objects.push_back(out.levels.back().group);
  }
  std::vector<GroupHom> diffs;
  for (int i = 1; i <= d; ++i) {
    auto d_i = c.delta(i);
    for (Elem x : sub.at(i).elements) {
      if (!sub.at(i - 1).contains(d_i.map[x])) {
        fail(ErrorCode::kInvalidArgument, "subcomplex not closed under delta_" + deg(i));
      }
    }
    diffs.push_back(induced_hom(d_i, out.levels[i], out.levels[i - 1]));
  }
  out.complex = make_complex(std::move(objects), std::move(diffs));
  std::vector<GroupHom> proj;
  for (int i = 0; i <= d; ++i) proj.push_back(out.levels[i].projection);
  out.projection = {c, out.complex, std::move(proj)};
  return out;
}

QuotientComplex quotient_complex(const SubComplex& outer, const SubComplex& inner) {
  auto e = as_complex(outer);
  SubComplex local{e.complex, {}};
  for (int i = 0; i <= e.complex.degree_bound(); ++i) {
    local.levels.push_back(local_subgroup(e.levels[i], inner.at(i)));
  }
  return quotient_complex(e.complex, local);
}

SubComplex kernel(const ChainMap& f) {
  SubComplex s{f.source, {}};
  for (int i = 0; i <= f.source.degree_bound(); ++i) s.levels.push_back(kernel(f.at(i)));
  return s;
}

std::optional<std::string> check_exact(const ChainSES& ses) {
  const int top = std::max({ses.left.degree_bound(), ses.middle.degree_bound(), ses.right.degree_bound()});
  for (int i = 0; i <= top; ++i) {
    auto f = ses.inject.at(i);
    auto g = ses.project.at(i);
    if (!is_injective(f)) return "inject not injective at degree " + deg(i);
    if (!is_surjective(g)) return "project not surjective at degree " + deg(i);
    auto im = image(f);
    if (!(im == kernel(g))) return "image != kernel at degree " + deg(i);
    if (!is_normal(im)) return "image not normal at degree " + deg(i);
  }
  return std::nullopt;
}

ChainSES ses_for(const SubComplex& torsion) {
  auto e = as_complex(torsion);
  auto q = quotient_complex(torsion.parent, torsion);
  return {e.complex, torsion.parent, q.complex, e.inclusion, q.projection};
}

namespace {

void require_proper(const BoundedChainComplex& c, const std::string& what) {
  if (c.proper()) return;
  for (int i = 1; i <= c.degree_bound(); ++i) {
    if (!c.proper_at(i)) fail(ErrorCode::kNotProper, what + " needs a proper complex; delta_" + deg(i) + " is not proper");
  }
}

SubComplex cok_levels(const BoundedChainComplex& c, int n) {
  SubComplex s{c, {}};
  for (int i = 0; i <= c.degree_bound(); ++i) {
    if (i >= n) {
      s.levels.push_back(Subgroup::whole(c.object(i)));
    } else if (i == n - 1) {
      s.levels.push_back(image(c.delta(n)));
    } else {
      s.levels.push_back(Subgroup::trivial(c.object(i)));
    }
  }
  return s;
}

SubComplex ker_levels(const BoundedChainComplex& c, int n) {
  SubComplex s{c, {}};
  for (int i = 0; i <= c.degree_bound(); ++i) {
    if (i > n) {
      s.levels.push_back(Subgroup::whole(c.object(i)));
    } else if (i == n) {
      s.levels.push_back(kernel(c.delta(n)));
    } else {
      s.levels.push_back(Subgroup::trivial(c.object(i)));
    }
  }
  return s;
}

}  // namespace

Radical radical_cok(const BoundedChainComplex& c, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "cok_n needs n >= 0");
  require_proper(c, "cok_" + deg(n));
  auto t = cok_levels(c, n);
  return {t, ses_for(t)};
}

Radical radical_ker(const BoundedChainComplex& c, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "ker_n needs n >= 0");
  require_proper(c, "ker_" + deg(n));
  auto t = ker_levels(c, n);
  return {t, ses_for(t)};
}

// ---------------------------------------------------------------------------
// Functor ladder

namespace {

void require_range(const BoundedChainComplex& c, int n) {
  if (n < 0 || n > c.degree_bound()) {
    fail(ErrorCode::kInvalidArgument, "degree " + deg(n) + " outside [0, " + deg(c.degree_bound()) + "]");
  }
}

// Builds a complex of bound `d` from per-degree objects and differentials.
BoundedChainComplex assemble(int d, const std::function<FiniteGroup(int)>& obj,
                             const std::function<GroupHom(int, const FiniteGroup&, const FiniteGroup&)>& diff) {
  std::vector<FiniteGroup> objects;
  for (int i = 0; i <= d; ++i) objects.push_back(obj(i));
  std::vector<GroupHom> diffs;
  for (int i = 1; i <= d; ++i) diffs.push_back(diff(i, objects[i], objects[i - 1]));
  return make_complex(std::move(objects), std::move(diffs));
}

}  // namespace

BoundedChainComplex truncate_above(const BoundedChainComplex& c, int n) {
  require_range(c, n);
  return assemble(
      n, [&](int i) { return c.object(i); }, [&](int i, const FiniteGroup&, const FiniteGroup&) { return c.delta(i); });
}

BoundedChainComplex skeleton(const BoundedChainComplex& c, int n) {
  require_range(c, n);
  return assemble(
      c.degree_bound(), [&](int i) { return i <= n ? c.object(i) : trivial_cached(); },
      [&](int i, const FiniteGroup& s, const FiniteGroup& t) { return i <= n ? c.delta(i) : GroupHom::zero(s, t); });
}

BoundedChainComplex coskeleton_chain(const BoundedChainComplex& c, int n) {
  require_range(c, n);
  auto k = subgroup_group(kernel(c.delta(n)), "ker");
  return assemble(
      std::max(c.degree_bound(), n + 1),
      [&](int i) { return i <= n ? c.object(i) : (i == n + 1 ? k.group : trivial_cached()); },
      [&](int i, const FiniteGroup& s, const FiniteGroup& t) {
        if (i <= n) return c.delta(i);
        if (i == n + 1) return k.inclusion;
        return GroupHom::zero(s, t);
      });
}

Cotruncation cotruncate_above(const BoundedChainComplex& c, int n, bool require) {
  require_range(c, n);
  if (require) require_proper(c, "cot_" + deg(n));
  auto q = cokernel(c.delta(n + 1));
  auto dn = factor_through(q, c.delta(n));
  auto out = assemble(
      c.degree_bound(), [&](int i) { return i < n ? c.object(i) : (i == n ? q.group : trivial_cached()); },
      [&](int i, const FiniteGroup& s, const FiniteGroup& t) {
        if (i < n) return c.delta(i);
        if (i == n) return dn;
        return GroupHom::zero(s, t);
      });
  std::vector<GroupHom> unit;
  for (int i = 0; i <= c.degree_bound(); ++i) {
    if (i < n) {
      unit.push_back(GroupHom::identity(c.object(i)));
    } else if (i == n) {
      unit.push_back(q.projection);
    } else {
      unit.push_back(GroupHom::zero(c.object(i), out.object(i)));
    }
  }
  return {out, make_chain_map(c, out, std::move(unit))};
}

BoundedChainComplex cotruncate_below(const BoundedChainComplex& c, int n) {
  require_range(c, n);
  auto k = subgroup_group(kernel(c.delta(n)), "ker");
  auto top = whole_embedding(c.object(n + 1));
  return assemble(
      c.degree_bound(), [&](int i) { return i > n ? c.object(i) : (i == n ? k.group : trivial_cached()); },
      [&](int i, const FiniteGroup& s, const FiniteGroup& t) {
        if (i > n + 1) return c.delta(i);
        if (i == n + 1) return restrict_hom(c.delta(i), top, k);
        return GroupHom::zero(s, t);
      });
}

BoundedChainComplex coskeleton_below(const BoundedChainComplex& c, int n) {
  require_range(c, n);
  if (n == 0) return c;
  auto q = cokernel(c.delta(n + 1));
  return assemble(
      c.degree_bound(), [&](int i) { return i >= n ? c.object(i) : (i == n - 1 ? q.group : trivial_cached()); },
      [&](int i, const FiniteGroup& s, const FiniteGroup& t) {
        if (i > n) return c.delta(i);
        if (i == n) return q.projection;
        return GroupHom::zero(s, t);
      });
}

// ---------------------------------------------------------------------------
// Homology

FiniteGroup homology_H(const BoundedChainComplex& c, int n) {
  if (n < 0 || n > c.degree_bound()) return trivial_cached();
  auto k = kernel(c.delta(n));
  auto im = image(c.delta(n + 1));
  if (!is_normal_in(im, k)) {
    fail(ErrorCode::kImageNotNormalInKernel, "delta_" + deg(n + 1) + " image is not normal in ker delta_" + deg(n));
  }
  auto e = subgroup_group(k, "ker");
  Subgroup local{e.group, {}};
  for (Elem x : im.elements) local.elements.push_back(static_cast<Elem>(e.local[x]));
  std::sort(local.elements.begin(), local.elements.end());
  return quotient(e.group, local, "H" + deg(n)).group;
}

FiniteGroup homology_K(const BoundedChainComplex& c, int n) {
  if (n < 0 || n > c.degree_bound()) return trivial_cached();
  require_proper(c, "K_" + deg(n));
  auto q = cokernel(c.delta(n + 1));
  auto e = factor_through(q, c.delta(n));
  return subgroup_group(kernel(e), "K" + deg(n)).group;
}

namespace {

struct Iso {
  const Caps& caps;
  bool operator()(const FiniteGroup& a, const FiniteGroup& b) const { return are_isomorphic(a, b, caps); }
};

std::string orders(const BoundedChainComplex& c) {
  std::string s;
  for (int i = c.degree_bound(); i >= 0; --i) {
    s += std::to_string(c.object(i).order());
    if (i > 0) s += " -> ";
  }
  return s;
}

}  // namespace

std::vector<TableCell> homology_table_check(const BoundedChainComplex& c, const Caps& caps) {
  require_proper(c, "homology table");
  const int d = c.degree_bound();
  Iso iso{caps};
  std::vector<TableCell> cells;
  auto add = [&](std::string part, int n, int m, int i, bool ok, std::string detail = {}) {
    cells.push_back({std::move(part), n, m, i, ok, std::move(detail)});
  };

  std::vector<FiniteGroup> h;
  for (int i = 0; i <= d; ++i) h.push_back(homology_H(c, i));
  auto hm = [&](int i) { return i >= 0 && i <= d ? h[i] : trivial_cached(); };
  auto zero_or = [&](bool keep, int i) { return keep ? hm(i) : trivial_cached(); };

  // Radicals for n in [0, d + 1]; index n.
  std::vector<SubComplex> cok, ker;
  for (int n = 0; n <= d + 1; ++n) {
    cok.push_back(cok_levels(c, n));
    ker.push_back(ker_levels(c, n));
  }

  for (int n = 0; n <= d; ++n) {
    auto k = homology_K(c, n);
    add("H=K", n, 0, n, iso(h[n], k), "|H|=" + std::to_string(h[n].order()) + " |K|=" + std::to_string(k.order()));

    auto q = quotient_complex(ker[n], cok[n + 1]).complex;
    bool concentrated_ok = true;
    for (int i = 0; i <= d; ++i) {
      if (i != n && !q.object(i).is_trivial()) concentrated_ok = false;
    }
    add("homo", n, n + 1, n, concentrated_ok && iso(q.object(n), h[n]), "ker_n/cok_n+1 = " + orders(q));
  }

  for (int n = 1; n <= d + 1; ++n) {
    auto cok_c = as_complex(cok[n]).complex;
    auto ker_c = as_complex(ker[n]).complex;
    auto m_cok = quotient_complex(c, cok[n]).complex;
    auto m_ker = quotient_complex(c, ker[n]).complex;
    auto ck = quotient_complex(cok[n], ker[n]).complex;
    for (int i = 0; i <= d; ++i) {
      auto want1 = zero_or(i >= n, i);
      auto a = homology_H(cok_c, i), b = homology_H(ker_c, i);
      add("1", n, 0, i, iso(a, want1) && iso(b, want1));
      auto want2 = zero_or(i < n, i);
      auto x = homology_H(m_cok, i), y = homology_H(m_ker, i);
      add("2", n, 0, i, iso(x, want2) && iso(y, want2));
      add("3", n, 0, i, homology_H(ck, i).is_trivial());
    }
    for (int m = n + 1; m <= d + 1; ++m) {
      auto cok_kerm = quotient_complex(cok[n], ker[m]).complex;
      auto cok_cokm = quotient_complex(cok[n], cok[m]).complex;
      auto ker_cokm = quotient_complex(ker[n], cok[m]).complex;
      auto ker_kerm = quotient_complex(ker[n], ker[m]).complex;
      for (int i = 0; i <= d; ++i) {
        auto want = zero_or(m > i && i >= n, i);
        auto a = homology_H(cok_kerm, i);
        auto b = homology_H(cok_cokm, i);
        add("4", n, m, i, iso(a, want) && iso(b, want));
        auto e = homology_H(ker_cokm, i);
        auto f = homology_H(ker_kerm, i);
        add("5", n, m, i, iso(b, e) && iso(e, f));
        if (m == n + 1) add("6", n, m, i, iso(a, zero_or(i == n, i)));
      }
    }
  }

  // H_n(M) = 0 iff M/ker_{n+1}(M) ~ Cosk_n(M): the canonical comparison at
  // degree n+1 is delta_{n+1}: M_{n+1}/ker(delta_{n+1}) -> ker(delta_n).
  for (int n = 0; n <= d; ++n) {
    bool exact = h[n].is_trivial();
    auto im = image(c.delta(n + 1));
    auto kn = kernel(c.delta(n));
    bool comparison_iso = im == kn;
    add("exact-ker", n, 0, n + 1, exact == comparison_iso);
  }
  // H_n(M) = 0 iff cok_n(M) ~ Cosk'_n(M): the comparison at degree n-1 is
  // e'_n : Cok(delta_{n+1}) -> delta_n(M_n).
  for (int n = 1; n <= d; ++n) {
    bool exact = h[n].is_trivial();
    auto q = cokernel(c.delta(n + 1));
    auto e = factor_through(q, c.delta(n));
    bool comparison_iso = is_injective(e);
    add("exact-cok", n, 0, n - 1, exact == comparison_iso);
  }
  return cells;
}

// ---------------------------------------------------------------------------
// Lattice

std::optional<std::string> SubobjectTower::check() const {
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    if (!is_subcomplex_of(rows[r + 1].sub, rows[r].sub)) {
      return rows[r + 1].name + " is not contained in " + rows[r].name;
    }
  }
  return std::nullopt;
}

SubobjectTower lattice_chain(const BoundedChainComplex& c) {
  require_proper(c, "lattice");
  SubobjectTower t;
  t.rows.push_back({"M", whole_subcomplex(c)});
  for (int n = 1; n <= c.degree_bound(); ++n) {
    t.rows.push_back({"cok_" + deg(n), cok_levels(c, n)});
    t.rows.push_back({"ker_" + deg(n), ker_levels(c, n)});
  }
  t.rows.push_back({"0", zero_subcomplex(c)});
  return t;
}

std::string render_tower(const SubobjectTower& t) {
  std::size_t width = 0;
  for (const auto& r : t.rows) width = std::max(width, r.name.size() + (r.name == "M" || r.name == "0" ? 0 : 3));
  std::ostringstream out;
  for (const auto& r : t.rows) {
    std::string name = (r.name == "M" || r.name == "0") ? r.name : r.name + "(M)";
    out << name << std::string(width - name.size(), ' ') << " = ";
    for (int i = static_cast<int>(r.sub.levels.size()) - 1; i >= 0; --i) {
      out << r.sub.levels[static_cast<std::size_t>(i)].order();
      if (i > 0) out << " -> ";
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Chain map enumeration

ChainMapCount enumerate_chain_maps(const BoundedChainComplex& source, const BoundedChainComplex& target,
                                   std::uint64_t cap) {
  const int top = std::max(source.degree_bound(), target.degree_bound());
  ChainMapCount out;
  std::vector<std::vector<GroupHom>> homs(static_cast<std::size_t>(top + 1));
  out.candidates = 1;
  bool overflow = false;
  for (int i = 0; i <= top; ++i) {
    auto h = all_homomorphisms(source.object(i), target.object(i), cap);
    if (!h) {
      overflow = true;
      out.candidates = cap + 1;
      break;
    }
    homs[i] = std::move(*h);
    if (out.candidates > cap / std::max<std::uint64_t>(1, homs[i].size())) overflow = true;
    out.candidates = overflow ? cap + 1 : out.candidates * homs[i].size();
  }
  auto commutes = [&](int i, const GroupHom& f, const GroupHom& g) {  // g_{i-1} delta_i = delta'_i f_i
    auto d = source.delta(i);
    auto e = target.delta(i);
    for (Elem x = 0; x < f.map.size(); ++x) {
      if (g.map[d.map[x]] != e.map[f.map[x]]) return false;
    }
    return true;
  };
  std::vector<GroupHom> chosen(static_cast<std::size_t>(top + 1));
  if (!overflow) {
    std::function<void(int)> descend = [&](int i) {
      if (i < 0) {
        out.maps.push_back({source, target, chosen});
        return;
      }
      for (const auto& f : homs[i]) {
        ++out.examined;
        if (i < top && !commutes(i + 1, chosen[i + 1], f)) continue;
        chosen[i] = f;
        descend(i - 1);
      }
    };
    descend(top);
    return out;
  }
  out.exhaustive = false;
  if (std::any_of(homs.begin(), homs.end(), [](const auto& v) { return v.empty(); })) return out;
  std::mt19937_64 rng(0x5eed);
  const std::uint64_t samples = std::max<std::uint64_t>(1, cap / 100);
  for (std::uint64_t s = 0; s < samples; ++s) {
    for (int i = 0; i <= top; ++i) chosen[i] = homs[i][rng() % homs[i].size()];
    ++out.examined;
    bool ok = true;
    for (int i = 1; i <= top && ok; ++i) ok = commutes(i, chosen[i], chosen[i - 1]);
    if (ok) out.maps.push_back({source, target, chosen});
  }
  return out;
}

// ---------------------------------------------------------------------------

CounterexampleReport cot0_kernel_report(const GroupHom& f) {
  auto x = make_complex({f.target, f.source}, {f});
  auto cot = cotruncate_above(x, 0, false);
  auto k = kernel(cot.unit);
  auto kc = as_complex(k).complex;
  auto cot_k = cotruncate_above(kc, 0, false);
  CounterexampleReport r;
  r.cot0_order = cot.complex.object(0).order();
  r.kernel_order_degree0 = k.at(0).order();
  r.kernel_order_degree1 = k.at(1).order();
  r.cot0_of_kernel_order = cot_k.complex.object(0).order();
  r.nontrivial = r.cot0_of_kernel_order > 1;
  return r;
}

CounterexampleReport d4_counterexample() {
  auto d4 = dihedral(4);
  Elem a = d4.named_generators()[0].second;
  auto sub = subgroup_group(generated_subgroup(d4, std::vector<Elem>{a}), "<a>");
  return cot0_kernel_report(sub.inclusion);
}

}  // namespace simptor
