#include "simptor/simplicial.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <memory>
#include <sstream>

#include "simptor/errors.hpp"

namespace simptor {

namespace {

std::string str(std::size_t v) { return std::to_string(v); }

// Open-addressing set of fixed-width tuples, numbered by insertion order.
class TupleStore {
 public:
  explicit TupleStore(std::size_t width) : width_(width), slots_(64, 0) {}

  std::size_t size() const { return count_; }
  const Elem* at(Elem i) const { return data_.data() + static_cast<std::size_t>(i) * width_; }

  std::int64_t find(const Elem* t) const {
    std::size_t mask = slots_.size() - 1;
    for (std::size_t h = hash(t) & mask;; h = (h + 1) & mask) {
      std::uint32_t s = slots_[h];
      if (s == 0) return -1;
      if (std::memcmp(at(s - 1), t, width_ * sizeof(Elem)) == 0) return s - 1;
    }
  }

  Elem insert(const Elem* t) {
    if (auto f = find(t); f >= 0) return static_cast<Elem>(f);
    if ((count_ + 1) * 2 > slots_.size()) grow();
    data_.insert(data_.end(), t, t + width_);
    auto idx = static_cast<Elem>(count_++);
    place(idx);
    return idx;
  }

 private:
  std::size_t hash(const Elem* t) const {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::size_t k = 0; k < width_; ++k) {
      h ^= t[k];
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void place(Elem idx) {
    std::size_t mask = slots_.size() - 1;
    std::size_t h = hash(at(idx)) & mask;
    while (slots_[h] != 0) h = (h + 1) & mask;
    slots_[h] = idx + 1;
  }

  void grow() {
    slots_.assign(slots_.size() * 2, 0);
    for (std::size_t i = 0; i < count_; ++i) place(static_cast<Elem>(i));
  }

  std::size_t width_;
  std::size_t count_ = 0;
  std::vector<Elem> data_;
  std::vector<std::uint32_t> slots_;
};

// The tuples of `store` as a subgroup of base^width under componentwise product.
FiniteGroup tuple_group(std::shared_ptr<const TupleStore> store, const FiniteGroup& base, std::size_t width,
                        std::string label) {
  std::vector<Elem> inverse(store->size());
  std::vector<Elem> buf(width);
  for (Elem i = 0; i < store->size(); ++i) {
    const Elem* t = store->at(i);
    for (std::size_t k = 0; k < width; ++k) buf[k] = base.inv(t[k]);
    inverse[i] = static_cast<Elem>(store->find(buf.data()));
  }
  return FiniteGroup::from_rule(
      store->size(),
      [store, base, width](Elem a, Elem b) {
        thread_local std::vector<Elem> tmp;
        tmp.resize(width);
        const Elem* ta = store->at(a);
        const Elem* tb = store->at(b);
        for (std::size_t k = 0; k < width; ++k) tmp[k] = base.mul(ta[k], tb[k]);
        return static_cast<Elem>(store->find(tmp.data()));
      },
      std::move(inverse), std::move(label));
}

std::vector<char> mask_of(const Subgroup& s) {
  std::vector<char> m(s.parent.order(), 0);
  for (Elem x : s.elements) m[x] = 1;
  return m;
}

Subgroup from_mask(const FiniteGroup& g, const std::vector<char>& m) {
  Subgroup s{g, {}};
  for (Elem x = 0; x < m.size(); ++x) {
    if (m[x]) s.elements.push_back(x);
  }
  return s;
}

std::uint64_t saturating_pow(std::uint64_t base, std::uint64_t exp) {
  std::uint64_t r = 1;
  for (std::uint64_t k = 0; k < exp; ++k) {
    if (base != 0 && r > std::numeric_limits<std::uint64_t>::max() / base) return std::numeric_limits<std::uint64_t>::max();
    r *= base;
  }
  return r;
}

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

std::uint64_t binom(int n, int k) {
  if (k < 0 || k > n) return 0;
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
  return r;
}

void check_structure_shapes(const TruncatedSimplicialGroup& x) {
  const int D = x.degree_bound();
  if (D < 0) fail(ErrorCode::kInvalidArgument, "simplicial group needs level 0");
  if (static_cast<int>(x.faces.size()) != D + 1 || static_cast<int>(x.degeneracies.size()) != D + 1) {
    fail(ErrorCode::kInvalidArgument, "faces/degeneracies must have one slot per level");
  }
  for (int n = 0; n <= D; ++n) {
    const auto want_faces = static_cast<std::size_t>(n == 0 ? 0 : n + 1);
    if (x.faces[n].size() != want_faces) fail(ErrorCode::kInvalidArgument, "level " + str(n) + " needs " + str(want_faces) + " faces");
    const auto want_degs = static_cast<std::size_t>(n == D ? 0 : n + 1);
    if (x.degeneracies[n].size() != want_degs) {
      fail(ErrorCode::kInvalidArgument, "level " + str(n) + " needs " + str(want_degs) + " degeneracies");
    }
    for (const auto& f : x.faces[n]) {
      if (f.map.size() != x.level(n).order() || f.target.order() != x.level(n - 1).order()) {
        fail(ErrorCode::kInvalidArgument, "face at level " + str(n) + " has the wrong shape");
      }
    }
    for (const auto& s : x.degeneracies[n]) {
      if (s.map.size() != x.level(n).order() || s.target.order() != x.level(n + 1).order()) {
        fail(ErrorCode::kInvalidArgument, "degeneracy at level " + str(n) + " has the wrong shape");
      }
    }
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// Validation and basic objects

SimplicialReport validate_simplicial(const TruncatedSimplicialGroup& x, std::size_t limit) {
  check_structure_shapes(x);
  SimplicialReport r;
  auto report = [&](const std::string& what, int n, Elem e) {
    r.ok = false;
    if (r.violations.size() < limit) r.violations.push_back(what + " at degree " + str(n) + ", element " + str(e));
  };
  const int D = x.degree_bound();
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) {
      const auto& f = x.d(n, i);
      if (!is_homomorphism(x.level(n), x.level(n - 1), f.map)) {
        r.ok = false;
        r.violations.push_back("d_" + str(i) + " at degree " + str(n) + " is not a homomorphism");
      }
    }
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) {
      if (!is_homomorphism(x.level(n), x.level(n + 1), x.s(n, i).map)) {
        r.ok = false;
        r.violations.push_back("s_" + str(i) + " at degree " + str(n) + " is not a homomorphism");
      }
    }
  }
  // d_i d_j = d_{j-1} d_i for i < j, on X_n.
  for (int n = 2; n <= D; ++n) {
    for (int j = 1; j <= n; ++j) {
      for (int i = 0; i < j; ++i) {
        const auto& dj = x.d(n, j).map;
        const auto& di = x.d(n - 1, i).map;
        const auto& di_top = x.d(n, i).map;
        const auto& dj1 = x.d(n - 1, j - 1).map;
        for (Elem e = 0; e < x.level(n).order(); ++e) {
          if (di[dj[e]] != dj1[di_top[e]]) {
            report("d_" + str(i) + " d_" + str(j) + " = d_" + str(j - 1) + " d_" + str(i), n, e);
            break;
          }
        }
      }
    }
  }
  // s_i s_j = s_{j+1} s_i for i <= j, on X_n.
  for (int n = 0; n + 2 <= D; ++n) {
    for (int j = 0; j <= n; ++j) {
      for (int i = 0; i <= j; ++i) {
        const auto& sj = x.s(n, j).map;
        const auto& si = x.s(n + 1, i).map;
        const auto& si_low = x.s(n, i).map;
        const auto& sj1 = x.s(n + 1, j + 1).map;
        for (Elem e = 0; e < x.level(n).order(); ++e) {
          if (si[sj[e]] != sj1[si_low[e]]) {
            report("s_" + str(i) + " s_" + str(j) + " = s_" + str(j + 1) + " s_" + str(i), n, e);
            break;
          }
        }
      }
    }
  }
  // d_i s_j on X_n.
  for (int n = 0; n < D; ++n) {
    for (int j = 0; j <= n; ++j) {
      const auto& sj = x.s(n, j).map;
      for (int i = 0; i <= n + 1; ++i) {
        const auto& di = x.d(n + 1, i).map;
        for (Elem e = 0; e < x.level(n).order(); ++e) {
          Elem lhs = di[sj[e]];
          Elem rhs = e;
          std::string rel;
          if (i < j) {
            rhs = x.s(n - 1, j - 1).map[x.d(n, i).map[e]];
            rel = "d_" + str(i) + " s_" + str(j) + " = s_" + str(j - 1) + " d_" + str(i);
          } else if (i > j + 1) {
            rhs = x.s(n - 1, j).map[x.d(n, i - 1).map[e]];
            rel = "d_" + str(i) + " s_" + str(j) + " = s_" + str(j) + " d_" + str(i - 1);
          } else {
            rel = "d_" + str(i) + " s_" + str(j) + " = 1";
          }
          if (lhs != rhs) {
            report(rel, n, e);
            break;
          }
        }
      }
    }
  }
  return r;
}

void require_simplicial(const TruncatedSimplicialGroup& x) {
  auto r = validate_simplicial(x, 1);
  if (!r.ok) fail(ErrorCode::kIdentityViolation, r.violations.front());
}

TruncatedSimplicialGroup discrete(const FiniteGroup& g, int D) {
  if (D < 0) fail(ErrorCode::kInvalidArgument, "degree bound must be >= 0");
  TruncatedSimplicialGroup x;
  auto id = GroupHom::identity(g);
  for (int n = 0; n <= D; ++n) {
    x.levels.push_back(g);
    x.faces.emplace_back(n == 0 ? 0 : n + 1, id);
    x.degeneracies.emplace_back(n == D ? 0 : n + 1, id);
  }
  return x;
}

TruncatedSimplicialGroup indiscrete(const FiniteGroup& g, int D, const Caps& caps) {
  if (D < 0) fail(ErrorCode::kInvalidArgument, "degree bound must be >= 0");
  if (saturating_pow(g.order(), static_cast<std::uint64_t>(D + 1)) > caps.level_cap) {
    fail(ErrorCode::kLevelOrderCap, "|" + g.label() + "|^" + str(D + 1) + " exceeds level-cap " + str(caps.level_cap));
  }
  TruncatedSimplicialGroup x;
  std::vector<std::vector<FiniteGroup>> factors;
  for (int n = 0; n <= D; ++n) {
    factors.emplace_back(static_cast<std::size_t>(n + 1), g);
    x.levels.push_back(n == 0 ? g : product_of(factors.back(), g.label() + "^" + str(n + 1), caps));
  }
  x.faces.resize(D + 1);
  x.degeneracies.resize(D + 1);
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) {
      std::vector<Elem> map(x.level(n).order());
      for (Elem e = 0; e < map.size(); ++e) {
        auto digits = product_digits(factors[n], e);
        digits.erase(digits.begin() + i);
        map[e] = product_index(factors[n - 1], digits);
      }
      x.faces[n].push_back({x.level(n), x.level(n - 1), std::move(map)});
    }
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) {
      std::vector<Elem> map(x.level(n).order());
      for (Elem e = 0; e < map.size(); ++e) {
        auto digits = product_digits(factors[n], e);
        digits.insert(digits.begin() + i, digits[i]);
        map[e] = product_index(factors[n + 1], digits);
      }
      x.degeneracies[n].push_back({x.level(n), x.level(n + 1), std::move(map)});
    }
  }
  return x;
}

TruncatedSimplicialGroup truncate(const TruncatedSimplicialGroup& x, int n) {
  if (n < 0 || n > x.degree_bound()) fail(ErrorCode::kInvalidArgument, "truncation degree out of range");
  TruncatedSimplicialGroup y;
  y.levels.assign(x.levels.begin(), x.levels.begin() + n + 1);
  y.faces.assign(x.faces.begin(), x.faces.begin() + n + 1);
  y.degeneracies.assign(x.degeneracies.begin(), x.degeneracies.begin() + n + 1);
  y.degeneracies[n].clear();
  return y;
}

// ---------------------------------------------------------------------------
// Subobjects

bool SimplicialSubobject::is_zero() const {
  return std::all_of(levels.begin(), levels.end(), [](const Subgroup& s) { return s.is_trivial(); });
}

bool SimplicialSubobject::is_whole() const {
  return std::all_of(levels.begin(), levels.end(), [](const Subgroup& s) { return s.is_whole(); });
}

SimplicialSubobject zero_subobject(const TruncatedSimplicialGroup& x) {
  SimplicialSubobject s{x, {}};
  for (const auto& g : x.levels) s.levels.push_back(Subgroup::trivial(g));
  return s;
}

SimplicialSubobject whole_subobject(const TruncatedSimplicialGroup& x) {
  SimplicialSubobject s{x, {}};
  for (const auto& g : x.levels) s.levels.push_back(Subgroup::whole(g));
  return s;
}

bool is_subobject_of(const SimplicialSubobject& a, const SimplicialSubobject& b) {
  if (a.levels.size() != b.levels.size()) return false;
  for (std::size_t i = 0; i < a.levels.size(); ++i) {
    if (!is_subset(a.levels[i], b.levels[i])) return false;
  }
  return true;
}

bool operator==(const SimplicialSubobject& a, const SimplicialSubobject& b) {
  return a.levels.size() == b.levels.size() && std::equal(a.levels.begin(), a.levels.end(), b.levels.begin());
}

EmbeddedSimplicial as_simplicial(const SimplicialSubobject& s) {
  const auto& x = s.parent;
  const int D = x.degree_bound();
  EmbeddedSimplicial out;
  for (int n = 0; n <= D; ++n) {
    out.levels.push_back(subgroup_group(s.at(n), x.level(n).label() + "'"));
    out.object.levels.push_back(out.levels.back().group);
  }
  out.object.faces.resize(D + 1);
  out.object.degeneracies.resize(D + 1);
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) out.object.faces[n].push_back(restrict_hom(x.d(n, i), out.levels[n], out.levels[n - 1]));
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) {
      out.object.degeneracies[n].push_back(restrict_hom(x.s(n, i), out.levels[n], out.levels[n + 1]));
    }
  }
  return out;
}

QuotientSimplicial quotient_simplicial(const TruncatedSimplicialGroup& x, const SimplicialSubobject& sub) {
  const int D = x.degree_bound();
  QuotientSimplicial out;
  std::vector<std::vector<Elem>> gens(D + 1);
  for (int n = 0; n <= D; ++n) {
    if (!is_normal(sub.at(n))) fail(ErrorCode::kNotNormalLevel, "level " + str(n) + " is not normal");
    gens[n] = subgroup_generators(sub.at(n));
  }
  for (int n = 0; n <= D; ++n) {
    for (Elem g : gens[n]) {
      if (n >= 1) {
        for (int i = 0; i <= n; ++i) {
          if (!sub.at(n - 1).contains(x.d(n, i).map[g])) {
            fail(ErrorCode::kInvalidArgument, "subobject not closed under d_" + str(i) + " at level " + str(n));
          }
        }
      }
      if (n < D) {
        for (int i = 0; i <= n; ++i) {
          if (!sub.at(n + 1).contains(x.s(n, i).map[g])) {
            fail(ErrorCode::kInvalidArgument, "subobject not closed under s_" + str(i) + " at level " + str(n));
          }
        }
      }
    }
  }
  for (int n = 0; n <= D; ++n) {
    out.levels.push_back(quotient(x.level(n), sub.at(n), x.level(n).label() + "/K"));
    out.object.levels.push_back(out.levels.back().group);
  }
  out.object.faces.resize(D + 1);
  out.object.degeneracies.resize(D + 1);
  for (int n = 1; n <= D; ++n) {
    for (int i = 0; i <= n; ++i) out.object.faces[n].push_back(induced_hom(x.d(n, i), out.levels[n], out.levels[n - 1]));
  }
  for (int n = 0; n < D; ++n) {
    for (int i = 0; i <= n; ++i) {
      out.object.degeneracies[n].push_back(induced_hom(x.s(n, i), out.levels[n], out.levels[n + 1]));
    }
  }
  require_simplicial(out.object);
  return out;
}

QuotientSimplicial quotient_simplicial(const SimplicialSubobject& outer, const SimplicialSubobject& inner) {
  auto e = as_simplicial(outer);
  SimplicialSubobject local{e.object, {}};
  for (int n = 0; n <= e.object.degree_bound(); ++n) {
    Subgroup s{e.levels[n].group, {}};
    for (Elem x : inner.at(n).elements) {
      std::int64_t y = e.levels[n].local[x];
      if (y < 0) fail(ErrorCode::kNotNested, "inner subobject is not contained in the outer one at level " + str(n));
      s.elements.push_back(static_cast<Elem>(y));
    }
    std::sort(s.elements.begin(), s.elements.end());
    local.levels.push_back(std::move(s));
  }
  return quotient_simplicial(e.object, local);
}

// ---------------------------------------------------------------------------
// Moore complex

namespace {

std::vector<std::vector<char>> moore_masks(const TruncatedSimplicialGroup& x) {
  std::vector<std::vector<char>> masks;
  for (int n = 0; n <= x.degree_bound(); ++n) {
    std::vector<char> m(x.level(n).order(), 1);
    for (int i = 0; i < n; ++i) {
      const auto& f = x.d(n, i).map;
      for (Elem e = 0; e < m.size(); ++e) {
        if (f[e] != 0) m[e] = 0;
      }
    }
    masks.push_back(std::move(m));
  }
  return masks;
}

}  // namespace

MooreComplex moore_complex(const TruncatedSimplicialGroup& x) {
  MooreComplex out;
  auto masks = moore_masks(x);
  std::vector<FiniteGroup> objects;
  for (int n = 0; n <= x.degree_bound(); ++n) {
    out.subsets.push_back(from_mask(x.level(n), masks[n]));
    out.embeddings.push_back(subgroup_group(out.subsets.back(), "N" + str(n)));
    objects.push_back(out.embeddings.back().group);
  }
  std::vector<GroupHom> diffs;
  for (int n = 1; n <= x.degree_bound(); ++n) {
    diffs.push_back(restrict_hom(x.d(n, n), out.embeddings[n], out.embeddings[n - 1]));
  }
  out.complex = make_complex(std::move(objects), std::move(diffs));
  return out;
}

FiniteGroup homotopy_group(const TruncatedSimplicialGroup& x, int n) {
  return homology_H(moore_complex(x).complex, n);
}

// ---------------------------------------------------------------------------
// Surjections and the filtration

std::string Surjection::to_string() const {
  if (indices.empty()) return "id";
  std::string s;
  for (int i : indices) s += "s" + std::to_string(i);
  return s;
}

bool operator==(const Surjection& a, const Surjection& b) { return a.n == b.n && a.indices == b.indices; }

std::vector<Surjection> surjection_order(int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "S(n) needs n >= 0");
  if (n > 20) fail(ErrorCode::kInvalidArgument, "S(n) is only listed for n <= 20");
  // Index i carries weight 2^(n-1-i); the order is by total weight.
  std::vector<Surjection> out;
  const std::uint32_t count = 1U << static_cast<unsigned>(n);
  for (std::uint32_t w = 0; w < count; ++w) {
    Surjection s{n, {}};
    for (int i = 0; i < n; ++i) {
      if (w & (1U << static_cast<unsigned>(n - 1 - i))) s.indices.push_back(i);
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool FiltrationReport::ok() const { return !mismatch().has_value(); }

std::optional<std::string> FiltrationReport::mismatch() const {
  if (!identity_trivial) return "G_{n,id} is not trivial";
  if (!top_is_moore) return "G_{n,s" + std::to_string(n - 1) + "} differs from N_n";
  for (const auto& s : steps) {
    if (!s.ok) {
      return "successor of " + s.surjection.to_string() + ": expected order " + std::to_string(s.expected_next) +
             ", found " + std::to_string(s.actual_next);
    }
  }
  if (level_order != product_order) {
    return "|X_n| = " + std::to_string(level_order) + " but prod |N_r|^binom(n,r) = " + std::to_string(product_order);
  }
  return std::nullopt;
}

FiltrationReport semidirect_filtration(const TruncatedSimplicialGroup& x, int n) {
  if (n < 0 || n > x.degree_bound()) fail(ErrorCode::kInvalidArgument, "filtration degree out of range");
  FiltrationReport r;
  r.n = n;
  r.level_order = x.level(n).order();
  auto masks = moore_masks(x);
  std::vector<std::size_t> moore_orders;
  for (int k = 0; k <= n; ++k) moore_orders.push_back(static_cast<std::size_t>(std::count(masks[k].begin(), masks[k].end(), 1)));

  auto order = surjection_order(n);
  const std::size_t size = x.level(n).order();
  // kernels[k][e]: e is killed by d_{order[k]}
  std::vector<std::vector<char>> kernels;
  for (const auto& sj : order) {
    std::vector<char> k(size, 0);
    for (Elem e = 0; e < size; ++e) {
      Elem v = e;
      int level = n;
      for (auto it = sj.indices.rbegin(); it != sj.indices.rend(); ++it) {
        v = x.d(level, *it).map[v];
        --level;
      }
      k[e] = sj.indices.empty() ? (e == 0) : (v == 0);
    }
    kernels.push_back(std::move(k));
  }
  std::vector<std::size_t> g_orders(order.size());
  std::vector<char> acc(size, 1);
  std::vector<char> top_mask;
  for (std::size_t k = order.size(); k-- > 0;) {
    for (Elem e = 0; e < size; ++e) acc[e] = acc[e] && kernels[k][e];
    g_orders[k] = static_cast<std::size_t>(std::count(acc.begin(), acc.end(), 1));
    if (n >= 1 && order[k].indices == std::vector<int>{n - 1}) top_mask = acc;
  }
  r.identity_trivial = g_orders[0] == 1;
  if (n >= 1) r.top_is_moore = top_mask == masks[n];
  for (std::size_t k = 0; k < order.size(); ++k) {
    FiltrationStep s;
    s.surjection = order[k];
    s.order = g_orders[k];
    s.moore_order = moore_orders[static_cast<std::size_t>(order[k].target())];
    s.expected_next = s.order * s.moore_order;
    s.actual_next = k + 1 < order.size() ? g_orders[k + 1] : size;
    s.ok = s.expected_next == s.actual_next;
    r.steps.push_back(std::move(s));
  }
  std::uint64_t product = 1;
  for (int k = 0; k <= n; ++k) product = saturating_mul(product, saturating_pow(moore_orders[k], binom(n, k)));
  r.product_order = static_cast<std::size_t>(product);
  return r;
}

// ---------------------------------------------------------------------------
// Simplicial kernels and coskeleta

namespace {

struct KernelBuild {
  SimplicialKernel kernel;
  std::shared_ptr<const TupleStore> store;
};

KernelBuild build_kernel(const TruncatedSimplicialGroup& x, const Caps& caps) {
  const int n = x.degree_bound();
  const std::size_t width = static_cast<std::size_t>(n + 2);
  const FiniteGroup& xn = x.level(n);
  const std::size_t size = xn.order();
  auto store = std::make_shared<TupleStore>(width);

  // Fibers of d_0 over X_{n-1}.
  std::vector<std::vector<Elem>> fibers;
  if (n >= 1) {
    fibers.resize(x.level(n - 1).order());
    for (Elem e = 0; e < size; ++e) fibers[x.d(n, 0).map[e]].push_back(e);
  }
  std::vector<Elem> all(size);
  for (Elem e = 0; e < size; ++e) all[e] = e;

  std::vector<Elem> tuple(width);
  auto search = [&](auto&& self, std::size_t j) -> void {
    if (j == width) {
      store->insert(tuple.data());
      if (store->size() > caps.level_cap) {
        fail(ErrorCode::kLevelOrderCap, "simplicial kernel over level " + str(n) + " exceeds level-cap " +
                                            str(caps.level_cap));
      }
      return;
    }
    const std::vector<Elem>& candidates =
        (n >= 1 && j >= 1) ? fibers[x.d(n, static_cast<int>(j) - 1).map[tuple[0]]] : all;
    for (Elem c : candidates) {
      bool ok = true;
      for (std::size_t i = 1; i < j && ok; ++i) {
        ok = x.d(n, static_cast<int>(i)).map[c] == x.d(n, static_cast<int>(j) - 1).map[tuple[i]];
      }
      if (!ok) continue;
      tuple[j] = c;
      self(self, j + 1);
    }
  };
  search(search, 0);

  KernelBuild out;
  out.store = store;
  auto group = tuple_group(store, xn, width, "Delta" + str(n + 1));
  out.kernel.group = group;
  for (std::size_t j = 0; j < width; ++j) {
    std::vector<Elem> map(store->size());
    for (Elem t = 0; t < map.size(); ++t) map[t] = store->at(t)[j];
    out.kernel.projections.push_back({group, xn, std::move(map)});
  }
  // s_i x = (d_j s_i x)_j, with d_j s_i rewritten through the identities.
  for (int i = 0; i <= n; ++i) {
    std::vector<Elem> map(size);
    for (Elem e = 0; e < size; ++e) {
      for (int j = 0; j < static_cast<int>(width); ++j) {
        if (j == i || j == i + 1) {
          tuple[j] = e;
        } else if (j < i) {
          tuple[j] = x.s(n - 1, i - 1).map[x.d(n, j).map[e]];
        } else {
          tuple[j] = x.s(n - 1, i).map[x.d(n, j - 1).map[e]];
        }
      }
      std::int64_t idx = store->find(tuple.data());
      if (idx < 0) fail(ErrorCode::kIdentityViolation, "degenerate tuple missing from the simplicial kernel");
      map[e] = static_cast<Elem>(idx);
    }
    out.kernel.degeneracies.push_back({xn, group, std::move(map)});
  }
  return out;
}

struct CoskBuild {
  TruncatedSimplicialGroup object;
  std::vector<std::shared_ptr<const TupleStore>> stores;  // per level, null for copied levels
};

CoskBuild build_coskeleton(const TruncatedSimplicialGroup& x, int D, const Caps& caps) {
  CoskBuild out;
  out.object = x;
  out.stores.assign(x.levels.size(), nullptr);
  while (out.object.degree_bound() < D) {
    auto k = build_kernel(out.object, caps);
    const int n = out.object.degree_bound();
    out.object.levels.push_back(k.kernel.group);
    out.object.faces.push_back(k.kernel.projections);
    out.object.degeneracies[n] = k.kernel.degeneracies;
    out.object.degeneracies.emplace_back();
    out.stores.push_back(k.store);
  }
  return out;
}

}  // namespace

SimplicialKernel simplicial_kernel(const TruncatedSimplicialGroup& x, const Caps& caps) {
  return build_kernel(x, caps).kernel;
}

TruncatedSimplicialGroup coskeleton_extend(const TruncatedSimplicialGroup& x, int D, const Caps& caps) {
  return build_coskeleton(x, D, caps).object;
}

Coskeleton coskeleton_simplicial(const TruncatedSimplicialGroup& x, int n, const Caps& caps) {
  const int D = x.degree_bound();
  if (n < 0 || n > D) fail(ErrorCode::kInvalidArgument, "coskeleton degree out of range");
  auto built = build_coskeleton(truncate(x, n), D, caps);
  Coskeleton out;
  out.object = built.object;
  for (int m = 0; m <= D; ++m) {
    if (m <= n) {
      out.unit.push_back(GroupHom::identity(x.level(m)));
      continue;
    }
    const auto& store = *built.stores[m];
    std::vector<Elem> tuple(static_cast<std::size_t>(m + 1));
    std::vector<Elem> map(x.level(m).order());
    for (Elem e = 0; e < map.size(); ++e) {
      for (int j = 0; j <= m; ++j) tuple[j] = out.unit[m - 1].map[x.d(m, j).map[e]];
      std::int64_t idx = store.find(tuple.data());
      if (idx < 0) fail(ErrorCode::kIdentityViolation, "unit lands outside the simplicial kernel at level " + str(m));
      map[e] = static_cast<Elem>(idx);
    }
    out.unit.push_back({x.level(m), out.object.level(m), std::move(map)});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Normal closure, cotruncation, radicals

SimplicialSubobject simplicial_normal_closure(const TruncatedSimplicialGroup& x,
                                              const std::vector<std::vector<Elem>>& seeds) {
  const int D = x.degree_bound();
  SimplicialSubobject out{x, {}};
  for (int n = 0; n <= D; ++n) {
    std::vector<Elem> s = n < static_cast<int>(seeds.size()) ? seeds[n] : std::vector<Elem>{};
    out.levels.push_back(normal_closure_of(x.level(n), s));
  }
  bool changed = true;
  while (changed) {
    changed = false;
    for (int n = 0; n <= D; ++n) {
      auto gens = subgroup_generators(out.at(n));
      const auto before = out.at(n).order();
      std::vector<Elem> extra = gens;
      if (n < D) {
        for (Elem g : subgroup_generators(out.at(n + 1))) {
          for (int i = 0; i <= n + 1; ++i) extra.push_back(x.d(n + 1, i).map[g]);
        }
      }
      if (n > 0) {
        for (Elem g : subgroup_generators(out.at(n - 1))) {
          for (int i = 0; i < n; ++i) extra.push_back(x.s(n - 1, i).map[g]);
        }
      }
      std::vector<char> m = mask_of(out.at(n));
      if (std::all_of(extra.begin(), extra.end(), [&](Elem e) { return m[e] != 0; })) continue;
      out.levels[n] = normal_closure_of(x.level(n), extra);
      if (out.at(n).order() != before) changed = true;
    }
  }
  return out;
}

PorterCotruncation porter_cotruncation(const TruncatedSimplicialGroup& x, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "Cot_n needs n >= 0");
  const int D = x.degree_bound();
  auto moore = moore_masks(x);
  std::vector<std::vector<Elem>> seeds(D + 1);
  for (int j = n + 1; j <= D; ++j) seeds[j] = subgroup_generators(from_mask(x.level(j), moore[j]));
  PorterCotruncation out;
  out.kernel = simplicial_normal_closure(x, seeds);
  auto q = quotient_simplicial(x, out.kernel);
  out.object = q.object;
  for (const auto& l : q.levels) out.unit.push_back(l.projection);
  return out;
}

SimplicialSubobject mu_geq_torsion(const TruncatedSimplicialGroup& x, int n) {
  if (n < 0) fail(ErrorCode::kInvalidArgument, "mu_{>=n} needs n >= 0");
  const int D = x.degree_bound();
  SimplicialSubobject out{x, {}};
  std::vector<char> prev;
  for (int m = 0; m <= D; ++m) {
    std::vector<char> cur(x.level(m).order(), 0);
    if (m >= n) {
      for (Elem e = 0; e < cur.size(); ++e) {
        bool in = true;
        if (m >= 1) {
          for (int i = 0; i <= m && in; ++i) in = prev[x.d(m, i).map[e]] != 0;
        }
        cur[e] = in;
      }
    } else {
      cur[0] = 1;
    }
    out.levels.push_back(from_mask(x.level(m), cur));
    prev = std::move(cur);
  }
  return out;
}

SimplicialSubobject mu_geq_torsion_via_coskeleton(const TruncatedSimplicialGroup& x, int n, const Caps& caps) {
  if (n <= 0) return whole_subobject(x);
  if (n - 1 > x.degree_bound()) return zero_subobject(x);
  auto c = coskeleton_simplicial(x, n - 1, caps);
  SimplicialSubobject out{x, {}};
  for (const auto& u : c.unit) out.levels.push_back(kernel(u));
  return out;
}

namespace {

SimplicialRadical radical_from(const TruncatedSimplicialGroup& x, SimplicialSubobject t) {
  auto e = as_simplicial(t);
  auto q = quotient_simplicial(x, t);
  return {std::move(t), std::move(e.object), std::move(q)};
}

}  // namespace

SimplicialRadical mu_geq(const TruncatedSimplicialGroup& x, int n) { return radical_from(x, mu_geq_torsion(x, n)); }

SimplicialRadical mu_ngeq(const TruncatedSimplicialGroup& x, int n) {
  return radical_from(x, porter_cotruncation(x, n).kernel);
}

bool torsion_membership(const TruncatedSimplicialGroup& x, Theory theory, int n, const Caps& caps) {
  const int D = x.degree_bound();
  for (int i = 0; i < n && i <= D; ++i) {
    if (!x.level(i).is_trivial()) return false;
  }
  if (theory == Theory::kGeq || n >= D) return true;
  try {
    auto c = coskeleton_simplicial(x, n, caps);
    return std::all_of(c.unit.begin(), c.unit.end(), [](const GroupHom& u) { return is_surjective(u); });
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kLevelOrderCap) throw;
  }
  // The coskeleton is too large to build: compare |image of the unit| with the
  // order the coskeleton levels must have.
  auto ker = mu_geq_torsion(x, n + 1);
  auto moore = moore_complex(x);
  const std::size_t ker_dn = kernel(moore.complex.delta(n)).order();
  for (int m = n + 1; m <= D; ++m) {
    std::uint64_t want = 1;
    for (int r = 0; r <= n; ++r) want = saturating_mul(want, saturating_pow(moore.complex.object(r).order(), binom(m, r)));
    want = saturating_mul(want, saturating_pow(ker_dn, binom(m, n + 1)));
    if (x.level(m).order() / ker.at(m).order() != want) return false;
  }
  return true;
}

std::string RadicalSpec::to_string() const {
  switch (kind) {
    case kGeq: return "mu_{>=" + std::to_string(n) + "}";
    case kNgeq: return "mu_{" + std::to_string(n) + ">=}";
    case kWhole: return "id";
    case kZero: return "0";
  }
  return "?";
}

long RadicalSpec::rank() const {
  switch (kind) {
    case kGeq: return -2L * n + 1;
    case kNgeq: return -2L * n;
    case kWhole: return std::numeric_limits<long>::max();
    case kZero: return std::numeric_limits<long>::min();
  }
  return 0;
}

SimplicialSubobject radical_subobject(const TruncatedSimplicialGroup& x, const RadicalSpec& r) {
  switch (r.kind) {
    case RadicalSpec::kGeq: return mu_geq_torsion(x, r.n);
    case RadicalSpec::kNgeq: return porter_cotruncation(x, r.n).kernel;
    case RadicalSpec::kWhole: return whole_subobject(x);
    case RadicalSpec::kZero: return zero_subobject(x);
  }
  return zero_subobject(x);
}

QuotientSimplicial fundamental_functor(const TruncatedSimplicialGroup& x, const RadicalSpec& upper,
                                       const RadicalSpec& lower) {
  if (lower.rank() > upper.rank()) {
    fail(ErrorCode::kNotNested, lower.to_string() + " is not below " + upper.to_string() + " in mu(Grp)");
  }
  auto up = radical_subobject(x, upper);
  auto low = radical_subobject(x, lower);
  if (!is_subobject_of(low, up)) {
    fail(ErrorCode::kNotNested, lower.to_string() + " is not contained in " + upper.to_string());
  }
  return quotient_simplicial(up, low);
}

std::optional<std::string> SimplicialTower::check() const {
  for (std::size_t r = 0; r + 1 < rows.size(); ++r) {
    if (!is_subobject_of(rows[r + 1].sub, rows[r].sub)) return rows[r + 1].name + " is not contained in " + rows[r].name;
  }
  return std::nullopt;
}

SimplicialTower lattice_simplicial(const TruncatedSimplicialGroup& x) {
  SimplicialTower t;
  t.rows.push_back({"X", whole_subobject(x)});
  for (int n = 0; n <= x.degree_bound(); ++n) {
    RadicalSpec ngeq{RadicalSpec::kNgeq, n};
    RadicalSpec geq{RadicalSpec::kGeq, n + 1};
    t.rows.push_back({ngeq.to_string(), radical_subobject(x, ngeq)});
    t.rows.push_back({geq.to_string(), radical_subobject(x, geq)});
  }
  t.rows.push_back({"0", zero_subobject(x)});
  return t;
}

std::string render_tower(const SimplicialTower& t) {
  std::size_t width = 0;
  for (const auto& r : t.rows) width = std::max(width, r.name.size());
  std::ostringstream out;
  for (const auto& r : t.rows) {
    out << r.name << std::string(width - r.name.size(), ' ') << " = ";
    for (int i = static_cast<int>(r.sub.levels.size()) - 1; i >= 0; --i) {
      out << r.sub.levels[static_cast<std::size_t>(i)].order();
      if (i > 0) out << " -> ";
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Eilenberg-MacLane objects

TruncatedSimplicialGroup eilenberg_maclane_seed(const FiniteGroup& a, int n, const Caps& caps) {
  if (n < 1) fail(ErrorCode::kInvalidArgument, "K(A, n) needs n >= 1");
  if (!a.is_abelian()) fail(ErrorCode::kNotAbelian, a.label() + " is not abelian");
  if (saturating_pow(a.order(), static_cast<std::uint64_t>(n + 1)) > caps.level_cap) {
    fail(ErrorCode::kLevelOrderCap, "|" + a.label() + "|^" + str(n + 1) + " exceeds level-cap");
  }
  const FiniteGroup one = trivial_group();
  std::vector<FiniteGroup> factors(static_cast<std::size_t>(n + 1), a);
  TruncatedSimplicialGroup x;
  for (int m = 0; m < n; ++m) x.levels.push_back(one);
  x.levels.push_back(a);
  x.levels.push_back(product_of(factors, a.label() + "^" + str(n + 1), caps));
  const int D = n + 1;
  x.faces.resize(D + 1);
  x.degeneracies.resize(D + 1);
  for (int m = 1; m <= n; ++m) {
    for (int i = 0; i <= m; ++i) x.faces[m].push_back(GroupHom::zero(x.level(m), x.level(m - 1)));
  }
  const auto& top = x.level(D);
  for (int i = 0; i <= D; ++i) {
    std::vector<Elem> map(top.order());
    for (Elem e = 0; e < map.size(); ++e) {
      auto p = product_digits(factors, e);
      if (i == 0) {
        map[e] = p[0];
      } else if (i == D) {
        map[e] = p[static_cast<std::size_t>(n)];
      } else {
        map[e] = a.mul(p[static_cast<std::size_t>(i - 1)], p[static_cast<std::size_t>(i)]);
      }
    }
    x.faces[D].push_back({top, a, std::move(map)});
  }
  for (int m = 0; m < n; ++m) {
    for (int i = 0; i <= m; ++i) x.degeneracies[m].push_back(GroupHom::zero(x.level(m), x.level(m + 1)));
  }
  for (int i = 0; i <= n; ++i) {
    std::vector<Elem> map(a.order());
    std::vector<Elem> p(static_cast<std::size_t>(n + 1), 0);
    for (Elem e = 0; e < map.size(); ++e) {
      p[static_cast<std::size_t>(i)] = e;
      map[e] = product_index(factors, p);
    }
    x.degeneracies[n].push_back({a, top, std::move(map)});
  }
  return x;
}

TruncatedSimplicialGroup eilenberg_maclane(const FiniteGroup& a, int n, int D, const Caps& caps) {
  if (D < 0) fail(ErrorCode::kInvalidArgument, "degree bound must be >= 0");
  if (n < 1) fail(ErrorCode::kInvalidArgument, "K(A, n) needs n >= 1");
  for (int m = 0; m <= D; ++m) {
    if (saturating_pow(a.order(), binom(m, n)) > caps.level_cap) {
      fail(ErrorCode::kLevelOrderCap, "K(" + a.label() + ", " + str(n) + ") level " + str(m) + " has order " +
                                          str(a.order()) + "^" + str(binom(m, n)) + ", above level-cap " +
                                          str(caps.level_cap));
    }
  }
  auto seed = eilenberg_maclane_seed(a, n, caps);
  if (D <= n + 1) return truncate(seed, D);
  return coskeleton_extend(seed, D, caps);
}

ReflexiveGraph fundamental_groupoid_graph(const TruncatedSimplicialGroup& x) {
  if (x.degree_bound() < 2) fail(ErrorCode::kInvalidArgument, "the fundamental groupoid needs D >= 2");
  auto n2 = intersect(kernel(x.d(2, 0)), kernel(x.d(2, 1)));
  auto rel = image_of(x.d(2, 2), n2);
  auto q = quotient(x.level(1), rel, x.level(1).label() + "/R");
  ReflexiveGraph g;
  g.arrows = q.group;
  g.objects = x.level(0);
  g.d0 = factor_through(q, x.d(1, 0));
  g.d1 = factor_through(q, x.d(1, 1));
  g.s0 = compose(q.projection, x.s(0, 0));
  g.relations = rel;
  return g;
}

}  // namespace simptor
