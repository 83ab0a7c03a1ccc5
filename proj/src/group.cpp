#include "simptor/group.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>

#include "simptor/errors.hpp"

namespace simptor {

namespace detail {

// Groups up to this order keep a dense table regardless of how they were built.
constexpr std::size_t kDenseOrder = 512;

struct GroupData {
  std::size_t order = 1;
  std::string label;
  std::vector<Elem> table;                  // empty when multiplying through `rule`
  std::function<Elem(Elem, Elem)> rule;
  std::vector<Elem> inverse;
  std::vector<std::pair<std::string, Elem>> named;

  mutable std::once_flag gens_once;
  mutable std::vector<Elem> gens;
  mutable std::once_flag abelian_once;
  mutable bool abelian = true;

  Elem mul(Elem a, Elem b) const {
    if (!table.empty()) return table[static_cast<std::size_t>(a) * order + b];
    return rule(a, b);
  }
};

}  // namespace detail

namespace {

using detail::GroupData;

// Grows `members` (closed under right multiplication by `gens`) to the
// subgroup generated by gens + {g}.
void extend_closure(const FiniteGroup& group, std::vector<char>& mask, std::vector<Elem>& members,
                    std::vector<Elem>& gens, Elem g) {
  gens.push_back(g);
  const std::size_t old = members.size();
  for (std::size_t i = 0; i < old; ++i) {
    Elem y = group.mul(members[i], g);
    if (!mask[y]) {
      mask[y] = 1;
      members.push_back(y);
    }
  }
  for (std::size_t i = old; i < members.size(); ++i) {
    for (Elem s : gens) {
      Elem y = group.mul(members[i], s);
      if (!mask[y]) {
        mask[y] = 1;
        members.push_back(y);
      }
    }
  }
}

std::shared_ptr<const FiniteGroup> trivial_instance() {
  static const auto instance = [] {
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_rule(1, [](Elem, Elem) { return Elem{0}; }, {0}, "1"));
  }();
  return instance;
}

std::vector<std::size_t> prime_factors(std::size_t n) {
  std::vector<std::size_t> out;
  for (std::size_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup() : data_(trivial_instance()->data_) {}

std::size_t FiniteGroup::order() const { return data_->order; }
const std::string& FiniteGroup::label() const { return data_->label; }
Elem FiniteGroup::mul(Elem a, Elem b) const { return data_->mul(a, b); }
Elem FiniteGroup::inv(Elem a) const { return data_->inverse[a]; }

Elem FiniteGroup::pow(Elem a, std::uint64_t k) const {
  Elem result = 0;
  Elem base = a;
  while (k > 0) {
    if (k & 1U) result = mul(result, base);
    base = mul(base, base);
    k >>= 1U;
  }
  return result;
}

std::size_t FiniteGroup::element_order(Elem a) const {
  std::size_t k = 1;
  for (Elem x = a; x != 0; x = mul(x, a)) ++k;
  return k;
}

const std::vector<Elem>& FiniteGroup::generators() const {
  std::call_once(data_->gens_once, [this] {
    const std::size_t n = order();
    std::vector<char> mask(n, 0);
    std::vector<Elem> members{0};
    mask[0] = 1;
    std::vector<Elem> gens;
    for (Elem x = 1; x < n && members.size() < n; ++x) {
      if (!mask[x]) extend_closure(*this, mask, members, gens, x);
    }
    data_->gens = std::move(gens);
  });
  return data_->gens;
}

bool FiniteGroup::is_abelian() const {
  std::call_once(data_->abelian_once, [this] {
    const auto& gens = generators();
    bool ok = true;
    for (std::size_t i = 0; i < gens.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < gens.size() && ok; ++j) {
        ok = mul(gens[i], gens[j]) == mul(gens[j], gens[i]);
      }
    }
    data_->abelian = ok;
  });
  return data_->abelian;
}

const std::vector<std::pair<std::string, Elem>>& FiniteGroup::named_generators() const {
  return data_->named;
}

std::vector<Elem> FiniteGroup::table() const {
  if (!data_->table.empty()) return data_->table;
  const std::size_t n = order();
  std::vector<Elem> out(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) out[static_cast<std::size_t>(a) * n + b] = mul(a, b);
  }
  return out;
}

FiniteGroup FiniteGroup::with_label(std::string label) const {
  auto data = std::make_shared<GroupData>();
  data->order = data_->order;
  data->label = std::move(label);
  data->table = data_->table;
  data->rule = data_->rule;
  data->inverse = data_->inverse;
  data->named = data_->named;
  return FiniteGroup(std::move(data));
}

FiniteGroup FiniteGroup::from_rule(std::size_t order, std::function<Elem(Elem, Elem)> mul,
                                   std::vector<Elem> inverse, std::string label,
                                   std::vector<std::pair<std::string, Elem>> named) {
  auto data = std::make_shared<GroupData>();
  data->order = order;
  data->label = std::move(label);
  data->inverse = std::move(inverse);
  data->named = std::move(named);
  if (order <= detail::kDenseOrder) {
    data->table.resize(order * order);
    for (Elem a = 0; a < order; ++a) {
      for (Elem b = 0; b < order; ++b) data->table[static_cast<std::size_t>(a) * order + b] = mul(a, b);
    }
  } else {
    data->rule = std::move(mul);
  }
  return FiniteGroup(std::move(data));
}

FiniteGroup FiniteGroup::from_table(std::size_t order, std::vector<Elem> table, std::string label,
                                    const Caps& caps,
                                    std::vector<std::pair<std::string, Elem>> named) {
  if (order == 0) fail(ErrorCode::kInvalidTable, "order must be positive");
  if (order > caps.max_order) {
    fail(ErrorCode::kOrderCap,
         "order " + std::to_string(order) + " exceeds max-order " + std::to_string(caps.max_order));
  }
  if (table.size() != order * order) {
    fail(ErrorCode::kInvalidTable, "table has " + std::to_string(table.size()) +
                                       " entries, expected " + std::to_string(order * order));
  }
  auto at = [&](Elem a, Elem b) { return table[static_cast<std::size_t>(a) * order + b]; };
  for (Elem v : table) {
    if (v >= order) fail(ErrorCode::kInvalidTable, "entry " + std::to_string(v) + " out of range");
  }
  for (Elem x = 0; x < order; ++x) {
    if (at(0, x) != x || at(x, 0) != x) {
      fail(ErrorCode::kInvalidTable, "element 0 is not an identity (fails at " + std::to_string(x) + ")");
    }
  }
  std::vector<char> seen(order);
  for (Elem a = 0; a < order; ++a) {
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < order; ++b) {
      if (seen[at(a, b)]++) fail(ErrorCode::kInvalidTable, "row " + std::to_string(a) + " repeats an entry");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (Elem b = 0; b < order; ++b) {
      if (seen[at(b, a)]++) fail(ErrorCode::kInvalidTable, "column " + std::to_string(a) + " repeats an entry");
    }
  }
  // Light's test: elements g with (x g) y = x (g y) for all x, y are closed under
  // products, so it suffices to test a set generating the loop under products.
  std::vector<char> mask(order, 0);
  std::vector<Elem> members{0};
  mask[0] = 1;
  std::vector<Elem> gens;
  for (Elem x = 1; x < order && members.size() < order; ++x) {
    if (mask[x]) continue;
    gens.push_back(x);
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (Elem s : gens) {
        Elem y = at(members[i], s);
        if (!mask[y]) {
          mask[y] = 1;
          members.push_back(y);
        }
      }
    }
  }
  for (Elem g : gens) {
    for (Elem x = 0; x < order; ++x) {
      for (Elem y = 0; y < order; ++y) {
        if (at(at(x, g), y) != at(x, at(g, y))) {
          fail(ErrorCode::kInvalidTable, "associativity fails for (" + std::to_string(x) + ", " +
                                             std::to_string(g) + ", " + std::to_string(y) + ")");
        }
      }
    }
  }
  std::vector<Elem> inverse(order);
  for (Elem a = 0; a < order; ++a) {
    for (Elem b = 0; b < order; ++b) {
      if (at(a, b) == 0) {
        inverse[a] = b;
        break;
      }
    }
  }
  auto data = std::make_shared<GroupData>();
  data->order = order;
  data->label = std::move(label);
  data->table = std::move(table);
  data->inverse = std::move(inverse);
  data->named = std::move(named);
  return FiniteGroup(std::move(data));
}

// ---------------------------------------------------------------------------
// Subgroup / GroupHom basics

bool Subgroup::contains(Elem x) const { return std::binary_search(elements.begin(), elements.end(), x); }

Subgroup Subgroup::whole(const FiniteGroup& g) {
  std::vector<Elem> all(g.order());
  std::iota(all.begin(), all.end(), Elem{0});
  return {g, std::move(all)};
}

bool operator==(const Subgroup& a, const Subgroup& b) { return a.elements == b.elements; }

bool is_subset(const Subgroup& a, const Subgroup& b) {
  return std::includes(b.elements.begin(), b.elements.end(), a.elements.begin(), a.elements.end());
}

bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target, std::span<const Elem> map) {
  if (map.size() != source.order()) return false;
  for (Elem v : map) {
    if (v >= target.order()) return false;
  }
  if (map[0] != 0) return false;
  for (Elem g : source.generators()) {
    for (Elem b = 0; b < source.order(); ++b) {
      if (map[source.mul(g, b)] != target.mul(map[g], map[b])) return false;
    }
  }
  return true;
}

GroupHom GroupHom::checked(FiniteGroup source, FiniteGroup target, std::vector<Elem> map) {
  if (map.size() != source.order()) {
    fail(ErrorCode::kInvalidHom, "map has " + std::to_string(map.size()) + " entries, source order is " +
                                     std::to_string(source.order()));
  }
  if (!is_homomorphism(source, target, map)) {
    fail(ErrorCode::kInvalidHom, "map " + source.label() + " -> " + target.label() +
                                     " does not preserve products");
  }
  return {std::move(source), std::move(target), std::move(map)};
}

GroupHom GroupHom::identity(const FiniteGroup& g) {
  std::vector<Elem> map(g.order());
  std::iota(map.begin(), map.end(), Elem{0});
  return {g, g, std::move(map)};
}

GroupHom GroupHom::zero(const FiniteGroup& source, const FiniteGroup& target) {
  return {source, target, std::vector<Elem>(source.order(), 0)};
}

GroupHom compose(const GroupHom& g, const GroupHom& f) {
  std::vector<Elem> map(f.map.size());
  for (std::size_t i = 0; i < map.size(); ++i) map[i] = g.map[f.map[i]];
  return {f.source, g.target, std::move(map)};
}

bool is_zero(const GroupHom& f) {
  return std::all_of(f.map.begin(), f.map.end(), [](Elem v) { return v == 0; });
}

bool is_injective(const GroupHom& f) { return kernel(f).is_trivial(); }

bool is_surjective(const GroupHom& f) { return image(f).order() == f.target.order(); }

bool same_map(const GroupHom& f, const GroupHom& g) { return f.map == g.map; }

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup trivial_group() { return FiniteGroup(); }

FiniteGroup cyclic(std::size_t k, const Caps& caps) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "cyclic group needs k >= 1");
  if (k > caps.max_order) fail(ErrorCode::kOrderCap, "cyclic order " + std::to_string(k) + " exceeds max-order");
  std::vector<Elem> inverse(k);
  for (std::size_t a = 0; a < k; ++a) inverse[a] = static_cast<Elem>((k - a) % k);
  auto n = static_cast<Elem>(k);
  return FiniteGroup::from_rule(
      k, [n](Elem a, Elem b) { return static_cast<Elem>((a + b) % n); }, std::move(inverse),
      "Z" + std::to_string(k), k > 1 ? std::vector<std::pair<std::string, Elem>>{{"g", 1}}
                                     : std::vector<std::pair<std::string, Elem>>{});
}

FiniteGroup dihedral(std::size_t k, const Caps& caps) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "dihedral group needs k >= 1");
  if (2 * k > caps.max_order) fail(ErrorCode::kOrderCap, "dihedral order " + std::to_string(2 * k) + " exceeds max-order");
  // Element j*k + i is a^j b^i; b^i a = a b^-i.
  auto n = static_cast<Elem>(k);
  auto mul = [n](Elem x, Elem y) {
    Elem j1 = x / n, i1 = x % n, j2 = y / n, i2 = y % n;
    Elem i = j2 ? (n - i1) % n : i1;
    return static_cast<Elem>((j1 ^ j2) * n + (i + i2) % n);
  };
  std::vector<Elem> inverse(2 * k);
  for (Elem x = 0; x < 2 * n; ++x) {
    for (Elem y = 0; y < 2 * n; ++y) {
      if (mul(x, y) == 0) {
        inverse[x] = y;
        break;
      }
    }
  }
  return FiniteGroup::from_rule(2 * k, mul, std::move(inverse), "D" + std::to_string(k),
                                {{"a", n % (2 * n)}, {"b", k > 1 ? Elem{1} : Elem{0}}});
}

FiniteGroup symmetric(std::size_t k, const Caps& caps) {
  if (k == 0) fail(ErrorCode::kInvalidArgument, "symmetric group needs k >= 1");
  std::size_t n = 1;
  for (std::size_t i = 2; i <= k; ++i) {
    n *= i;
    if (n > caps.max_order) fail(ErrorCode::kOrderCap, "S" + std::to_string(k) + " exceeds max-order");
  }
  std::vector<std::vector<int>> perms;
  std::vector<int> p(k);
  std::iota(p.begin(), p.end(), 0);
  do {
    perms.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::map<std::vector<int>, Elem> rank;
  for (std::size_t i = 0; i < perms.size(); ++i) rank[perms[i]] = static_cast<Elem>(i);
  std::vector<Elem> table(n * n);
  std::vector<int> c(k);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      for (std::size_t x = 0; x < k; ++x) c[x] = perms[a][perms[b][x]];  // (a o b)(x)
      table[a * n + b] = rank[c];
    }
  }
  std::vector<Elem> inverse(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t x = 0; x < k; ++x) c[perms[a][x]] = static_cast<int>(x);
    inverse[a] = rank[c];
  }
  auto shared = std::make_shared<const std::vector<Elem>>(std::move(table));
  auto order = n;
  return FiniteGroup::from_rule(
      n, [shared, order](Elem a, Elem b) { return (*shared)[static_cast<std::size_t>(a) * order + b]; },
      std::move(inverse), "S" + std::to_string(k));
}

FiniteGroup product_of(const std::vector<FiniteGroup>& factors, std::string label, const Caps& caps) {
  std::size_t total = 1;
  for (const auto& f : factors) {
    total *= f.order();
    if (total > caps.level_cap) {
      fail(ErrorCode::kLevelOrderCap, "product order exceeds level-cap " + std::to_string(caps.level_cap));
    }
  }
  auto shared = std::make_shared<const std::vector<FiniteGroup>>(factors);
  auto combine = [shared](Elem a, Elem b, bool invert_only) {
    const auto& fs = *shared;
    Elem out = 0;
    Elem stride = 1;
    for (std::size_t i = fs.size(); i-- > 0;) {
      const Elem m = static_cast<Elem>(fs[i].order());
      Elem da = (a / stride) % m;
      Elem db = (b / stride) % m;
      Elem d = invert_only ? fs[i].inv(da) : fs[i].mul(da, db);
      out += d * stride;
      stride *= m;
    }
    return out;
  };
  std::vector<Elem> inverse(total);
  for (Elem x = 0; x < total; ++x) inverse[x] = combine(x, 0, true);
  return FiniteGroup::from_rule(
      total, [combine](Elem a, Elem b) { return combine(a, b, false); }, std::move(inverse),
      std::move(label));
}

std::vector<Elem> product_digits(const std::vector<FiniteGroup>& factors, Elem x) {
  std::vector<Elem> digits(factors.size());
  for (std::size_t i = factors.size(); i-- > 0;) {
    const Elem m = static_cast<Elem>(factors[i].order());
    digits[i] = x % m;
    x /= m;
  }
  return digits;
}

Elem product_index(const std::vector<FiniteGroup>& factors, std::span<const Elem> digits) {
  Elem out = 0;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    out = out * static_cast<Elem>(factors[i].order()) + digits[i];
  }
  return out;
}

FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, const Caps& caps) {
  if (g.order() * h.order() > caps.max_order) {
    fail(ErrorCode::kOrderCap, "product order " + std::to_string(g.order() * h.order()) + " exceeds max-order");
  }
  Caps inner = caps;
  inner.level_cap = std::max(caps.level_cap, caps.max_order);
  return product_of({g, h}, g.label() + "x" + h.label(), inner);
}

// ---------------------------------------------------------------------------
// Subgroup calculus

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens) {
  std::vector<char> mask(g.order(), 0);
  std::vector<Elem> members{0};
  mask[0] = 1;
  std::vector<Elem> used;
  for (Elem x : gens) {
    if (!mask[x]) extend_closure(g, mask, members, used, x);
  }
  std::sort(members.begin(), members.end());
  return {g, std::move(members)};
}

std::vector<Elem> subgroup_generators(const Subgroup& s) {
  const auto& g = s.parent;
  std::vector<char> mask(g.order(), 0);
  std::vector<Elem> members{0};
  mask[0] = 1;
  std::vector<Elem> gens;
  for (Elem x : s.elements) {
    if (members.size() == s.elements.size()) break;
    if (!mask[x]) extend_closure(g, mask, members, gens, x);
  }
  return gens;
}

Subgroup kernel(const GroupHom& f) {
  std::vector<Elem> out;
  for (Elem x = 0; x < f.map.size(); ++x) {
    if (f.map[x] == 0) out.push_back(x);
  }
  return {f.source, std::move(out)};
}

Subgroup image(const GroupHom& f) {
  std::vector<char> mask(f.target.order(), 0);
  for (Elem v : f.map) mask[v] = 1;
  std::vector<Elem> out;
  for (Elem y = 0; y < mask.size(); ++y) {
    if (mask[y]) out.push_back(y);
  }
  return {f.target, std::move(out)};
}

Subgroup image_of(const GroupHom& f, const Subgroup& s) {
  std::vector<char> mask(f.target.order(), 0);
  for (Elem x : s.elements) mask[f.map[x]] = 1;
  std::vector<Elem> out;
  for (Elem y = 0; y < mask.size(); ++y) {
    if (mask[y]) out.push_back(y);
  }
  return {f.target, std::move(out)};
}

Subgroup preimage(const GroupHom& f, const Subgroup& t) {
  std::vector<char> mask(f.target.order(), 0);
  for (Elem y : t.elements) mask[y] = 1;
  std::vector<Elem> out;
  for (Elem x = 0; x < f.map.size(); ++x) {
    if (mask[f.map[x]]) out.push_back(x);
  }
  return {f.source, std::move(out)};
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elem> out;
  std::set_intersection(a.elements.begin(), a.elements.end(), b.elements.begin(), b.elements.end(),
                        std::back_inserter(out));
  return {a.parent, std::move(out)};
}

bool is_normal_in(const Subgroup& inner, const Subgroup& outer) {
  const auto& g = inner.parent;
  std::vector<char> mask(g.order(), 0);
  for (Elem x : inner.elements) mask[x] = 1;
  auto inner_gens = subgroup_generators(inner);
  for (Elem t : subgroup_generators(outer)) {
    for (Elem x : inner_gens) {
      if (!mask[g.conj(t, x)]) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& s) {
  if (s.is_whole() || s.is_trivial()) return true;
  const auto& g = s.parent;
  std::vector<char> mask(g.order(), 0);
  for (Elem x : s.elements) mask[x] = 1;
  auto inner_gens = subgroup_generators(s);
  for (Elem t : g.generators()) {
    for (Elem x : inner_gens) {
      if (!mask[g.conj(t, x)]) return false;
    }
  }
  return true;
}

Subgroup normal_closure_of(const FiniteGroup& g, std::span<const Elem> seeds) {
  std::vector<char> mask(g.order(), 0);
  std::vector<Elem> members{0};
  mask[0] = 1;
  std::vector<Elem> gens;
  for (Elem x : seeds) {
    if (!mask[x]) extend_closure(g, mask, members, gens, x);
  }
  const auto& outer = g.generators();
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (Elem t : outer) {
      Elem c = g.conj(t, gens[i]);
      if (!mask[c]) extend_closure(g, mask, members, gens, c);
    }
  }
  std::sort(members.begin(), members.end());
  return {g, std::move(members)};
}

Subgroup normal_closure(const Subgroup& s) {
  return normal_closure_of(s.parent, subgroup_generators(s));
}

Embedded subgroup_group(const Subgroup& s, std::string label) {
  const auto& parent = s.parent;
  auto elems = std::make_shared<const std::vector<Elem>>(s.elements);
  auto local = std::make_shared<std::vector<std::int64_t>>(parent.order(), -1);
  for (std::size_t i = 0; i < elems->size(); ++i) (*local)[(*elems)[i]] = static_cast<std::int64_t>(i);
  std::shared_ptr<const std::vector<std::int64_t>> clocal = local;
  std::vector<Elem> inverse(elems->size());
  for (std::size_t i = 0; i < elems->size(); ++i) {
    inverse[i] = static_cast<Elem>((*clocal)[parent.inv((*elems)[i])]);
  }
  if (label.empty()) label = "sub(" + parent.label() + ")";
  auto group = FiniteGroup::from_rule(
      elems->size(),
      [parent, elems, clocal](Elem a, Elem b) {
        return static_cast<Elem>((*clocal)[parent.mul((*elems)[a], (*elems)[b])]);
      },
      std::move(inverse), std::move(label));
  GroupHom inclusion{group, parent, *elems};
  return {std::move(group), std::move(inclusion), *clocal};
}

Embedded whole_embedding(const FiniteGroup& g) {
  std::vector<std::int64_t> local(g.order());
  std::iota(local.begin(), local.end(), std::int64_t{0});
  return {g, GroupHom::identity(g), std::move(local)};
}

Quotient quotient(const FiniteGroup& g, const Subgroup& n, std::string label) {
  if (!is_normal(n)) {
    fail(ErrorCode::kNotNormal, "subgroup of order " + std::to_string(n.order()) + " is not normal in " + g.label());
  }
  constexpr Elem kUnset = ~Elem{0};
  auto coset_of = std::make_shared<std::vector<Elem>>(g.order(), kUnset);
  auto reps = std::make_shared<std::vector<Elem>>();
  for (Elem x = 0; x < g.order(); ++x) {
    if ((*coset_of)[x] != kUnset) continue;
    auto c = static_cast<Elem>(reps->size());
    reps->push_back(x);
    for (Elem m : n.elements) (*coset_of)[g.mul(x, m)] = c;
  }
  std::shared_ptr<const std::vector<Elem>> cc = coset_of;
  std::shared_ptr<const std::vector<Elem>> cr = reps;
  std::vector<Elem> inverse(cr->size());
  for (std::size_t c = 0; c < cr->size(); ++c) inverse[c] = (*cc)[g.inv((*cr)[c])];
  if (label.empty()) label = g.label() + "/N" + std::to_string(n.order());
  auto group = FiniteGroup::from_rule(
      cr->size(), [g, cc, cr](Elem a, Elem b) { return (*cc)[g.mul((*cr)[a], (*cr)[b])]; },
      std::move(inverse), std::move(label));
  GroupHom projection{g, group, *cc};
  return {std::move(group), std::move(projection)};
}

Quotient cokernel(const GroupHom& f) {
  return quotient(f.target, normal_closure(image(f)), "Cok(" + f.target.label() + ")");
}

bool is_proper(const GroupHom& f) { return is_normal(image(f)); }

GroupHom restrict_hom(const GroupHom& f, const Embedded& s, const Embedded& t) {
  std::vector<Elem> map(s.group.order());
  for (Elem i = 0; i < map.size(); ++i) {
    std::int64_t y = t.local[f.map[s.inclusion.map[i]]];
    if (y < 0) fail(ErrorCode::kInvalidHom, "restriction leaves the target subgroup");
    map[i] = static_cast<Elem>(y);
  }
  return {s.group, t.group, std::move(map)};
}

GroupHom factor_through(const Quotient& q, const GroupHom& f) {
  const std::size_t n = q.group.order();
  std::vector<Elem> map(n, 0);
  std::vector<char> set(n, 0);
  for (Elem x = 0; x < f.map.size(); ++x) {
    Elem c = q.projection.map[x];
    if (!set[c]) {
      set[c] = 1;
      map[c] = f.map[x];
    } else if (map[c] != f.map[x]) {
      fail(ErrorCode::kInvalidHom, "map is not constant on cosets");
    }
  }
  return {q.group, f.target, std::move(map)};
}

GroupHom induced_hom(const GroupHom& f, const Quotient& qs, const Quotient& qt) {
  const std::size_t n = qs.group.order();
  std::vector<Elem> map(n, 0);
  std::vector<char> set(n, 0);
  for (Elem x = 0; x < f.map.size(); ++x) {
    Elem c = qs.projection.map[x];
    Elem v = qt.projection.map[f.map[x]];
    if (!set[c]) {
      set[c] = 1;
      map[c] = v;
    } else if (map[c] != v) {
      fail(ErrorCode::kInvalidHom, "map is not constant on cosets");
    }
  }
  return {qs.group, qt.group, std::move(map)};
}

// ---------------------------------------------------------------------------
// Invariants and isomorphism

std::vector<std::size_t> abelian_invariants(const FiniteGroup& g) {
  if (!g.is_abelian()) fail(ErrorCode::kNotAbelian, g.label() + " is not abelian");
  std::vector<std::size_t> out;
  for (std::size_t p : prime_factors(g.order())) {
    // exponents[k] = log_p #{x : x^(p^k) = e}
    std::vector<std::size_t> exponents{0};
    std::size_t pk = 1;
    while (true) {
      pk *= p;
      std::size_t count = 0;
      for (Elem x = 0; x < g.order(); ++x) {
        if (g.pow(x, pk) == 0) ++count;
      }
      std::size_t e = 0;
      for (std::size_t c = count; c > 1; c /= p) ++e;
      exponents.push_back(e);
      if (exponents.back() == exponents[exponents.size() - 2]) break;
    }
    // at_least[k] = number of cyclic factors of order >= p^k
    const std::size_t top = exponents.size() - 1;
    std::vector<std::size_t> at_least(top + 2, 0);
    for (std::size_t k = 1; k <= top; ++k) at_least[k] = exponents[k] - exponents[k - 1];
    std::size_t power = 1;
    for (std::size_t k = 1; k <= top; ++k) {
      power *= p;
      std::size_t exact = at_least[k] - at_least[k + 1];
      for (std::size_t i = 0; i < exact; ++i) out.push_back(power);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::vector<Elem>> extend_to_hom(const FiniteGroup& source, std::span<const Elem> gens,
                                               std::span<const Elem> images, const FiniteGroup& target) {
  const std::size_t n = source.order();
  std::vector<Elem> map(n, 0);
  std::vector<char> seen(n, 0);
  std::vector<Elem> queue{0};
  seen[0] = 1;
  for (std::size_t q = 0; q < queue.size(); ++q) {
    Elem x = queue[q];
    for (std::size_t k = 0; k < gens.size(); ++k) {
      Elem y = source.mul(x, gens[k]);
      Elem v = target.mul(map[x], images[k]);
      if (seen[y]) {
        if (map[y] != v) return std::nullopt;
      } else {
        seen[y] = 1;
        map[y] = v;
        queue.push_back(y);
      }
    }
  }
  if (queue.size() != n) return std::nullopt;
  return map;
}

namespace {

std::vector<std::size_t> order_census(const FiniteGroup& g) {
  std::vector<std::size_t> census(g.order() + 1, 0);
  for (Elem x = 0; x < g.order(); ++x) ++census[g.element_order(x)];
  return census;
}

bool search_isomorphism(const FiniteGroup& g, const FiniteGroup& h) {
  // Generators of g, preferring high element orders.
  std::vector<Elem> by_order(g.order());
  std::iota(by_order.begin(), by_order.end(), Elem{0});
  std::vector<std::size_t> ord_g(g.order());
  for (Elem x = 0; x < g.order(); ++x) ord_g[x] = g.element_order(x);
  std::stable_sort(by_order.begin(), by_order.end(),
                   [&](Elem a, Elem b) { return ord_g[a] > ord_g[b]; });
  std::vector<char> mask(g.order(), 0);
  std::vector<Elem> members{0};
  mask[0] = 1;
  std::vector<Elem> gens;
  std::vector<std::size_t> prefix_orders;
  for (Elem x : by_order) {
    if (members.size() == g.order()) break;
    if (!mask[x]) {
      extend_closure(g, mask, members, gens, x);
      prefix_orders.push_back(members.size());
    }
  }
  std::vector<std::size_t> ord_h(h.order());
  for (Elem y = 0; y < h.order(); ++y) ord_h[y] = h.element_order(y);
  std::vector<std::vector<Elem>> candidates(gens.size());
  for (std::size_t k = 0; k < gens.size(); ++k) {
    for (Elem y = 0; y < h.order(); ++y) {
      if (ord_h[y] == ord_g[gens[k]]) candidates[k].push_back(y);
    }
  }
  std::vector<Elem> images(gens.size());
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == gens.size()) {
      auto map = extend_to_hom(g, gens, images, h);
      if (!map) return false;
      std::vector<char> hit(h.order(), 0);
      for (Elem v : *map) {
        if (hit[v]) return false;
        hit[v] = 1;
      }
      return true;
    }
    for (Elem y : candidates[k]) {
      images[k] = y;
      auto sub = generated_subgroup(h, std::span<const Elem>(images.data(), k + 1));
      if (sub.order() != prefix_orders[k]) continue;
      if (assign(k + 1)) return true;
    }
    return false;
  };
  return assign(0);
}

}  // namespace

bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h, const Caps& caps) {
  if (g.order() != h.order()) return false;
  if (g.order() == 1) return true;
  if (g.is_abelian() != h.is_abelian()) return false;
  if (g.is_abelian()) return abelian_invariants(g) == abelian_invariants(h);
  if (g.order() > caps.iso_cap) {
    fail(ErrorCode::kIsoSearchCap, "non-abelian isomorphism search on order " + std::to_string(g.order()) +
                                       " exceeds iso-cap " + std::to_string(caps.iso_cap));
  }
  if (order_census(g) != order_census(h)) return false;
  return search_isomorphism(g, h);
}

std::optional<std::vector<GroupHom>> all_homomorphisms(const FiniteGroup& source, const FiniteGroup& target,
                                                       std::uint64_t limit) {
  const auto& gens = source.generators();
  std::vector<std::vector<Elem>> candidates(gens.size());
  std::vector<std::size_t> ord_t(target.order());
  for (Elem y = 0; y < target.order(); ++y) ord_t[y] = target.element_order(y);
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    std::size_t ord = source.element_order(gens[k]);
    for (Elem y = 0; y < target.order(); ++y) {
      if (ord % ord_t[y] == 0) candidates[k].push_back(y);
    }
    total *= candidates[k].size();
    if (total > limit) return std::nullopt;
  }
  std::vector<GroupHom> out;
  std::vector<Elem> images(gens.size());
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == gens.size()) {
      if (auto map = extend_to_hom(source, gens, images, target)) {
        out.push_back({source, target, std::move(*map)});
      }
      return;
    }
    for (Elem y : candidates[k]) {
      images[k] = y;
      assign(k + 1);
    }
  };
  assign(0);
  return out;
}

}  // namespace simptor
