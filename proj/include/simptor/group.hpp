#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "simptor/caps.hpp"

namespace simptor {

// Group elements are dense indices 0..order-1; index 0 is always the identity.
using Elem = std::uint32_t;

namespace detail {
struct GroupData;
}

/// A finite group with elements 0..order-1.
///
/// Small groups carry a dense multiplication table. Larger groups built as
/// products, subgroups or quotients multiply through their parents and are
/// materialized into a table only on request. Values are immutable and cheap
/// to copy.
class FiniteGroup {
 public:
  // The trivial group.
  FiniteGroup();

  std::size_t order() const;
  const std::string& label() const;

  Elem mul(Elem a, Elem b) const;
  Elem inv(Elem a) const;
  Elem pow(Elem a, std::uint64_t k) const;
  Elem conj(Elem g, Elem x) const { return mul(mul(g, x), inv(g)); }  // g x g^-1
  std::size_t element_order(Elem a) const;

  bool is_trivial() const { return order() == 1; }
  bool is_abelian() const;

  // Deterministic generating set, greedy in index order.
  const std::vector<Elem>& generators() const;

  // Named presentation generators (e.g. {"a", 4}, {"b", 1} for D4). May be empty.
  const std::vector<std::pair<std::string, Elem>>& named_generators() const;

  // Row-major order x order table, table[a * order + b] = a * b.
  std::vector<Elem> table() const;

  FiniteGroup with_label(std::string label) const;

  // Same underlying data (not an isomorphism test).
  bool same_as(const FiniteGroup& other) const { return data_ == other.data_; }

  // Validated construction from a dense table (identity law, Latin square,
  // associativity). Raises kInvalidTable or kOrderCap.
  static FiniteGroup from_table(std::size_t order, std::vector<Elem> table, std::string label,
                                const Caps& caps = {},
                                std::vector<std::pair<std::string, Elem>> named = {});

  // Unvalidated construction from a multiplication rule and inverse table.
  // Identity must be element 0. Used by the structured constructions.
  static FiniteGroup from_rule(std::size_t order, std::function<Elem(Elem, Elem)> mul,
                               std::vector<Elem> inverse, std::string label,
                               std::vector<std::pair<std::string, Elem>> named = {});

 private:
  explicit FiniteGroup(std::shared_ptr<const detail::GroupData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::GroupData> data_;
};

/// A subgroup, stored as the sorted element indices of its parent.
struct Subgroup {
  FiniteGroup parent;
  std::vector<Elem> elements;  // sorted, contains 0

  std::size_t order() const { return elements.size(); }
  bool contains(Elem x) const;
  bool is_trivial() const { return elements.size() == 1; }
  bool is_whole() const { return elements.size() == parent.order(); }

  static Subgroup trivial(const FiniteGroup& g) { return {g, {0}}; }
  static Subgroup whole(const FiniteGroup& g);
};

bool operator==(const Subgroup& a, const Subgroup& b);
bool is_subset(const Subgroup& a, const Subgroup& b);

/// A homomorphism source -> target given by its element map.
struct GroupHom {
  FiniteGroup source;
  FiniteGroup target;
  std::vector<Elem> map;

  Elem operator()(Elem x) const { return map[x]; }

  // Checks the homomorphism law (on generators times all elements, which is
  // sufficient) and raises kInvalidHom on failure.
  static GroupHom checked(FiniteGroup source, FiniteGroup target, std::vector<Elem> map);
  static GroupHom identity(const FiniteGroup& g);
  static GroupHom zero(const FiniteGroup& source, const FiniteGroup& target);
};

bool is_homomorphism(const FiniteGroup& source, const FiniteGroup& target,
                     std::span<const Elem> map);

GroupHom compose(const GroupHom& g, const GroupHom& f);  // g o f
bool is_zero(const GroupHom& f);
bool is_injective(const GroupHom& f);
bool is_surjective(const GroupHom& f);
bool same_map(const GroupHom& f, const GroupHom& g);

// ---------------------------------------------------------------------------
// Constructors

FiniteGroup trivial_group();
FiniteGroup cyclic(std::size_t k, const Caps& caps = {});
// Dihedral group of order 2k, generators a (reflection) and b (rotation) with
// a^2 = b^k = e and aba = b^-1.
FiniteGroup dihedral(std::size_t k, const Caps& caps = {});
FiniteGroup symmetric(std::size_t k, const Caps& caps = {});
FiniteGroup direct_product(const FiniteGroup& g, const FiniteGroup& h, const Caps& caps = {});

// Mixed-radix product of several factors; the first factor is most significant.
// The cap is `level_cap` since this is used for simplicial levels.
FiniteGroup product_of(const std::vector<FiniteGroup>& factors, std::string label,
                       const Caps& caps = {});
// Digits of a product element, as produced by product_of.
std::vector<Elem> product_digits(const std::vector<FiniteGroup>& factors, Elem x);
Elem product_index(const std::vector<FiniteGroup>& factors, std::span<const Elem> digits);

// ---------------------------------------------------------------------------
// Subgroup calculus

Subgroup generated_subgroup(const FiniteGroup& g, std::span<const Elem> gens);
std::vector<Elem> subgroup_generators(const Subgroup& s);

Subgroup kernel(const GroupHom& f);
Subgroup image(const GroupHom& f);
Subgroup image_of(const GroupHom& f, const Subgroup& s);   // f(s)
Subgroup preimage(const GroupHom& f, const Subgroup& t);   // f^-1(t)
Subgroup intersect(const Subgroup& a, const Subgroup& b);

bool is_normal(const Subgroup& s);
// Normality of `inner` inside `outer`; both subgroups of the same parent.
bool is_normal_in(const Subgroup& inner, const Subgroup& outer);
Subgroup normal_closure(const Subgroup& s);
Subgroup normal_closure_of(const FiniteGroup& g, std::span<const Elem> seeds);

struct Embedded {
  FiniteGroup group;
  GroupHom inclusion;  // group -> parent
  // parent element -> local element, or -1 when outside the subgroup.
  std::vector<std::int64_t> local;
};
// The subgroup as a group in its own right, elements in the sorted order.
Embedded subgroup_group(const Subgroup& s, std::string label = {});
// g as the whole of itself, without building a new group.
Embedded whole_embedding(const FiniteGroup& g);

struct Quotient {
  FiniteGroup group;
  GroupHom projection;  // parent -> group
};
// Cosets numbered by their smallest element. Raises kNotNormal.
Quotient quotient(const FiniteGroup& g, const Subgroup& n, std::string label = {});
Quotient cokernel(const GroupHom& f);
bool is_proper(const GroupHom& f);

// f restricted to s, corestricted to t (f(s) must lie in t).
GroupHom restrict_hom(const GroupHom& f, const Embedded& s, const Embedded& t);
// The map Q -> target with q(x) -> f(x); f must be constant on cosets.
GroupHom factor_through(const Quotient& q, const GroupHom& f);
// Map q_s(x) -> q_t(f(x)) between quotients (f must map ker q_s into ker q_t).
GroupHom induced_hom(const GroupHom& f, const Quotient& qs, const Quotient& qt);

// ---------------------------------------------------------------------------
// Isomorphism and enumeration

// Invariant factors in primary form, sorted ascending. Raises kNotAbelian.
std::vector<std::size_t> abelian_invariants(const FiniteGroup& g);

// Exact answer; raises kIsoSearchCap when both groups are non-abelian and
// larger than caps.iso_cap.
bool are_isomorphic(const FiniteGroup& g, const FiniteGroup& h, const Caps& caps = {});

// Extends generator images to a homomorphism, if one exists.
std::optional<std::vector<Elem>> extend_to_hom(const FiniteGroup& source,
                                               std::span<const Elem> gens,
                                               std::span<const Elem> images,
                                               const FiniteGroup& target);

// All homomorphisms source -> target in a deterministic order. Returns
// std::nullopt when the candidate count would exceed `limit`.
std::optional<std::vector<GroupHom>> all_homomorphisms(const FiniteGroup& source,
                                                       const FiniteGroup& target,
                                                       std::uint64_t limit);

}  // namespace simptor
