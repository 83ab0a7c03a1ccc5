#pragma once

#include <optional>
#include <string>
#include <vector>

#include "simptor/chain.hpp"
#include "simptor/group.hpp"

namespace simptor {

/// A D-truncated simplicial group: levels X_0..X_D with faces
/// d_i : X_n -> X_{n-1} (0 <= i <= n, n >= 1) and degeneracies
/// s_i : X_n -> X_{n+1} (0 <= i <= n, n < D).
struct TruncatedSimplicialGroup {
  std::vector<FiniteGroup> levels;
  std::vector<std::vector<GroupHom>> faces;         // faces[n][i]; faces[0] is empty
  std::vector<std::vector<GroupHom>> degeneracies;  // degeneracies[n][i]; none at n = D

  int degree_bound() const { return static_cast<int>(levels.size()) - 1; }
  const FiniteGroup& level(int n) const { return levels[static_cast<std::size_t>(n)]; }
  const GroupHom& d(int n, int i) const { return faces[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)]; }
  const GroupHom& s(int n, int i) const {
    return degeneracies[static_cast<std::size_t>(n)][static_cast<std::size_t>(i)];
  }
};

struct SimplicialReport {
  bool ok = true;
  std::vector<std::string> violations;  // "relation degree element" descriptions
};

// Checks shapes, homomorphism laws and every simplicial identity on every
// element. Stops after `limit` violations.
SimplicialReport validate_simplicial(const TruncatedSimplicialGroup& x, std::size_t limit = 16);
// validate_simplicial, raising kIdentityViolation on the first violation.
void require_simplicial(const TruncatedSimplicialGroup& x);

TruncatedSimplicialGroup discrete(const FiniteGroup& g, int D);
TruncatedSimplicialGroup indiscrete(const FiniteGroup& g, int D, const Caps& caps = {});
TruncatedSimplicialGroup truncate(const TruncatedSimplicialGroup& x, int n);

/// Levelwise subgroups of a fixed parent, closed under faces and degeneracies.
struct SimplicialSubobject {
  TruncatedSimplicialGroup parent;
  std::vector<Subgroup> levels;

  const Subgroup& at(int n) const { return levels[static_cast<std::size_t>(n)]; }
  bool is_zero() const;
  bool is_whole() const;
};

SimplicialSubobject zero_subobject(const TruncatedSimplicialGroup& x);
SimplicialSubobject whole_subobject(const TruncatedSimplicialGroup& x);
bool is_subobject_of(const SimplicialSubobject& a, const SimplicialSubobject& b);
bool operator==(const SimplicialSubobject& a, const SimplicialSubobject& b);

struct EmbeddedSimplicial {
  TruncatedSimplicialGroup object;
  std::vector<Embedded> levels;
};
EmbeddedSimplicial as_simplicial(const SimplicialSubobject& s);

struct QuotientSimplicial {
  TruncatedSimplicialGroup object;
  std::vector<Quotient> levels;  // projections form the levelwise unit
};
// Raises kNotNormalLevel, or kInvalidArgument when not closed under the structure maps.
QuotientSimplicial quotient_simplicial(const TruncatedSimplicialGroup& x, const SimplicialSubobject& sub);
QuotientSimplicial quotient_simplicial(const SimplicialSubobject& outer, const SimplicialSubobject& inner);

// ---------------------------------------------------------------------------
// Moore complex and homotopy

struct MooreComplex {
  BoundedChainComplex complex;
  std::vector<Subgroup> subsets;     // N_n as a subgroup of X_n
  std::vector<Embedded> embeddings;  // complex.object(n) -> X_n
};
MooreComplex moore_complex(const TruncatedSimplicialGroup& x);

// H_n of the Moore complex. pi_D uses delta_{D+1} = 0 and depends on the
// truncation; see truncation_sensitive.
FiniteGroup homotopy_group(const TruncatedSimplicialGroup& x, int n);
inline bool truncation_sensitive(const TruncatedSimplicialGroup& x, int n) { return n >= x.degree_bound(); }

// ---------------------------------------------------------------------------
// Surjections of the simplicial category and the semidirect filtration

struct Surjection {
  int n = 0;
  std::vector<int> indices;  // strictly increasing, each in [0, n-1]; empty = identity

  int target() const { return n - static_cast<int>(indices.size()); }
  std::string to_string() const;
};
bool operator==(const Surjection& a, const Surjection& b);

// All of S(n), identity first, in the order of the filtration.
std::vector<Surjection> surjection_order(int n);

struct FiltrationStep {
  Surjection surjection;
  std::size_t order = 0;           // |G_{n,i}|
  std::size_t moore_order = 0;     // |N_r| for r the target of the surjection
  std::size_t expected_next = 0;   // |G_{n,i}| * |N_r|
  std::size_t actual_next = 0;     // order of the successor (|X_n| after the last)
  bool ok = true;
};
struct FiltrationReport {
  int n = 0;
  std::vector<FiltrationStep> steps;
  bool identity_trivial = true;         // G_{n,id} = 0
  bool top_is_moore = true;             // G at sigma_{n-1} equals N_n (n >= 1)
  std::size_t level_order = 0;          // |X_n|
  std::size_t product_order = 0;        // prod_r |N_r|^binom(n, r)
  bool ok() const;
  std::optional<std::string> mismatch() const;
};
FiltrationReport semidirect_filtration(const TruncatedSimplicialGroup& x, int n);

// ---------------------------------------------------------------------------
// Coskeleta

struct SimplicialKernel {
  FiniteGroup group;
  std::vector<GroupHom> projections;   // pi_0..pi_{n+1} : group -> X_n
  std::vector<GroupHom> degeneracies;  // s_0..s_n : X_n -> group
};
// Simplicial kernel of the top faces of x (the top level n = D). Raises
// kLevelOrderCap once the tuple count passes caps.level_cap.
SimplicialKernel simplicial_kernel(const TruncatedSimplicialGroup& x, const Caps& caps = {});

struct Coskeleton {
  TruncatedSimplicialGroup object;
  std::vector<GroupHom> unit;  // x_m -> Cosk_n(x)_m
};
// Cosk_n(x) up to the bound of x, with the unit.
Coskeleton coskeleton_simplicial(const TruncatedSimplicialGroup& x, int n, const Caps& caps = {});
// cosk of an n-truncated object, iterated up to bound D.
TruncatedSimplicialGroup coskeleton_extend(const TruncatedSimplicialGroup& x, int D, const Caps& caps = {});

// ---------------------------------------------------------------------------
// Subobjects, radicals and cotruncation

// Smallest family of normal subgroups containing the seeds and closed under
// faces and degeneracies.
SimplicialSubobject simplicial_normal_closure(const TruncatedSimplicialGroup& x,
                                              const std::vector<std::vector<Elem>>& seeds);

struct PorterCotruncation {
  TruncatedSimplicialGroup object;
  SimplicialSubobject kernel;
  std::vector<GroupHom> unit;
};
// Cot_n(x) = x / K with K generated by the Moore objects N_j, j > n.
PorterCotruncation porter_cotruncation(const TruncatedSimplicialGroup& x, int n);

struct SimplicialRadical {
  SimplicialSubobject torsion;
  TruncatedSimplicialGroup torsion_object;
  QuotientSimplicial quotient;  // the torsion-free part with the projection
};

// Kernel of the unit x -> Cosk_{n-1}(x), computed levelwise without building
// the coskeleton. n = 0 gives the whole object.
SimplicialSubobject mu_geq_torsion(const TruncatedSimplicialGroup& x, int n);
// Same subobject, via an explicit coskeleton (subject to caps).
SimplicialSubobject mu_geq_torsion_via_coskeleton(const TruncatedSimplicialGroup& x, int n, const Caps& caps = {});
SimplicialRadical mu_geq(const TruncatedSimplicialGroup& x, int n);
SimplicialRadical mu_ngeq(const TruncatedSimplicialGroup& x, int n);

enum class Theory { kGeq, kNgeq };  // mu_{>=n}, mu_{n>=}
// The characterization: for mu_{>=n}, X_i = 0 below n; for mu_{n>=}, X_i = 0
// below n and the unit x -> Cosk_n(x) is levelwise surjective.
bool torsion_membership(const TruncatedSimplicialGroup& x, Theory theory, int n, const Caps& caps = {});

struct RadicalSpec {
  enum Kind { kGeq, kNgeq, kWhole, kZero } kind = kWhole;
  int n = 0;

  std::string to_string() const;
  // Position in the linear order of mu(Grp).
  long rank() const;
};
SimplicialSubobject radical_subobject(const TruncatedSimplicialGroup& x, const RadicalSpec& r);

// upper(x) / lower(x). Raises kNotNested when lower is above upper in mu(Grp).
QuotientSimplicial fundamental_functor(const TruncatedSimplicialGroup& x, const RadicalSpec& upper,
                                       const RadicalSpec& lower);

struct SimplicialTowerRow {
  std::string name;
  SimplicialSubobject sub;
};
struct SimplicialTower {
  std::vector<SimplicialTowerRow> rows;  // largest first
  std::optional<std::string> check() const;
};
SimplicialTower lattice_simplicial(const TruncatedSimplicialGroup& x);
std::string render_tower(const SimplicialTower& t);

// ---------------------------------------------------------------------------
// Eilenberg-MacLane objects and the fundamental groupoid

// The (n+1)-truncated k(A, n).
TruncatedSimplicialGroup eilenberg_maclane_seed(const FiniteGroup& a, int n, const Caps& caps = {});
// K(A, n) up to degree D.
TruncatedSimplicialGroup eilenberg_maclane(const FiniteGroup& a, int n, int D, const Caps& caps = {});

struct ReflexiveGraph {
  FiniteGroup arrows;   // X_1 / d_2(N_2)
  FiniteGroup objects;  // X_0
  GroupHom d0, d1;      // arrows -> objects
  GroupHom s0;          // objects -> arrows
  Subgroup relations;   // d_2(N_2) inside X_1
};
ReflexiveGraph fundamental_groupoid_graph(const TruncatedSimplicialGroup& x);

}  // namespace simptor
