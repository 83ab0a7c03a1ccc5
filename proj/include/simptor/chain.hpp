#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simptor/group.hpp"

namespace simptor {

/// Chain complex M_D -> ... -> M_1 -> M_0 of finite groups, zero outside [0, D].
///
/// Construct through make_complex, which checks shapes and that consecutive
/// differentials compose to zero. Properness is recorded per degree.
class BoundedChainComplex {
 public:
  BoundedChainComplex();  // the zero complex with D = 0

  int degree_bound() const { return static_cast<int>(objects_.size()) - 1; }

  // M_i, trivial for i outside [0, D].
  FiniteGroup object(int i) const;
  // delta_i : M_i -> M_{i-1}; the zero map for i <= 0 or i > D.
  GroupHom delta(int i) const;

  bool proper() const;
  bool proper_at(int i) const;  // true outside [1, D]

  const std::vector<FiniteGroup>& objects() const { return objects_; }
  const std::vector<GroupHom>& differentials() const { return differentials_; }  // delta_1..delta_D

  friend BoundedChainComplex make_complex(std::vector<FiniteGroup> objects, std::vector<GroupHom> differentials);

 private:
  std::vector<FiniteGroup> objects_;
  std::vector<GroupHom> differentials_;
  std::vector<bool> proper_;
};

// Raises kInvalidArgument on shape mismatch and kCompositionNonzero (with the
// degree and a witness element) when delta_{i-1} delta_i != 0.
BoundedChainComplex make_complex(std::vector<FiniteGroup> objects, std::vector<GroupHom> differentials);

// Complex with `g` at degree n and zeros elsewhere, bound max(n, bound).
BoundedChainComplex concentrated(const FiniteGroup& g, int n, int bound = 0);

struct ComplexReport {
  bool proper = true;
  std::vector<bool> proper_at;  // index i = degree i, 1..D meaningful
};
ComplexReport validate_complex(const BoundedChainComplex& c);

struct ChainMap {
  BoundedChainComplex source;
  BoundedChainComplex target;
  std::vector<GroupHom> components;  // degrees 0..max(D_source, D_target)

  GroupHom at(int i) const;
};

// Raises kInvalidHom when a component is not a homomorphism between the right
// objects or a square fails to commute.
ChainMap make_chain_map(const BoundedChainComplex& source, const BoundedChainComplex& target,
                        std::vector<GroupHom> components);
bool is_zero(const ChainMap& f);

/// Levelwise subgroups of a fixed parent complex.
struct SubComplex {
  BoundedChainComplex parent;
  std::vector<Subgroup> levels;  // degrees 0..D of the parent

  const Subgroup& at(int i) const { return levels[static_cast<std::size_t>(i)]; }
  bool is_zero() const;
};

SubComplex zero_subcomplex(const BoundedChainComplex& c);
SubComplex whole_subcomplex(const BoundedChainComplex& c);
bool is_subcomplex_of(const SubComplex& a, const SubComplex& b);  // levelwise inclusion
bool operator==(const SubComplex& a, const SubComplex& b);

struct EmbeddedComplex {
  BoundedChainComplex complex;
  ChainMap inclusion;
  std::vector<Embedded> levels;
};
// The subcomplex as a complex in its own right. Raises kInvalidArgument when a
// differential leaves the subcomplex.
EmbeddedComplex as_complex(const SubComplex& s);

struct QuotientComplex {
  BoundedChainComplex complex;
  ChainMap projection;
  std::vector<Quotient> levels;
};
// Levelwise quotient. Raises kNotNormalLevel or kInvalidArgument (not closed).
QuotientComplex quotient_complex(const BoundedChainComplex& c, const SubComplex& sub);
// outer / inner for inner <= outer, both subcomplexes of the same parent.
QuotientComplex quotient_complex(const SubComplex& outer, const SubComplex& inner);

SubComplex kernel(const ChainMap& f);

struct ChainSES {
  BoundedChainComplex left, middle, right;
  ChainMap inject, project;
};
// Nothing on success, otherwise a witness description.
std::optional<std::string> check_exact(const ChainSES& ses);

struct Radical {
  SubComplex torsion;
  ChainSES ses;  // torsion -> c -> torsion-free quotient
};

ChainSES ses_for(const SubComplex& torsion);

// cok_n: full at degrees >= n, delta_n(M_n) at n-1, zero below. Requires proper.
Radical radical_cok(const BoundedChainComplex& c, int n);
// ker_n: full above n, ker(delta_n) at n, zero below. Requires proper.
Radical radical_ker(const BoundedChainComplex& c, int n);

// ---------------------------------------------------------------------------
// Functor ladder

BoundedChainComplex truncate_above(const BoundedChainComplex& c, int n);  // tr_n, bound n
// sk_n tr_n: same bound, zero above n.
BoundedChainComplex skeleton(const BoundedChainComplex& c, int n);
// cosk_n tr_n: degree n+1 = ker(delta_n), zero above; bound max(D, n+1).
BoundedChainComplex coskeleton_chain(const BoundedChainComplex& c, int n);

struct Cotruncation {
  BoundedChainComplex complex;
  ChainMap unit;
};
// cot_n: Cok(delta_{n+1}) at degree n, unchanged below, zero above. Raises
// kNotProper unless `require_proper` is false.
Cotruncation cotruncate_above(const BoundedChainComplex& c, int n, bool require_proper = true);
// cot'_n: unchanged above n, ker(delta_n) at n, zero below.
BoundedChainComplex cotruncate_below(const BoundedChainComplex& c, int n);
// cosk'_n: unchanged at degrees >= n, Cok(delta_{n+1}) at n-1, zero below.
BoundedChainComplex coskeleton_below(const BoundedChainComplex& c, int n);

// ---------------------------------------------------------------------------
// Homology

// ker(delta_n) / delta_{n+1}(M_{n+1}). Raises kImageNotNormalInKernel.
FiniteGroup homology_H(const BoundedChainComplex& c, int n);
// ker(Cok(delta_{n+1}) -> M_{n-1}). Raises kNotProper.
FiniteGroup homology_K(const BoundedChainComplex& c, int n);

struct TableCell {
  std::string part;  // "1".."6", "homo", "H=K", "exact-ker", "exact-cok"
  int n = 0;
  int m = 0;
  int i = 0;
  bool ok = true;
  std::string detail;
};
std::vector<TableCell> homology_table_check(const BoundedChainComplex& c, const Caps& caps = {});

struct TowerRow {
  std::string name;  // "M", "cok_1", "ker_1", ..., "0"
  SubComplex sub;
};
struct SubobjectTower {
  std::vector<TowerRow> rows;  // largest first
  // Nothing when every row contains the next one levelwise, else the failing pair.
  std::optional<std::string> check() const;
};
SubobjectTower lattice_chain(const BoundedChainComplex& c);
std::string render_tower(const SubobjectTower& t);

// ---------------------------------------------------------------------------
// Chain map enumeration

struct ChainMapCount {
  std::uint64_t candidates = 0;  // product of per-degree hom counts
  bool exhaustive = true;        // false when sampled
  std::uint64_t examined = 0;
  std::vector<ChainMap> maps;    // every chain map found
};
// All chain maps source -> target, searched degree by degree with commutation
// pruning. Beyond `cap` candidate families, samples `cap / 100` families from a
// fixed seed instead.
ChainMapCount enumerate_chain_maps(const BoundedChainComplex& source, const BoundedChainComplex& target,
                                   std::uint64_t cap);

// ---------------------------------------------------------------------------

struct CounterexampleReport {
  std::size_t cot0_order = 0;            // |D4/<a,b^2>|
  std::size_t kernel_order_degree0 = 0;  // |<a,b^2>|
  std::size_t kernel_order_degree1 = 0;  // |<a>|
  std::size_t cot0_of_kernel_order = 0;
  bool nontrivial = false;
};
// Runs cot_0 on the arrow f (as a D = 1 complex), takes the kernel of the unit
// and applies cot_0 again.
CounterexampleReport cot0_kernel_report(const GroupHom& f);
CounterexampleReport d4_counterexample();

}  // namespace simptor
