#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <random>

#include "simptor/errors.hpp"
#include "simptor/group.hpp"

using namespace simptor;

namespace {

GroupHom times(std::size_t k, std::size_t n) {
  auto z = cyclic(n);
  std::vector<Elem> map(n);
  for (std::size_t x = 0; x < n; ++x) map[x] = static_cast<Elem>((k * x) % n);
  return GroupHom::checked(z, z, map);
}

// Conjugates the table of g by a random permutation fixing 0.
FiniteGroup relabel(const FiniteGroup& g, std::mt19937& rng) {
  const std::size_t n = g.order();
  std::vector<Elem> perm(n);
  std::iota(perm.begin(), perm.end(), Elem{0});
  std::shuffle(perm.begin() + 1, perm.end(), rng);
  std::vector<Elem> table(n * n);
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) table[perm[a] * n + perm[b]] = perm[g.mul(a, b)];
  }
  return FiniteGroup::from_table(n, table, g.label() + "'");
}

std::vector<FiniteGroup> small_groups() {
  return {trivial_group(), cyclic(2), cyclic(4), cyclic(6), dihedral(3), dihedral(4),
          direct_product(cyclic(2), cyclic(2)), symmetric(3), direct_product(cyclic(2), cyclic(4)),
          cyclic(8), dihedral(6), symmetric(4)};
}

}  // namespace

TEST_CASE("constructors") {
  auto z4 = cyclic(4);
  CHECK(z4.order() == 4);
  CHECK(z4.is_abelian());

  auto d4 = dihedral(4);
  CHECK(d4.order() == 8);
  CHECK_FALSE(d4.is_abelian());
  Elem a = 0, b = 0;
  for (const auto& [name, e] : d4.named_generators()) (name == "a" ? a : b) = e;
  CHECK(d4.mul(a, a) == 0);
  CHECK(d4.pow(b, 4) == 0);
  CHECK(d4.pow(b, 2) != 0);
  CHECK(d4.mul(d4.mul(a, b), a) == d4.inv(b));

  auto v4 = direct_product(cyclic(2), cyclic(2));
  CHECK(v4.order() == 4);
  for (Elem x = 0; x < 4; ++x) CHECK(v4.mul(x, x) == 0);
  CHECK(v4.label() == "Z2xZ2");

  CHECK(symmetric(4).order() == 24);
  CHECK_THROWS_AS(cyclic(0), Error);
  Caps tight;
  tight.max_order = 10;
  CHECK_THROWS_WITH_AS(cyclic(11, tight), doctest::Contains("OrderCap"), Error);
}

TEST_CASE("from_table rejects bad tables") {
  // A 5-element loop (Latin square with identity) that is not associative.
  std::vector<Elem> loop = {0, 1, 2, 3, 4,  //
                            1, 0, 3, 4, 2,  //
                            2, 4, 0, 1, 3,  //
                            3, 2, 4, 0, 1,  //
                            4, 3, 1, 2, 0};
  CHECK_THROWS_WITH_AS(FiniteGroup::from_table(5, loop, "L"), doctest::Contains("associativity"), Error);

  std::vector<Elem> not_latin = {0, 1, 1, 1};
  CHECK_THROWS_AS(FiniteGroup::from_table(2, not_latin, "X"), Error);

  std::vector<Elem> no_identity = {1, 0, 0, 1};
  CHECK_THROWS_AS(FiniteGroup::from_table(2, no_identity, "X"), Error);

  auto s3 = symmetric(3);
  auto copy = FiniteGroup::from_table(6, s3.table(), "S3");
  CHECK(copy.table() == s3.table());
}

TEST_CASE("kernel, image, normality") {
  auto f = times(2, 4);
  CHECK(kernel(f).elements == std::vector<Elem>{0, 2});
  CHECK(image(f).elements == std::vector<Elem>{0, 2});
  CHECK(is_proper(f));

  auto d4 = dihedral(4);
  CHECK(kernel(GroupHom::identity(d4)).is_trivial());
  auto z6 = cyclic(6);
  CHECK(kernel(GroupHom::zero(z6, z6)).is_whole());
  CHECK(image(GroupHom::zero(z6, z6)).is_trivial());

  Elem a = d4.named_generators()[0].second;
  Elem b = d4.named_generators()[1].second;
  auto sub_a = generated_subgroup(d4, std::vector<Elem>{a});
  CHECK(sub_a.order() == 2);
  CHECK_FALSE(is_normal(sub_a));
  CHECK_FALSE(sub_a.contains(d4.conj(b, a)));

  auto closure = normal_closure(sub_a);
  Elem b2 = d4.mul(b, b);
  std::vector<Elem> expected = {0, a, b2, d4.mul(a, b2)};
  std::sort(expected.begin(), expected.end());
  CHECK(closure.elements == expected);
  CHECK(normal_closure(closure) == closure);
  CHECK(normal_closure(Subgroup::trivial(d4)).is_trivial());
}

TEST_CASE("quotients and cokernels") {
  auto d4 = dihedral(4);
  Elem a = d4.named_generators()[0].second;
  auto incl = GroupHom::checked(subgroup_group(generated_subgroup(d4, std::vector<Elem>{a})).group, d4,
                                {0, a});
  CHECK_FALSE(is_proper(incl));
  auto cok = cokernel(incl);
  CHECK(cok.group.order() == 2);

  auto z4 = cyclic(4);
  auto q = quotient(z4, Subgroup{z4, {0, 2}});
  CHECK(q.group.order() == 2);
  CHECK(q.projection.map == std::vector<Elem>{0, 1, 0, 1});
  CHECK(kernel(q.projection).elements == std::vector<Elem>{0, 2});

  auto q1 = quotient(d4, Subgroup::trivial(d4));
  CHECK(are_isomorphic(q1.group, d4));
  CHECK_THROWS_WITH_AS(quotient(d4, generated_subgroup(d4, std::vector<Elem>{a})), doctest::Contains("NotNormal"),
                       Error);

  auto zero = GroupHom::zero(cyclic(2), cyclic(6));
  CHECK(cokernel(zero).group.order() == 6);
  CHECK(cokernel(GroupHom::identity(d4)).group.is_trivial());
}

TEST_CASE("abelian invariants") {
  CHECK(abelian_invariants(cyclic(4)) == std::vector<std::size_t>{4});
  CHECK(abelian_invariants(direct_product(cyclic(2), cyclic(2))) == std::vector<std::size_t>{2, 2});
  CHECK(abelian_invariants(cyclic(6)) == std::vector<std::size_t>{2, 3});
  CHECK(abelian_invariants(direct_product(cyclic(4), cyclic(6))) == std::vector<std::size_t>{2, 3, 4});
  CHECK(abelian_invariants(trivial_group()).empty());
  CHECK_THROWS_AS(abelian_invariants(symmetric(3)), Error);
}

TEST_CASE("isomorphism") {
  CHECK_FALSE(are_isomorphic(cyclic(4), direct_product(cyclic(2), cyclic(2))));
  CHECK_FALSE(are_isomorphic(dihedral(4), cyclic(8)));
  CHECK(are_isomorphic(dihedral(3), symmetric(3)));
  CHECK(are_isomorphic(direct_product(cyclic(2), cyclic(3)), cyclic(6)));

  std::mt19937 rng(11);
  for (const auto& g : small_groups()) {
    CAPTURE(g.label());
    auto h = relabel(g, rng);
    CHECK(are_isomorphic(g, h));
  }

  Caps tight;
  tight.iso_cap = 4;
  CHECK_THROWS_WITH_AS(are_isomorphic(dihedral(4), dihedral(4), tight), doctest::Contains("IsoSearchCap"), Error);
}

TEST_CASE("isomorphism is an equivalence relation on small groups") {
  auto groups = small_groups();
  std::mt19937 rng(5);
  groups.push_back(relabel(dihedral(4), rng));
  groups.push_back(relabel(cyclic(8), rng));
  for (std::size_t i = 0; i < groups.size(); ++i) {
    CHECK(are_isomorphic(groups[i], groups[i]));
    for (std::size_t j = 0; j < groups.size(); ++j) {
      bool ij = are_isomorphic(groups[i], groups[j]);
      CHECK(ij == are_isomorphic(groups[j], groups[i]));
      if (!ij) continue;
      for (std::size_t k = 0; k < groups.size(); ++k) {
        if (are_isomorphic(groups[j], groups[k])) CHECK(are_isomorphic(groups[i], groups[k]));
      }
    }
  }
}

TEST_CASE("homomorphism properties") {
  auto groups = small_groups();
  std::size_t seen = 0;
  for (const auto& g : groups) {
    for (const auto& h : groups) {
      if (g.order() > 8 || h.order() > 8) continue;
      auto homs = all_homomorphisms(g, h, 1'000'000);
      REQUIRE(homs.has_value());
      for (const auto& f : *homs) {
        ++seen;
        CHECK(is_homomorphism(f.source, f.target, f.map));
        CHECK(g.order() == kernel(f).order() * image(f).order());
        CHECK(is_normal(kernel(f)));
        auto cok = cokernel(f);
        CHECK(is_zero(compose(cok.projection, f)));
        CHECK(is_surjective(cok.projection));
        if (is_proper(f)) CHECK(normal_closure(image(f)) == image(f));
      }
    }
  }
  CHECK(seen > 100);
  // Oracle: |Hom(Z_m, Z_n)| = gcd(m, n).
  for (std::size_t m : {2, 4, 6, 8}) {
    for (std::size_t n : {2, 3, 4, 6}) {
      CHECK(all_homomorphisms(cyclic(m), cyclic(n), 1000)->size() == std::gcd(m, n));
    }
  }
}

TEST_CASE("normal closure is monotone and idempotent") {
  auto g = symmetric(4);
  std::mt19937 rng(3);
  std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(g.order() - 1));
  for (int trial = 0; trial < 40; ++trial) {
    std::vector<Elem> seeds = {pick(rng)};
    auto small = generated_subgroup(g, seeds);
    seeds.push_back(pick(rng));
    auto large = generated_subgroup(g, seeds);
    auto ns = normal_closure(small);
    auto nl = normal_closure(large);
    CHECK(is_subset(small, ns));
    CHECK(is_normal(ns));
    CHECK(normal_closure(ns) == ns);
    CHECK(is_subset(ns, nl));
  }
}

TEST_CASE("large structured groups stay consistent") {
  auto big = product_of({cyclic(4), cyclic(4), cyclic(4), cyclic(4), cyclic(4)}, "Z4^5");
  CHECK(big.order() == 1024);
  std::vector<Elem> d = {1, 2, 3, 0, 1};
  Elem x = product_index({cyclic(4), cyclic(4), cyclic(4), cyclic(4), cyclic(4)}, d);
  CHECK(big.mul(x, big.inv(x)) == 0);
  CHECK(big.element_order(x) == 4);
  CHECK(big.is_abelian());
  CHECK(abelian_invariants(big) == std::vector<std::size_t>{4, 4, 4, 4, 4});
}
