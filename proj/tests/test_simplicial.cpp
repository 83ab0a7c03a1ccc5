#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simptor/errors.hpp"
#include "simptor/simplicial.hpp"

using namespace simptor;

namespace {

using Orders = std::vector<std::size_t>;

Orders level_orders(const TruncatedSimplicialGroup& x) {
  Orders out;
  for (const auto& g : x.levels) out.push_back(g.order());
  return out;
}

Orders level_orders(const SimplicialSubobject& s) {
  Orders out;
  for (const auto& l : s.levels) out.push_back(l.order());
  return out;
}

Orders moore_orders(const TruncatedSimplicialGroup& x) {
  auto m = moore_complex(x).complex;
  Orders out;
  for (int i = 0; i <= m.degree_bound(); ++i) out.push_back(m.object(i).order());
  return out;
}

std::size_t pascal(int n, int k) {
  std::vector<std::vector<std::size_t>> t(static_cast<std::size_t>(n + 1));
  for (int r = 0; r <= n; ++r) {
    t[r].assign(static_cast<std::size_t>(r + 1), 1);
    for (int c = 1; c < r; ++c) t[r][c] = t[r - 1][c - 1] + t[r - 1][c];
  }
  return k < 0 || k > n ? 0 : t[n][k];
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

Orders em_orders(std::size_t a, int n, int D) {
  Orders out;
  for (int m = 0; m <= D; ++m) out.push_back(ipow(a, pascal(m, n)));
  return out;
}

// Iterated d_0 down to level 0: the last vertex map of the simplex.
Elem to_vertex(const TruncatedSimplicialGroup& x, int m, Elem e) {
  for (int k = m; k >= 1; --k) e = x.d(k, 0).map[e];
  return e;
}

bool degreewise_isomorphic(const BoundedChainComplex& a, const BoundedChainComplex& b) {
  const int D = std::max(a.degree_bound(), b.degree_bound());
  for (int i = 0; i <= D; ++i) {
    if (!are_isomorphic(a.object(i), b.object(i))) return false;
  }
  return true;
}

BoundedChainComplex moore_of(const SimplicialSubobject& s) { return moore_complex(as_simplicial(s).object).complex; }

BoundedChainComplex as_complex_of(const SubComplex& s) { return as_complex(s).complex; }

std::vector<TruncatedSimplicialGroup> samples() {
  std::vector<TruncatedSimplicialGroup> out;
  out.push_back(discrete(symmetric(3), 3));
  out.push_back(indiscrete(cyclic(2), 3));
  out.push_back(indiscrete(symmetric(3), 2));
  out.push_back(eilenberg_maclane(cyclic(2), 1, 3));
  out.push_back(eilenberg_maclane(cyclic(3), 2, 3));
  out.push_back(eilenberg_maclane(direct_product(cyclic(2), cyclic(2)), 1, 3));
  return out;
}

}  // namespace

TEST_CASE("validation") {
  auto k = eilenberg_maclane(cyclic(2), 1, 3);
  CHECK(validate_simplicial(k).ok);
  CHECK(validate_simplicial(discrete(dihedral(4), 3)).ok);
  CHECK(validate_simplicial(indiscrete(symmetric(3), 2)).ok);

  auto bad = k;
  bad.faces[2][1].map[1] = 0;
  auto r = validate_simplicial(bad);
  CHECK_FALSE(r.ok);
  CHECK_FALSE(r.violations.empty());
  CHECK_THROWS_WITH_AS(require_simplicial(bad), doctest::Contains("IdentityViolation"), Error);

  // A face that is a homomorphism but breaks d_0 d_1 = d_0 d_0.
  auto swapped = indiscrete(cyclic(3), 2);
  auto z3 = cyclic(3);
  swapped.faces[1][0] = GroupHom::zero(swapped.level(1), z3);
  CHECK_FALSE(validate_simplicial(swapped).ok);
}

TEST_CASE("discrete and indiscrete") {
  CHECK(level_orders(indiscrete(cyclic(2), 2)) == Orders{2, 4, 8});
  CHECK(moore_orders(discrete(dihedral(4), 2)) == Orders{8, 1, 1});
  CHECK(are_isomorphic(homotopy_group(discrete(dihedral(4), 2), 0), dihedral(4)));
  CHECK(level_orders(discrete(trivial_group(), 2)) == Orders{1, 1, 1});

  auto ind = indiscrete(cyclic(2), 3);
  auto m = moore_complex(ind).complex;
  CHECK(moore_orders(ind) == Orders{2, 2, 1, 1});
  CHECK(is_injective(m.delta(1)));
  CHECK(is_surjective(m.delta(1)));
  CHECK(validate_complex(m).proper);
  for (int i = 0; i < ind.degree_bound(); ++i) CHECK(homotopy_group(ind, i).is_trivial());

  auto s3 = indiscrete(symmetric(3), 2);
  CHECK(moore_orders(s3) == Orders{6, 6, 1});
  CHECK_THROWS_WITH_AS(indiscrete(symmetric(4), 5), doctest::Contains("LevelOrderCap"), Error);
}

TEST_CASE("Eilenberg-MacLane objects") {
  CHECK(level_orders(eilenberg_maclane(cyclic(2), 1, 3)) == em_orders(2, 1, 3));
  CHECK(level_orders(eilenberg_maclane(cyclic(3), 2, 3)) == Orders{1, 1, 3, 27});
  CHECK(level_orders(eilenberg_maclane(cyclic(3), 2, 3)) == em_orders(3, 2, 3));
  CHECK(level_orders(eilenberg_maclane(cyclic(4), 2, 4)) == em_orders(4, 2, 4));
  CHECK(level_orders(eilenberg_maclane(cyclic(2), 2, 1)) == Orders{1, 1});

  for (auto [a, n, D] : {std::tuple{2, 1, 4}, std::tuple{3, 1, 3}, std::tuple{2, 2, 4}, std::tuple{3, 2, 3}}) {
    auto A = cyclic(static_cast<std::size_t>(a));
    auto x = eilenberg_maclane(A, n, D);
    CAPTURE(a);
    CAPTURE(n);
    CHECK(validate_simplicial(x).ok);
    auto m = moore_orders(x);
    for (int i = 0; i <= D; ++i) CHECK(m[static_cast<std::size_t>(i)] == (i == n ? A.order() : 1U));
    CHECK(are_isomorphic(homotopy_group(x, n), A));
    for (int i = 0; i < D; ++i) {
      if (i != n) CHECK(homotopy_group(x, i).is_trivial());
    }
  }
  CHECK(moore_orders(eilenberg_maclane(cyclic(3), 1, 3)) == Orders{1, 3, 1, 1});

  CHECK_THROWS_WITH_AS(eilenberg_maclane(symmetric(3), 1, 2), doctest::Contains("NotAbelian"), Error);
  Caps tight;
  tight.level_cap = 100;
  CHECK_THROWS_WITH_AS(eilenberg_maclane(cyclic(2), 1, 7, tight), doctest::Contains("LevelOrderCap"), Error);
}

TEST_CASE("surjection order") {
  auto s4 = surjection_order(4);
  std::vector<std::string> names;
  for (const auto& s : s4) names.push_back(s.to_string());
  CHECK(names == std::vector<std::string>{"id", "s3", "s2", "s2s3", "s1", "s1s3", "s1s2", "s1s2s3", "s0", "s0s3",
                                          "s0s2", "s0s2s3", "s0s1", "s0s1s3", "s0s1s2", "s0s1s2s3"});
  CHECK(surjection_order(0).size() == 1);
  for (int n = 0; n <= 8; ++n) {
    auto s = surjection_order(n);
    CHECK(s.size() == ipow(2, static_cast<std::size_t>(n)));
    for (std::size_t a = 0; a < s.size(); ++a) {
      for (std::size_t b = a + 1; b < s.size(); ++b) CHECK_FALSE(s[a] == s[b]);
    }
  }
}

TEST_CASE("semidirect filtration") {
  for (const auto& x : samples()) {
    for (int n = 0; n <= x.degree_bound(); ++n) {
      auto r = semidirect_filtration(x, n);
      CAPTURE(n);
      CAPTURE(r.mismatch().value_or(""));
      CHECK(r.ok());
      CHECK(r.level_order == x.level(n).order());
    }
  }
  auto k = semidirect_filtration(eilenberg_maclane(cyclic(2), 1, 3), 3);
  CHECK(k.level_order == 8);
  CHECK(k.product_order == ipow(2, pascal(3, 1)));
  auto ind = semidirect_filtration(indiscrete(cyclic(2), 3), 2);
  CHECK(ind.product_order == 8);
}

TEST_CASE("simplicial kernel and coskeleton") {
  auto z2 = cyclic(2);
  auto s3 = symmetric(3);
  CHECK(simplicial_kernel(discrete(s3, 0)).group.order() == 36);
  auto k = simplicial_kernel(truncate(indiscrete(s3, 2), 1));
  CHECK(k.group.order() == 216);
  CHECK(k.projections.size() == 3);

  // Cosk_0 of a discrete object is the indiscrete one, with the diagonal unit.
  auto c = coskeleton_simplicial(discrete(s3, 3), 0);
  CHECK(level_orders(c.object) == level_orders(indiscrete(s3, 3)));
  CHECK(validate_simplicial(c.object).ok);
  for (int m = 0; m <= 3; ++m) {
    CHECK(is_injective(c.unit[static_cast<std::size_t>(m)]));
    for (Elem g = 0; g < s3.order(); ++g) {
      Elem y = c.unit[static_cast<std::size_t>(m)].map[g];
      CHECK(to_vertex(c.object, m, y) == g);
    }
  }
  for (int m = 0; m <= 3; ++m) CHECK(are_isomorphic(homotopy_group(c.object, m), trivial_group()));

  // Norcosk: N(Cosk_n x) = N(x) up to n, ker(delta_n) at n+1, zero above.
  for (const auto& x : samples()) {
    auto nx = moore_complex(x).complex;
    for (int n = 0; n <= x.degree_bound(); ++n) {
      auto nc = moore_complex(coskeleton_simplicial(x, n).object).complex;
      CAPTURE(n);
      for (int i = 0; i <= x.degree_bound(); ++i) {
        if (i <= n) {
          CHECK(are_isomorphic(nc.object(i), nx.object(i)));
        } else if (i == n + 1) {
          CHECK(nc.object(i).order() == kernel(nx.delta(n)).order());
        } else {
          CHECK(nc.object(i).is_trivial());
        }
      }
    }
    auto top = coskeleton_simplicial(x, x.degree_bound());
    CHECK(level_orders(top.object) == level_orders(x));
  }

  Caps tight;
  tight.level_cap = 10;
  CHECK(simplicial_kernel(discrete(z2, 0), tight).group.order() == 4);
  CHECK_THROWS_WITH_AS(simplicial_kernel(discrete(s3, 0), tight), doctest::Contains("LevelOrderCap"), Error);
}

TEST_CASE("normal closure and Porter cotruncation") {
  auto k = eilenberg_maclane(cyclic(2), 1, 3);
  CHECK(simplicial_normal_closure(k, {}).is_zero());
  std::vector<std::vector<Elem>> all(4);
  for (int n = 0; n <= 3; ++n) {
    for (Elem e = 0; e < k.level(n).order(); ++e) all[n].push_back(e);
  }
  CHECK(simplicial_normal_closure(k, all).is_whole());
  CHECK(simplicial_normal_closure(k, {{}, {}, {0}}).is_zero());

  // Cot_n(K(A,m)): zero for m > n, unchanged for m <= n.
  auto k2 = eilenberg_maclane(cyclic(3), 2, 3);
  CHECK(level_orders(porter_cotruncation(k2, 1).object) == Orders{1, 1, 1, 1});
  CHECK(level_orders(porter_cotruncation(k2, 2).object) == level_orders(k2));
  CHECK(level_orders(porter_cotruncation(k, 1).object) == level_orders(k));
  CHECK(level_orders(porter_cotruncation(k, 0).object) == Orders{1, 1, 1, 1});

  for (const auto& x : samples()) {
    auto nx = moore_complex(x).complex;
    auto pi0 = homotopy_group(x, 0);
    auto cot0 = porter_cotruncation(x, 0).object;
    // Discrete on pi_0: every level is pi_0 and every face is a bijection.
    for (int m = 0; m <= x.degree_bound(); ++m) {
      CHECK(are_isomorphic(cot0.level(m), pi0));
      for (int i = 0; m > 0 && i <= m; ++i) CHECK(is_injective(cot0.d(m, i)));
    }
    for (int n = 0; n <= x.degree_bound(); ++n) {
      auto p = porter_cotruncation(x, n);
      CAPTURE(n);
      CHECK(validate_simplicial(p.object).ok);
      for (const auto& u : p.unit) CHECK(is_surjective(u));
      for (int i = 0; i < n; ++i) CHECK(p.object.level(i).order() == x.level(i).order());
      auto expected = cotruncate_above(nx, n).complex;
      CHECK(degreewise_isomorphic(moore_complex(p.object).complex, expected));
      for (int i = 0; i < x.degree_bound(); ++i) {
        auto pi = homotopy_group(p.object, i);
        if (i <= n) {
          CHECK(are_isomorphic(pi, homotopy_group(x, i)));
        } else {
          CHECK(pi.is_trivial());
        }
      }
    }
  }
}

TEST_CASE("mu radicals") {
  auto z2 = cyclic(2);
  auto s3 = symmetric(3);
  auto k1 = eilenberg_maclane(z2, 1, 3);
  CHECK(mu_geq_torsion(k1, 1).is_whole());
  CHECK(mu_geq_torsion(discrete(s3, 3), 1).is_zero());
  CHECK(mu_geq_torsion(discrete(s3, 3), 2).is_zero());
  CHECK(mu_ngeq(k1, 1).torsion.is_zero());
  CHECK(mu_ngeq(discrete(s3, 3), 0).torsion.is_zero());
  CHECK(mu_ngeq(indiscrete(s3, 2), 0).torsion.is_whole());
  CHECK(mu_geq_torsion(k1, 0).is_whole());

  for (const auto& x : samples()) {
    auto nx = moore_complex(x).complex;
    for (int n = 0; n <= x.degree_bound() + 1; ++n) {
      CAPTURE(n);
      auto t = mu_geq_torsion(x, n);
      CHECK(t == mu_geq_torsion_via_coskeleton(x, n));
      CHECK(degreewise_isomorphic(moore_of(t), as_complex_of(radical_ker(nx, n).torsion)));
      auto r = mu_geq(x, n);
      CHECK(torsion_membership(r.torsion_object, Theory::kGeq, n));
    }
    for (int n = 0; n <= x.degree_bound(); ++n) {
      CAPTURE(n);
      auto r = mu_ngeq(x, n);
      CHECK(degreewise_isomorphic(moore_of(r.torsion), as_complex_of(radical_cok(nx, n + 1).torsion)));
      CHECK(torsion_membership(r.torsion_object, Theory::kNgeq, n));
    }
  }

  CHECK(torsion_membership(eilenberg_maclane(cyclic(3), 2, 3), Theory::kGeq, 2));
  CHECK_FALSE(torsion_membership(discrete(s3, 2), Theory::kGeq, 1));
  CHECK_FALSE(torsion_membership(indiscrete(z2, 2), Theory::kNgeq, 1));

  // The counting fallback agrees with the explicit coskeleton.
  Caps tight;
  tight.level_cap = 8;
  for (const auto& x : samples()) {
    for (int n = 0; n <= x.degree_bound(); ++n) {
      auto torsion = mu_ngeq(x, n).torsion_object;
      CHECK(torsion_membership(torsion, Theory::kNgeq, n, tight) == torsion_membership(torsion, Theory::kNgeq, n));
      CHECK(torsion_membership(x, Theory::kNgeq, n, tight) == torsion_membership(x, Theory::kNgeq, n));
    }
  }
}

TEST_CASE("lattice") {
  for (const auto& x : samples()) {
    auto t = lattice_simplicial(x);
    CHECK(t.rows.size() == static_cast<std::size_t>(2 * x.degree_bound() + 4));
    CHECK_FALSE(t.check().has_value());
  }
  auto k2 = eilenberg_maclane(cyclic(3), 2, 3);
  auto t = lattice_simplicial(k2);
  // X, mu_{0>=}, mu_{>=1}, mu_{1>=}, mu_{>=2}, mu_{2>=}, ...
  CHECK(t.rows[1].sub.is_whole());
  CHECK(t.rows[3].sub.is_whole());
  CHECK(t.rows[4].sub.is_whole());
  CHECK(t.rows[5].sub.is_zero());
  CHECK(t.rows[5].name == "mu_{2>=}");
  CHECK(t.rows[4].name == "mu_{>=2}");

  auto d = lattice_simplicial(discrete(symmetric(3), 2));
  for (std::size_t r = 1; r < d.rows.size(); ++r) CHECK(d.rows[r].sub.is_zero());

  auto z = lattice_simplicial(discrete(trivial_group(), 2));
  for (const auto& row : z.rows) CHECK(row.sub.is_zero());
  CHECK(render_tower(t).find("mu_{>=2} = 27 -> 3 -> 1 -> 1") != std::string::npos);
}

TEST_CASE("fundamental simplicial groups") {
  auto k2 = eilenberg_maclane(cyclic(3), 2, 3);
  RadicalSpec geq2{RadicalSpec::kGeq, 2};
  RadicalSpec ngeq2{RadicalSpec::kNgeq, 2};
  auto pi = fundamental_functor(k2, geq2, ngeq2).object;
  CHECK(level_orders(pi) == em_orders(3, 2, 3));
  CHECK(are_isomorphic(homotopy_group(pi, 2), cyclic(3)));

  for (const auto& x : samples()) {
    auto top = fundamental_functor(x, RadicalSpec{}, RadicalSpec{RadicalSpec::kNgeq, 0}).object;
    auto pi0 = homotopy_group(x, 0);
    for (int m = 0; m <= x.degree_bound(); ++m) CHECK(are_isomorphic(top.level(m), pi0));
  }

  CHECK_THROWS_WITH_AS(fundamental_functor(k2, ngeq2, RadicalSpec{RadicalSpec::kGeq, 1}),
                       doctest::Contains("NotNested"), Error);
  CHECK(fundamental_functor(k2, RadicalSpec{}, RadicalSpec{RadicalSpec::kZero, 0}).object.levels.size() == 4);
}

TEST_CASE("fundamental groupoid graph") {
  auto z2 = cyclic(2);
  auto g = fundamental_groupoid_graph(eilenberg_maclane(z2, 1, 3));
  CHECK(g.arrows.order() == 2);
  CHECK(g.objects.is_trivial());

  auto s3 = symmetric(3);
  auto d = fundamental_groupoid_graph(discrete(s3, 2));
  CHECK(d.arrows.order() == 6);
  CHECK(is_injective(d.d0));
  CHECK(is_injective(d.s0));

  auto ind = fundamental_groupoid_graph(indiscrete(s3, 2));
  CHECK(ind.arrows.order() == 36);
  CHECK(ind.relations.is_trivial());

  for (const auto& x : samples()) {
    auto graph = fundamental_groupoid_graph(x);
    auto cot = porter_cotruncation(x, 1);
    CHECK(cot.kernel.at(0).is_trivial());
    CHECK(cot.kernel.at(1) == graph.relations);
  }
  CHECK_THROWS_WITH_AS(fundamental_groupoid_graph(discrete(s3, 1)), doctest::Contains("InvalidArgument"), Error);
}
