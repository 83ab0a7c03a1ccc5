#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "simptor/errors.hpp"
#include "simptor/verify.hpp"

using namespace simptor;

namespace {

const std::uint64_t kSeeds[] = {1, 2, 3};

std::vector<NamedComplex> proper_complexes(std::uint64_t seed) {
  std::vector<NamedComplex> out;
  for (auto& nc : chain_corpus(seed))
    if (nc.complex.proper()) out.push_back(std::move(nc));
  return out;
}

bool levels_match(const TruncatedSimplicialGroup& a, const TruncatedSimplicialGroup& b) {
  if (a.degree_bound() != b.degree_bound()) return false;
  for (int m = 0; m <= a.degree_bound(); ++m)
    if (a.level(m).order() != b.level(m).order()) return false;
  return true;
}

}  // namespace

TEST_CASE("corpus shape") {
  for (auto seed : kSeeds) {
    auto cs = chain_corpus(seed);
    std::size_t random_proper = 0;
    std::set<std::string> names;
    for (const auto& nc : cs) {
      CHECK(names.insert(nc.name).second);
      CHECK(nc.complex.degree_bound() <= 3);
      if (nc.name.rfind("rand-", 0) == 0) {
        ++random_proper;
        CHECK(nc.complex.proper());
        for (const auto& g : nc.complex.objects()) CHECK(g.order() <= 16);
      }
    }
    CHECK(random_proper >= 50);
    for (const auto& ns : simplicial_corpus(seed)) {
      CAPTURE(ns.name);
      CHECK(ns.object.degree_bound() <= 4);
      CHECK(validate_simplicial(ns.object).ok);
    }
  }
  auto a = build_corpus(5);
  auto b = build_corpus(5);
  REQUIRE(a.complexes.size() == b.complexes.size());
  for (std::size_t i = 0; i < a.complexes.size(); ++i)
    CHECK(to_json(a.complexes[i].complex) == to_json(b.complexes[i].complex));
  bool differs = false;
  auto c = chain_corpus(6);
  for (std::size_t i = 0; i < std::min(a.complexes.size(), c.size()); ++i)
    differs = differs || to_json(a.complexes[i].complex) != to_json(c[i].complex);
  CHECK(differs);
}

TEST_CASE("chain radicals are idempotent and their quotients torsion-free") {
  for (auto seed : kSeeds) {
    for (const auto& nc : proper_complexes(seed)) {
      const auto& c = nc.complex;
      for (int n = 1; n <= c.degree_bound(); ++n) {
        CAPTURE(nc.name);
        CAPTURE(n);
        for (bool cok : {true, false}) {
          auto radical = [&](const BoundedChainComplex& x) { return cok ? radical_cok(x, n) : radical_ker(x, n); };
          auto r = radical(c);
          CHECK_FALSE(check_exact(r.ses).has_value());
          auto t = as_complex(r.torsion).complex;
          auto rt = radical(t);
          CHECK(rt.torsion == whole_subcomplex(t));
          auto f = quotient_complex(c, r.torsion).complex;
          CHECK(radical(f).torsion.is_zero());
        }
      }
    }
  }
}

TEST_CASE("tower is a chain of inclusions ending at zero") {
  for (auto seed : kSeeds) {
    for (const auto& nc : proper_complexes(seed)) {
      auto t = lattice_chain(nc.complex);
      CAPTURE(nc.name);
      CHECK_FALSE(t.check().has_value());
      REQUIRE(t.rows.size() == static_cast<std::size_t>(2 * nc.complex.degree_bound() + 2));
      CHECK(t.rows.front().sub == whole_subcomplex(nc.complex));
      CHECK(t.rows.back().sub.is_zero());
    }
  }
}

TEST_CASE("both homology constructions agree on proper complexes") {
  for (auto seed : kSeeds) {
    for (const auto& nc : proper_complexes(seed)) {
      for (int n = 0; n <= nc.complex.degree_bound(); ++n) {
        CAPTURE(nc.name);
        CAPTURE(n);
        CHECK(are_isomorphic(homology_H(nc.complex, n), homology_K(nc.complex, n)));
      }
    }
  }
}

TEST_CASE("simplicial radicals are idempotent and their quotients torsion-free") {
  for (const auto& ns : simplicial_corpus(2)) {
    const auto& x = ns.object;
    for (int n = 0; n <= x.degree_bound(); ++n) {
      CAPTURE(ns.name);
      CAPTURE(n);
      auto geq = mu_geq(x, n);
      CHECK(mu_geq_torsion(geq.torsion_object, n).is_whole());
      CHECK(mu_geq_torsion(geq.quotient.object, n).is_zero());
      auto ngeq = mu_ngeq(x, n);
      CHECK(mu_ngeq(ngeq.torsion_object, n).torsion.is_whole());
      CHECK(mu_ngeq(ngeq.quotient.object, n).torsion.is_zero());
      CHECK(is_subobject_of(ngeq.torsion, geq.torsion));
    }
  }
}

TEST_CASE("porter cotruncation is idempotent and keeps low homotopy") {
  for (const auto& ns : simplicial_corpus(3)) {
    const auto& x = ns.object;
    for (int n = 0; n + 1 < x.degree_bound(); ++n) {
      CAPTURE(ns.name);
      CAPTURE(n);
      auto once = porter_cotruncation(x, n).object;
      auto twice = porter_cotruncation(once, n).object;
      CHECK(levels_match(once, twice));
      for (int i = 0; i <= n; ++i) CHECK(are_isomorphic(homotopy_group(x, i), homotopy_group(once, i)));
      for (int i = n + 1; i < x.degree_bound(); ++i) CHECK(homotopy_group(once, i).is_trivial());
    }
  }
}
