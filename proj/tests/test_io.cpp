#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "simptor/errors.hpp"
#include "simptor/io.hpp"

using namespace simptor;

namespace {

GroupHom doubling(const FiniteGroup& z) {
  std::vector<Elem> map(z.order());
  for (Elem x = 0; x < z.order(); ++x) map[x] = z.mul(x, x);
  return GroupHom::checked(z, z, map);
}

template <class T, class Parse>
void round_trip(const T& value, Parse parse) {
  auto j = to_json(value);
  auto again = to_json(parse(j));
  CHECK(j == again);
  CHECK(dump_canonical(j) == dump_canonical(again));
  CHECK(to_json(parse(parse_json_text(dump_canonical(j)))) == j);
}

}  // namespace

TEST_CASE("groups") {
  for (const auto& g : {cyclic(5), dihedral(4), symmetric(3), direct_product(cyclic(2), cyclic(2))}) {
    round_trip(g, [](const json& j) { return group_from_json(j); });
  }
  auto j = to_json(cyclic(3));
  CHECK(j["order"] == 3);
  CHECK(j["table"][1][2] == 0);
  CHECK(j["label"] == "Z3");

  CHECK(parse_group_spec("Z2xZ2").order() == 4);
  CHECK(parse_group_spec("D4").order() == 8);
  CHECK(parse_group_spec("S3xZ2").order() == 12);
  CHECK(parse_group_spec("1").is_trivial());
  CHECK(group_from_json(json("Z6")).order() == 6);
  CHECK_THROWS_WITH_AS(parse_group_spec("Q8"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_group_spec("Zx"), doctest::Contains("ParseError"), Error);

  auto bad = j;
  bad["extra"] = 1;
  CHECK_THROWS_WITH_AS(group_from_json(bad), doctest::Contains("unknown field"), Error);
  bad = j;
  bad["table"][0][0] = 1;
  CHECK_THROWS_WITH_AS(group_from_json(bad), doctest::Contains("InvalidTable"), Error);
  bad = j;
  bad["table"][0][0] = 7;
  CHECK_THROWS_WITH_AS(group_from_json(bad), doctest::Contains("ValidationError"), Error);
  Caps small;
  small.max_order = 4;
  CHECK_THROWS_WITH_AS(group_from_json(to_json(cyclic(5)), small), doctest::Contains("OrderCap"), Error);
}

TEST_CASE("homs") {
  round_trip(doubling(cyclic(4)), [](const json& j) { return hom_from_json(j); });
  json j = {{"source", "Z4"}, {"target", "Z2"}, {"map", {0, 1, 0, 1}}};
  CHECK(hom_from_json(j).map == std::vector<Elem>{0, 1, 0, 1});
  j["map"] = {0, 1, 1, 0};
  CHECK_THROWS_WITH_AS(hom_from_json(j), doctest::Contains("InvalidHom"), Error);
}

TEST_CASE("complexes") {
  auto z4 = cyclic(4);
  auto c = make_complex({z4, z4, z4}, {doubling(z4), doubling(z4)});
  round_trip(c, [](const json& j) { return complex_from_json(j); });
  auto j = to_json(c);
  CHECK(j["degree_bound"] == 2);
  CHECK(j["differentials"].size() == 2);

  auto bad = j;
  bad["differentials"][0]["source"] = "Z5";
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("does not match"), Error);
  bad = j;
  bad["differentials"][1]["map"] = {0, 1, 2, 3};
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("CompositionNonzero"), Error);
  bad = j;
  bad["objects"].erase(2);
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("ValidationError"), Error);

  json inline_groups = j;
  inline_groups["differentials"][0]["source"] = to_json(z4);
  CHECK(to_json(complex_from_json(inline_groups)) == j);
}

TEST_CASE("simplicial groups") {
  for (const auto& spec : {"em(Z2,1,3)", "dis(S3,2)", "ind(Z2,2)", "em(Z3,2,3)"}) {
    CAPTURE(spec);
    round_trip(parse_simplicial_spec(spec), [](const json& j) { return simplicial_from_json(j); });
  }
  auto j = to_json(parse_simplicial_spec("em(Z2,1,2)"));
  CHECK(j["faces"].contains("2,1"));
  CHECK(j["degeneracies"].contains("1,1"));
  CHECK_FALSE(j["degeneracies"].contains("2,0"));
  CHECK(j["faces"].size() == 5);

  auto bad = j;
  bad["faces"]["3,0"] = bad["faces"]["2,0"];
  CHECK_THROWS_WITH_AS(simplicial_from_json(bad), doctest::Contains("unexpected face keys"), Error);
  bad = j;
  bad["faces"].erase("2,1");
  CHECK_THROWS_WITH_AS(simplicial_from_json(bad), doctest::Contains("missing face"), Error);
  bad = j;
  bad["faces"]["2,1"]["map"] = bad["faces"]["2,0"]["map"];
  CHECK_THROWS_WITH_AS(simplicial_from_json(bad), doctest::Contains("IdentityViolation"), Error);

  CHECK(detect_kind(j) == ObjectKind::kSimplicial);
  CHECK(detect_kind(json("em(Z2,1,2)")) == ObjectKind::kSimplicial);
  CHECK(detect_kind(json("Z2")) == ObjectKind::kGroup);
  CHECK_THROWS_WITH_AS(parse_simplicial_spec("foo(Z2,1)"), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(parse_simplicial_spec("em(Z2,1)"), doctest::Contains("ParseError"), Error);
}

TEST_CASE("text handling") {
  CHECK_THROWS_WITH_AS(parse_json_text("{\"order\": "), doctest::Contains("ParseError"), Error);
  CHECK_THROWS_WITH_AS(read_json_file("/nonexistent/file.json"), doctest::Contains("ParseError"), Error);
  json a = {{"b", 1}, {"a", 2}};
  auto text = dump_canonical(a);
  CHECK(text.find("\"a\"") < text.find("\"b\""));
  CHECK(text.back() == '\n');

  auto e = error_json(Error(ErrorCode::kNotNested, "x"));
  CHECK(e["error"] == "NotNested");
  CHECK(e["exit_status"] == exit_status(ErrorCode::kNotNested));
}
