#include "doctest.h"
#include "nilbal/catalog.hpp"
#include "nilbal/io.hpp"

using namespace nilbal;

TEST_CASE("rationals") {
  CHECK(rational_from_json("3/6") == Rational(1, 2));
  CHECK(rational_from_json("-2") == Rational(-2));
  CHECK(rational_from_json(5) == Rational(5));
  CHECK(to_json(Rational(-4, 6)) == "-2/3");
  CHECK_THROWS_AS(rational_from_json("1/0"), InputError);
  CHECK_THROWS_AS(rational_from_json("x"), InputError);
  CHECK_THROWS_AS(rational_from_json(1.5), InputError);
  CHECK(to_json(Integer("123456789012345678901234567890")) == "123456789012345678901234567890");
  CHECK(to_json(Integer(7)) == 7);
}

TEST_CASE("finite presentations") {
  Json j = Json::parse(R"({"generators": ["x", "y"], "relators": ["[x,[x,[x,y]]]", "[y,[x,y]]"]})");
  FinitePresentation p = finite_presentation_from_json(j);
  CHECK(p.generator_count() == 2);
  CHECK(p.relators().size() == 2);
  FinitePresentation back = finite_presentation_from_json(to_json(p));
  CHECK(back.relators() == p.relators());
  CHECK_THROWS_AS(finite_presentation_from_json(Json::parse(R"({"generators": ["x"]})")), InputError);
  CHECK_THROWS_AS(finite_presentation_from_json(Json::parse(R"({"generators": ["x"], "relators": ["q"]})")), InputError);
}

TEST_CASE("pc presentations") {
  Json j = Json::parse(R"({"generators": ["a", "b", "c"], "weights": [1, 1, 2], "orders": [null, null, 3],
                           "commutator_tails": {"2,1": "c"}})");
  PcPresentation pc = pc_presentation_from_json(j);
  CHECK(pc.size() == 3);
  CHECK(pc.is_finite(2));
  CHECK(is_consistent(pc));
  PcPresentation back = pc_presentation_from_json(to_json(pc));
  CHECK(to_json(back) == to_json(pc));
  Json d = Json::parse(R"({"weights": [1, 2], "orders": [4, null], "power_tails": {"1": "a2"}})");
  CHECK(pc_presentation_from_json(d).name(1) == "a2");
  CHECK_THROWS_AS(pc_presentation_from_json(Json::parse(R"({"weights": [1, 1], "commutator_tails": {"1,2": "a2"}})")),
                  InputError);
  CHECK_THROWS_AS(pc_presentation_from_json(Json::parse(R"({"weights": [1, 1, 2], "commutator_tails": {"2,1": "a3 a1"}})")),
                  InputError);
  CHECK_THROWS_AS(pc_presentation_from_json(Json::parse(R"({"weights": [1], "commutator_tails": {"x": "a1"}})")), InputError);
}

TEST_CASE("lie algebras") {
  Json j = Json::parse(R"({"basis": ["x", "y", "u"], "brackets": [{"left": "y", "right": "x", "value": {"u": "-1/2"}}]})");
  LieAlgebra L = lie_algebra_from_json(j);
  CHECK(L.bracket(0, 1)[2] == Rational(1, 2));
  CHECK(lie_algebra_from_json(to_json(L)) == L);
  CHECK_THROWS_AS(lie_algebra_from_json(Json::parse(R"({"basis": ["x", "x"]})")), InputError);
  CHECK_THROWS_AS(
      lie_algebra_from_json(Json::parse(R"({"basis": ["x", "y"], "brackets": [{"left": "x", "right": "z", "value": {}}]})")),
      InputError);
  for (const auto& n : catalog_names()) {
    CatalogEntry e = load(n);
    if (e.algebra) CHECK(lie_algebra_from_json(to_json(*e.algebra)) == *e.algebra);
  }
}

TEST_CASE("metabelian modules") {
  Json j = Json::parse(R"({"r": 3, "X": [[1,0,0],[1,1,0],[0,0,1]], "Y": [[1,0,0],[0,1,0],["1",0,1]]})");
  MetabelianModule m = metabelian_module_from_json(j);
  CHECK(metabelian_homology(m).b1 == 3);
  CHECK(to_json(metabelian_module_from_json(to_json(m))) == to_json(m));
  CHECK_THROWS_AS(metabelian_module_from_json(Json::parse(R"({"r": 2, "X": [[1,1],[0,1]], "Y": [[1,0],[1,1]]})")),
                  InputError);
}

TEST_CASE("abelian invariants") {
  CHECK(to_json(AbelianInvariants{2, {Integer(2), Integer(6)}}).dump() == R"({"rank":2,"torsion":[2,6]})");
}
