#include <random>

#include "doctest.h"
#include "nilbal/pc.hpp"

using namespace nilbal;

namespace {

const std::vector<std::string> XY{"x", "y"};

// pc presentation of N on x, y, u, z with [x,y]=u, [x,u]=z.
PcPresentation heisenberg_tower() {
  PcPresentation::Spec s;
  s.names = {"x", "y", "u", "z"};
  s.weights = {1, 1, 2, 3};
  s.orders = {std::nullopt, std::nullopt, std::nullopt, std::nullopt};
  s.commutators = {{{1, 0}, {0, 0, -1, 0}},   // [y,x] = u^-1
                   {{2, 0}, {0, 0, 0, -1}}};  // [u,x] = z^-1
  return PcPresentation(std::move(s));
}

// Faithful image of N in 4x4 unitriangular integer matrices.
IntegerMatrix unit_matrix(std::size_t gen, std::int64_t e) {
  IntegerMatrix m = IntegerMatrix::identity(4);
  switch (gen) {
    case 0:  // x = I + E01 + E12 + E23, raised to e via the binomial series
      m(0, 1) = m(1, 2) = m(2, 3) = e;
      m(0, 2) = m(1, 3) = Integer(e) * (e - 1) / 2;
      m(0, 3) = Integer(e) * (e - 1) * (e - 2) / 6;
      break;
    case 1: m(2, 3) = e; break;
    case 2: m(1, 3) = e; break;
    case 3: m(0, 3) = e; break;
  }
  return m;
}

IntegerMatrix evaluate(const NormalWord& v) {
  IntegerMatrix m = IntegerMatrix::identity(4);
  for (std::size_t i = 0; i < v.size(); ++i) m = m * unit_matrix(i, v[i]);
  return m;
}

IntegerMatrix evaluate(const Word& w) {
  IntegerMatrix m = IntegerMatrix::identity(4);
  for (const auto& l : w.letters()) m = m * unit_matrix(l.gen, l.exp);
  return m;
}

Word random_word(std::mt19937& rng, std::size_t gens, int length) {
  std::uniform_int_distribution<int> e(-3, 3);
  Word w;
  for (int k = 0; k < length; ++k) w.append(rng() % gens, e(rng));
  return w;
}

}  // namespace

TEST_CASE("word parsing follows the xyx^-1y^-1 convention") {
  CHECK(format_word(parse_word("[x,y]", XY), XY) == "x y x^-1 y^-1");
  CHECK(parse_word("x x^-1", XY).empty());
  CHECK(parse_word("1", XY).empty());
  Word xy = parse_word("[x,y]", XY);
  Word x = Word::generator(0);
  CHECK(parse_word("[x,[x,y]]", XY) == x * xy * x.inverse() * xy.inverse());
  CHECK(parse_word("[x,y,x]", XY) == parse_word("[[x,y],x]", XY));
  CHECK(parse_word("xy^2", XY) == parse_word("x y y", XY));
  CHECK(parse_word("(xy)^-1", XY) == parse_word("y^-1 x^-1", XY));
  CHECK(parse_relator("[x,y] = y", XY) == xy * Word::generator(1).inverse());
  CHECK_THROWS_AS(parse_word("[x,w]", XY), InputError);
  CHECK_THROWS_AS(parse_word("[x,y", XY), InputError);
  CHECK_THROWS_AS(parse_word("x^", XY), InputError);
}

TEST_CASE("words stay freely reduced") {
  std::mt19937 rng(5);
  for (int t = 0; t < 100; ++t) {
    Word w = random_word(rng, 3, 8);
    const auto& ls = w.letters();
    for (std::size_t i = 0; i < ls.size(); ++i) {
      CHECK(ls[i].exp != 0);
      if (i) CHECK(ls[i].gen != ls[i - 1].gen);
    }
    CHECK((w * w.inverse()).empty());
  }
}

TEST_CASE("finite presentations validate their relators") {
  auto p = FinitePresentation::parse({"x", "y"}, {"[x,[x,[x,y]]]", "[y,[x,y]]"});
  CHECK(p.relators().size() == 2);
  CHECK_THROWS_AS(FinitePresentation::parse({"x", "x"}, {}), InputError);
  CHECK_THROWS_AS(FinitePresentation({"x"}, {Word::generator(1)}), InputError);
}

TEST_CASE("collection in N") {
  PcPresentation pc = heisenberg_tower();
  CHECK(collect(pc, parse_word("y x", pc.names())) == NormalWord{1, 1, -1, 1});
  CHECK(collect(pc, Word()) == NormalWord{0, 0, 0, 0});
  CHECK(collect(pc, parse_word("x x^-1", pc.names())) == NormalWord{0, 0, 0, 0});
  CHECK(is_consistent(pc));
  // the matrix image agrees with the hand collection
  CHECK(evaluate(NormalWord{1, 1, -1, 1}) == evaluate(parse_word("y x", pc.names())));
}

TEST_CASE("collection agrees with the matrix oracle") {
  PcPresentation pc = heisenberg_tower();
  Collector col(pc);
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    Word u = random_word(rng, 4, 6), v = random_word(rng, 4, 6);
    NormalWord cu = col.collect(u), cv = col.collect(v);
    CHECK(evaluate(cu) == evaluate(u));
    CHECK(col.collect(u * v) == col.multiply(cu, cv));
    CHECK(col.multiply(cu, col.inverse(cu)) == col.identity());
    CHECK(evaluate(col.commutator(cu, cv)) == evaluate(commutator(u, v)));
  }
}

TEST_CASE("pc presentations reject malformed tails") {
  PcPresentation::Spec s;
  s.names = {"a", "b"};
  s.weights = {1, 1};
  s.orders = {std::nullopt, std::nullopt};
  s.commutators = {{{1, 0}, {0, 1}}};  // [b,a] = b
  CHECK_THROWS_AS(PcPresentation{s}, InputError);

  PcPresentation::Spec w;
  w.names = {"a", "b", "c"};
  w.weights = {1, 1, 1};
  w.orders = {std::nullopt, std::nullopt, std::nullopt};
  w.commutators = {{{1, 0}, {0, 0, 1}}};  // weight of c too small
  CHECK_THROWS_AS(PcPresentation{w}, InputError);
}

TEST_CASE("abelian and finite-order presentations") {
  PcPresentation::Spec s;
  s.names = {"a", "b", "c"};
  s.weights = {1, 1, 1};
  s.orders = {std::nullopt, std::nullopt, std::nullopt};
  PcPresentation ab(s);
  CHECK(is_consistent(ab));
  Collector c(ab);
  CHECK(c.multiply({1, -2, 3}, {4, 5, -6}) == NormalWord{5, 3, -3});

  // Z/4 with a^2 = b, b of order 2: cyclic of order 4 written as a tower
  PcPresentation::Spec z;
  z.names = {"a", "b"};
  z.weights = {1, 2};
  z.orders = {2, 2};
  z.powers = {{0, {0, 1}}};
  PcPresentation cyc(z);
  CHECK(is_consistent(cyc));
  Collector cc(cyc);
  CHECK(cc.power(cc.generator(0), 3) == NormalWord{1, 1});
  CHECK(cc.power(cc.generator(0), 4) == NormalWord{0, 0});
  CHECK(cc.inverse({1, 0}) == NormalWord{1, 1});

  PcPresentation::Spec bad;
  bad.names = {"a", "b", "c"};
  bad.weights = {1, 1, 2};
  bad.orders = {2, std::nullopt, std::nullopt};
  bad.commutators = {{{1, 0}, {0, 0, 1}}};  // [b,a] = c while a^2 = 1 forces c^2 = 1
  CHECK_FALSE(is_consistent(PcPresentation(bad)));
}

TEST_CASE("semidirect products by unipotent matrices") {
  PcPresentation z3 = semidirect_z(IntegerMatrix::identity(2));
  CHECK(z3.size() == 3);
  CHECK(is_consistent(z3));
  Collector c3(z3);
  CHECK(c3.multiply({1, 2, 3}, {-4, 5, 6}) == NormalWord{-3, 7, 9});

  PcPresentation heis = semidirect_z(IntegerMatrix{{1, 0}, {1, 1}});
  CHECK(is_consistent(heis));
  CHECK(heis.weights() == std::vector<int>{1, 1, 2});

  PcPresentation n = semidirect_z(IntegerMatrix{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}});
  CHECK(n.size() == 4);
  CHECK(is_consistent(n));
  CHECK(n.weights() == std::vector<int>{1, 1, 2, 3});

  // t v t^-1 = A v in the original coordinates: check on a non-adapted matrix
  IntegerMatrix a{{1, 1, 0}, {0, 1, 1}, {0, 0, 1}};
  PcPresentation m = semidirect_z(a);
  CHECK(is_consistent(m));
  CHECK(m.weights() == std::vector<int>{1, 1, 2, 3});

  CHECK_THROWS_AS(semidirect_z(IntegerMatrix{{2, 0}, {0, 1}}), InputError);
  CHECK_THROWS_AS(semidirect_z(IntegerMatrix{{1, 1}, {-1, 0}}), InputError);
}
