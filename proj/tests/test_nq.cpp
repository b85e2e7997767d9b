#include "doctest.h"
#include "nilbal/nq.hpp"

using namespace nilbal;

namespace {

FinitePresentation free_group(std::size_t r) {
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(r);
  return FinitePresentation(names, {});
}

FinitePresentation n4() { return FinitePresentation::parse({"x", "y"}, {"[x,[x,[x,y]]]", "[y,[x,y]]"}); }

FinitePresentation g6() {
  return FinitePresentation::parse({"x", "y", "c", "d", "e", "f"},
                                   {"c = [x,y]", "d = [x,c]", "e = [x,d]", "[y,d] = f", "[y,e] = f",
                                    "[c,d] = f^-1", "[x,e]", "[y,c]", "[c,e]", "[d,e]", "[x,f]", "[y,f]"});
}

std::vector<std::size_t> sizes(std::initializer_list<std::size_t> l) { return l; }

}  // namespace

TEST_CASE("abelian invariants") {
  CHECK(abelianization(n4()) == AbelianInvariants{2, {}});
  CHECK(abelianization(FinitePresentation::parse({"x"}, {"x^2"})) == AbelianInvariants{0, {2}});
  CHECK(abelianization(free_group(2)).free_rank == 2);
  CHECK(min_generators(AbelianInvariants{1, {2, 6}}) == 3);
  CHECK(min_generators(AbelianInvariants{2, {}}) == 2);
  CHECK(min_generators(AbelianInvariants{}) == 0);
  AbelianInvariants t{1, {2, 6}};
  CHECK(t.p_rank(2) == 2);
  CHECK(t.p_rank(3) == 1);
  CHECK(t.p_rank(5) == 0);
}

TEST_CASE("free nilpotent quotients") {
  WeightedQuotient q = nilpotent_quotient(free_group(2), 3);
  CHECK(lcs_ranks(q) == sizes({2, 1, 2}));
  CHECK(hirsch(q) == 5);
  CHECK(is_consistent(q.pc));
  CHECK(lcs_ranks(nilpotent_quotient(free_group(2), 4)) == sizes({2, 1, 2, 3}));
  CHECK(lcs_ranks(nilpotent_quotient(free_group(3), 3)) == sizes({3, 3, 8}));
  CHECK(lcs_ranks(nilpotent_quotient(free_group(1), 3)) == sizes({1}));
  CHECK(nilpotent_quotient(free_group(1), 3).complete);
  CHECK_THROWS_AS(nilpotent_quotient(free_group(2), 0), InputError);
}

TEST_CASE("relators hold in the quotient") {
  FinitePresentation p = g6();
  WeightedQuotient q = nilpotent_quotient(p, 5);
  CHECK(is_consistent(q.pc));
  for (const auto& r : p.relators()) CHECK(evaluate(q, r) == Collector(q.pc).identity());
}

TEST_CASE("N has Hirsch length 4 at every class bound past 3") {
  for (int c : {3, 4}) {
    WeightedQuotient q = nilpotent_quotient(n4(), c);
    CHECK(hirsch(q) == 4);
    CHECK(lcs_ranks(q) == sizes({2, 1, 1}));
    CHECK(q.nilpotency_class() == 3);
    CHECK(is_consistent(q.pc));
  }
  CHECK(nilpotent_quotient(n4(), 4).complete);
}

TEST_CASE("G6 lower central series") {
  WeightedQuotient q = nilpotent_quotient(g6(), 5);
  CHECK(hirsch(q) == 6);
  CHECK(lcs_ranks(q) == sizes({2, 1, 1, 1, 1}));
  for (const auto& layer : q.layers) CHECK(layer.torsion_free());
  CHECK(nilpotent_quotient(g6(), 6).complete);
}

TEST_CASE("torsion appears in finite layers") {
  FinitePresentation p = FinitePresentation::parse({"x", "y"}, {"[x,[x,y]]^2"});
  WeightedQuotient q = nilpotent_quotient(p, 3);
  CHECK(lcs_ranks(q) == sizes({2, 1, 1}));
  CHECK(hirsch(q) == 4);
  CHECK(q.layers[2] == AbelianInvariants{1, {2}});
  CHECK(is_consistent(q.pc));

  WeightedQuotient z4 = nilpotent_quotient(FinitePresentation::parse({"a"}, {"a^4"}), 2);
  CHECK(hirsch(z4) == 0);
  CHECK(z4.layers[0] == AbelianInvariants{0, {4}});
}

TEST_CASE("Schur multipliers") {
  CHECK(schur_multiplier(nilpotent_quotient(free_group(2), 2)) == AbelianInvariants{2, {}});
  CHECK(schur_multiplier(nilpotent_quotient(free_group(2), 3)) == AbelianInvariants{3, {}});
  CHECK(schur_multiplier(nilpotent_quotient(free_group(3), 1)) == AbelianInvariants{3, {}});
  MultiplierResult n = schur_multiplier(n4(), 3);
  CHECK(n.h2 == AbelianInvariants{2, {}});
  CHECK(n.stabilized);
  MultiplierResult f = schur_multiplier(free_group(2), 2);
  CHECK_FALSE(f.stabilized);
  CHECK(schur_multiplier(nilpotent_quotient(FinitePresentation::parse({"a", "b"}, {"a^2", "b^2"}), 1)) ==
        AbelianInvariants{0, {2}});
  CHECK(schur_multiplier(nilpotent_quotient(FinitePresentation::parse({"a"}, {"a^6"}), 1)) == AbelianInvariants{});
}

TEST_CASE("G6 multiplier has 2-torsion") {
  // Wang sequence for K x| Z: coker(theta - 1 on H2(K) = Z^5) = Z + Z/2, plus Z from H1(K)
  BalanceVerdict v = is_homologically_balanced(g6(), 5);
  CHECK(v.data.stabilized);
  CHECK(v.data.h2 == AbelianInvariants{2, {2}});
  CHECK(v.data.beta1_q == 2);
  CHECK(v.data.beta2_q == 2);
  CHECK_FALSE(v.balanced);
  for (const auto& p : v.data.primes) CHECK(p.beta2 == (p.p == 2 ? 3u : 2u));
}

TEST_CASE("multiplier of the central extension of Z^4") {
  FinitePresentation k = FinitePresentation::parse(
      {"y", "c", "d", "e", "f"},
      {"[y,d]=f", "[y,e]=f", "[c,d]=f^-1", "[y,c]", "[c,e]", "[d,e]", "[y,f]", "[c,f]", "[d,f]", "[e,f]"});
  MultiplierResult m = schur_multiplier(k, 2);
  CHECK(m.stabilized);
  CHECK(m.h2 == AbelianInvariants{5, {}});
}

TEST_CASE("central quotients") {
  WeightedQuotient f = nilpotent_quotient(free_group(2), 3);
  // last generator is a central weight-3 generator
  NormalWord z(f.pc.size(), 0);
  z.back() = 1;
  WeightedQuotient n = central_quotient(f, z);
  CHECK(hirsch(n) == 4);
  CHECK(schur_multiplier(n) == AbelianInvariants{2, {}});

  z.back() = 3;
  WeightedQuotient t = central_quotient(f, z);
  CHECK(hirsch(t) == 4);
  bool has_three = false;
  for (const auto& l : t.layers)
    for (const auto& d : l.factors) has_three |= d == 3;
  CHECK(has_three);

  NormalWord x(f.pc.size(), 0);
  x[0] = 1;
  CHECK_THROWS_AS(central_quotient(f, x), ComputationError);
}

TEST_CASE("central quotient by the last generator agrees with adding a relator") {
  WeightedQuotient g = nilpotent_quotient(g6(), 5);
  NormalWord f(g.pc.size(), 0);
  f.back() = 1;
  WeightedQuotient fast = central_quotient(g, f);
  CHECK(is_consistent(fast.pc));
  FinitePresentation p = g6();
  std::vector<Word> rels = p.relators();
  rels.push_back(Word::generator(5));
  WeightedQuotient slow = nilpotent_quotient(FinitePresentation(p.generators(), rels), 5);
  CHECK(hirsch(fast) == 5);
  CHECK(hirsch(slow) == 5);
  CHECK(fast.layers == slow.layers);
  CHECK(schur_multiplier(fast) == schur_multiplier(slow));
  CHECK(schur_multiplier(fast) == AbelianInvariants{3, {}});
  for (const auto& r : p.relators())
    if (!(r == Word::generator(5))) CHECK(evaluate(fast, r) == Collector(fast.pc).identity());

  f.back() = 2;
  WeightedQuotient two = central_quotient(g, f);
  CHECK(is_consistent(two.pc));
  CHECK(two.layers.back() == AbelianInvariants{0, {2}});
  rels.back() = Word::generator(5, 2);
  WeightedQuotient two_slow = nilpotent_quotient(FinitePresentation(p.generators(), rels), 5);
  CHECK(two.layers == two_slow.layers);
  CHECK(schur_multiplier(two) == schur_multiplier(two_slow));
}

TEST_CASE("multiplier does not change once the quotient has stabilized") {
  std::vector<std::pair<FinitePresentation, int>> groups{
      {n4(), 3}, {g6(), 5}, {FinitePresentation::parse({"x", "y"}, {"[x,[x,y]]", "[y,[x,y]]"}), 2},
      {FinitePresentation::parse({"x", "y"}, {"[x,[x,y]]^2", "[y,[x,y]]", "[x,[x,[x,y]]]"}), 3}};
  for (const auto& [p, c] : groups) {
    MultiplierResult a = schur_multiplier(p, c), b = schur_multiplier(p, c + 1);
    CHECK(a.stabilized);
    CHECK(b.stabilized);
    CHECK(a.h2 == b.h2);
  }
}
