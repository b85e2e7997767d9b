// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Every comparison is exact (integers or rationals), so there are no tolerances.

#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "nilbal/bounds.hpp"
#include "nilbal/catalog.hpp"
#include "nilbal/io.hpp"
#include "nilbal/lie.hpp"
#include "nilbal/nq.hpp"
#include "nilbal/witt.hpp"

using namespace nilbal;

namespace {

const std::vector<std::uint64_t> kPrimes{2, 3, 5, 7};

// Collects the first few mismatches of a criterion.
struct Check {
  std::vector<std::string> misses;

  template <class A, class B>
  void equal(const std::string& what, const A& expected, const B& actual) {
    Json e = expected, a = actual;
    if (e != a) misses.push_back(what + ": expected " + e.dump() + ", got " + a.dump());
  }
  void holds(const std::string& what, bool ok) {
    if (!ok) misses.push_back(what);
  }
};

Json inv(const AbelianInvariants& a) { return to_json(a); }

Json to_json_vector(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<Rational> form(const LieAlgebra& L, std::size_t k,
                           std::vector<std::pair<std::vector<std::string>, Rational>> terms) {
  auto basis = wedge_basis(L.dim(), k);
  std::vector<Rational> v(basis.size());
  for (const auto& [names, c] : terms) {
    std::vector<std::size_t> idx;
    for (const auto& n : names) idx.push_back(L.index(n));
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == idx) v[i] += c;
  }
  return v;
}

std::vector<CatalogEntry> entries_of(bool groups) {
  std::vector<CatalogEntry> out;
  for (const auto& n : catalog_names()) {
    CatalogEntry e = load(n);
    if (groups != e.algebra.has_value()) out.push_back(std::move(e));
  }
  return out;
}

void c1(Check& c) {
  std::vector<std::uint64_t> ranks;
  for (std::uint64_t k = 1; k <= 5; ++k) ranks.push_back(witt_rank(2, k));
  c.equal("witt ranks r=2, k=1..5", std::vector<std::uint64_t>{2, 1, 2, 3, 6}, ranks);
  c.equal("h(F(2)/gamma_4)", 5, free_nilpotent_hirsch(2, 3));
  c.equal("h(F(2)/gamma_5)", 8, free_nilpotent_hirsch(2, 4));
}

void c2(Check& c) {
  for (std::uint64_t r : {2, 3})
    for (int cls = 1; cls <= 4; ++cls) {
      std::vector<std::size_t> witt;
      for (int k = 1; k <= cls; ++k) witt.push_back(witt_rank(r, k));
      std::string name = "FREE(" + std::to_string(r) + "," + std::to_string(cls) + ")";
      c.equal(name + " lcs ranks", witt, lcs_ranks(nilpotent_quotient(load(name).group(), cls)));
    }
}

void c3(Check& c) {
  for (int cls : {2, 3}) {
    std::string name = "FREE(2," + std::to_string(cls) + ")";
    MultiplierResult m = schur_multiplier(load(name).group(), cls);
    c.equal(name + " H2", inv({witt_rank(2, cls + 1), {}}), inv(m.h2));
  }
}

Json tuple_of(const GroupInvariants& g) {
  return {{"hirsch", g.hirsch}, {"class", g.nilpotency_class}, {"lcs", g.lcs}, {"h1", inv(g.h1)}, {"h2", inv(g.h2)}};
}

void c4(Check& c) {
  GroupInvariants n = group_invariants(load("N4").group(), 3);
  Json want = {{"hirsch", 4}, {"class", 3}, {"lcs", {2, 1, 1}}, {"h1", inv({2, {}})}, {"h2", inv({2, {}})}};
  c.equal("N4 invariants", want, tuple_of(n));
  c.holds("N4 stabilized", n.stabilized);
  c.equal("N4 balanced", true, homological_balance(n.h1, n.h2, kPrimes).balanced);
  GroupInvariants m = group_invariants(load("N4_matrix").group(), 3);
  c.equal("N4_matrix invariants", want, tuple_of(m));
  c.equal("N4_matrix balanced", true, homological_balance(m.h1, m.h2, kPrimes).balanced);
}

void c5(Check& c) {
  BettiReport r = betti_report(load("FREE(2,3)").group(), 3, kPrimes);
  c.equal("beta1 over Q", 2, r.beta1_q);
  c.equal("beta2 over Q", 3, r.beta2_q);
  for (const auto& p : r.primes) {
    c.equal("beta1 over F_" + std::to_string(p.p), 2, p.beta1);
    c.equal("beta2 over F_" + std::to_string(p.p), 3, p.beta2);
  }
}

void c6(Check& c) {
  GroupInvariants g = group_invariants(load("G6").group(), 5);
  c.equal("hirsch", 6, g.hirsch);
  c.equal("lcs ranks", std::vector<std::size_t>{2, 1, 1, 1, 1}, g.lcs);
  std::size_t gamma4 = 0;
  for (std::size_t k = 3; k < g.lcs.size(); ++k) gamma4 += g.lcs[k];
  c.equal("rank of gamma_4", 2, gamma4);
  c.equal("H1", inv({2, {}}), inv(g.h1));
  c.equal("H2", inv({2, {}}), inv(g.h2));
  BalanceVerdict v = homological_balance(g.h1, g.h2, kPrimes);
  c.holds("balanced over Q", v.data.beta2_q <= v.data.beta1_q);
  for (const auto& p : v.data.primes)
    c.holds("balanced over F_" + std::to_string(p.p) + " (beta2 = " + std::to_string(p.beta2) + ")",
            p.beta2 <= p.beta1);
}

void c7(Check& c) {
  LieAlgebra A({"y", "c", "d", "e"});
  auto eta = form(A, 2, {{{"y", "d"}, 1}, {{"y", "e"}, 1}, {{"c", "d"}, -1}});
  auto ystar = form(A, 1, {{{"y"}, 1}});
  c.equal("eta^2 as cochains", to_json_vector(form(A, 4, {{{"y", "c", "d", "e"}, -2}})),
          to_json_vector(wedge(4, 2, eta, 2, eta)));
  c.equal("y* eta as cochains", to_json_vector(form(A, 3, {{{"y", "c", "d"}, -1}})),
          to_json_vector(wedge(4, 1, ystar, 2, eta)));
  auto e = cohomology_class(A, 2, eta), y = cohomology_class(A, 1, ystar);
  c.equal("eta^2 as classes", to_json_vector(form(A, 4, {{{"y", "c", "d", "e"}, -2}})),
          to_json_vector(cup(A, e, e).rep));
  c.equal("y* eta as classes", to_json_vector(form(A, 3, {{{"y", "c", "d"}, -1}})),
          to_json_vector(cup(A, y, e).rep));
}

void gysin_pair(Check& c, const std::string& what, const LieAlgebra& Q, const std::vector<Rational>& v) {
  ExtensionCocycle e{v, "t"};
  c.equal("gysin " + what, betti_lie(central_extension(Q, e))[2], gysin_beta2(Q, e));
}

void c8(Check& c) {
  LieAlgebra plane({"x", "y"});
  gysin_pair(c, "Q^2, x*y*", plane, form(plane, 2, {{{"x", "y"}, 1}}));
  LieAlgebra heis = *load("HEIS3").algebra;
  gysin_pair(c, "HEIS3, x*u*", heis, form(heis, 2, {{{"x", "u"}, 1}}));
  LieAlgebra q5 = *load("Q5").algebra;
  gysin_pair(c, "Q5, y*e* - c*d*", q5, form(q5, 2, {{{"y", "e"}, 1}, {{"c", "d"}, -1}}));

  std::vector<LieAlgebra> bases;
  for (const auto& e : entries_of(false))
    if (check_lie(*e.algebra).ok) bases.push_back(*e.algebra);
  std::mt19937_64 rng(1);
  std::uniform_int_distribution<int> coef(-3, 3);
  int tested = 0;
  for (int trial = 0; tested < 20 && trial < 2000; ++trial) {
    const LieAlgebra& Q = bases[trial % bases.size()];
    RationalMatrix z = kernel(ce_differential(Q, 2));
    std::vector<Rational> v(z.rows());
    for (std::size_t k = 0; k < z.cols(); ++k) {
      int a = coef(rng);
      for (std::size_t r = 0; r < z.rows(); ++r) v[r] += a * z(r, k);
    }
    Integer den = 1;
    for (auto& x : v) {
      x.canonicalize();
      den = lcm(den, Integer(x.get_den()));
    }
    for (auto& x : v) x *= den;
    if (cohomology_class(Q, 2, v).rep == std::vector<Rational>(v.size())) continue;
    gysin_pair(c, "random cocycle " + std::to_string(tested), Q, v);
    ++tested;
  }
  c.equal("random cocycles tested", 20, tested);
}

void c9(Check& c) {
  for (const auto& e : entries_of(true)) {
    GroupInvariants g = group_invariants(e.group(), e.class_bound);
    if (g.hirsch > 2)
      c.holds(e.name + ": beta2 > beta1^2/4",
              lubotzky_check(g.h1.free_rank, g.h2.free_rank, static_cast<std::int64_t>(g.hirsch)));
    const auto& pc = g.quotient.pc;
    if (pc.size() < 2 || g.nilpotency_class < 2 || pc.is_finite(pc.size() - 1)) continue;
    NormalWord z(pc.size(), 0);
    z.back() = 1;
    WeightedQuotient bar = central_quotient(g.quotient, z);
    std::size_t h = hirsch(bar);
    if (h < 1 || h > 6 || h != bar.pc.size()) continue;
    std::int64_t b1 = bar.layers[0].free_rank, b2 = schur_multiplier(bar).free_rank;
    std::int64_t b3 = h >= 3 ? pd_complete_betti(static_cast<int>(h), b1, b2)[3] : 0;
    BettiBounds bb = e2_bounds({b1, b2, b3, 1});
    std::int64_t beta2 = g.h2.free_rank;
    c.holds(e.name + ": E2 bounds [" + std::to_string(bb.lower) + "," + std::to_string(bb.upper) +
                "] bracket beta2 = " + std::to_string(beta2),
            bb.lower <= beta2 && beta2 <= bb.upper);
  }
  c.equal("fht_check(2,5,2)", false, fht_check(2, 5, 2));
}

void c10(Check& c) {
  WeightedQuotient q = nilpotent_quotient(load("FREE(2,3)").group(), 3);
  MetabelianHomology m = metabelian_homology(metabelian_module(q));
  c.equal("(b0,b1,b2,rho)", std::vector<std::size_t>{1, 3, 2, 1}, std::vector<std::size_t>{m.b0, m.b1, m.b2, m.rho});
  c.equal("lower_bound", 3, m.lower_bound);
  std::int64_t beta2 = schur_multiplier(q).free_rank;
  c.holds("lower_bound <= beta2 = " + std::to_string(beta2), m.lower_bound <= beta2);

  std::mt19937_64 rng(10);
  std::uniform_int_distribution<int> coef(-2, 2);
  for (int trial = 0; trial < 100; ++trial) {
    std::size_t r = 2 + trial % 4;
    RationalMatrix n(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < i; ++j) n(i, j) = coef(rng);
    RationalMatrix X = RationalMatrix::identity(r), Y = X, p = n;
    for (std::size_t k = 1; k < r; ++k) {
      int a = coef(rng), b = coef(rng);
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < r; ++j) {
          X(i, j) += a * p(i, j);
          Y(i, j) += b * p(i, j);
        }
      p = p * n;
    }
    MetabelianHomology h = metabelian_homology({r, X, Y});
    c.holds("euler characteristic on fuzz pair " + std::to_string(trial),
            static_cast<long>(h.b0) - static_cast<long>(h.b1) + static_cast<long>(h.b2) == 0);
  }
}

void c11(Check& c) {
  for (std::uint64_t p : {2, 3}) {
    std::string name = "TORSION4(" + std::to_string(p) + ")";
    CatalogEntry e = load(name);
    BalanceVerdict v = is_homologically_balanced(e.group(), e.class_bound, {p});
    c.equal(name + " balanced", false, v.balanced);
    c.holds(name + " H2 has " + std::to_string(p) + "-torsion", v.data.h2.p_rank(p) > 0);
    c.holds(name + " beta2(F_p) > beta2(Q)", v.data.primes.at(0).beta2 > v.data.beta2_q);
  }
}

void c12(Check& c) {
  for (const auto& e : entries_of(false)) {
    const LieAlgebra& L = *e.algebra;
    LieCheck lc = check_lie(L);
    if (e.name == "NAIVE6") {
      c.equal("NAIVE6 Jacobi", false, lc.ok);
      c.equal("NAIVE6 failing triple", "Jacobi fails at (x,y,c)", lc.message);
      continue;
    }
    c.holds(e.name + " Jacobi", lc.ok);
    for (std::size_t k = 0; k + 1 < L.dim(); ++k)
      c.holds(e.name + " d o d = 0 in degree " + std::to_string(k),
              (ce_differential(L, k + 1) * ce_differential(L, k)).is_zero());
    auto b = betti_lie(L);
    long chi = 0;
    for (std::size_t k = 0; k < b.size(); ++k) {
      c.holds(e.name + " duality in degree " + std::to_string(k), b[k] == b[b.size() - 1 - k]);
      chi += (k % 2 ? -1 : 1) * static_cast<long>(b[k]);
    }
    c.equal(e.name + " euler characteristic", 0, chi);
  }
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria{
      {"Witt ranks and Hirsch lengths", c1},
      {"lower central series of FREE(r,c) matches Witt", c2},
      {"H2 of relatively free quotients", c3},
      {"N4 and N4_matrix invariants", c4},
      {"betti numbers of F(2)/gamma_4", c5},
      {"G6 group-side invariants and balance", c6},
      {"cup products on the abelian quotient", c7},
      {"Gysin count matches direct Betti number", c8},
      {"Lubotzky, E2 and FHT predicates", c9},
      {"metabelian complex", c10},
      {"torsion sensitivity", c11},
      {"Lie structure: Jacobi, d o d, duality, euler characteristic", c12},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Check c;
    try {
      criteria[i].second(c);
    } catch (const std::exception& e) {
      c.misses.push_back(std::string("error: ") + e.what());
    }
    std::cout << (c.misses.empty() ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first;
    if (!c.misses.empty()) {
      ++failed;
      std::cout << " | " << c.misses[0];
      for (std::size_t k = 1; k < c.misses.size() && k < 4; ++k) std::cout << "; " << c.misses[k];
      if (c.misses.size() > 4) std::cout << "; ...";
    }
    std::cout << "\n";
  }
  std::cout << criteria.size() - failed << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
