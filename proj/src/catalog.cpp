#include "nilbal/catalog.hpp"

#include <regex>

#include "nilbal/bounds.hpp"
#include "nilbal/witt.hpp"

namespace nilbal {

namespace {

using Bracket = std::vector<std::pair<std::string, Rational>>;

LieAlgebra algebra(std::vector<std::string> basis, std::vector<std::tuple<std::string, std::string, Bracket>> brackets) {
  LieAlgebra L(std::move(basis));
  for (const auto& [a, b, v] : brackets) L.set_bracket(a, b, v);
  return L;
}

LieAlgebra heis3() { return algebra({"x", "y", "u"}, {{"x", "y", {{"u", 1}}}}); }
LieAlgebra q5() {
  return algebra({"x", "y", "c", "d", "e"}, {{"x", "y", {{"c", 1}}}, {"x", "c", {{"d", 1}}}, {"x", "d", {{"e", 1}}}});
}
ExtensionCocycle q5_cocycle() { return make_cocycle(q5(), {{{"y", "e"}, 1}, {{"c", "d"}, -1}}); }
LieAlgebra abelian4() { return LieAlgebra({"y", "c", "d", "e"}); }
ExtensionCocycle eta() { return make_cocycle(abelian4(), {{{"y", "d"}, 1}, {{"y", "e"}, 1}, {{"c", "d"}, -1}}); }

std::vector<Rational> form(const LieAlgebra& L, std::size_t k, std::vector<std::pair<std::vector<std::string>, Rational>> terms) {
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

Json to_json(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(nilbal::to_json(x));
  return out;
}

FinitePresentation free_presentation(std::size_t r) {
  std::vector<std::string> names{"x", "y", "z"};
  names.resize(r);
  return FinitePresentation(names, {});
}

class Builder {
 public:
  explicit Builder(std::string name) { report_.name = std::move(name); }

  void equal(const std::string& what, Json expected, Json actual) {
    bool pass = expected == actual;
    report_.claims.push_back({what, std::move(expected), std::move(actual), pass});
  }
  void holds(const std::string& what, bool actual) { equal(what, true, actual); }

  // runs a block whose exceptions become a failed claim
  template <class F>
  void guarded(const std::string& what, F&& f) {
    try {
      f();
    } catch (const std::exception& e) {
      report_.claims.push_back({what, "no error", std::string("error: ") + e.what(), false});
    }
  }

  VerifyReport take() { return std::move(report_); }

 private:
  VerifyReport report_;
};

Json invariant_tuple(const GroupInvariants& g) {
  return {{"hirsch", g.hirsch}, {"class", g.nilpotency_class}, {"lcs", g.lcs}, {"h1", to_json(g.h1)}, {"h2", to_json(g.h2)}};
}

// Central subgroup generated by the last pc generator.
std::optional<WeightedQuotient> top_quotient(const GroupInvariants& g) {
  const auto& pc = g.quotient.pc;
  if (pc.size() < 2 || g.nilpotency_class < 2 || pc.is_finite(pc.size() - 1)) return std::nullopt;
  NormalWord z(pc.size(), 0);
  z.back() = 1;
  return central_quotient(g.quotient, z);
}

void lubotzky_claim(Builder& b, const GroupInvariants& g) {
  if (g.hirsch > 2)
    b.holds("beta2 > beta1^2/4", lubotzky_check(g.h1.free_rank, g.h2.free_rank, g.hirsch));
}

void e2_claim(Builder& b, const GroupInvariants& g) {
  auto bar = top_quotient(g);
  if (!bar) return;
  std::size_t h = hirsch(*bar);
  if (h < 1 || h > 6) return;
  std::int64_t b1 = bar->layers.empty() ? 0 : bar->layers[0].free_rank;
  std::int64_t b2 = schur_multiplier(*bar).free_rank;
  auto full = pd_complete_betti(static_cast<int>(h), b1, b2);
  std::int64_t b3 = h >= 3 ? full[3] : 0;
  BettiBounds bounds = e2_bounds({b1, b2, b3, 1});
  std::int64_t beta2 = g.h2.free_rank;
  b.holds("E2 bounds bracket beta2 (central generator " + g.quotient.pc.names().back() + ")",
          bounds.lower <= beta2 && beta2 <= bounds.upper);
}

void balance_claims(Builder& b, const GroupInvariants& g, bool expected) {
  BalanceVerdict v = homological_balance(g.h1, g.h2);
  b.equal("homologically balanced", expected, v.balanced);
}

void lie_structure_claims(Builder& b, const LieAlgebra& L) {
  bool dd = true;
  for (std::size_t k = 0; k + 1 < L.dim(); ++k) dd = dd && (ce_differential(L, k + 1) * ce_differential(L, k)).is_zero();
  b.holds("d o d = 0", dd);
  auto betti = betti_lie(L);
  bool dual = true;
  long chi = 0;
  for (std::size_t k = 0; k < betti.size(); ++k) {
    dual = dual && betti[k] == betti[betti.size() - 1 - k];
    chi += (k % 2 ? -1 : 1) * static_cast<long>(betti[k]);
  }
  b.holds("Poincare duality", dual);
  b.equal("euler characteristic", 0, chi);
  auto lcs = lie_lcs_dims(L);
  b.equal("beta1 = dim L/[L,L]", L.dim() - (lcs.size() > 1 ? lcs[1] : 0), betti[1]);
}

const std::vector<std::string>& fixed_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n{"N4", "N4_matrix", "K5", "G6"};
    for (int r = 1; r <= 3; ++r)
      for (int c = 1; c <= 4; ++c) n.push_back("FREE(" + std::to_string(r) + "," + std::to_string(c) + ")");
    for (const char* s : {"TORSION4(2)", "TORSION4(3)", "L4", "HEIS3", "K5L", "Q5", "L6grad", "NAIVE6"}) n.push_back(s);
    return n;
  }();
  return names;
}

}  // namespace

FinitePresentation CatalogEntry::group() const {
  if (presentation) return *presentation;
  if (matrix) return semidirect_z(*matrix).to_finite_presentation();
  throw InputError("catalog: " + name + " is not a group");
}

std::vector<std::string> catalog_names() { return fixed_names(); }

CatalogEntry load(const std::string& name) {
  CatalogEntry e;
  e.name = name;
  std::smatch m;
  if (name == "N4") {
    e.kind = "group-presentation";
    e.description = "Hirsch length 4, class 3, two generators";
    e.class_bound = 3;
    e.presentation = FinitePresentation::parse({"x", "y"}, {"[x,[x,[x,y]]]", "[y,[x,y]]"});
  } else if (name == "N4_matrix") {
    e.kind = "matrix";
    e.description = "Z^3 x|_A Z with A unipotent in SL(3,Z)";
    e.class_bound = 3;
    IntegerMatrix A(3, 3);
    A(0, 0) = A(1, 0) = A(1, 1) = A(2, 1) = A(2, 2) = 1;
    e.matrix = A;
  } else if (name == "K5") {
    e.kind = "group-presentation";
    e.description = "central extension of Z^4 by Z";
    e.class_bound = 2;
    e.presentation = FinitePresentation::parse(
        {"y", "c", "d", "e", "f"},
        {"[y,d] = f", "[y,e] = f", "[c,d] = f^-1", "[y,c]", "[c,e]", "[d,e]", "[y,f]", "[c,f]", "[d,f]", "[e,f]"});
  } else if (name == "G6") {
    e.kind = "group-presentation";
    e.description = "Hirsch length 6, semidirect product of K5 with Z";
    e.class_bound = 5;
    e.presentation = FinitePresentation::parse(
        {"x", "y", "c", "d", "e", "f"}, {"c = [x,y]", "d = [x,c]", "e = [x,d]", "[y,d] = f", "[y,e] = f", "[c,d] = f^-1",
                                         "[x,e]", "[y,c]", "[c,e]", "[d,e]", "[x,f]", "[y,f]"});
  } else if (std::regex_match(name, m, std::regex(R"(FREE\((\d+),(\d+)\))"))) {
    int r = std::stoi(m[1]), c = std::stoi(m[2]);
    if (r < 1 || r > 3 || c < 1 || c > 4) throw InputError("catalog: FREE(r,c) needs 1 <= r <= 3, 1 <= c <= 4");
    e.kind = "group-presentation";
    e.description = "free nilpotent group of rank " + std::to_string(r) + " and class " + std::to_string(c);
    e.class_bound = c;
    e.presentation = free_presentation(r);
  } else if (std::regex_match(name, m, std::regex(R"(TORSION4\((\d+)\))"))) {
    std::uint64_t p = std::stoull(m[1]);
    if (!is_prime(p)) throw InputError("catalog: TORSION4(p) needs a prime p");
    e.kind = "group-presentation";
    e.description = "F(2)/gamma_4 with a central element of order " + std::to_string(p);
    e.class_bound = 3;
    e.presentation = FinitePresentation::parse({"x", "y"}, {"[x,[x,y]]^" + std::to_string(p)});
  } else if (name == "L4") {
    e.kind = "lie-algebra";
    e.description = "filiform algebra of dimension 4";
    e.algebra = algebra({"x", "y", "u", "z"}, {{"x", "y", {{"u", 1}}}, {"x", "u", {{"z", 1}}}});
  } else if (name == "HEIS3") {
    e.kind = "lie-algebra";
    e.description = "Heisenberg algebra";
    e.algebra = heis3();
  } else if (name == "K5L") {
    e.kind = "lie-algebra";
    e.description = "central extension of Q^4 by eta";
    e.algebra = central_extension(abelian4(), eta());
  } else if (name == "Q5") {
    e.kind = "lie-algebra";
    e.description = "filiform algebra of dimension 5";
    e.algebra = q5();
  } else if (name == "L6grad") {
    e.kind = "lie-algebra";
    e.description = "graded algebra of the lower central series of G6";
    e.algebra = central_extension(q5(), q5_cocycle());
  } else if (name == "NAIVE6") {
    e.kind = "lie-algebra";
    e.description = "G6 commutator relations read as brackets; not a Lie algebra";
    e.algebra = algebra({"x", "y", "c", "d", "e", "f"}, {{"x", "y", {{"c", 1}}},
                                                         {"x", "c", {{"d", 1}}},
                                                         {"x", "d", {{"e", 1}}},
                                                         {"y", "d", {{"f", 1}}},
                                                         {"y", "e", {{"f", 1}}},
                                                         {"c", "d", {{"f", -1}}}});
  } else {
    throw InputError("catalog: unknown entry \"" + name + "\"");
  }
  return e;
}

Json to_json(const CatalogEntry& e) {
  Json j{{"name", e.name}, {"kind", e.kind}, {"description", e.description}};
  if (e.class_bound > 0) j["class"] = e.class_bound;
  if (e.presentation) j["payload"] = to_json(*e.presentation);
  if (e.algebra) j["payload"] = to_json(*e.algebra);
  if (e.matrix) {
    Json rows = Json::array();
    for (std::size_t r = 0; r < e.matrix->rows(); ++r) {
      Json row = Json::array();
      for (std::size_t c = 0; c < e.matrix->cols(); ++c) row.push_back(to_json((*e.matrix)(r, c)));
      rows.push_back(row);
    }
    j["payload"] = {{"A", rows}, {"pc", to_json(semidirect_z(*e.matrix))}};
  }
  return j;
}

GroupInvariants group_invariants(const FinitePresentation& pres, int c) {
  GroupInvariants g;
  g.quotient = nilpotent_quotient(pres, c);
  g.hirsch = hirsch(g.quotient);
  g.nilpotency_class = g.quotient.nilpotency_class();
  g.lcs = lcs_ranks(g.quotient);
  g.layers = g.quotient.layers;
  g.h1 = abelianization(pres);
  g.h2 = schur_multiplier(g.quotient);
  g.stabilized = g.quotient.complete || nilpotent_quotient(pres, c + 1).nilpotency_class() <= c;
  return g;
}

bool VerifyReport::passed() const {
  for (const auto& c : claims)
    if (!c.pass) return false;
  return true;
}

Json to_json(const VerifyReport& r) {
  Json claims = Json::array();
  for (const auto& c : r.claims)
    claims.push_back({{"claim", c.what}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
  return {{"name", r.name}, {"pass", r.passed()}, {"claims", claims}};
}

VerifyReport verify(const CatalogEntry& e) {
  Builder b(e.name);
  const AbelianInvariants z2{2, {}};
  b.guarded("computation", [&] {
    if (e.kind == "lie-algebra") {
      const LieAlgebra& L = *e.algebra;
      LieCheck chk = check_lie(L);
      if (e.name == "NAIVE6") {
        b.equal("Jacobi identity", "Jacobi fails at (x,y,c)", chk.message);
        return;
      }
      b.equal("Jacobi identity and nilpotency", "ok", chk.message);
      lie_structure_claims(b, L);
      using V = std::vector<std::size_t>;
      if (e.name == "L4") {
        b.equal("betti numbers", V{1, 2, 2, 2, 1}, betti_lie(L));
        ExtensionCocycle xu = make_cocycle(heis3(), {{{"x", "u"}, 1}}, "z");
        b.holds("extension of HEIS3 by x*u*", central_extension(heis3(), xu) == L);
        b.equal("Gysin count for HEIS3 and x*u*", betti_lie(L)[2], gysin_beta2(heis3(), xu));
        b.equal("pd completion of (beta1, beta2)", Json(pd_complete_betti(4, 2, std::nullopt)), Json(betti_lie(L)));
      } else if (e.name == "HEIS3") {
        b.equal("betti numbers", V{1, 2, 2, 1}, betti_lie(L));
        LieAlgebra plane({"x", "y"});
        ExtensionCocycle xy = make_cocycle(plane, {{{"x", "y"}, 1}}, "u");
        b.holds("extension of Q^2 by x*y*", central_extension(plane, xy) == L);
        b.equal("Gysin count for Q^2 and x*y*", betti_lie(L)[2], gysin_beta2(plane, xy));
      } else if (e.name == "K5L") {
        b.equal("betti numbers", V{1, 4, 5, 5, 4, 1}, betti_lie(L));
        ExtensionData d = extension_cocycle(L, L.index("f"));
        const LieAlgebra& A = d.quotient;
        b.equal("eta on the quotient", to_json(form(A, 2, {{{"y", "d"}, 1}, {{"y", "e"}, 1}, {{"c", "d"}, -1}})),
                to_json(d.cocycle.values));
        CohomologyClass h = cohomology_class(A, 2, d.cocycle.values);
        CohomologyClass y = cohomology_class(A, 1, form(A, 1, {{{"y"}, 1}}));
        b.equal("eta^2 = -2 y*c*d*e*", to_json(form(A, 4, {{{"y", "c", "d", "e"}, -2}})), to_json(cup(A, h, h).rep));
        b.equal("y* eta = -y*c*d*", to_json(form(A, 3, {{{"y", "c", "d"}, -1}})), to_json(cup(A, y, h).rep));
      } else if (e.name == "Q5") {
        b.equal("betti numbers", V{1, 2, 3, 3, 2, 1}, betti_lie(L));
        b.equal("beta2 agrees with F(2)/gamma_4", witt_rank(2, 4), betti_lie(L)[2]);
      } else if (e.name == "L6grad") {
        b.equal("betti numbers", V{1, 2, 2, 2, 2, 2, 1}, betti_lie(L));
        b.equal("Gysin count for Q5", betti_lie(L)[2], gysin_beta2(q5(), q5_cocycle()));
        ExtensionData d = extension_cocycle(L, L.index("f"));
        b.holds("extension round trip", central_extension(d.quotient, d.cocycle) == L);
        GroupInvariants g = group_invariants(load("G6").group(), 5);
        LieAlgebra graded = graded_from_quotient(g.quotient);
        b.equal("betti numbers of the graded algebra of G6", Json(betti_lie(L)), Json(betti_lie(graded)));
      }
      return;
    }

    GroupInvariants g = group_invariants(e.group(), e.class_bound);
    std::smatch m;
    if (e.name == "N4" || e.name == "N4_matrix") {
      b.equal("hirsch length", 4, g.hirsch);
      b.equal("class", 3, g.nilpotency_class);
      b.equal("lcs ranks", std::vector<std::size_t>{2, 1, 1}, g.lcs);
      b.equal("H1", to_json(z2), to_json(g.h1));
      b.equal("H2", to_json(z2), to_json(g.h2));
      b.holds("stabilized", g.stabilized);
      b.equal("minimal generators", 2, min_generators(g.h1));
      balance_claims(b, g, true);
      b.equal("betti numbers of the graded algebra", Json(pd_complete_betti(4, 2, std::nullopt)),
              Json(betti_lie(graded_from_quotient(g.quotient))));
      if (e.name == "N4_matrix")
        b.equal("same invariants as N4", invariant_tuple(group_invariants(load("N4").group(), 3)), invariant_tuple(g));
    } else if (e.name == "K5") {
      b.equal("hirsch length", 5, g.hirsch);
      b.equal("class", 2, g.nilpotency_class);
      b.equal("lcs ranks", std::vector<std::size_t>{4, 1}, g.lcs);
      b.equal("H1", to_json(AbelianInvariants{4, {}}), to_json(g.h1));
      b.equal("H2", to_json(AbelianInvariants{5, {}}), to_json(g.h2));
      b.holds("stabilized", g.stabilized);
      balance_claims(b, g, false);
      auto lb = betti_lie(*load("K5L").algebra);
      b.equal("(beta1, beta2) of K5L", Json({lb[1], lb[2]}), Json({g.h1.free_rank, g.h2.free_rank}));
    } else if (e.name == "G6") {
      b.equal("hirsch length", 6, g.hirsch);
      b.equal("class", 5, g.nilpotency_class);
      b.equal("lcs ranks", std::vector<std::size_t>{2, 1, 1, 1, 1}, g.lcs);
      std::size_t gamma4 = 0;
      for (std::size_t k = 3; k < g.lcs.size(); ++k) gamma4 += g.lcs[k];
      b.equal("rank of gamma_4", 2, gamma4);
      b.equal("H1", to_json(z2), to_json(g.h1));
      b.equal("H2", to_json(z2), to_json(g.h2));
      b.holds("stabilized", g.stabilized);
      BettiReport rep = betti_from_homology(g.h1, g.h2, {2, 3, 5, 7});
      b.holds("beta2 <= beta1 over Q", rep.beta2_q <= rep.beta1_q);
      for (const auto& p : rep.primes) b.holds("beta2 <= beta1 over F_" + std::to_string(p.p), p.beta2 <= p.beta1);
      balance_claims(b, g, true);
      auto bar = top_quotient(g);
      std::size_t hb = hirsch(*bar);
      AbelianInvariants h2b = schur_multiplier(*bar);
      b.equal("hirsch length of G6/<f>", 5, hb);
      b.equal("beta2 of G6/<f>", 3, h2b.free_rank);
      std::int64_t b1 = bar->layers[0].free_rank, b2 = h2b.free_rank;
      BettiBounds eb = e2_bounds({b1, b2, pd_complete_betti(5, b1, b2)[3], 1});
      b.equal("E2 bounds from G6/<f>", Json({2, 4}), Json({eb.lower, eb.upper}));
      b.equal("E2 lower bound attained", eb.lower, static_cast<std::int64_t>(g.h2.free_rank));
      b.equal("betti numbers of the graded algebra", Json(std::vector<std::size_t>{1, 2, 2, 2, 2, 2, 1}),
              Json(betti_lie(graded_from_quotient(g.quotient))));
    } else if (std::regex_match(e.name, m, std::regex(R"(FREE\((\d+),(\d+)\))"))) {
      std::uint64_t r = std::stoull(m[1]), c = std::stoull(m[2]);
      std::vector<std::size_t> witt;
      for (std::uint64_t k = 1; k <= c; ++k)
        if (witt_rank(r, k) > 0) witt.push_back(witt_rank(r, k));
      b.equal("hirsch length", free_nilpotent_hirsch(r, c), g.hirsch);
      b.equal("lcs ranks", witt, g.lcs);
      b.equal("H1", to_json(AbelianInvariants{r, {}}), to_json(g.h1));
      b.equal("H2 of the class-c quotient", to_json(AbelianInvariants{witt_rank(r, c + 1), {}}), to_json(g.h2));
      b.equal("stabilized", r == 1, g.stabilized);
      balance_claims(b, g, relatively_free_balanced(r, c));
      if (r >= 2 && c >= 2) {
        auto bar = top_quotient(g);
        b.holds("relatively free lower bound on beta2 of the central quotient",
                relfree_lower_bound(r, c + 1) <= static_cast<std::int64_t>(schur_multiplier(*bar).free_rank));
      }
    } else if (std::regex_match(e.name, m, std::regex(R"(TORSION4\((\d+)\))"))) {
      std::uint64_t p = std::stoull(m[1]);
      b.equal("hirsch length", 4, g.hirsch);
      b.equal("lcs ranks", std::vector<std::size_t>{2, 1, 1}, g.lcs);
      b.equal("top layer", to_json(AbelianInvariants{1, {Integer(std::to_string(p))}}), to_json(g.layers.back()));
      b.holds("H2 has p-torsion", g.h2.p_rank(p) > 0);
      BettiReport rep = betti_from_homology(g.h1, g.h2, {p});
      b.holds("beta2 over F_p exceeds beta2 over Q", rep.primes[0].beta2 > rep.beta2_q);
      balance_claims(b, g, false);
      return;
    }
    lubotzky_claim(b, g);
    e2_claim(b, g);
  });
  return b.take();
}

}  // namespace nilbal
