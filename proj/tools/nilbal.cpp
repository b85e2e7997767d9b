// nilbal: command-line front end. JSON on stdout, diagnostics on stderr.
// Exit codes: 0 success, 1 computation-level rejection, 2 input error.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nilbal/bounds.hpp"
#include "nilbal/catalog.hpp"
#include "nilbal/io.hpp"
#include "nilbal/lie.hpp"
#include "nilbal/nq.hpp"
#include "nilbal/witt.hpp"

using namespace nilbal;

namespace {

struct Rejected : std::runtime_error {
  using std::runtime_error::runtime_error;
};

bool pretty = false;

void emit(const Json& j) {
  std::cout << j.dump() << "\n";
  if (pretty) {
    for (const auto& [k, v] : j.items()) std::cerr << k << ": " << v.dump() << "\n";
  }
}

Json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

// --input FILE | --catalog NAME, shared by the verbs that take a group or an algebra.
struct Source {
  std::string input, catalog;
  int cls = 0;

  void add(CLI::App* app, bool with_class) {
    auto* i = app->add_option("--input", input, "JSON file");
    auto* c = app->add_option("--catalog", catalog, "catalog entry name");
    i->excludes(c);
    if (with_class) app->add_option("--class", cls, "class bound c >= 1");
  }

  std::optional<CatalogEntry> entry() const {
    if (catalog.empty()) return std::nullopt;
    return load(catalog);
  }

  FinitePresentation group() {
    if (auto e = entry()) {
      if (cls == 0) cls = e->class_bound;
      return e->group();
    }
    if (input.empty()) throw InputError("need --input or --catalog");
    Json j = read_json(input);
    if (cls == 0) throw InputError("need --class for file input");
    if (j.contains("weights")) return pc_presentation_from_json(j).to_finite_presentation();
    return finite_presentation_from_json(j);
  }

  LieAlgebra algebra() const {
    if (auto e = entry()) {
      if (!e->algebra) throw InputError(catalog + " is not a Lie algebra");
      return *e->algebra;
    }
    if (input.empty()) throw InputError("need --input or --catalog");
    return lie_algebra_from_json(read_json(input));
  }
};

Field field_of(std::uint64_t p) { return p == 0 ? Field::rationals() : Field::prime(p); }

LieAlgebra checked(const LieAlgebra& L) {
  LieCheck c = check_lie(L);
  if (!c.ok) throw InputError("not a nilpotent Lie algebra: " + c.message);
  return L;
}

// Forms such as "y*d* + y*e* - c*d*" or "-2 y*c*d*e*"; a bare number is a 0-form.
std::pair<std::size_t, std::vector<Rational>> parse_form(const LieAlgebra& L, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw InputError("empty form");
  std::vector<std::pair<Rational, std::vector<std::size_t>>> terms;
  std::size_t pos = 0;
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (!terms.empty()) {
      throw InputError("form: expected + or - in \"" + text + "\"");
    }
    std::size_t end = s.find_first_of("+-", pos);
    std::string term = s.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    pos = end == std::string::npos ? s.size() : end;
    std::size_t k = 0;
    while (k < term.size() && (std::isdigit(static_cast<unsigned char>(term[k])) || term[k] == '/')) ++k;
    Rational coef = k == 0 ? Rational(1) : rational_from_json(term.substr(0, k));
    std::vector<std::size_t> factors;
    std::string rest = term.substr(k);
    std::size_t start = 0;
    while (start < rest.size()) {
      std::size_t star = rest.find('*', start);
      if (star == std::string::npos || star == start) throw InputError("form: factors are written name* in \"" + text + "\"");
      factors.push_back(L.index(rest.substr(start, star - start)));
      start = star + 1;
    }
    if (k == 0 && factors.empty()) throw InputError("form: empty term in \"" + text + "\"");
    terms.push_back({sign * coef, factors});
  }
  const std::size_t degree = terms[0].second.size();
  auto basis = wedge_basis(L.dim(), degree);
  std::vector<Rational> out(basis.size());
  for (const auto& [coef, f] : terms) {
    if (f.size() != degree) throw InputError("form: terms of different degrees");
    // sort the factors, tracking the sign
    std::vector<std::size_t> v = f;
    int sgn = 1;
    for (std::size_t a = 0; a < v.size(); ++a)
      for (std::size_t b = 0; b + 1 < v.size() - a; ++b)
        if (v[b] > v[b + 1]) {
          std::swap(v[b], v[b + 1]);
          sgn = -sgn;
        }
    if (std::adjacent_find(v.begin(), v.end()) != v.end()) continue;
    for (std::size_t i = 0; i < basis.size(); ++i)
      if (basis[i] == v) out[i] += sgn * coef;
  }
  return {degree, out};
}

std::string format_form(const LieAlgebra& L, std::size_t degree, const std::vector<Rational>& v) {
  auto basis = wedge_basis(L.dim(), degree);
  std::string out;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    if (v[i] == 0) continue;
    Rational c = v[i];
    c.canonicalize();
    std::string mag = abs(c) == 1 && degree > 0 ? "" : Rational(abs(c)).get_str() + (degree > 0 ? " " : "");
    out += out.empty() ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + ");
    out += mag;
    for (std::size_t k : basis[i]) out += L.basis()[k] + "*";
  }
  return out.empty() ? "0" : out;
}

Json coordinates(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(to_json(x));
  return out;
}

std::vector<std::uint64_t> parse_primes(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("--primes: bad prime \"" + item + "\"");
    }
    if (!is_prime(out.back())) throw InputError("--primes: " + item + " is not prime");
  }
  if (out.empty()) throw InputError("--primes: empty list");
  return out;
}

void require_stable(bool stabilized, bool quotient, int c) {
  if (!stabilized && !quotient)
    throw Rejected("the nilpotent quotient did not stabilize at class " + std::to_string(c) +
                   "; raise --class or pass --quotient to accept the class-c quotient");
}

Json betti_json(const BettiReport& r) {
  Json rows = Json::array();
  rows.push_back({{"field", "Q"}, {"beta1", r.beta1_q}, {"beta2", r.beta2_q}});
  for (const auto& p : r.primes) rows.push_back({{"field", "F_" + std::to_string(p.p)}, {"beta1", p.beta1}, {"beta2", p.beta2}});
  return rows;
}

Json verify_all() {
  Json reports = Json::array();
  bool all = true;
  for (const auto& n : catalog_names()) {
    VerifyReport r = verify(load(n));
    all = all && r.passed();
    reports.push_back(to_json(r));
  }
  return {{"entries", reports}, {"pass", all}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilbal: homology of nilpotent groups and Lie algebras"};
  app.require_subcommand(1);
  app.add_flag("--pretty", pretty, "also print a readable summary on stderr");

  std::function<void()> action;

  std::uint64_t wr = 0, wc = 0;
  auto* witt = app.add_subcommand("witt", "Witt ranks of a free nilpotent group");
  witt->add_option("--rank", wr, "number of generators")->required();
  witt->add_option("--max-class", wc, "largest weight")->required();
  witt->callback([&] {
    action = [&] {
      Json ranks = Json::array();
      for (std::uint64_t k = 1; k <= wc; ++k) ranks.push_back(witt_rank(wr, k));
      emit({{"ranks", ranks}, {"hirsch", free_nilpotent_hirsch(wr, wc)}});
    };
  });

  Source nq_src;
  auto* nq = app.add_subcommand("nq", "nilpotent quotient");
  nq_src.add(nq, true);
  nq->callback([&] {
    action = [&] {
      FinitePresentation p = nq_src.group();
      WeightedQuotient q = nilpotent_quotient(p, nq_src.cls);
      Json layers = Json::array();
      for (const auto& l : q.layers) layers.push_back(to_json(l));
      emit({{"class", q.nilpotency_class()},
            {"hirsch", hirsch(q)},
            {"lcs_ranks", lcs_ranks(q)},
            {"layers", layers},
            {"complete", q.complete},
            {"pc", to_json(q.pc)}});
    };
  });

  Source h_src;
  bool quotient = false;
  std::string primes_text = "2,3,5,7";
  auto* mult = app.add_subcommand("multiplier", "Schur multiplier H2(G; Z)");
  auto* betti = app.add_subcommand("betti", "Betti numbers over Q and prime fields");
  auto* balance = app.add_subcommand("balance", "homological balance verdict");
  for (auto* sub : {mult, betti, balance}) {
    h_src.add(sub, true);
    sub->add_flag("--quotient", quotient, "accept an unstabilized class-c quotient");
  }
  for (auto* sub : {betti, balance}) sub->add_option("--primes", primes_text, "comma-separated primes");
  mult->callback([&] {
    action = [&] {
      FinitePresentation p = h_src.group();
      MultiplierResult m = schur_multiplier(p, h_src.cls);
      require_stable(m.stabilized, quotient, h_src.cls);
      emit({{"h2", to_json(m.h2)}, {"stabilized", m.stabilized}});
    };
  });
  betti->callback([&] {
    action = [&] {
      FinitePresentation p = h_src.group();
      BettiReport r = betti_report(p, h_src.cls, parse_primes(primes_text));
      require_stable(r.stabilized, quotient, h_src.cls);
      emit({{"h1", to_json(r.h1)}, {"h2", to_json(r.h2)}, {"betti", betti_json(r)}, {"stabilized", r.stabilized}});
    };
  });
  balance->callback([&] {
    action = [&] {
      FinitePresentation p = h_src.group();
      BalanceVerdict v = is_homologically_balanced(p, h_src.cls, parse_primes(primes_text));
      require_stable(v.data.stabilized, quotient, h_src.cls);
      emit({{"balanced", v.balanced},
            {"h1", to_json(v.data.h1)},
            {"h2", to_json(v.data.h2)},
            {"reason", v.reason},
            {"betti", betti_json(v.data)},
            {"stabilized", v.data.stabilized}});
    };
  });

  Source l_src;
  std::uint64_t prime = 0;
  auto* lb = app.add_subcommand("lie-betti", "Chevalley-Eilenberg Betti numbers");
  l_src.add(lb, false);
  lb->add_option("--prime", prime, "work over F_p instead of Q");
  lb->callback([&] {
    action = [&] {
      LieAlgebra L = checked(l_src.algebra());
      Field f = field_of(prime);
      emit({{"betti", betti_lie(L, f)}, {"field", f.name()}});
    };
  });

  std::string left, right;
  auto* cupc = app.add_subcommand("cup", "cup product of two classes");
  l_src.add(cupc, false);
  cupc->add_option("--left", left, "closed form, e.g. \"y*d* + y*e* - c*d*\"")->required();
  cupc->add_option("--right", right, "closed form")->required();
  cupc->add_option("--prime", prime, "work over F_p instead of Q");
  cupc->callback([&] {
    action = [&] {
      LieAlgebra L = checked(l_src.algebra());
      Field f = field_of(prime);
      auto [dl, vl] = parse_form(L, left);
      auto [dr, vr] = parse_form(L, right);
      CohomologyClass c = cup(L, cohomology_class(L, dl, vl, f), cohomology_class(L, dr, vr, f), f);
      emit({{"degree", c.degree}, {"class", format_form(L, c.degree, c.rep)}, {"coordinates", coordinates(c.rep)}});
    };
  });

  std::string cocycle, generator = "f";
  auto* gys = app.add_subcommand("gysin", "beta2 of a central extension from the Gysin sequence");
  l_src.add(gys, false);
  gys->add_option("--cocycle", cocycle, "closed 2-form on the quotient")->required();
  gys->add_option("--generator", generator, "name of the central generator");
  gys->add_option("--prime", prime, "work over F_p instead of Q");
  gys->callback([&] {
    action = [&] {
      LieAlgebra Q = checked(l_src.algebra());
      Field f = field_of(prime);
      auto [d, v] = parse_form(Q, cocycle);
      if (d != 2) throw InputError("--cocycle must be a 2-form");
      ExtensionCocycle e{v, generator};
      std::size_t g = gysin_beta2(Q, e, f);
      std::size_t direct = betti_lie(central_extension(Q, e), f)[2];
      emit({{"gysin_beta2", g}, {"extension_beta2", direct}, {"agree", g == direct}, {"field", f.name()}});
    };
  });

  auto* bounds = app.add_subcommand("bounds", "Betti number inequalities");
  bounds->require_subcommand(1);
  std::vector<std::int64_t> nums;
  auto* e2 = bounds->add_subcommand("e2", "E2 bounds: beta1 beta2 beta3 z of G/Z");
  auto* relfree = bounds->add_subcommand("relfree", "relatively free lower bound: beta k");
  auto* lub = bounds->add_subcommand("lubotzky", "beta2 > beta1^2/4: beta1 beta2 h");
  auto* fht = bounds->add_subcommand("fht", "beta2 > ((r-1)^(r-1)/r^r) beta^r: beta r beta2");
  auto* pd = bounds->add_subcommand("pd", "Poincare duality completion: h beta1 [beta2]");
  e2->add_option("values", nums)->required()->expected(4);
  relfree->add_option("values", nums)->required()->expected(2);
  lub->add_option("values", nums)->required()->expected(3);
  fht->add_option("values", nums)->required()->expected(3);
  pd->add_option("values", nums)->required()->expected(2, 3);
  auto nonneg = [&] {
    for (auto x : nums)
      if (x < 0) throw InputError("bounds: arguments must be nonnegative");
  };
  e2->callback([&] {
    action = [&] {
      BettiBounds b = e2_bounds({nums[0], nums[1], nums[2], nums[3]});
      emit({{"lower", b.lower}, {"upper", b.upper}});
    };
  });
  relfree->callback([&] {
    action = [&] {
      nonneg();
      emit({{"bound", relfree_lower_bound(nums[0], nums[1])}});
    };
  });
  lub->callback([&] { action = [&] { emit({{"holds", lubotzky_check(nums[0], nums[1], nums[2])}}); }; });
  fht->callback([&] { action = [&] { emit({{"holds", fht_check(nums[0], nums[1], nums[2])}}); }; });
  pd->callback([&] {
    action = [&] {
      std::optional<std::int64_t> b2;
      if (nums.size() == 3) b2 = nums[2];
      emit({{"betti", pd_complete_betti(static_cast<int>(nums[0]), nums[1], b2)}});
    };
  });

  Source m_src;
  auto* meta = app.add_subcommand("metabelian", "homology of the metabelian standard complex");
  m_src.add(meta, true);
  meta->callback([&] {
    action = [&] {
      MetabelianModule m;
      if (m_src.catalog.empty() && !m_src.input.empty() && m_src.cls == 0) {
        m = metabelian_module_from_json(read_json(m_src.input));
      } else {
        FinitePresentation p = m_src.group();
        m = metabelian_module(nilpotent_quotient(p, m_src.cls));
      }
      MetabelianHomology h = metabelian_homology(m);
      emit({{"b0", h.b0}, {"b1", h.b1}, {"b2", h.b2}, {"rho", h.rho}, {"lower_bound", h.lower_bound}, {"module", to_json(m)}});
    };
  });

  bool failed = false;
  std::string entry_name;
  auto* cat = app.add_subcommand("catalog", "built-in examples");
  cat->require_subcommand(1);
  auto* list = cat->add_subcommand("list", "entry names");
  auto* show = cat->add_subcommand("show", "export an entry");
  auto* ver = cat->add_subcommand("verify", "verify one entry");
  auto* cat_all = cat->add_subcommand("verify-all", "verify every entry");
  show->add_option("name", entry_name)->required();
  ver->add_option("name", entry_name)->required();
  list->callback([&] {
    action = [&] {
      Json entries = Json::array();
      for (const auto& n : catalog_names()) {
        CatalogEntry e = load(n);
        entries.push_back({{"name", n}, {"kind", e.kind}, {"description", e.description}});
      }
      emit({{"entries", entries}});
    };
  });
  show->callback([&] { action = [&] { emit(to_json(load(entry_name))); }; });
  ver->callback([&] {
    action = [&] {
      VerifyReport r = verify(load(entry_name));
      failed = !r.passed();
      emit(to_json(r));
    };
  });
  auto run_all = [&] {
    Json j = verify_all();
    failed = !j["pass"].get<bool>();
    emit(j);
  };
  cat_all->callback([&] { action = run_all; });
  auto* all = app.add_subcommand("verify-all", "verify every catalog entry");
  all->callback([&] { action = run_all; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  try {
    action();
  } catch (const InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const Rejected& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const ComputationError& e) {
    std::cerr << "computation error: " << e.what() << "\n";
    return 1;
  }
  return failed ? 1 : 0;
}
