#include "nilbal/io.hpp"

#include <set>

namespace nilbal {

namespace {

[[noreturn]] void bad(const std::string& what) { throw InputError("json: " + what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

std::vector<std::string> names_from_json(const Json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + " must be an array of names");
  std::vector<std::string> out;
  for (const auto& x : j) {
    if (!x.is_string()) bad(std::string(what) + " must be an array of names");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::size_t index_from(const std::string& s, std::size_t n) {
  std::size_t pos = 0;
  unsigned long v = 0;
  try {
    v = std::stoul(s, &pos);
  } catch (const std::exception&) {
    bad("bad index \"" + s + "\"");
  }
  if (pos != s.size() || v < 1 || v > n) bad("index out of range \"" + s + "\"");
  return v - 1;
}

NormalWord normal_word(const std::string& text, const std::vector<std::string>& names) {
  Word w = parse_word(text, names);
  NormalWord out(names.size(), 0);
  std::size_t last = 0;
  bool first = true;
  for (const auto& l : w.letters()) {
    if (!first && l.gen <= last) bad("tail \"" + text + "\" is not in collected order");
    out[l.gen] = l.exp;
    last = l.gen;
    first = false;
  }
  return out;
}

RationalMatrix matrix_from_json(const Json& j, std::size_t r, const char* what) {
  if (!j.is_array() || j.size() != r) bad(std::string(what) + " must have r rows");
  RationalMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (!j[i].is_array() || j[i].size() != r) bad(std::string(what) + " must be r x r");
    for (std::size_t k = 0; k < r; ++k) m(i, k) = rational_from_json(j[i][k]);
  }
  return m;
}

Json matrix_to_json(const RationalMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(to_json(m(i, k)));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(Integer(std::to_string(j.get<std::int64_t>())));
  if (!j.is_string()) bad("rationals must be \"p/q\" strings");
  std::string s = j.get<std::string>();
  Rational x;
  if (s.empty() || x.set_str(s, 10) != 0)
    bad("bad rational \"" + s + "\"");
  if (s.find('/') != std::string::npos && Integer(s.substr(s.find('/') + 1)) == 0) bad("zero denominator");
  x.canonicalize();
  return x;
}

Json to_json(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str();
}

Json to_json(const Integer& x) {
  if (x.fits_slong_p()) return static_cast<std::int64_t>(x.get_si());
  return x.get_str();
}

FinitePresentation finite_presentation_from_json(const Json& j) {
  std::vector<std::string> gens = names_from_json(field(j, "generators"), "generators");
  const Json& rels = field(j, "relators");
  if (!rels.is_array()) bad("relators must be an array of strings");
  std::vector<std::string> text;
  for (const auto& r : rels) {
    if (!r.is_string()) bad("relators must be an array of strings");
    text.push_back(r.get<std::string>());
  }
  return FinitePresentation::parse(gens, text);
}

Json to_json(const FinitePresentation& p) {
  Json rels = Json::array();
  for (const auto& r : p.relators()) rels.push_back(format_word(r, p.generators()));
  return {{"generators", p.generators()}, {"relators", rels}};
}

PcPresentation pc_presentation_from_json(const Json& j) {
  const Json& w = field(j, "weights");
  if (!w.is_array()) bad("weights must be an array");
  const std::size_t n = w.size();
  PcPresentation::Spec s;
  if (j.contains("generators")) {
    s.names = names_from_json(j.at("generators"), "generators");
    if (s.names.size() != n) bad("generators and weights differ in length");
  } else {
    for (std::size_t i = 0; i < n; ++i) s.names.push_back("a" + std::to_string(i + 1));
  }
  for (const auto& x : w) {
    if (!x.is_number_integer()) bad("weights must be integers");
    s.weights.push_back(x.get<int>());
  }
  if (j.contains("orders")) {
    const Json& o = j.at("orders");
    if (!o.is_array() || o.size() != n) bad("orders must have one entry per generator");
    for (const auto& x : o) {
      if (x.is_null()) s.orders.push_back(std::nullopt);
      else if (x.is_number_integer()) s.orders.push_back(x.get<std::int64_t>());
      else bad("orders must be integers or null");
    }
  } else {
    s.orders.assign(n, std::nullopt);
  }
  if (j.contains("power_tails")) {
    const Json& p = j.at("power_tails");
    if (!p.is_object()) bad("power_tails must be an object");
    for (const auto& [key, value] : p.items()) {
      if (!value.is_string()) bad("tails must be word strings");
      s.powers.push_back({index_from(key, n), normal_word(value.get<std::string>(), s.names)});
    }
  }
  if (j.contains("commutator_tails")) {
    const Json& c = j.at("commutator_tails");
    if (!c.is_object()) bad("commutator_tails must be an object");
    for (const auto& [key, value] : c.items()) {
      auto comma = key.find(',');
      if (comma == std::string::npos) bad("commutator keys are \"j,i\"");
      std::size_t a = index_from(key.substr(0, comma), n), b = index_from(key.substr(comma + 1), n);
      if (!value.is_string()) bad("tails must be word strings");
      s.commutators.push_back({{a, b}, normal_word(value.get<std::string>(), s.names)});
    }
  }
  return PcPresentation(std::move(s));
}

Json to_json(const PcPresentation& pc) {
  Json orders = Json::array(), powers = Json::object(), comms = Json::object();
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (pc.is_finite(i)) {
      orders.push_back(*pc.order(i));
      if (!pc.power_tail(i).empty()) powers[std::to_string(i + 1)] = format_word(pc.power_tail(i), pc.names());
    } else {
      orders.push_back(nullptr);
    }
    for (std::size_t k = 0; k < i; ++k)
      if (!pc.commutator_tail(i, k).empty())
        comms[std::to_string(i + 1) + "," + std::to_string(k + 1)] = format_word(pc.commutator_tail(i, k), pc.names());
  }
  return {{"generators", pc.names()},
          {"weights", pc.weights()},
          {"orders", orders},
          {"power_tails", powers},
          {"commutator_tails", comms}};
}

LieAlgebra lie_algebra_from_json(const Json& j) {
  LieAlgebra L(names_from_json(field(j, "basis"), "basis"));
  const Json& b = j.contains("brackets") ? j.at("brackets") : Json::array();
  if (!b.is_array()) bad("brackets must be an array");
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& e : b) {
    const Json& l = field(e, "left");
    const Json& r = field(e, "right");
    const Json& v = field(e, "value");
    if (!l.is_string() || !r.is_string() || !v.is_object()) bad("bracket entries need left, right and value");
    std::size_t a = L.index(l.get<std::string>()), c = L.index(r.get<std::string>());
    if (!seen.insert({std::min(a, c), std::max(a, c)}).second) bad("bracket given twice");
    std::vector<std::pair<std::string, Rational>> value;
    for (const auto& [name, coef] : v.items()) value.push_back({name, rational_from_json(coef)});
    L.set_bracket(l.get<std::string>(), r.get<std::string>(), value);
  }
  return L;
}

Json to_json(const LieAlgebra& L) {
  Json brackets = Json::array();
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t k = i + 1; k < L.dim(); ++k) {
      Json value = Json::object();
      const auto& v = L.bracket(i, k);
      for (std::size_t m = 0; m < L.dim(); ++m)
        if (v[m] != 0) value[L.basis()[m]] = to_json(v[m]);
      if (!value.empty()) brackets.push_back({{"left", L.basis()[i]}, {"right", L.basis()[k]}, {"value", value}});
    }
  return {{"basis", L.basis()}, {"brackets", brackets}};
}

MetabelianModule metabelian_module_from_json(const Json& j) {
  const Json& r = field(j, "r");
  if (!r.is_number_integer() || r.get<std::int64_t>() < 1) bad("r must be a positive integer");
  MetabelianModule m;
  m.r = r.get<std::size_t>();
  m.X = matrix_from_json(field(j, "X"), m.r, "X");
  m.Y = matrix_from_json(field(j, "Y"), m.r, "Y");
  validate(m);
  return m;
}

Json to_json(const MetabelianModule& m) { return {{"r", m.r}, {"X", matrix_to_json(m.X)}, {"Y", matrix_to_json(m.Y)}}; }

Json to_json(const AbelianInvariants& a) {
  Json t = Json::array();
  for (const auto& d : a.factors) t.push_back(to_json(d));
  return {{"rank", a.free_rank}, {"torsion", t}};
}

}  // namespace nilbal
