#include "nilbal/word.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "nilbal/exactla.hpp"

namespace nilbal {

Word::Word(std::vector<Letter> letters) {
  for (const auto& l : letters) append(l.gen, l.exp);
}

Word Word::generator(std::size_t gen, std::int64_t exp) {
  Word w;
  w.append(gen, exp);
  return w;
}

std::size_t Word::max_generator() const {
  std::size_t m = 0;
  for (const auto& l : letters_) m = std::max(m, l.gen + 1);
  return m;
}

void Word::append(std::size_t gen, std::int64_t exp) {
  if (exp == 0) return;
  if (!letters_.empty() && letters_.back().gen == gen) {
    letters_.back().exp += exp;
    if (letters_.back().exp == 0) letters_.pop_back();
    return;
  }
  letters_.push_back({gen, exp});
}

void Word::append(const Word& w) {
  for (const auto& l : w.letters_) append(l.gen, l.exp);
}

Word Word::inverse() const {
  Word out;
  for (auto it = letters_.rbegin(); it != letters_.rend(); ++it) out.append(it->gen, -it->exp);
  return out;
}

Word Word::pow(std::int64_t k) const {
  Word base = k < 0 ? inverse() : *this;
  Word out;
  for (std::int64_t i = 0; i < (k < 0 ? -k : k); ++i) out.append(base);
  return out;
}

Word commutator(const Word& u, const Word& v) { return u * v * u.inverse() * v.inverse(); }

namespace {

class WordParser {
 public:
  WordParser(std::string_view text, const std::vector<std::string>& names) : text_(text), names_(names) {}

  Word parse_all() {
    Word w = parse_word();
    skip_ws();
    if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
    return w;
  }

  Word parse_word() {
    Word w;
    for (;;) {
      skip_ws();
      if (pos_ >= text_.size()) break;
      char ch = text_[pos_];
      if (ch == ',' || ch == ']' || ch == ')' || ch == '=') break;
      w.append(parse_factor());
    }
    return w;
  }

  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  void expect(char ch) {
    skip_ws();
    if (pos_ >= text_.size() || text_[pos_] != ch) fail(std::string("expected '") + ch + "'");
    ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw InputError("word \"" + std::string(text_) + "\" at offset " + std::to_string(pos_) + ": " + what);
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  Word parse_factor() {
    Word atom = parse_atom();
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == '^') {
      ++pos_;
      return atom.pow(parse_integer());
    }
    return atom;
  }

  std::int64_t parse_integer() {
    skip_ws();
    bool paren = false;
    if (pos_ < text_.size() && text_[pos_] == '(') {
      paren = true;
      ++pos_;
      skip_ws();
    }
    bool neg = false;
    if (pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    if (start == pos_) fail("expected exponent");
    if (pos_ - start > 12) fail("exponent too large");
    std::int64_t v = std::stoll(std::string(text_.substr(start, pos_ - start)));
    if (paren) expect(')');
    return neg ? -v : v;
  }

  Word parse_atom() {
    skip_ws();
    char ch = text_[pos_];
    if (ch == '[') {
      ++pos_;
      Word u = parse_word();
      expect(',');
      Word v = parse_word();
      // left-normed shorthand [a,b,c] = [[a,b],c]
      Word c = commutator(u, v);
      while (peek() == ',') {
        ++pos_;
        c = commutator(c, parse_word());
      }
      expect(']');
      return c;
    }
    if (ch == '(') {
      ++pos_;
      Word u = parse_word();
      expect(')');
      return u;
    }
    if (ch == '1' && (pos_ + 1 >= text_.size() || !std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))) {
      ++pos_;
      return {};
    }
    if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
      std::size_t end = pos_;
      while (end < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      // juxtaposed names such as "xy" are split by longest declared prefix, one name per atom
      std::string_view token = text_.substr(pos_, end - pos_);
      std::size_t best_len = 0, best = 0;
      for (std::size_t g = 0; g < names_.size(); ++g) {
        const auto& n = names_[g];
        if (n.size() > best_len && token.substr(0, n.size()) == n) {
          best_len = n.size();
          best = g;
        }
      }
      if (best_len == 0) fail("unknown generator in \"" + std::string(token) + "\"");
      pos_ += best_len;
      return Word::generator(best);
    }
    fail("unexpected '" + std::string(1, ch) + "'");
  }

  std::string_view text_;
  const std::vector<std::string>& names_;
  std::size_t pos_ = 0;
};

}  // namespace

Word parse_word(std::string_view text, const std::vector<std::string>& names) {
  return WordParser(text, names).parse_all();
}

Word parse_relator(std::string_view text, const std::vector<std::string>& names) {
  WordParser p(text, names);
  Word lhs = p.parse_word();
  if (p.at_end()) return lhs;
  p.expect('=');
  Word rhs = p.parse_word();
  if (!p.at_end()) p.fail("trailing input after relation");
  return lhs * rhs.inverse();
}

std::string format_word(const Word& w, const std::vector<std::string>& names) {
  if (w.empty()) return "1";
  std::string out;
  for (const auto& l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += l.gen < names.size() ? names[l.gen] : "g" + std::to_string(l.gen + 1);
    if (l.exp != 1) out += "^" + std::to_string(l.exp);
  }
  return out;
}

FinitePresentation::FinitePresentation(std::vector<std::string> generators, std::vector<Word> relators)
    : generators_(std::move(generators)), relators_(std::move(relators)) {
  std::set<std::string> seen;
  for (const auto& g : generators_) {
    if (g.empty()) throw InputError("empty generator name");
    if (!seen.insert(g).second) throw InputError("duplicate generator name: " + g);
  }
  for (const auto& r : relators_)
    if (r.max_generator() > generators_.size()) throw InputError("relator references undeclared generator");
}

FinitePresentation FinitePresentation::parse(std::vector<std::string> generators,
                                             const std::vector<std::string>& relators) {
  std::vector<Word> words;
  words.reserve(relators.size());
  for (const auto& r : relators) words.push_back(parse_relator(r, generators));
  return FinitePresentation(std::move(generators), std::move(words));
}

}  // namespace nilbal
