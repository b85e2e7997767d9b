#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace nilbal {

/// One syllable g^e of a word.
struct Letter {
  std::size_t gen;
  std::int64_t exp;
  friend bool operator==(const Letter&, const Letter&) = default;
};

/// Freely reduced word over indexed generators: adjacent letters never share a
/// generator and exponents are nonzero.
class Word {
 public:
  Word() = default;
  explicit Word(std::vector<Letter> letters);
  static Word generator(std::size_t gen, std::int64_t exp = 1);

  const std::vector<Letter>& letters() const { return letters_; }
  bool empty() const { return letters_.empty(); }
  std::size_t max_generator() const;  // largest generator index + 1, 0 if empty

  /// Appends g^e, cancelling against the last syllable.
  void append(std::size_t gen, std::int64_t exp);
  void append(const Word& w);

  Word inverse() const;
  Word pow(std::int64_t k) const;

  friend Word operator*(Word a, const Word& b) {
    a.append(b);
    return a;
  }
  friend bool operator==(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
};

/// [u,v] = u v u^-1 v^-1.
Word commutator(const Word& u, const Word& v);

/// Parses a word over the given generator names. Grammar (whitespace ignored):
///   word   := factor*  |  "1"
///   factor := atom ("^" integer)?
///   atom   := name | "[" word "," word "]" | "(" word ")"
/// Juxtaposed names like "xy" are split greedily against the declared names.
/// Throws InputError on unknown generators or malformed syntax.
Word parse_word(std::string_view text, const std::vector<std::string>& names);

/// Like parse_word, but also accepts a relation "lhs = rhs", returned as lhs rhs^-1.
Word parse_relator(std::string_view text, const std::vector<std::string>& names);

/// Renders a word using generator names, e.g. "x y^-1 u^2"; the empty word is "1".
std::string format_word(const Word& w, const std::vector<std::string>& names);

/// Finite group presentation.
class FinitePresentation {
 public:
  FinitePresentation() = default;
  FinitePresentation(std::vector<std::string> generators, std::vector<Word> relators);
  /// Parses relator strings (relations "u=v" allowed).
  static FinitePresentation parse(std::vector<std::string> generators,
                                  const std::vector<std::string>& relators);

  const std::vector<std::string>& generators() const { return generators_; }
  const std::vector<Word>& relators() const { return relators_; }
  std::size_t generator_count() const { return generators_.size(); }

 private:
  std::vector<std::string> generators_;
  std::vector<Word> relators_;
};

}  // namespace nilbal
