#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilbal/exactla.hpp"
#include "nilbal/word.hpp"

namespace nilbal {

/// Exponent vector (e_1, ..., e_n) of a collected element a_1^e_1 ... a_n^e_n.
using NormalWord = std::vector<std::int64_t>;

/// Relative order of a pc generator; nullopt means infinite.
using RelativeOrder = std::optional<std::int64_t>;

/// Weighted nilpotent polycyclic presentation on a_1, ..., a_n:
///   a_i^{m_i}  = power_tail(i)            for finite relative order m_i
///   [a_j, a_i] = commutator_tail(j, i)    for j > i, with [x,y] = x y x^-1 y^-1
/// Tails are normal words supported strictly above the defining index; weights are
/// nondecreasing, commutator tails only involve generators of weight >= w_i + w_j and
/// power tails only generators of weight >= w_i (a torsion layer may be triangular).
class PcPresentation {
 public:
  struct Spec {
    std::vector<std::string> names;
    std::vector<int> weights;
    std::vector<RelativeOrder> orders;
    std::vector<std::pair<std::size_t, NormalWord>> powers;  // (i, tail)
    std::vector<std::pair<std::pair<std::size_t, std::size_t>, NormalWord>> commutators;  // ((j, i), tail)
  };

  PcPresentation() = default;
  /// Validates all invariants; throws InputError on violation.
  explicit PcPresentation(Spec spec);

  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  int weight(std::size_t i) const { return weights_[i]; }
  const std::vector<int>& weights() const { return weights_; }
  const RelativeOrder& order(std::size_t i) const { return orders_[i]; }
  bool is_finite(std::size_t i) const { return orders_[i].has_value(); }

  /// Sparse tails (ascending generator indices, nonzero exponents).
  const Word& power_tail(std::size_t i) const { return powers_[i]; }
  const Word& commutator_tail(std::size_t j, std::size_t i) const { return comms_[j][i]; }

  NormalWord dense(const Word& sparse) const;
  Word sparse(const NormalWord& dense) const;

  /// Relators a_i^{m_i} p_i^-1 and [a_j,a_i] c_ji^-1 as a finite presentation on the
  /// same generator names.
  FinitePresentation to_finite_presentation() const;

 private:
  std::vector<std::string> names_;
  std::vector<int> weights_;
  std::vector<RelativeOrder> orders_;
  std::vector<Word> powers_;
  std::vector<std::vector<Word>> comms_;
};

/// Multiplication of normal words in a pc presentation by collection from the
/// left. Conjugation tables a_j^{a_i} and a_j^{a_i^-1} are derived once from the
/// commutator tails; all methods are const and thread-safe afterwards.
class Collector {
 public:
  explicit Collector(const PcPresentation& pc);

  std::size_t size() const { return n_; }
  const PcPresentation& presentation() const { return pc_; }

  NormalWord identity() const { return NormalWord(n_, 0); }
  NormalWord generator(std::size_t i, std::int64_t k = 1) const;

  NormalWord collect(const Word& w) const;
  NormalWord multiply(const NormalWord& a, const NormalWord& b) const;
  NormalWord inverse(const NormalWord& a) const;
  NormalWord power(const NormalWord& a, std::int64_t k) const;
  /// g^-1 a g
  NormalWord conjugate(const NormalWord& a, const NormalWord& g) const;
  /// [a,b] = a b a^-1 b^-1
  NormalWord commutator(const NormalWord& a, const NormalWord& b) const;

  /// Both sides of every standard consistency test word (overlaps a_k a_j a_i,
  /// power overlaps, inverse checks); the presentation is consistent iff all pairs agree.
  std::vector<std::pair<NormalWord, NormalWord>> consistency_pairs() const;

 private:
  void mul_gen_power(NormalWord& x, std::size_t i, std::int64_t k) const;
  NormalWord conj_gen(const NormalWord& w, std::size_t i, int sign) const;
  NormalWord conj_power(NormalWord w, std::size_t i, std::int64_t k) const;
  NormalWord power_word(const Word& sparse, std::int64_t k) const;

  PcPresentation pc_;
  std::size_t n_ = 0;
  std::vector<bool> central_;
  std::vector<std::vector<Word>> conj_;      // conj_[j][i] = a_i^-1 a_j a_i, j > i
  std::vector<std::vector<Word>> conj_inv_;  // conj_inv_[j][i] = a_i a_j a_i^-1
};

/// True iff every consistency test word collects to the same normal form both ways.
bool is_consistent(const PcPresentation& pc);

/// Collects a word given over the pc generators.
NormalWord collect(const PcPresentation& pc, const Word& w);

/// pc presentation of Z^n x|_A Z (t v t^-1 = A v) with the stable letter first.
/// A must be unipotent; the lattice basis is adapted to the kernel flag of A - I so
/// that all tails point to later generators. Throws InputError otherwise.
PcPresentation semidirect_z(const IntegerMatrix& A);

}  // namespace nilbal
