#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "nilbal/exactla.hpp"
#include "nilbal/pc.hpp"
#include "nilbal/word.hpp"

namespace nilbal {

/// Z^free_rank + Z/d_1 + ... + Z/d_t with d_1 | ... | d_t, every d_i >= 2.
struct AbelianInvariants {
  std::size_t free_rank = 0;
  std::vector<Integer> factors;

  bool torsion_free() const { return factors.empty(); }
  /// dim_{F_p} (A / pA) - free_rank, i.e. the number of factors divisible by p.
  std::size_t p_rank(std::uint64_t p) const;
  std::string to_string() const;
  friend bool operator==(const AbelianInvariants&, const AbelianInvariants&) = default;
};

/// Cokernel Z^cols / (row space of m).
AbelianInvariants cokernel_invariants(const IntegerMatrix& m, std::size_t cols);

/// Rows are the exponent-sum vectors of the relators.
IntegerMatrix relator_exponent_matrix(const FinitePresentation& pres);

AbelianInvariants abelianization(const FinitePresentation& pres);

/// Minimal number of generators of a group with this abelianization when that bound
/// is attained: free rank plus the number of invariant factors.
std::size_t min_generators(const AbelianInvariants& inv);

/// pc presentation of G / gamma_{c+1} G with lower-central weights.
struct WeightedQuotient {
  PcPresentation pc;
  int class_bound = 0;
  /// Normal words of the images of the input generators.
  std::vector<NormalWord> epimorphism;
  /// layers[k-1] = gamma_k / gamma_{k+1}, for k up to the computed class.
  std::vector<AbelianInvariants> layers;
  /// True when the construction stopped because a layer came out trivial, so
  /// gamma_k = gamma_{k+1} for some k <= class_bound + 1.
  bool complete = false;

  int nilpotency_class() const { return static_cast<int>(layers.size()); }
};

/// Nilpotent quotient of class <= c. Throws InputError if c < 1.
WeightedQuotient nilpotent_quotient(const FinitePresentation& pres, int c);

/// Torsion-free rank of gamma_k / gamma_{k+1} for k = 1 .. class.
std::vector<std::size_t> lcs_ranks(const WeightedQuotient& q);

/// Number of infinite relative orders.
std::size_t hirsch(const WeightedQuotient& q);

/// Image of an element of the quotient: evaluates a word in the input generators.
NormalWord evaluate(const WeightedQuotient& q, const Word& w);

/// Quotient by the (normal, since central) subgroup generated by `element`.
/// Throws ComputationError if the element is not central.
WeightedQuotient central_quotient(const WeightedQuotient& q, const NormalWord& element);

// ---------------------------------------------------------------------------
// Homology

struct MultiplierResult {
  AbelianInvariants h2;
  /// False when G / gamma_{c+2} is strictly larger than G / gamma_{c+1}; the result is
  /// then H_2 of the class-c quotient, not of G.
  bool stabilized = false;
};

/// H_2 of the pc group given by a quotient, via Hopf's formula on its pc relators.
AbelianInvariants schur_multiplier(const WeightedQuotient& q);

/// H_2(G/gamma_{c+1} G; Z), with a stabilization flag for G itself.
MultiplierResult schur_multiplier(const FinitePresentation& pres, int c);

struct PrimeBetti {
  std::uint64_t p;
  std::size_t beta1, beta2;
};

struct BettiReport {
  AbelianInvariants h1, h2;
  std::size_t beta1_q = 0, beta2_q = 0;
  std::vector<PrimeBetti> primes;
  bool balanced_over_all_fields = false;
  bool stabilized = false;
};

/// Universal-coefficient Betti numbers from integral H_1 and H_2.
BettiReport betti_from_homology(const AbelianInvariants& h1, const AbelianInvariants& h2,
                                const std::vector<std::uint64_t>& primes);

BettiReport betti_report(const FinitePresentation& pres, int c, const std::vector<std::uint64_t>& primes);

struct BalanceVerdict {
  bool balanced = false;
  std::string reason;
  BettiReport data;
};

/// beta_2 <= beta_1 over every field, i.e. beta_2 <= beta_1 over Q and H_2 torsion-free.
BalanceVerdict homological_balance(const AbelianInvariants& h1, const AbelianInvariants& h2,
                                   const std::vector<std::uint64_t>& primes = {2, 3, 5, 7});
BalanceVerdict is_homologically_balanced(const FinitePresentation& pres, int c,
                                         const std::vector<std::uint64_t>& primes = {2, 3, 5, 7});

}  // namespace nilbal
