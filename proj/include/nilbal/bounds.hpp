#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "nilbal/exactla.hpp"
#include "nilbal/nq.hpp"

namespace nilbal {

/// Betti numbers of G/Z over a fixed coefficient ring, and z = h(Z), for a central
/// subgroup Z of G contained in G'.
struct QuotientBettiData {
  std::int64_t beta1 = 0, beta2 = 0, beta3 = 0;
  std::int64_t z = 0;
};

struct BettiBounds {
  std::int64_t lower = 0, upper = 0;
};

/// Bounds on beta_2(G) from the E^2 page of the central extension. Throws InputError
/// unless 1 <= z <= beta2.
BettiBounds e2_bounds(const QuotientBettiData& d);

/// 1 - beta + witt_rank(beta, k).
std::int64_t relfree_lower_bound(std::uint64_t beta, std::uint64_t k);

/// h <= 2 or beta2 > beta1^2 / 4.
bool lubotzky_check(std::int64_t beta1, std::int64_t beta2, std::int64_t h);

/// beta2 > ((r-1)^{r-1} / r^r) beta^r, compared exactly. Throws InputError if r < 2.
bool fht_check(std::int64_t beta, std::int64_t r, std::int64_t beta2);

/// (beta_0, ..., beta_h) of an orientable PD_h group with chi = 0, for 1 <= h <= 6.
/// beta2 may be omitted when duality and chi = 0 determine it; a supplied value that
/// contradicts them, or a negative completion, throws InputError.
std::vector<std::int64_t> pd_complete_betti(int h, std::int64_t beta1, std::optional<std::int64_t> beta2);

/// Q^r with commuting unipotent actions X, Y of the two generators of G/G' = Z^2.
struct MetabelianModule {
  std::size_t r = 0;
  RationalMatrix X, Y;
};

struct MetabelianHomology {
  std::size_t b0 = 0, b1 = 0, b2 = 0;
  std::size_t rho = 0;  // dim of the coinvariants of Lambda^2 A
  std::size_t lower_bound = 0;
};

/// Throws InputError on non-square, non-commuting or non-unipotent data.
void validate(const MetabelianModule& m);

MetabelianHomology metabelian_homology(const MetabelianModule& m);

/// A = Q (x) G' for a quotient with exactly two weight-one generators (both of infinite
/// order) and abelian, torsion-free G'; X and Y act by conjugation g a g^-1.
MetabelianModule metabelian_module(const WeightedQuotient& q);

}  // namespace nilbal
