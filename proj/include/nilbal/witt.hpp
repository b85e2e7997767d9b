#pragma once

#include <cstdint>

namespace nilbal {

/// Moebius function; n >= 1.
int mobius(std::uint64_t n);

/// Rank of gamma_k F(r) / gamma_{k+1} F(r): (1/k) sum_{d | k} mu(d) r^{k/d}.
/// Computed exactly; throws ComputationError if the value exceeds 64 bits.
std::uint64_t witt_rank(std::uint64_t r, std::uint64_t k);

/// Hirsch length of F(r) / gamma_{c+1} F(r).
std::uint64_t free_nilpotent_hirsch(std::uint64_t r, std::uint64_t c);

/// Whether F(r) / gamma_{c+1} F(r) has beta_2 <= beta_1, i.e. witt_rank(r, c+1) <= r.
bool relatively_free_balanced(std::uint64_t r, std::uint64_t c);

}  // namespace nilbal
