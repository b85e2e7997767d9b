#include "nilbal/witt.hpp"

#include <cassert>

#include "nilbal/exactla.hpp"

namespace nilbal {

int mobius(std::uint64_t n) {
  if (n == 0) throw InputError("mobius: argument must be positive");
  int mu = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    mu = -mu;
  }
  if (n > 1) mu = -mu;
  return mu;
}

std::uint64_t witt_rank(std::uint64_t r, std::uint64_t k) {
  if (r == 0 || k == 0) throw InputError("witt_rank: r and k must be positive");
  Integer sum = 0;
  for (std::uint64_t d = 1; d <= k; ++d) {
    if (k % d) continue;
    int mu = mobius(d);
    if (mu == 0) continue;
    Integer term;
    mpz_ui_pow_ui(term.get_mpz_t(), r, k / d);
    sum += mu * term;
  }
  // the divisor sum is always divisible by k
  assert(sum % k == 0);
  if (sum % k != 0) throw ComputationError("witt_rank: divisor sum not divisible by k");
  Integer rank = sum / k;
  if (!rank.fits_ulong_p()) throw ComputationError("witt_rank: value exceeds 64 bits");
  return rank.get_ui();
}

std::uint64_t free_nilpotent_hirsch(std::uint64_t r, std::uint64_t c) {
  if (c == 0) throw InputError("free_nilpotent_hirsch: class must be positive");
  std::uint64_t h = 0;
  for (std::uint64_t k = 1; k <= c; ++k) h += witt_rank(r, k);
  return h;
}

bool relatively_free_balanced(std::uint64_t r, std::uint64_t c) {
  if (c == 0) throw InputError("relatively_free_balanced: class must be positive");
  return witt_rank(r, c + 1) <= r;
}

}  // namespace nilbal
