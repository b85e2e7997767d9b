#include <algorithm>
#include <set>

#include "nilbal/nq.hpp"

namespace nilbal {

namespace {

std::int64_t narrow(const Integer& x) {
  if (!x.fits_slong_p()) throw ComputationError("exponent does not fit in 64 bits");
  return x.get_si();
}

std::vector<std::string> fresh_names(const std::string& base, std::size_t count,
                                     const std::vector<std::string>& existing) {
  std::set<std::string> taken(existing.begin(), existing.end());
  std::string prefix = base;
  for (;;) {
    std::vector<std::string> out;
    bool clash = false;
    for (std::size_t i = 0; i < count && !clash; ++i) {
      out.push_back(prefix + std::to_string(i + 1));
      clash = taken.count(out.back()) > 0;
    }
    if (!clash) return out;
    prefix += "_";
  }
}

}  // namespace

AbelianInvariants schur_multiplier(const WeightedQuotient& q) {
  const PcPresentation& pc = q.pc;
  const std::size_t n = pc.size();

  // F/[F,R] for F free on the pc generators and R the pc relations: every relation
  // gets a central tail, and consistency gives the relations among the tails.
  struct Relation {
    std::size_t j, i;  // power relation when j == i
  };
  std::vector<Relation> relations;
  for (std::size_t i = 0; i < n; ++i)
    if (pc.is_finite(i)) relations.push_back({i, i});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < j; ++i) relations.push_back({j, i});
  const std::size_t s = relations.size();

  int top = 1;
  for (int w : pc.weights()) top = std::max(top, w);
  PcPresentation::Spec spec;
  spec.names = pc.names();
  spec.weights = pc.weights();
  for (std::size_t i = 0; i < n; ++i) spec.orders.push_back(pc.order(i));
  std::vector<std::string> tails = fresh_names("_t", s, pc.names());
  IntegerMatrix ab(s, n);
  for (std::size_t l = 0; l < s; ++l) {
    spec.names.push_back(tails[l]);
    spec.weights.push_back(2 * top);
    spec.orders.push_back(std::nullopt);
    const auto [j, i] = relations[l];
    NormalWord tail(n + s, 0);
    NormalWord head = pc.dense(j == i ? pc.power_tail(i) : pc.commutator_tail(j, i));
    std::copy(head.begin(), head.end(), tail.begin());
    tail[n + l] = 1;
    for (std::size_t m = 0; m < n; ++m) ab(l, m) = -head[m];
    if (j == i) {
      ab(l, i) += *pc.order(i);
      spec.powers.push_back({i, tail});
    } else {
      spec.commutators.push_back({{j, i}, tail});
    }
  }
  Collector col{PcPresentation(std::move(spec))};

  // sparse rows (tail index, coefficient)
  std::set<std::vector<std::pair<std::size_t, std::int64_t>>> rows;
  for (const auto& [lhs, rhs] : col.consistency_pairs()) {
    for (std::size_t m = 0; m < n; ++m)
      if (lhs[m] != rhs[m]) throw ComputationError("schur multiplier: presentation is not consistent");
    std::vector<std::pair<std::size_t, std::int64_t>> r;
    for (std::size_t l = 0; l < s; ++l)
      if (lhs[n + l] != rhs[n + l]) r.push_back({l, narrow(Integer(lhs[n + l]) - Integer(rhs[n + l]))});
    if (!r.empty()) rows.insert(std::move(r));
  }
  IntegerMatrix full(rows.size(), s);
  {
    std::size_t r = 0;
    for (const auto& row : rows) {
      for (const auto& [l, x] : row) full(r, l) = x;
      ++r;
    }
  }

  // R/[F,R] = H_2 + (R F' / F'), and the second summand is free of rank rank(ab)
  AbelianInvariants h2 = cokernel_invariants(full, s);
  const std::size_t ab_rank = rank_q(ab);
  if (h2.free_rank < ab_rank) throw ComputationError("schur multiplier: inconsistent relation module");
  h2.free_rank -= ab_rank;
  return h2;
}

MultiplierResult schur_multiplier(const FinitePresentation& pres, int c) {
  WeightedQuotient next = nilpotent_quotient(pres, c + 1);
  MultiplierResult out;
  out.stabilized = next.nilpotency_class() <= c;
  WeightedQuotient q = nilpotent_quotient(pres, c);
  out.h2 = schur_multiplier(q);
  return out;
}

BettiReport betti_from_homology(const AbelianInvariants& h1, const AbelianInvariants& h2,
                                const std::vector<std::uint64_t>& primes) {
  BettiReport r;
  r.h1 = h1;
  r.h2 = h2;
  r.beta1_q = h1.free_rank;
  r.beta2_q = h2.free_rank;
  for (auto p : primes) {
    if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
    r.primes.push_back({p, h1.free_rank + h1.p_rank(p), h2.free_rank + h2.p_rank(p) + h1.p_rank(p)});
  }
  r.balanced_over_all_fields = r.beta2_q <= r.beta1_q && h2.torsion_free();
  return r;
}

BettiReport betti_report(const FinitePresentation& pres, int c, const std::vector<std::uint64_t>& primes) {
  MultiplierResult m = schur_multiplier(pres, c);
  BettiReport r = betti_from_homology(abelianization(pres), m.h2, primes);
  r.stabilized = m.stabilized;
  return r;
}

BalanceVerdict homological_balance(const AbelianInvariants& h1, const AbelianInvariants& h2,
                                   const std::vector<std::uint64_t>& primes) {
  BalanceVerdict v;
  v.data = betti_from_homology(h1, h2, primes);
  v.balanced = v.data.balanced_over_all_fields;
  if (v.data.beta2_q > v.data.beta1_q)
    v.reason = "beta2 = " + std::to_string(v.data.beta2_q) + " exceeds beta1 = " + std::to_string(v.data.beta1_q);
  else if (!h2.torsion_free())
    v.reason = "H2 has torsion " + h2.to_string() + ", so beta2 > beta1 over some prime field";
  else
    v.reason = "beta2 <= beta1 over Q and H2 is torsion-free";
  return v;
}

BalanceVerdict is_homologically_balanced(const FinitePresentation& pres, int c,
                                         const std::vector<std::uint64_t>& primes) {
  MultiplierResult m = schur_multiplier(pres, c);
  BalanceVerdict v = homological_balance(abelianization(pres), m.h2, primes);
  v.data.stabilized = m.stabilized;
  return v;
}

}  // namespace nilbal
