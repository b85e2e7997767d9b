#include "nilbal/bounds.hpp"

#include <algorithm>

#include "nilbal/witt.hpp"

namespace nilbal {

BettiBounds e2_bounds(const QuotientBettiData& d) {
  if (d.z < 1) throw InputError("e2_bounds: z must be at least 1");
  if (d.beta1 < 0 || d.beta3 < 0) throw InputError("e2_bounds: Betti numbers must be nonnegative");
  if (d.beta2 < d.z) throw InputError("e2_bounds: beta2 of the quotient must be at least z");
  BettiBounds b;
  b.lower = d.beta2 - d.z + std::max<std::int64_t>(d.beta1 * d.z - d.beta3, 0);
  b.upper = d.beta2 - d.z + d.beta1 * d.z + d.z * (d.z - 1) / 2;
  return b;
}

std::int64_t relfree_lower_bound(std::uint64_t beta, std::uint64_t k) {
  return 1 - static_cast<std::int64_t>(beta) + static_cast<std::int64_t>(witt_rank(beta, k));
}

bool lubotzky_check(std::int64_t beta1, std::int64_t beta2, std::int64_t h) {
  return h <= 2 || 4 * beta2 > beta1 * beta1;
}

bool fht_check(std::int64_t beta, std::int64_t r, std::int64_t beta2) {
  if (r < 2) throw InputError("fht_check: r must be at least 2");
  Integer num, den, b;
  mpz_ui_pow_ui(num.get_mpz_t(), r - 1, r - 1);
  mpz_ui_pow_ui(den.get_mpz_t(), r, r);
  b = beta;
  Integer br;
  mpz_pow_ui(br.get_mpz_t(), b.get_mpz_t(), r);
  Rational bound(num * br, den);
  bound.canonicalize();
  return Rational(beta2) > bound;
}

std::vector<std::int64_t> pd_complete_betti(int h, std::int64_t beta1, std::optional<std::int64_t> beta2) {
  if (h < 1 || h > 6) throw InputError("pd_complete_betti: Hirsch length must be between 1 and 6");
  if (beta1 < 0 || (beta2 && *beta2 < 0)) throw InputError("pd_complete_betti: Betti numbers must be nonnegative");
  std::vector<std::int64_t> b(h + 1, 0);
  b[0] = b[h] = 1;
  b[1] = beta1;
  b[h - 1] = h == 1 ? 1 : beta1;
  std::optional<std::int64_t> forced;
  switch (h) {
    case 1:
      if (beta1 != 1) throw InputError("pd_complete_betti: h = 1 forces beta1 = 1");
      break;
    case 2:
      if (beta1 != 2) throw InputError("pd_complete_betti: h = 2 forces beta1 = 2");
      forced = 1;
      break;
    case 3: forced = beta1; break;
    case 4: forced = 2 * beta1 - 2; break;
    default: break;
  }
  if (forced && beta2 && *beta2 != *forced)
    throw InputError("pd_complete_betti: beta2 = " + std::to_string(*beta2) + " contradicts duality and chi = 0 (" +
                     std::to_string(*forced) + " forced)");
  if (h >= 2) {
    std::int64_t v = forced ? *forced : beta2 ? *beta2 : -1;
    if (v < 0) throw InputError("pd_complete_betti: beta2 is required for h = " + std::to_string(h));
    b[2] = v;
    b[h - 2] = v;
  }
  if (h == 6) b[3] = 2 * b[2] - 2 * b[1] + 2;
  for (auto x : b)
    if (x < 0) throw InputError("pd_complete_betti: parameters force a negative Betti number");
  return b;
}

namespace {

bool nilpotent(RationalMatrix n) {
  RationalMatrix p = n;
  for (std::size_t k = 0; k < n.rows(); ++k) p = p * n;
  return p.is_zero();
}

// Induced action on Lambda^2 in the lexicographic basis e_i ^ e_j, i < j.
RationalMatrix exterior_square(const RationalMatrix& a) {
  const std::size_t r = a.rows();
  std::vector<std::pair<std::size_t, std::size_t>> basis;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) basis.push_back({i, j});
  RationalMatrix out(basis.size(), basis.size());
  for (std::size_t c = 0; c < basis.size(); ++c) {
    auto [i, j] = basis[c];
    for (std::size_t row = 0; row < basis.size(); ++row) {
      auto [k, l] = basis[row];
      out(row, c) = a(k, i) * a(l, j) - a(l, i) * a(k, j);
    }
  }
  return out;
}

RationalMatrix hstack(const RationalMatrix& a, const RationalMatrix& b) {
  RationalMatrix out(a.rows(), a.cols() + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) out(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) out(r, a.cols() + c) = b(r, c);
  }
  return out;
}

}  // namespace

void validate(const MetabelianModule& m) {
  if (m.X.rows() != m.r || m.X.cols() != m.r || m.Y.rows() != m.r || m.Y.cols() != m.r)
    throw InputError("metabelian module: X and Y must be r x r");
  if (!(m.X * m.Y == m.Y * m.X)) throw InputError("metabelian module: X and Y do not commute");
  RationalMatrix I = RationalMatrix::identity(m.r);
  if (!nilpotent(m.X - I) || !nilpotent(m.Y - I)) throw InputError("metabelian module: X and Y must be unipotent");
}

MetabelianHomology metabelian_homology(const MetabelianModule& m) {
  validate(m);
  const std::size_t r = m.r;
  RationalMatrix I = RationalMatrix::identity(r);
  RationalMatrix d1 = hstack(m.X - I, m.Y - I);
  // d2 : A -> A^2 is the vertical stack ((1 - Y); (X - I))
  RationalMatrix stack(2 * r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      stack(i, j) = I(i, j) - m.Y(i, j);
      stack(r + i, j) = m.X(i, j) - I(i, j);
    }
  if (!(d1 * stack).is_zero()) throw ComputationError("metabelian complex: boundary maps do not compose to zero");
  const std::size_t r1 = rank(d1), r2 = rank(stack);
  MetabelianHomology h;
  h.b0 = r - r1;
  h.b1 = 2 * r - r1 - r2;
  h.b2 = r - r2;
  if (r >= 2) {
    RationalMatrix X2 = exterior_square(m.X), Y2 = exterior_square(m.Y);
    RationalMatrix I2 = RationalMatrix::identity(X2.rows());
    h.rho = X2.rows() - rank(hstack(X2 - I2, Y2 - I2));
  }
  h.lower_bound = h.b1 + (h.rho > h.b2 ? h.rho - h.b2 : 0);
  return h;
}

MetabelianModule metabelian_module(const WeightedQuotient& q) {
  const PcPresentation& pc = q.pc;
  std::vector<std::size_t> top, rest;
  for (std::size_t i = 0; i < pc.size(); ++i) {
    if (pc.is_finite(i)) throw InputError("metabelian module: torsion generators are not supported");
    (pc.weight(i) == 1 ? top : rest).push_back(i);
  }
  if (top.size() != 2) throw InputError("metabelian module: need exactly two weight-one generators");
  for (std::size_t a : rest)
    for (std::size_t b : rest)
      if (a > b && !pc.commutator_tail(a, b).empty()) throw InputError("metabelian module: G' is not abelian");
  Collector col(pc);
  MetabelianModule m;
  m.r = rest.size();
  auto action = [&](std::size_t g) {
    RationalMatrix a(m.r, m.r);
    NormalWord gen = col.generator(g), inv = col.inverse(gen);
    for (std::size_t c = 0; c < m.r; ++c) {
      NormalWord image = col.multiply(col.multiply(gen, col.generator(rest[c])), inv);
      for (std::size_t t : top)
        if (image[t] != 0) throw ComputationError("metabelian module: conjugate left G'");
      for (std::size_t row = 0; row < m.r; ++row) a(row, c) = Rational(image[rest[row]]);
    }
    return a;
  };
  m.X = action(top[0]);
  m.Y = action(top[1]);
  return m;
}

}  // namespace nilbal
