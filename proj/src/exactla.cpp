#include "nilbal/exactla.hpp"

#include <algorithm>
#include <utility>

namespace nilbal {

RationalMatrix to_rational(const IntegerMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) out(r, c) = m(r, c);
  return out;
}

namespace {

// Working state of the Smith reduction. Every elementary operation on A is
// mirrored on the transforms so that U * M * V = A holds throughout.
struct SmithWork {
  IntegerMatrix A, U, U_inv, V, V_inv;

  explicit SmithWork(const IntegerMatrix& m)
      : A(m),
        U(IntegerMatrix::identity(m.rows())),
        U_inv(IntegerMatrix::identity(m.rows())),
        V(IntegerMatrix::identity(m.cols())),
        V_inv(IntegerMatrix::identity(m.cols())) {}

  void swap_rows(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < A.cols(); ++c) std::swap(A(i, c), A(j, c));
    for (std::size_t c = 0; c < U.cols(); ++c) std::swap(U(i, c), U(j, c));
    for (std::size_t r = 0; r < U_inv.rows(); ++r) std::swap(U_inv(r, i), U_inv(r, j));
  }
  // row_i += k * row_j
  void add_row(std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) += k * A(j, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) += k * U(j, c);
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, j) -= k * U_inv(r, i);
  }
  void negate_row(std::size_t i) {
    for (std::size_t c = 0; c < A.cols(); ++c) A(i, c) = -A(i, c);
    for (std::size_t c = 0; c < U.cols(); ++c) U(i, c) = -U(i, c);
    for (std::size_t r = 0; r < U_inv.rows(); ++r) U_inv(r, i) = -U_inv(r, i);
  }
  void swap_cols(std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t r = 0; r < A.rows(); ++r) std::swap(A(r, i), A(r, j));
    for (std::size_t r = 0; r < V.rows(); ++r) std::swap(V(r, i), V(r, j));
    for (std::size_t c = 0; c < V_inv.cols(); ++c) std::swap(V_inv(i, c), V_inv(j, c));
  }
  // col_j += k * col_i
  void add_col(std::size_t j, std::size_t i, const Integer& k) {
    if (k == 0) return;
    for (std::size_t r = 0; r < A.rows(); ++r) A(r, j) += k * A(r, i);
    for (std::size_t r = 0; r < V.rows(); ++r) V(r, j) += k * V(r, i);
    for (std::size_t c = 0; c < V_inv.cols(); ++c) V_inv(i, c) -= k * V_inv(j, c);
  }
};

Integer trunc_quotient(const Integer& a, const Integer& b) {
  Integer q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

void smith_reduce(SmithWork& w) {
  const std::size_t m = w.A.rows(), n = w.A.cols();
  for (std::size_t t = 0; t < std::min(m, n); ++t) {
    // smallest nonzero entry of the trailing block becomes the pivot
    bool found = false;
    std::size_t bi = t, bj = t;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (w.A(i, j) == 0) continue;
        if (!found || abs(w.A(i, j)) < abs(w.A(bi, bj))) {
          found = true;
          bi = i;
          bj = j;
        }
      }
    if (!found) break;
    w.swap_rows(t, bi);
    w.swap_cols(t, bj);

    for (;;) {
      bool changed = false;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (w.A(i, t) == 0) continue;
        w.add_row(i, t, -trunc_quotient(w.A(i, t), w.A(t, t)));
        if (w.A(i, t) != 0) {
          w.swap_rows(i, t);
          changed = true;
        }
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (w.A(t, j) == 0) continue;
        w.add_col(j, t, -trunc_quotient(w.A(t, j), w.A(t, t)));
        if (w.A(t, j) != 0) {
          w.swap_cols(j, t);
          changed = true;
        }
      }
      if (changed) continue;
      bool fixed = false;
      for (std::size_t i = t + 1; i < m && !fixed; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (w.A(i, j) % w.A(t, t) != 0) {
            w.add_row(t, i, 1);
            fixed = true;
            break;
          }
      if (!fixed) break;
    }
    if (w.A(t, t) < 0) w.negate_row(t);
  }
}

}  // namespace

SmithDecomposition smith_decompose(const IntegerMatrix& m) {
  SmithWork w(m);
  smith_reduce(w);
  SmithDecomposition out;
  for (std::size_t t = 0; t < std::min(m.rows(), m.cols()); ++t) {
    if (w.A(t, t) == 0) break;
    out.form.divisors.push_back(w.A(t, t));
  }
  out.U = std::move(w.U);
  out.U_inv = std::move(w.U_inv);
  out.V = std::move(w.V);
  out.V_inv = std::move(w.V_inv);
  out.D = std::move(w.A);
  return out;
}

SmithNormalForm smith_normal_form(const IntegerMatrix& m) { return smith_decompose(m).form; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw InputError("not a prime: " + std::to_string(p));
  return Field(p);
}

Rational Field::reduce(const Rational& x) const {
  if (p_ == 0) return x;
  Integer p = static_cast<unsigned long>(p_);
  Integer den = x.get_den();
  if (den % p == 0) throw InputError("value " + x.get_str() + " is not " + std::to_string(p_) + "-integral");
  Integer inv;
  mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
  Integer r = x.get_num() * inv;
  mpz_fdiv_r(r.get_mpz_t(), r.get_mpz_t(), p.get_mpz_t());
  return Rational(r);
}

Rational Field::inverse(const Rational& x) const {
  if (x == 0) throw std::domain_error("inverse of zero");
  if (p_ == 0) return 1 / x;
  return reduce(Rational(x.get_den(), x.get_num()));
}

std::string Field::name() const { return p_ == 0 ? "Q" : "F" + std::to_string(p_); }

RowEchelon row_echelon(const RationalMatrix& m, const Field& field) {
  RationalMatrix a(m.rows(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a(r, c) = field.reduce(m(r, c));

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    std::size_t p = row;
    while (p < a.rows() && a(p, c) == 0) ++p;
    if (p == a.rows()) continue;
    for (std::size_t k = 0; k < a.cols(); ++k) std::swap(a(row, k), a(p, k));
    Rational inv = field.inverse(a(row, c));
    for (std::size_t k = c; k < a.cols(); ++k) a(row, k) = field.reduce(a(row, k) * inv);
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == row || a(r, c) == 0) continue;
      Rational f = a(r, c);
      for (std::size_t k = c; k < a.cols(); ++k) a(r, k) = field.reduce(a(r, k) - f * a(row, k));
    }
    pivots.push_back(c);
    ++row;
  }
  RowEchelon out;
  out.reduced = RationalMatrix(pivots.size(), a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.reduced(r, c) = a(r, c);
  out.pivots = std::move(pivots);
  return out;
}

std::size_t rank(const RationalMatrix& m, const Field& field) { return row_echelon(m, field).rank(); }
std::size_t rank_q(const IntegerMatrix& m) { return rank(to_rational(m)); }
std::size_t rank_q(const RationalMatrix& m) { return rank(m); }
std::size_t rank_p(const IntegerMatrix& m, std::uint64_t p) { return rank(to_rational(m), Field::prime(p)); }

RationalMatrix kernel(const RationalMatrix& m, const Field& field) {
  RowEchelon e = row_echelon(m, field);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : e.pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (!is_pivot[c]) free_cols.push_back(c);

  RationalMatrix k(m.cols(), free_cols.size());
  for (std::size_t j = 0; j < free_cols.size(); ++j) {
    k(free_cols[j], j) = 1;
    for (std::size_t r = 0; r < e.rank(); ++r) k(e.pivots[r], j) = field.reduce(-e.reduced(r, free_cols[j]));
  }
  return k;
}

RationalMatrix kernel_q(const IntegerMatrix& m) { return kernel(to_rational(m)); }
RationalMatrix kernel_q(const RationalMatrix& m) { return kernel(m); }

HermiteForm hermite_rows(const IntegerMatrix& m) {
  IntegerMatrix a = m;
  auto swap_rows = [&](std::size_t i, std::size_t j) {
    if (i == j) return;
    for (std::size_t c = 0; c < a.cols(); ++c) std::swap(a(i, c), a(j, c));
  };
  auto add_row = [&](std::size_t i, std::size_t j, const Integer& k) {
    if (k == 0) return;
    for (std::size_t c = 0; c < a.cols(); ++c) a(i, c) += k * a(j, c);
  };

  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t c = 0; c < a.cols() && row < a.rows(); ++c) {
    // Euclid down the column until a single nonzero entry remains
    for (;;) {
      std::size_t best = a.rows();
      for (std::size_t r = row; r < a.rows(); ++r)
        if (a(r, c) != 0 && (best == a.rows() || abs(a(r, c)) < abs(a(best, c)))) best = r;
      if (best == a.rows()) break;
      swap_rows(row, best);
      bool others = false;
      for (std::size_t r = row + 1; r < a.rows(); ++r) {
        if (a(r, c) == 0) continue;
        add_row(r, row, -trunc_quotient(a(r, c), a(row, c)));
        if (a(r, c) != 0) others = true;
      }
      if (!others) break;
    }
    if (a(row, c) == 0) continue;
    if (a(row, c) < 0)
      for (std::size_t k = 0; k < a.cols(); ++k) a(row, k) = -a(row, k);
    for (std::size_t r = 0; r < row; ++r) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(r, c).get_mpz_t(), a(row, c).get_mpz_t());
      add_row(r, row, -q);
    }
    pivots.push_back(c);
    ++row;
  }
  HermiteForm out;
  out.rows = IntegerMatrix(pivots.size(), a.cols());
  for (std::size_t r = 0; r < pivots.size(); ++r)
    for (std::size_t c = 0; c < a.cols(); ++c) out.rows(r, c) = a(r, c);
  out.pivots = std::move(pivots);
  return out;
}

IntegerMatrix integer_kernel(const IntegerMatrix& m) {
  SmithDecomposition s = smith_decompose(m);
  const std::size_t r = s.form.rank();
  IntegerMatrix k(m.cols(), m.cols() - r);
  for (std::size_t c = r; c < m.cols(); ++c)
    for (std::size_t i = 0; i < m.cols(); ++i) k(i, c - r) = s.V(i, c);
  return k;
}

IntegerMatrix unimodular_inverse(const IntegerMatrix& m) {
  if (m.rows() != m.cols()) throw ComputationError("unimodular_inverse: matrix is not square");
  SmithDecomposition s = smith_decompose(m);
  if (s.form.rank() != m.rows())
    throw ComputationError("unimodular_inverse: matrix is singular");
  for (const auto& d : s.form.divisors)
    if (d != 1) throw ComputationError("unimodular_inverse: matrix is not unimodular");
  // U M V = I  =>  M^-1 = V U
  return s.V * s.U;
}

std::vector<Rational> reduce_modulo(const RowEchelon& basis, std::vector<Rational> v, const Field& field) {
  for (auto& x : v) x = field.reduce(x);
  for (std::size_t r = 0; r < basis.rank(); ++r) {
    Rational f = v[basis.pivots[r]];
    if (f == 0) continue;
    for (std::size_t c = 0; c < v.size(); ++c) v[c] = field.reduce(v[c] - f * basis.reduced(r, c));
  }
  return v;
}

}  // namespace nilbal
