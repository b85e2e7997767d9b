#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace nilbal {

using Integer = mpz_class;
using Rational = mpq_class;

/// Thrown for malformed user input (bad syntax, unknown names, violated preconditions).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Thrown when a computation is refused on mathematical grounds
/// (non-stabilization, exact cocycles, inconsistent presentations).
class ComputationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::initializer_list<std::initializer_list<long>> rows);

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::vector<T> row(std::size_t r) const {
    return {data_.begin() + r * cols_, data_.begin() + (r + 1) * cols_};
  }
  std::vector<T> column(std::size_t c) const {
    std::vector<T> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product: shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) out(i, j) += a(i, k) * b(k, j);
      }
    return out;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
    return out;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    Matrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] += b.data_[i];
    return out;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<long>> rows) {
  rows_ = rows.size();
  cols_ = rows_ ? rows.begin()->size() : 0;
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
    for (long x : r) data_.emplace_back(x);
  }
}

using IntegerMatrix = Matrix<Integer>;
using RationalMatrix = Matrix<Rational>;

RationalMatrix to_rational(const IntegerMatrix& m);

/// Elementary divisors d1 | d2 | ... | dr, all positive. Divisors equal to 1 are kept.
struct SmithNormalForm {
  std::vector<Integer> divisors;
  std::size_t rank() const { return divisors.size(); }
};

/// Full decomposition U * M * V = D with U, V unimodular; inverses kept for callers
/// that need lattice coordinates.
struct SmithDecomposition {
  SmithNormalForm form;
  IntegerMatrix U, U_inv, V, V_inv, D;
};

SmithNormalForm smith_normal_form(const IntegerMatrix& m);
SmithDecomposition smith_decompose(const IntegerMatrix& m);

bool is_prime(std::uint64_t n);

/// Coefficient field for rank/kernel computations: Q, or F_p represented by
/// canonical residues in [0, p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field prime(std::uint64_t p);

  bool is_rational() const { return p_ == 0; }
  std::uint64_t characteristic() const { return p_; }

  /// Canonical image of x. For F_p, x must be p-integral.
  Rational reduce(const Rational& x) const;
  Rational inverse(const Rational& x) const;
  std::string name() const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  explicit Field(std::uint64_t p) : p_(p) {}
  std::uint64_t p_;
};

/// Reduced row echelon form over a field.
struct RowEchelon {
  RationalMatrix reduced;         // rank rows, pivot entries 1, zeros above/below pivots
  std::vector<std::size_t> pivots;  // pivot column of each row
  std::size_t rank() const { return pivots.size(); }
};

RowEchelon row_echelon(const RationalMatrix& m, const Field& field = Field::rationals());

std::size_t rank(const RationalMatrix& m, const Field& field = Field::rationals());
std::size_t rank_q(const IntegerMatrix& m);
std::size_t rank_q(const RationalMatrix& m);
/// Rank of m reduced modulo p. Throws InputError if p is not prime.
std::size_t rank_p(const IntegerMatrix& m, std::uint64_t p);

/// Columns span the right kernel of m over the field.
RationalMatrix kernel(const RationalMatrix& m, const Field& field = Field::rationals());
RationalMatrix kernel_q(const IntegerMatrix& m);
RationalMatrix kernel_q(const RationalMatrix& m);

/// Integer row-echelon (Hermite) basis of the row lattice: positive pivots,
/// entries above each pivot reduced into [0, pivot). Zero rows dropped.
struct HermiteForm {
  IntegerMatrix rows;
  std::vector<std::size_t> pivots;
};
HermiteForm hermite_rows(const IntegerMatrix& m);

/// Columns form a Z-basis of the integer kernel {v in Z^n : M v = 0}.
IntegerMatrix integer_kernel(const IntegerMatrix& m);

/// Inverse of a unimodular integer matrix; throws ComputationError otherwise.
IntegerMatrix unimodular_inverse(const IntegerMatrix& m);

/// Reduces v modulo the row space of an echelon form (same field), giving the
/// canonical representative with zero entries in all pivot columns.
std::vector<Rational> reduce_modulo(const RowEchelon& basis, std::vector<Rational> v,
                                    const Field& field = Field::rationals());

}  // namespace nilbal
