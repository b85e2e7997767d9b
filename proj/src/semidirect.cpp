#include <limits>

#include "nilbal/pc.hpp"

namespace nilbal {

namespace {

std::int64_t to_int64(const Integer& x) {
  if (!x.fits_slong_p()) throw ComputationError("semidirect_z: matrix entry does not fit in 64 bits");
  return x.get_si();
}

// Columns of `basis` (n x d, a Z-basis of a saturated lattice K) extended by
// complement vectors inside `outer` (n x D, a Z-basis of K' >= K). Returns the
// complement only.
IntegerMatrix complement_in(const IntegerMatrix& basis, const IntegerMatrix& outer) {
  const std::size_t d = basis.cols(), D = outer.cols();
  // Coordinates C with outer * C = basis: outer = U^-1 [I;0] V^-1.
  SmithDecomposition so = smith_decompose(outer);
  IntegerMatrix ub = so.U * basis;
  IntegerMatrix top(D, d);
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = 0; c < d; ++c) top(r, c) = ub(r, c);
  IntegerMatrix coords = so.V * top;

  SmithDecomposition sc = smith_decompose(coords);
  IntegerMatrix comp_coords(D, D - d);
  for (std::size_t r = 0; r < D; ++r)
    for (std::size_t c = d; c < D; ++c) comp_coords(r, c - d) = sc.U_inv(r, c);
  return outer * comp_coords;
}

}  // namespace

PcPresentation semidirect_z(const IntegerMatrix& A) {
  const std::size_t n = A.rows();
  if (A.cols() != n) throw InputError("semidirect_z: matrix must be square");
  IntegerMatrix N = A - IntegerMatrix::identity(n);

  // nilpotency index of A - I
  std::size_t index = 0;
  IntegerMatrix power = IntegerMatrix::identity(n);
  std::vector<IntegerMatrix> kernels;  // kernels[k-1] = Z-basis of ker N^k
  while (!power.is_zero()) {
    if (index == n) throw InputError("semidirect_z: matrix is not unipotent");
    power = power * N;
    ++index;
    kernels.push_back(integer_kernel(power));
  }

  // Basis adapted to 0 < ker N < ker N^2 < ... < Z^n, listed from the top level down.
  std::vector<std::vector<Integer>> levels_top_down;
  std::vector<int> level_of;
  {
    std::vector<IntegerMatrix> pieces;
    IntegerMatrix prev(n, 0);
    for (std::size_t k = 0; k < kernels.size(); ++k) {
      IntegerMatrix piece = prev.cols() == 0 ? kernels[k] : complement_in(prev, kernels[k]);
      pieces.push_back(piece);
      prev = kernels[k];
    }
    for (std::size_t k = pieces.size(); k-- > 0;)
      for (std::size_t c = 0; c < pieces[k].cols(); ++c) {
        levels_top_down.push_back(pieces[k].column(c));
        level_of.push_back(static_cast<int>(k + 1));
      }
  }

  IntegerMatrix P(n, n);
  for (std::size_t c = 0; c < n; ++c)
    for (std::size_t r = 0; r < n; ++r) P(r, c) = levels_top_down[c][r];
  IntegerMatrix adapted = unimodular_inverse(P) * A * P;

  PcPresentation::Spec spec;
  spec.names.push_back("t");
  spec.weights.push_back(1);
  spec.orders.push_back(std::nullopt);
  const int top = static_cast<int>(index == 0 ? 1 : index);
  for (std::size_t j = 0; j < n; ++j) {
    spec.names.push_back("v" + std::to_string(j + 1));
    spec.weights.push_back(index == 0 ? 1 : top + 1 - level_of[j]);
    spec.orders.push_back(std::nullopt);
  }
  // [v_j, t] = v_j t v_j^-1 t^-1 = v_j - A v_j (written additively)
  for (std::size_t j = 0; j < n; ++j) {
    NormalWord tail(n + 1, 0);
    bool nonzero = false;
    for (std::size_t r = 0; r < n; ++r) {
      Integer delta = (r == j ? Integer(1) : Integer(0)) - adapted(r, j);
      if (delta == 0) continue;
      if (r <= j) throw ComputationError("semidirect_z: adapted basis is not triangular");
      tail[r + 1] = to_int64(delta);
      nonzero = true;
    }
    if (nonzero) spec.commutators.push_back({{j + 1, 0}, tail});
  }
  return PcPresentation(std::move(spec));
}

}  // namespace nilbal
