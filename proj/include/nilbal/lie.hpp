#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "nilbal/exactla.hpp"
#include "nilbal/nq.hpp"

namespace nilbal {

/// Finite-dimensional Lie algebra over Q given by structure constants on a named basis.
/// Brackets are stored antisymmetrically; validity is checked by check_lie, not here.
class LieAlgebra {
 public:
  LieAlgebra() = default;
  /// Abelian algebra on the given basis. Throws InputError on empty or repeated names.
  explicit LieAlgebra(std::vector<std::string> basis);

  std::size_t dim() const { return names_.size(); }
  const std::vector<std::string>& basis() const { return names_; }
  std::size_t index(const std::string& name) const;

  /// Sets [b_i, b_j] = value and [b_j, b_i] = -value. Throws InputError if i == j with
  /// nonzero value or if value has the wrong length.
  void set_bracket(std::size_t i, std::size_t j, const std::vector<Rational>& value);
  void set_bracket(const std::string& a, const std::string& b, const std::vector<std::pair<std::string, Rational>>& value);
  const std::vector<Rational>& bracket(std::size_t i, std::size_t j) const { return table_[i][j]; }
  std::vector<Rational> bracket(const std::vector<Rational>& a, const std::vector<Rational>& b) const;

  friend bool operator==(const LieAlgebra&, const LieAlgebra&) = default;

 private:
  std::vector<std::string> names_;
  std::vector<std::vector<std::vector<Rational>>> table_;
};

struct LieCheck {
  bool ok = false;
  /// First basis triple i < j < k (lexicographic) violating Jacobi.
  std::optional<std::array<std::size_t, 3>> jacobi_violation;
  bool nilpotent = false;
  std::string message;
};

LieCheck check_lie(const LieAlgebra& L);

/// Dimensions of the lower central series terms L = L^1 > L^2 > ..., ending at the first
/// repeated dimension (0 for nilpotent algebras).
std::vector<std::size_t> lie_lcs_dims(const LieAlgebra& L);

/// Increasing index tuples of length k, lexicographic.
std::vector<std::vector<std::size_t>> wedge_basis(std::size_t n, std::size_t k);

/// d : Lambda^k L* -> Lambda^{k+1} L* in the lexicographic wedge bases, with
/// (d w)(x_0..x_k) = sum_{i<j} (-1)^{i+j} w([x_i,x_j], x_0, ^i, ^j, ..., x_k).
/// Zero matrix of the right shape when k >= n. Throws InputError if k > n.
RationalMatrix ce_differential(const LieAlgebra& L, std::size_t k);

/// (beta_0, ..., beta_n). Over F_p the structure constants must be p-integral.
std::vector<std::size_t> betti_lie(const LieAlgebra& L, const Field& field = Field::rationals());

struct CohomologyClass {
  std::size_t degree = 0;
  /// Coordinates over the degree-k wedge basis; canonical modulo coboundaries when
  /// produced by this module.
  std::vector<Rational> rep;
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
};

/// Canonical representative of the class of a closed form. Throws InputError if not closed.
CohomologyClass cohomology_class(const LieAlgebra& L, std::size_t k, std::vector<Rational> form,
                                 const Field& field = Field::rationals());

std::vector<CohomologyClass> cohomology_basis(const LieAlgebra& L, std::size_t k,
                                              const Field& field = Field::rationals());

/// Wedge product of forms of degrees p and q.
std::vector<Rational> wedge(std::size_t n, std::size_t p, const std::vector<Rational>& a, std::size_t q,
                            const std::vector<Rational>& b);

CohomologyClass cup(const LieAlgebra& L, const CohomologyClass& u, const CohomologyClass& v,
                    const Field& field = Field::rationals());

/// Alternating 2-form on a quotient algebra, in the degree-2 wedge basis.
struct ExtensionCocycle {
  std::vector<Rational> values;
  std::string generator = "f";
};

/// Coordinates of a 2-form given by named pairs, e.g. {{"y","d"},1}.
ExtensionCocycle make_cocycle(const LieAlgebra& Q, const std::vector<std::pair<std::array<std::string, 2>, Rational>>& entries,
                              std::string generator = "f");

/// Q + Q f with [a,b] = [a,b]_Q + e(a,b) f. Throws InputError if e is not closed.
LieAlgebra central_extension(const LieAlgebra& Q, const ExtensionCocycle& e);

struct ExtensionData {
  LieAlgebra quotient;
  ExtensionCocycle cocycle;
};

/// Inverse of central_extension for a central basis vector. Throws InputError if not central.
ExtensionData extension_cocycle(const LieAlgebra& L, std::size_t z);

/// beta_2(Q) - 1 + dim ker(cup e : H^1(Q) -> H^3(Q)). Throws InputError if e is not
/// closed or is exact over the field.
std::size_t gysin_beta2(const LieAlgebra& Q, const ExtensionCocycle& e, const Field& field = Field::rationals());

/// Associated graded Lie algebra of the lower central series: [a_i, a_j] is the weight
/// w_i + w_j part of the group commutator. Throws InputError on torsion.
LieAlgebra graded_from_quotient(const WeightedQuotient& q);

}  // namespace nilbal
