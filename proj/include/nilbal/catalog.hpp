#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nilbal/io.hpp"
#include "nilbal/lie.hpp"
#include "nilbal/nq.hpp"

namespace nilbal {

struct CatalogEntry {
  std::string name;
  std::string kind;  // group-presentation | lie-algebra | matrix
  std::string description;
  int class_bound = 0;  // groups only
  std::optional<FinitePresentation> presentation;
  std::optional<IntegerMatrix> matrix;
  std::optional<LieAlgebra> algebra;

  /// The group as a finite presentation (for matrix entries, that of Z^n x|_A Z).
  FinitePresentation group() const;
};

/// Fixed catalog order.
std::vector<std::string> catalog_names();

/// Also accepts FREE(r,c) with 1 <= r <= 3, 1 <= c <= 4 and TORSION4(p) for primes p.
/// Throws InputError for unknown names.
CatalogEntry load(const std::string& name);

Json to_json(const CatalogEntry& e);

/// Invariant tuple of a group given by a finite presentation and a class bound.
struct GroupInvariants {
  std::size_t hirsch = 0;
  int nilpotency_class = 0;
  std::vector<std::size_t> lcs;
  std::vector<AbelianInvariants> layers;
  AbelianInvariants h1, h2;
  bool stabilized = false;
  WeightedQuotient quotient;
};

GroupInvariants group_invariants(const FinitePresentation& pres, int c);

struct Claim {
  std::string what;
  Json expected, actual;
  bool pass = false;
};

struct VerifyReport {
  std::string name;
  std::vector<Claim> claims;
  bool passed() const;
};

/// Recomputes every expected invariant of the entry; failures are report content.
VerifyReport verify(const CatalogEntry& e);

Json to_json(const VerifyReport& r);

}  // namespace nilbal
