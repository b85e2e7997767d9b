#pragma once

#include "json.hpp"
#include "nilbal/bounds.hpp"
#include "nilbal/lie.hpp"
#include "nilbal/nq.hpp"
#include "nilbal/pc.hpp"
#include "nilbal/word.hpp"

namespace nilbal {

using Json = nlohmann::json;

/// Rationals are "p/q" (or "p") strings; plain JSON integers are accepted on input.
Rational rational_from_json(const Json& j);
Json to_json(const Rational& x);
/// Integers that fit in 64 bits become JSON numbers, larger ones decimal strings.
Json to_json(const Integer& x);

/// {"generators": [...], "relators": [...]}
FinitePresentation finite_presentation_from_json(const Json& j);
Json to_json(const FinitePresentation& p);

/// {"generators": [...] (optional, default a1..an), "weights": [...], "orders": [null | m],
///  "power_tails": {"i": word}, "commutator_tails": {"j,i": word}}, indices 1-based, j > i,
///  tails written in collected order.
PcPresentation pc_presentation_from_json(const Json& j);
Json to_json(const PcPresentation& pc);

/// {"basis": [...], "brackets": [{"left", "right", "value": {name: rational}}]}
LieAlgebra lie_algebra_from_json(const Json& j);
Json to_json(const LieAlgebra& L);

/// {"r": n, "X": [[...]], "Y": [[...]]}
MetabelianModule metabelian_module_from_json(const Json& j);
Json to_json(const MetabelianModule& m);

/// {"rank": n, "torsion": [d_1, ...]}
Json to_json(const AbelianInvariants& a);

}  // namespace nilbal
