#pragma once

#include <optional>

#include "idcalc/derive.hpp"
#include "idcalc/geometry.hpp"
#include "idcalc/team.hpp"

namespace idcalc {

/// An emitted witness failed re-verification. This is a defect in the
/// construction, never a normal outcome.
class VerificationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// No countermodel found within the documented search bounds (only possible
/// on the exhaustive fallback path of counter_ind_team).
class CounterSearchError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct GeometryWitness {
  VectorSpaceGeometry space;
  GeometryAssignment assignment;
};

/// Either a derivation of the goal or a verified countermodel. Every witness
/// has been re-checked against the corresponding semantics before being
/// returned: sigma all true, goal false.
struct CounterResult {
  std::optional<Judgment> judgment;  // engaged iff the goal is derivable
  std::optional<Team> team;
  std::optional<GeometryWitness> geometry;

  bool is_derivable() const { return judgment.has_value(); }
};

/// Armstrong witness: two rows over {0,1}, split by the attribute closure of
/// the goal lhs.
CounterResult counter_dep_team(const Problem& problem);

/// Closure-system witness in GF(2)^1: closure-of-lhs variables map to 0,
/// the rest to e1.
CounterResult counter_dep_closure(const Problem& problem);

/// Parity-team witness: all 0/1 combinations on the non-designated
/// variables, designated goal variable constant 0 or the complemented parity
/// of the other goal variables. 2^(m-1) rows for m problem variables.
CounterResult counter_absind_team(const Problem& problem);

/// GF(3)^k witness: distinct basis vectors off the designated variable, the
/// designated one mapped to twice the sum of the other goal variables'
/// images (a span member distinct from every basis vector).
CounterResult counter_absind_pregeo(const Problem& problem);

/// Minimality reduction, then the shared-variable or disjoint-sides
/// assignment into GF(2)^k.
CounterResult counter_ind_pregeo(const Problem& problem);

/// Functional team over the pregeometry witness: one row per linear
/// functional on GF(2)^k; at most 2^n rows for n problem variables. Falls
/// back to exhaustive search (universe <= 4 variables) if verification of
/// the construction fails.
CounterResult counter_ind_team(const Problem& problem);

}  // namespace idcalc
