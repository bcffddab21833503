#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "idcalc/atoms.hpp"

namespace idcalc {

/// Coordinate vector over GF(p).
using Vec = std::vector<std::uint8_t>;

/// GF(p)^k with linear span as the closure operator. cl(A) is never
/// materialized; membership is decided by Gaussian elimination.
class VectorSpaceGeometry {
 public:
  VectorSpaceGeometry(int p, int k);  // throws AtomError if p not prime

  int p() const { return p_; }
  int k() const { return k_; }

  Vec zero() const { return Vec(static_cast<std::size_t>(k_), 0); }
  Vec basis(int i) const;
  Vec add(const Vec& a, const Vec& b) const;

  /// v in span(A).
  bool span_member(const Vec& v, std::span<const Vec> A) const;

  int rank(std::span<const Vec> A) const;
  int dim(std::span<const Vec> A) const { return rank(A); }

  /// Dimension of A in the localization cl_C: rank(A u C) - rank(C).
  int dim_over(std::span<const Vec> A, std::span<const Vec> C) const;

  /// A independent of C over B: dim(A / B u C) == dim(A / B).
  bool indep_rel(std::span<const Vec> A, std::span<const Vec> B, std::span<const Vec> C) const;

  /// Every element of y lies in span(x).
  bool cl_dep(std::span<const Vec> x, std::span<const Vec> y) const;

  /// Every a in A satisfies a not in span((A - {a}) u C).
  bool is_independent_set(std::span<const Vec> A, std::span<const Vec> C) const;

 private:
  int p_;
  int k_;
};

/// Total map from problem variables to carrier vectors.
struct GeometryAssignment {
  std::unordered_map<int, Vec> values;  // var id -> vector

  const Vec& at(int var_id) const;

  /// Image of a variable set: the SET of values (duplicates collapse).
  std::vector<Vec> image(Mask vars) const;
};

/// Atom satisfaction under the pregeometry semantics.
bool sat_ind_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom);
bool sat_absind_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom);
bool sat_dep_closure(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom);
bool sat_atom_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom);

struct AuditReport {
  long checks = 0;
  std::vector<std::string> violations;
  bool clean() const { return violations.empty(); }
};

/// Randomized audit of the closure-system axioms, the Exchange Principle and
/// Finite Character, the independence-relation properties (Existence,
/// Monotonicity, Transitivity, Finite Character, Symmetry, Exchange,
/// Anti-Reflexivity), basis cardinality, the rank identity behind
/// localization, and independence of disjoint subsets of an independent set.
/// Deterministic for a fixed seed.
AuditReport audit_axioms(const VectorSpaceGeometry& space, int samples, std::uint64_t seed);

/// Text format: header `field <p> dim <k>`, then `var = c1 c2 ... ck` lines.
std::string print_space_assignment(const VectorSpaceGeometry& space, const GeometryAssignment& s,
                                   const VarTable& vars);
std::pair<VectorSpaceGeometry, GeometryAssignment> parse_space_assignment(std::string_view text,
                                                                          VarTable& vars);

}  // namespace idcalc
