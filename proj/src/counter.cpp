#include "idcalc/counter.hpp"

#include <algorithm>
#include <string>

namespace idcalc {

namespace {

void verify_team(const Team& team, const Problem& problem) {
  for (const auto& a : problem.sigma)
    if (!sat_atom(team, a))
      throw VerificationError("countermodel defect: team falsifies a premise");
  if (sat_atom(team, problem.goal))
    throw VerificationError("countermodel defect: team satisfies the goal");
}

void verify_geometry(const GeometryWitness& w, const Problem& problem) {
  for (const auto& a : problem.sigma)
    if (!sat_atom_pregeo(w.space, w.assignment, a))
      throw VerificationError("countermodel defect: geometry falsifies a premise");
  if (sat_atom_pregeo(w.space, w.assignment, problem.goal))
    throw VerificationError("countermodel defect: geometry satisfies the goal");
}

CounterResult derivable_result(Judgment j) {
  CounterResult r;
  r.judgment = std::move(j);
  return r;
}

int designated_var(Mask goal_side) { return mask_ids(goal_side).front(); }

Team two_row_team(Mask universe, Mask zero_on_both) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> r1, r2;
  mask_for_each(universe, [&](int id) {
    r1.push_back("0");
    r2.push_back((zero_on_both & bit(id)) ? "0" : "1");
  });
  rows.push_back(std::move(r1));
  rows.push_back(std::move(r2));
  return Team::make(universe, std::move(rows));
}

}  // namespace

CounterResult counter_dep_team(const Problem& problem) {
  Judgment j = derives_dep(problem);
  if (j.derivable) return derivable_result(std::move(j));
  Mask closed = attribute_closure(problem.goal.lhs, problem.sigma);
  CounterResult r;
  r.team = two_row_team(problem.universe, closed);
  verify_team(*r.team, problem);
  return r;
}

CounterResult counter_dep_closure(const Problem& problem) {
  Judgment j = derives_dep(problem);
  if (j.derivable) return derivable_result(std::move(j));
  Mask closed = attribute_closure(problem.goal.lhs, problem.sigma);
  GeometryWitness w{VectorSpaceGeometry(2, 1), {}};
  mask_for_each(problem.universe, [&](int id) {
    w.assignment.values[id] = (closed & bit(id)) ? w.space.zero() : w.space.basis(0);
  });
  CounterResult r;
  r.geometry = std::move(w);
  verify_geometry(*r.geometry, problem);
  return r;
}

CounterResult counter_absind_team(const Problem& problem) {
  Judgment j = derives_absind(problem);
  if (j.derivable) return derivable_result(std::move(j));
  // Goal is nonempty (abs(()) is an axiom). Designate one goal variable;
  // the team runs all 0/1 combinations of the remaining variables, with the
  // designated column constant 0 (singleton goal) or the complemented parity
  // of the other goal variables. The complement keeps the designated column
  // distinct from a lone other goal variable (plain parity of one variable
  // would just copy it, and the copy satisfies the goal).
  int x0 = designated_var(problem.goal.lhs);
  Mask rest = problem.universe & ~bit(x0);
  Mask other_goal = problem.goal.lhs & ~bit(x0);
  int m = mask_size(rest);
  if (m > 16) throw CapError("parity team would exceed 2^16 rows");
  auto ids = mask_ids(problem.universe);
  auto rest_ids = mask_ids(rest);
  std::vector<std::vector<std::string>> rows;
  for (std::uint32_t combo = 0; combo < (std::uint32_t{1} << m); ++combo) {
    int value_of[kMaxVars] = {};
    for (int i = 0; i < m; ++i) value_of[rest_ids[i]] = (combo >> i) & 1;
    int parity = 0;
    mask_for_each(other_goal, [&](int id) { parity ^= value_of[id]; });
    value_of[x0] = (other_goal == 0) ? 0 : (parity ^ 1);
    std::vector<std::string> row;
    for (int id : ids) row.push_back(std::to_string(value_of[id]));
    rows.push_back(std::move(row));
  }
  CounterResult r;
  r.team = Team::make(problem.universe, std::move(rows));
  verify_team(*r.team, problem);
  return r;
}

CounterResult counter_absind_pregeo(const Problem& problem) {
  Judgment j = derives_absind(problem);
  if (j.derivable) return derivable_result(std::move(j));
  int x0 = designated_var(problem.goal.lhs);
  auto rest_ids = mask_ids(problem.universe & ~bit(x0));
  int k = std::max<int>(1, static_cast<int>(rest_ids.size()));
  // GF(3), not GF(2): the witness below must differ from every basis vector,
  // or image sets collapse and the goal stays independent.
  VectorSpaceGeometry space(3, k);
  GeometryAssignment s;
  for (std::size_t i = 0; i < rest_ids.size(); ++i)
    s.values[rest_ids[i]] = space.basis(static_cast<int>(i));
  // d = twice the sum of the images of the other goal variables: inside their
  // span, outside the span of any proper subset, and distinct from each basis
  // vector. For a singleton goal d = 0, an element of cl(empty).
  Vec d = space.zero();
  mask_for_each(problem.goal.lhs & ~bit(x0), [&](int id) { d = space.add(d, s.values[id]); });
  d = space.add(d, d);
  s.values[x0] = std::move(d);
  CounterResult r;
  r.geometry = GeometryWitness{std::move(space), std::move(s)};
  verify_geometry(*r.geometry, problem);
  return r;
}

namespace {

// Delete side elements while the reduced atom stays outside the closure,
// stopping when every proper reduction is derivable (or both sides are
// singletons).
Atom minimize_ind_goal(const Closure& closure, Atom goal) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int side = 0; side < 2 && !changed; ++side) {
      Mask m = side == 0 ? goal.lhs : goal.rhs;
      std::vector<int> ids = mask_ids(m);
      for (int id : ids) {
        Atom reduced = goal;
        (side == 0 ? reduced.lhs : reduced.rhs) &= ~bit(id);
        if (!closure.contains(reduced)) {
          goal = reduced;
          changed = true;
          break;
        }
      }
    }
  }
  return goal;
}

GeometryWitness ind_pregeo_witness(const Problem& problem, const Closure& closure) {
  Atom minimal = minimize_ind_goal(closure, problem.goal);
  // Minimality forces both sides nonempty.
  Mask shared = minimal.lhs & minimal.rhs;
  if (shared != 0) {
    // Shared variable z with sigma not deriving z _|_ z: z -> e1, rest -> 0.
    int z = mask_ids(shared).front();
    VectorSpaceGeometry space(2, 1);
    GeometryAssignment s;
    mask_for_each(problem.universe, [&](int id) {
      s.values[id] = (id == z) ? space.basis(0) : space.zero();
    });
    return {std::move(space), std::move(s)};
  }
  // Disjoint sides: basis vectors for the non-designated goal variables,
  // their sum (the P2 witness) for the designated one, 0 elsewhere.
  int x0 = designated_var(minimal.lhs);
  std::vector<int> w_ids = mask_ids(minimal.lhs & ~bit(x0));
  for (int id : mask_ids(minimal.rhs)) w_ids.push_back(id);
  int k = static_cast<int>(w_ids.size());
  VectorSpaceGeometry space(2, k);
  GeometryAssignment s;
  mask_for_each(problem.universe, [&](int id) { s.values[id] = space.zero(); });
  Vec d = space.zero();
  for (int i = 0; i < k; ++i) {
    s.values[w_ids[i]] = space.basis(i);
    d = space.add(d, s.values[w_ids[i]]);
  }
  s.values[x0] = std::move(d);
  return {std::move(space), std::move(s)};
}

}  // namespace

CounterResult counter_ind_pregeo(const Problem& problem) {
  Closure closure = indep_closure(problem.sigma, problem.universe);
  if (closure.contains(problem.goal)) {
    Judgment j;
    j.derivable = true;
    j.proof = extract_proof(closure, problem.goal);
    return derivable_result(std::move(j));
  }
  CounterResult r;
  r.geometry = ind_pregeo_witness(problem, closure);
  verify_geometry(*r.geometry, problem);
  return r;
}

namespace {

// Rows of the functional team: every linear functional on GF(2)^k applied
// to the variable vectors.
Team functional_team(const Problem& problem, const GeometryWitness& w) {
  int k = w.space.k();
  auto ids = mask_ids(problem.universe);
  std::vector<std::vector<std::string>> rows;
  for (std::uint32_t c = 0; c < (std::uint32_t{1} << k); ++c) {
    std::vector<std::string> row;
    for (int id : ids) {
      const Vec& v = w.assignment.at(id);
      int dot = 0;
      for (int i = 0; i < k; ++i) dot ^= ((c >> i) & 1) & v[i];
      row.push_back(std::to_string(dot));
    }
    rows.push_back(std::move(row));
  }
  return Team::make(problem.universe, std::move(rows));
}

bool team_refutes(const Team& team, const Problem& problem) {
  for (const auto& a : problem.sigma)
    if (!sat_atom(team, a)) return false;
  return !sat_atom(team, problem.goal);
}

// Exhaustive fallback: all teams whose rows are 0/1 tuples over the
// universe. Bounded at 4 variables (2^16 candidate teams).
std::optional<Team> exhaustive_team_search(const Problem& problem) {
  int m = mask_size(problem.universe);
  if (m > 4) return std::nullopt;
  int n_rows = 1 << m;
  for (std::uint32_t subset = 1; subset < (std::uint32_t{1} << n_rows); ++subset) {
    std::vector<std::vector<std::string>> rows;
    for (int rv = 0; rv < n_rows; ++rv) {
      if (!((subset >> rv) & 1)) continue;
      std::vector<std::string> row;
      for (int i = 0; i < m; ++i) row.push_back(std::to_string((rv >> i) & 1));
      rows.push_back(std::move(row));
    }
    Team t = Team::make(problem.universe, std::move(rows));
    if (team_refutes(t, problem)) return t;
  }
  return std::nullopt;
}

}  // namespace

CounterResult counter_ind_team(const Problem& problem) {
  Closure closure = indep_closure(problem.sigma, problem.universe);
  if (closure.contains(problem.goal)) {
    Judgment j;
    j.derivable = true;
    j.proof = extract_proof(closure, problem.goal);
    return derivable_result(std::move(j));
  }
  GeometryWitness w = ind_pregeo_witness(problem, closure);
  Team team = functional_team(problem, w);
  if (!team_refutes(team, problem)) {
    auto found = exhaustive_team_search(problem);
    if (!found)
      throw CounterSearchError("no team countermodel found within search bounds");
    team = std::move(*found);
  }
  CounterResult r;
  r.team = std::move(team);
  verify_team(*r.team, problem);
  return r;
}

}  // namespace idcalc
