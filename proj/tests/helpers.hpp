#pragma once

// Shared fixtures and independent oracles for the test suites. Oracles here
// are deliberately naive (literal quantifier loops, rule-level fixed points)
// and never call the implementation paths they check.

#include <random>
#include <set>
#include <string>
#include <vector>

#include "idcalc/atoms.hpp"
#include "idcalc/parse.hpp"
#include "idcalc/team.hpp"

namespace idcalc::testing {

struct Ctx {
  VarTable vars;

  Atom atom(const std::string& text) { return parse_atom(text, vars); }
  std::vector<Atom> atoms(std::initializer_list<const char*> texts) {
    std::vector<Atom> out;
    for (const char* t : texts) out.push_back(atom(t));
    return out;
  }
  Problem problem(const std::string& text) { return parse_problem(text, vars); }
};

// Figure 1 of the team-semantics section.
inline const char* kFigure1Csv =
    "x1,x2,x3,x4,x5\n"
    "0,0,1,2,3\n"
    "0,1,1,4,3\n"
    "1,1,1,4,4\n"
    "0,1,0,3,2\n";

// Figure 2: abs({x1,x2}) holds, abs({x1,x3}) does not.
inline const char* kFigure2Csv =
    "x1,x2,x3\n"
    "0,0,1\n"
    "0,1,1\n"
    "1,0,1\n"
    "1,1,0\n";

/// Random team over variables x0..x(n-1), values drawn from {0,1,2}.
inline Team random_team(VarTable& vars, std::mt19937_64& rng, int n_vars, int max_rows) {
  Mask domain = 0;
  for (int i = 0; i < n_vars; ++i) domain |= bit(vars.intern("x" + std::to_string(i)));
  int n_rows = 1 + static_cast<int>(rng() % static_cast<unsigned>(max_rows));
  std::vector<std::vector<std::string>> rows;
  for (int r = 0; r < n_rows; ++r) {
    std::vector<std::string> row;
    for (int c = 0; c < n_vars; ++c) row.push_back(std::to_string(rng() % 3));
    rows.push_back(std::move(row));
  }
  return Team::make(domain, std::move(rows));
}

// ---- literal quantifier-loop evaluators -----------------------------------

inline bool agree(const Team& t, std::size_t a, std::size_t b, Mask m) {
  bool eq = true;
  mask_for_each(m, [&](int id) {
    if (t.rows[a][t.col_of(id)] != t.rows[b][t.col_of(id)]) eq = false;
  });
  return eq;
}

inline bool naive_sat_ind(const Team& t, const Atom& atom) {
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < t.rows.size(); ++j) {
      bool found = false;
      for (std::size_t k = 0; k < t.rows.size() && !found; ++k)
        if (agree(t, k, i, atom.lhs) && agree(t, k, j, atom.rhs)) found = true;
      if (!found) return false;
    }
  return true;
}

inline bool naive_sat_condind(const Team& t, const Atom& atom) {
  for (std::size_t i = 0; i < t.rows.size(); ++i)
    for (std::size_t j = 0; j < t.rows.size(); ++j) {
      if (!agree(t, i, j, atom.cond)) continue;
      bool found = false;
      for (std::size_t k = 0; k < t.rows.size() && !found; ++k)
        if (agree(t, k, i, atom.cond) && agree(t, k, i, atom.lhs) && agree(t, k, j, atom.rhs))
          found = true;
      if (!found) return false;
    }
  return true;
}

inline bool naive_sat_absind(const Team& t, const Atom& atom) {
  bool ok = true;
  mask_for_each(atom.lhs, [&](int xi) {
    if (!ok) return;
    bool nonconstant = false;
    for (std::size_t a = 0; a < t.rows.size(); ++a)
      for (std::size_t b = 0; b < t.rows.size(); ++b)
        if (t.rows[a][t.col_of(xi)] != t.rows[b][t.col_of(xi)]) nonconstant = true;
    if (!nonconstant) {
      ok = false;
      return;
    }
    Mask rest = 0;
    mask_for_each(atom.lhs, [&](int xj) {
      for (std::size_t a = 0; a < t.rows.size(); ++a)
        if (t.rows[a][t.col_of(xi)] != t.rows[a][t.col_of(xj)]) rest |= bit(xj);
    });
    for (std::size_t i = 0; i < t.rows.size() && ok; ++i)
      for (std::size_t j = 0; j < t.rows.size() && ok; ++j) {
        bool found = false;
        for (std::size_t k = 0; k < t.rows.size() && !found; ++k)
          if (t.rows[k][t.col_of(xi)] == t.rows[i][t.col_of(xi)] && agree(t, k, j, rest))
            found = true;
        if (!found) ok = false;
      }
  });
  return ok;
}

// ---- rule-level Dep saturation oracle (a1-d1 over canonical atoms) --------

inline std::set<std::pair<Mask, Mask>> dep_saturation_oracle(const std::vector<Atom>& sigma,
                                                             Mask universe) {
  std::set<std::pair<Mask, Mask>> derived;
  auto subsets = [&](Mask u) {
    std::vector<Mask> out;
    Mask s = 0;
    while (true) {
      out.push_back(s);
      if (s == u) break;
      s = (s - u) & u;
    }
    return out;
  };
  auto all = subsets(universe);
  for (Mask x : all) derived.insert({x, x});  // a1 (includes dep((),()))
  for (const auto& a : sigma) derived.insert({a.lhs, a.rhs});
  bool changed = true;
  while (changed) {
    changed = false;
    auto snapshot = derived;
    for (const auto& [x, yz] : snapshot) {
      // b1: dep(x, yz) => dep(x u u, y) for y <= yz, u <= universe.
      for (Mask y : subsets(yz))
        for (Mask u : all) {
          Mask lhs = x | u;
          if (!dep_atom_valid(lhs, y)) continue;
          if (derived.insert({lhs, y}).second) changed = true;
        }
      for (const auto& [x2, z] : snapshot) {
        if (yz == x2 && derived.insert({x, z}).second) changed = true;            // c1
        if (x == x2 && derived.insert({x, Mask(yz | z)}).second) changed = true;  // d1
      }
    }
  }
  return derived;
}

}  // namespace idcalc::testing
