#pragma once

#include <optional>
#include <string>
#include <vector>

#include "idcalc/atoms.hpp"

namespace idcalc {

/// A finite set of assignments from a variable domain to opaque string
/// values. Rows are duplicate-free and total on the domain; column order is
/// ascending variable id.
struct Team {
  Mask domain = 0;
  std::vector<int> cols;                        // variable ids, ascending
  std::vector<std::vector<std::string>> rows;   // rows[r][c] pairs with cols[c]

  static Team make(Mask domain, std::vector<std::vector<std::string>> rows);

  int col_of(int var_id) const;  // throws AtomError on unknown variable
  std::size_t size() const { return rows.size(); }
};

/// First witnessing violation: a pair (s, s') with no matching s''.
struct Witness {
  std::size_t s = 0;
  std::size_t s_prime = 0;
};

struct AtomVerdict {
  Atom atom;
  bool holds = true;
  std::optional<Witness> witness;  // present iff !holds
};

struct SatReport {
  std::vector<AtomVerdict> verdicts;
  bool all_hold() const;
};

bool sat_dep(const Team& team, const Atom& atom, Witness* w = nullptr);
bool sat_ind(const Team& team, const Atom& atom, Witness* w = nullptr);
bool sat_absind(const Team& team, const Atom& atom, Witness* w = nullptr);
bool sat_condind(const Team& team, const Atom& atom, Witness* w = nullptr);

/// Dispatch on atom kind.
bool sat_atom(const Team& team, const Atom& atom, Witness* w = nullptr);

SatReport satisfies_all(const Team& team, const std::vector<Atom>& sigma);

/// All canonical atoms of `kind` over the team domain with side sizes
/// <= max_side_arity that the team satisfies. Dep output is minimized: no
/// reported atom is derivable from another single reported atom.
std::vector<Atom> mine(const Team& team, Kind kind, int max_side_arity);

}  // namespace idcalc
