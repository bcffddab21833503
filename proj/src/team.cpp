#include "idcalc/team.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "idcalc/derive.hpp"

namespace idcalc {

namespace {

// Projection of a row onto the columns of `m`, encoded for hashing. Values
// are opaque strings, so the key is the concatenation with separators.
std::string proj_key(const Team& t, std::size_t row, Mask m) {
  std::string key;
  mask_for_each(m, [&](int id) {
    key += t.rows[row][t.col_of(id)];
    key += '\x1f';
  });
  return key;
}

bool rows_agree(const Team& t, std::size_t r1, std::size_t r2, Mask m) {
  bool eq = true;
  mask_for_each(m, [&](int id) {
    int c = t.col_of(id);
    if (t.rows[r1][c] != t.rows[r2][c]) eq = false;
  });
  return eq;
}

void require_vars(const Team& t, Mask m) {
  if (!mask_subset(m, t.domain)) throw AtomError("atom mentions variable outside team domain");
}

}  // namespace

Team Team::make(Mask domain, std::vector<std::vector<std::string>> in_rows) {
  Team t;
  t.domain = domain;
  t.cols = mask_ids(domain);
  std::set<std::vector<std::string>> seen;
  for (auto& r : in_rows) {
    if (r.size() != t.cols.size()) throw AtomError("row arity does not match team domain");
    if (seen.insert(r).second) t.rows.push_back(std::move(r));
  }
  return t;
}

int Team::col_of(int var_id) const {
  auto it = std::lower_bound(cols.begin(), cols.end(), var_id);
  if (it == cols.end() || *it != var_id) throw AtomError("unknown variable in team");
  return static_cast<int>(it - cols.begin());
}

bool SatReport::all_hold() const {
  return std::all_of(verdicts.begin(), verdicts.end(),
                     [](const AtomVerdict& v) { return v.holds; });
}

bool sat_dep(const Team& team, const Atom& atom, Witness* w) {
  require_vars(team, atom.vars());
  for (std::size_t i = 0; i < team.rows.size(); ++i)
    for (std::size_t j = 0; j < team.rows.size(); ++j)
      if (rows_agree(team, i, j, atom.lhs) && !rows_agree(team, i, j, atom.rhs)) {
        if (w) *w = {i, j};
        return false;
      }
  return true;
}

bool sat_ind(const Team& team, const Atom& atom, Witness* w) {
  require_vars(team, atom.vars());
  Mask x = atom.lhs, y = atom.rhs;
  std::unordered_set<std::string> pairs;
  for (std::size_t r = 0; r < team.rows.size(); ++r)
    pairs.insert(proj_key(team, r, x) + '\x1e' + proj_key(team, r, y));
  for (std::size_t i = 0; i < team.rows.size(); ++i) {
    std::string xi = proj_key(team, i, x);
    for (std::size_t j = 0; j < team.rows.size(); ++j)
      if (!pairs.count(xi + '\x1e' + proj_key(team, j, y))) {
        if (w) *w = {i, j};
        return false;
      }
  }
  return true;
}

bool sat_absind(const Team& team, const Atom& atom, Witness* w) {
  require_vars(team, atom.vars());
  // For every x_i: x_i is non-constant and recombines freely with
  // x -_X x_i = { x_j in x : some row gives x_i and x_j different values }.
  bool ok = true;
  mask_for_each(atom.lhs, [&](int xi) {
    if (!ok) return;
    int ci = team.col_of(xi);
    bool nonconstant = false;
    for (std::size_t r = 1; r < team.rows.size() && !nonconstant; ++r)
      if (team.rows[r][ci] != team.rows[0][ci]) nonconstant = true;
    if (!nonconstant) {
      ok = false;
      if (w) *w = {0, 0};
      return;
    }
    Mask rest = 0;
    mask_for_each(atom.lhs, [&](int xj) {
      if (xj == xi) return;
      int cj = team.col_of(xj);
      for (const auto& row : team.rows)
        if (row[ci] != row[cj]) {
          rest |= bit(xj);
          break;
        }
    });
    std::unordered_set<std::string> pairs;
    for (std::size_t r = 0; r < team.rows.size(); ++r)
      pairs.insert(team.rows[r][ci] + '\x1e' + proj_key(team, r, rest));
    for (std::size_t i = 0; i < team.rows.size() && ok; ++i)
      for (std::size_t j = 0; j < team.rows.size(); ++j)
        if (!pairs.count(team.rows[i][ci] + '\x1e' + proj_key(team, j, rest))) {
          ok = false;
          if (w) *w = {i, j};
          break;
        }
  });
  return ok;
}

bool sat_condind(const Team& team, const Atom& atom, Witness* w) {
  require_vars(team, atom.vars());
  Mask x = atom.lhs, y = atom.rhs, z = atom.cond;
  // Group rows on z, then recombine x- and y-patterns within each group.
  std::unordered_map<std::string, std::vector<std::size_t>> groups;
  for (std::size_t r = 0; r < team.rows.size(); ++r)
    groups[proj_key(team, r, z)].push_back(r);
  for (const auto& [zk, members] : groups) {
    std::unordered_set<std::string> pairs;
    for (std::size_t r : members)
      pairs.insert(proj_key(team, r, x) + '\x1e' + proj_key(team, r, y));
    for (std::size_t i : members) {
      std::string xi = proj_key(team, i, x);
      for (std::size_t j : members)
        if (!pairs.count(xi + '\x1e' + proj_key(team, j, y))) {
          if (w) *w = {i, j};
          return false;
        }
    }
  }
  return true;
}

bool sat_atom(const Team& team, const Atom& atom, Witness* w) {
  switch (atom.kind) {
    case Kind::Dep: return sat_dep(team, atom, w);
    case Kind::Ind: return sat_ind(team, atom, w);
    case Kind::AbsInd: return sat_absind(team, atom, w);
    case Kind::CondInd: return sat_condind(team, atom, w);
  }
  return false;
}

SatReport satisfies_all(const Team& team, const std::vector<Atom>& sigma) {
  SatReport report;
  for (const auto& a : sigma) {
    AtomVerdict v;
    v.atom = a;
    Witness w;
    v.holds = sat_atom(team, a, &w);
    if (!v.holds) v.witness = w;
    report.verdicts.push_back(std::move(v));
  }
  return report;
}

std::vector<Atom> mine(const Team& team, Kind kind, int max_side_arity) {
  if (max_side_arity < 1) throw AtomError("arity cap must be >= 1");
  if (mask_size(team.domain) > max_universe_vars(kind))
    throw CapError("team domain exceeds mining cap for this kind");
  std::vector<Atom> found;
  for (const auto& a : atom_universe(kind, team.domain)) {
    if (mask_size(a.lhs) > max_side_arity || mask_size(a.rhs) > max_side_arity ||
        mask_size(a.cond) > max_side_arity)
      continue;
    if (sat_atom(team, a)) found.push_back(a);
  }
  if (kind == Kind::Dep) {
    // Drop atoms implied by another single reported atom.
    std::vector<Atom> minimal;
    for (const auto& a : found) {
      bool implied = false;
      for (const auto& b : found) {
        if (b == a) continue;
        if (mask_subset(b.lhs, a.lhs) &&
            mask_subset(a.rhs, attribute_closure(a.lhs, {b}))) {
          // Tie-break so mutually-implying atoms keep exactly one member.
          if (!(mask_subset(a.lhs, b.lhs) && mask_subset(b.rhs, attribute_closure(b.lhs, {a}))) ||
              b < a) {
            implied = true;
            break;
          }
        }
      }
      if (!implied) minimal.push_back(a);
    }
    return minimal;
  }
  return found;
}

}  // namespace idcalc
