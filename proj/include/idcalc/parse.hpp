#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "idcalc/atoms.hpp"
#include "idcalc/team.hpp"

namespace idcalc {

class ParseError : public std::runtime_error {
 public:
  ParseError(std::string msg, int line, int col)
      : std::runtime_error(std::move(msg) + " at line " + std::to_string(line) + ", column " +
                           std::to_string(col)),
        line(line),
        col(col) {}
  int line;
  int col;
};

// Atom grammar:
//   dep(<vars>, <vars>) | ind(<vars>, <vars>) | abs(<vars>) | cind(<vars>, <vars>, <vars>)
// <vars> is a whitespace-separated identifier list; the empty list is written ().
// cind(X, Z, Y) denotes X _|_Z Y.
Atom parse_atom(std::string_view text, VarTable& vars, int line_no = 1);

std::string print_atom(const Atom& a, const VarTable& vars);

/// Name-sorted space-separated list; empty set prints as ().
std::string print_vars(Mask m, const VarTable& vars);

// ProblemFile: premise atoms one per line, exactly one final `|- <atom>` query
// line, `#` starts a comment. All atoms must share one kind.
Problem parse_problem(std::string_view text, VarTable& vars);

std::string print_problem(const Problem& p, const VarTable& vars);

// A bare list of atoms (one per line, `#` comments), any single kind not
// enforced. Used by `check`.
std::vector<Atom> parse_atom_list(std::string_view text, VarTable& vars);

// TeamFile: CSV, header row = variable names, data rows = opaque string
// values compared for equality only. Duplicate rows collapse. Lines starting
// with `#` are ignored (countermodel certificates ride along as comments).
Team parse_team_csv(std::string_view text, VarTable& vars);

std::string print_team_csv(const Team& team, const VarTable& vars);

}  // namespace idcalc
