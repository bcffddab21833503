#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "helpers.hpp"
#include "idcalc/atoms.hpp"
#include "idcalc/parse.hpp"

using namespace idcalc;
using namespace idcalc::testing;

TEST_CASE("interning is injective and dense") {
  VarTable vars;
  int x = vars.intern("x");
  int y = vars.intern("y");
  CHECK(x == 0);
  CHECK(y == 1);
  CHECK(vars.intern("x") == x);
  CHECK(vars.name(y) == "y");
  CHECK(vars.find("z") == std::nullopt);
  CHECK(vars.all() == Mask{0b11});
}

TEST_CASE("interning rejects a 33rd variable") {
  VarTable vars;
  for (int i = 0; i < kMaxVars; ++i) vars.intern("v" + std::to_string(i));
  CHECK_THROWS_AS(vars.intern("overflow"), CapError);
}

TEST_CASE("canonicalize collapses permutations and duplicates") {
  VarTable vars;
  Atom a = canonicalize(Kind::Ind, {{"y", "x"}, {"z"}}, vars);
  Atom b = canonicalize(Kind::Ind, {{"x", "y", "y"}, {"z"}}, vars);
  CHECK(a == b);
  CHECK(mask_size(a.lhs) == 2);
  CHECK(a.rhs == bit(*vars.find("z")));
  // cind component order is lhs, cond, rhs
  Atom c = canonicalize(Kind::CondInd, {{"x"}, {"z"}, {"y"}}, vars);
  CHECK(c.lhs == bit(*vars.find("x")));
  CHECK(c.cond == bit(*vars.find("z")));
  CHECK(c.rhs == bit(*vars.find("y")));
}

TEST_CASE("canonicalize enforces the dep and absind constraints") {
  VarTable vars;
  CHECK_THROWS_AS(canonicalize(Kind::Dep, {{"x"}, {}}, vars), AtomError);
  CHECK_NOTHROW(canonicalize(Kind::Dep, {{}, {}}, vars));
  CHECK_NOTHROW(canonicalize(Kind::Dep, {{}, {"x"}}, vars));
  CHECK_THROWS_AS(canonicalize(Kind::AbsInd, {{"x", "x"}}, vars), AtomError);
}

TEST_CASE("canonicalize is a retraction through the printer") {
  std::mt19937_64 rng(11);
  VarTable vars;
  for (int i = 0; i < 4; ++i) vars.intern("v" + std::to_string(i));
  for (Kind kind : {Kind::Dep, Kind::AbsInd, Kind::Ind, Kind::CondInd}) {
    for (const Atom& a : atom_universe(kind, vars.all())) {
      Atom again = parse_atom(print_atom(a, vars), vars);
      CHECK(again == a);
    }
  }
  (void)rng;
}

TEST_CASE("atom_universe over a singleton") {
  VarTable vars;
  Mask u = bit(vars.intern("x"));

  auto abs = atom_universe(Kind::AbsInd, u);
  CHECK(abs.size() == 2);  // abs(()) and abs(x)

  auto ind = atom_universe(Kind::Ind, u);
  CHECK(ind.size() == 4);

  auto dep = atom_universe(Kind::Dep, u);
  CHECK(dep.size() == 3);  // dep(x, ()) excluded
  for (const Atom& a : dep) CHECK(dep_atom_valid(a.lhs, a.rhs));
}

TEST_CASE("atom_universe counts match the closed forms") {
  VarTable vars;
  for (int i = 0; i < 3; ++i) vars.intern("v" + std::to_string(i));
  Mask u = vars.all();
  CHECK(atom_universe(Kind::Ind, u).size() == 64);      // 4^3
  CHECK(atom_universe(Kind::AbsInd, u).size() == 8);    // 2^3
  CHECK(atom_universe(Kind::CondInd, u).size() == 512); // 8^3
  // Dep: 4^3 minus pairs with lhs != 0, rhs == 0.
  CHECK(atom_universe(Kind::Dep, u).size() == 64 - 7);
}

TEST_CASE("atom_universe enumerates exactly once, oracle cross-check") {
  VarTable vars;
  for (int i = 0; i < 3; ++i) vars.intern("v" + std::to_string(i));
  Mask u = vars.all();
  // Independent enumeration: loop raw mask pairs.
  std::set<std::pair<Mask, Mask>> expected;
  for (Mask a = 0; a <= u; ++a)
    for (Mask b = 0; b <= u; ++b)
      if (mask_subset(a, u) && mask_subset(b, u)) expected.insert({a, b});
  std::set<std::pair<Mask, Mask>> got;
  for (const Atom& a : atom_universe(Kind::Ind, u)) {
    CHECK(a.kind == Kind::Ind);
    CHECK(got.insert({a.lhs, a.rhs}).second);  // no repeats
  }
  CHECK(got == expected);
}

TEST_CASE("atom_universe is deterministic and respects the cap") {
  VarTable vars;
  for (int i = 0; i < 3; ++i) vars.intern("v" + std::to_string(i));
  auto first = atom_universe(Kind::Ind, vars.all());
  auto second = atom_universe(Kind::Ind, vars.all());
  CHECK(first == second);

  VarTable big;
  for (int i = 0; i < max_universe_vars(Kind::CondInd) + 1; ++i) big.intern("w" + std::to_string(i));
  CHECK_THROWS_AS(atom_universe(Kind::CondInd, big.all()), CapError);
}

TEST_CASE("Problem::make computes the universe from its atoms") {
  Ctx c;
  Problem p = Problem::make(Kind::Ind, c.atoms({"ind(x, y)"}), c.atom("ind(x, z)"));
  CHECK(p.universe == (bit(*c.vars.find("x")) | bit(*c.vars.find("y")) | bit(*c.vars.find("z"))));
}
