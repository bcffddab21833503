#include <algorithm>
#include <random>

#include "doctest.h"
#include "helpers.hpp"
#include "idcalc/geometry.hpp"
#include "idcalc/parse.hpp"

using namespace idcalc;
using namespace idcalc::testing;

namespace {

std::vector<Vec> vecs(std::initializer_list<Vec> vs) { return std::vector<Vec>(vs); }

}  // namespace

TEST_CASE("construction validates the field") {
  CHECK_NOTHROW(VectorSpaceGeometry(2, 3));
  CHECK_NOTHROW(VectorSpaceGeometry(3, 4));
  CHECK_NOTHROW(VectorSpaceGeometry(5, 2));
  CHECK_THROWS_AS(VectorSpaceGeometry(4, 3), AtomError);
  CHECK_THROWS_AS(VectorSpaceGeometry(1, 3), AtomError);
}

TEST_CASE("span membership basics") {
  VectorSpaceGeometry g2(2, 3);
  Vec e1 = g2.basis(0), e2 = g2.basis(1), e3 = g2.basis(2);
  CHECK(g2.span_member(g2.add(e1, e2), vecs({e1, e2})));
  CHECK_FALSE(g2.span_member(e3, vecs({e1, e2})));
  CHECK(g2.span_member(g2.zero(), {}));

  VectorSpaceGeometry g3(3, 2);
  Vec f1 = g3.basis(0);
  Vec twice = g3.add(f1, f1);
  CHECK(g3.span_member(twice, vecs({f1})));
  CHECK_FALSE(g3.span_member(g3.basis(1), vecs({f1})));
}

TEST_CASE("rank and localized dimension") {
  VectorSpaceGeometry g(2, 3);
  Vec e1 = g.basis(0), e2 = g.basis(1);
  CHECK(g.dim(vecs({e1, e2, g.add(e1, e2)})) == 2);
  CHECK(g.dim({}) == 0);
  CHECK(g.dim_over(vecs({e1}), vecs({e1})) == 0);
  CHECK(g.dim_over(vecs({e1}), vecs({e2})) == 1);
  CHECK(g.dim_over(vecs({e1, e2}), vecs({g.add(e1, e2)})) == 1);
}

TEST_CASE("indep_rel spec cases") {
  VectorSpaceGeometry g(2, 3);
  Vec e1 = g.basis(0), e2 = g.basis(1);
  CHECK(g.indep_rel(vecs({e1}), {}, vecs({e2})));
  CHECK_FALSE(g.indep_rel(vecs({g.add(e1, e2)}), vecs({e1}), vecs({e2})));
  // Existence: A independent of B over A.
  CHECK(g.indep_rel(vecs({e1, e2}), vecs({e1, e2}), vecs({e1})));
}

TEST_CASE("indep_rel agrees with the all-tuples reading at finite scale") {
  // Def: every finite tuple from A keeps its dimension when C joins B.
  // Check the set-level decision against explicit subset enumeration.
  VectorSpaceGeometry g(2, 4);
  std::mt19937_64 rng(67);
  auto rand_vec = [&] {
    Vec v(4);
    for (auto& c : v) c = uint8_t(rng() % 2);
    return v;
  };
  for (int trial = 0; trial < 400; ++trial) {
    std::vector<Vec> A, B, C;
    for (unsigned i = 0, n = rng() % 4; i < n; ++i) A.push_back(rand_vec());
    for (unsigned i = 0, n = rng() % 3; i < n; ++i) B.push_back(rand_vec());
    for (unsigned i = 0, n = rng() % 3; i < n; ++i) C.push_back(rand_vec());
    bool whole = g.indep_rel(A, B, C);
    bool tuples = true;
    for (unsigned sub = 0; sub < (1u << A.size()); ++sub) {
      std::vector<Vec> part;
      for (std::size_t i = 0; i < A.size(); ++i)
        if (sub & (1u << i)) part.push_back(A[i]);
      if (!g.indep_rel(part, B, C)) tuples = false;
    }
    CHECK(whole == tuples);
  }
}

TEST_CASE("cl_dep and is_independent_set") {
  VectorSpaceGeometry g(2, 3);
  Vec e1 = g.basis(0), e2 = g.basis(1), e3 = g.basis(2);
  CHECK(g.cl_dep(vecs({e1, e2}), vecs({g.add(e1, e2)})));
  CHECK(g.cl_dep({}, vecs({g.zero()})));
  CHECK_FALSE(g.cl_dep(vecs({e1}), vecs({e2})));

  CHECK(g.is_independent_set(vecs({e1, e2, e3}), {}));
  CHECK_FALSE(g.is_independent_set(vecs({e1, g.add(e1, e2)}), vecs({e2})));
  CHECK(g.is_independent_set({}, vecs({e1})));
  CHECK_FALSE(g.is_independent_set(vecs({g.zero()}), {}));
}

TEST_CASE("exchange principle on the constructed instance") {
  VectorSpaceGeometry g(2, 3);
  Vec e1 = g.basis(0), e2 = g.basis(1);
  Vec a = g.add(e1, e2), b = e2;
  std::vector<Vec> A = {e1};
  // a in cl(A u {b}) - cl(A) => b in cl(A u {a}).
  REQUIRE(g.span_member(a, vecs({e1, b})));
  REQUIRE_FALSE(g.span_member(a, A));
  CHECK(g.span_member(b, vecs({e1, a})));
}

TEST_CASE("audit passes on the contract spaces") {
  AuditReport r2 = audit_axioms(VectorSpaceGeometry(2, 6), 1000, 7);
  CHECK(r2.checks >= 1000);
  CHECK(r2.clean());
  AuditReport r3 = audit_axioms(VectorSpaceGeometry(3, 4), 1000, 7);
  CHECK(r3.clean());
  // Deterministic for a fixed seed.
  AuditReport again = audit_axioms(VectorSpaceGeometry(2, 6), 1000, 7);
  CHECK(again.checks == r2.checks);
  CHECK(again.violations == r2.violations);
}

TEST_CASE("pregeometry atom semantics") {
  VectorSpaceGeometry g(2, 2);
  VarTable vars;
  int x = vars.intern("x"), y = vars.intern("y");
  GeometryAssignment s;
  s.values[x] = g.basis(0);
  s.values[y] = g.basis(1);
  CHECK(sat_ind_pregeo(g, s, parse_atom("ind(x, y)", vars)));
  CHECK(sat_absind_pregeo(g, s, parse_atom("abs(x y)", vars)));
  CHECK_FALSE(sat_dep_closure(g, s, parse_atom("dep(x, y)", vars)));

  GeometryAssignment same;
  same.values[x] = g.basis(0);
  same.values[y] = g.basis(0);
  CHECK_FALSE(sat_ind_pregeo(g, same, parse_atom("ind(x, y)", vars)));
  CHECK(sat_dep_closure(g, same, parse_atom("dep(x, y)", vars)));

  GeometryAssignment zero;
  zero.values[x] = g.zero();
  zero.values[y] = g.basis(0);
  CHECK_FALSE(sat_absind_pregeo(g, zero, parse_atom("abs(x)", vars)));
  CHECK(sat_ind_pregeo(g, zero, parse_atom("ind(x, y)", vars)));  // dim(x)=0 both ways
  CHECK(sat_atom_pregeo(g, zero, parse_atom("cind(x, x, y)", vars)));
}

TEST_CASE("image collapses duplicate values") {
  VectorSpaceGeometry g(2, 2);
  VarTable vars;
  int x = vars.intern("x"), y = vars.intern("y");
  GeometryAssignment s;
  s.values[x] = g.basis(0);
  s.values[y] = g.basis(0);
  CHECK(s.image(bit(x) | bit(y)).size() == 1);
}

TEST_CASE("space assignment text round-trips") {
  VectorSpaceGeometry g(3, 2);
  VarTable vars;
  int x = vars.intern("x"), y = vars.intern("y");
  GeometryAssignment s;
  s.values[x] = Vec{1, 2};
  s.values[y] = Vec{0, 1};
  std::string text = print_space_assignment(g, s, vars);
  CHECK(text.find("field 3 dim 2") != std::string::npos);
  VarTable vars2;
  auto [g2, s2] = parse_space_assignment(text, vars2);
  CHECK(g2.p() == 3);
  CHECK(g2.k() == 2);
  CHECK(s2.at(*vars2.find("x")) == Vec{1, 2});
  CHECK(print_space_assignment(g2, s2, vars2) == text);
}

TEST_CASE("basis cardinality and rank identity on random samples") {
  std::mt19937_64 rng(71);
  VectorSpaceGeometry g(3, 4);
  auto rand_vec = [&] {
    Vec v(4);
    for (auto& c : v) c = uint8_t(rng() % 3);
    return v;
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Vec> A, C;
    for (unsigned i = 0, n = rng() % 6; i < n; ++i) A.push_back(rand_vec());
    for (unsigned i = 0, n = rng() % 4; i < n; ++i) C.push_back(rand_vec());
    // rank identity behind localization
    std::vector<Vec> both = A;
    both.insert(both.end(), C.begin(), C.end());
    CHECK(g.dim_over(A, C) == g.rank(both) - g.rank(C));
    // greedy maximal independent subsets from two different orders
    auto greedy = [&](std::vector<Vec> pool) {
      std::vector<Vec> basis;
      for (const Vec& v : pool)
        if (!g.span_member(v, basis)) basis.push_back(v);
      return basis.size();
    };
    auto shuffled = A;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    CHECK(greedy(A) == greedy(shuffled));
  }
}
