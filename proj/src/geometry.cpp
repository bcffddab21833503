#include "idcalc/geometry.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "idcalc/parse.hpp"

namespace idcalc {

namespace {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

int mod_inverse(int a, int p) {
  // Fermat: a^(p-2) mod p.
  long long result = 1, base = a % p;
  for (int e = p - 2; e > 0; e >>= 1) {
    if (e & 1) result = result * base % p;
    base = base * base % p;
  }
  return static_cast<int>(result);
}

// Row-reduce a copy of the vectors; returns the rank. If probe != nullptr,
// also reports whether probe lies in their span.
int eliminate(std::span<const Vec> vecs, int p, int k, const Vec* probe, bool* probe_in_span) {
  std::vector<Vec> rows(vecs.begin(), vecs.end());
  std::vector<int> pivot_col;
  int rank = 0;
  for (int col = 0; col < k && rank < static_cast<int>(rows.size()); ++col) {
    int pivot = -1;
    for (int r = rank; r < static_cast<int>(rows.size()); ++r)
      if (rows[r][col] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    std::swap(rows[rank], rows[pivot]);
    int inv = mod_inverse(rows[rank][col], p);
    for (int c = col; c < k; ++c) rows[rank][c] = static_cast<std::uint8_t>(rows[rank][c] * inv % p);
    for (int r = 0; r < static_cast<int>(rows.size()); ++r) {
      if (r == rank || rows[r][col] == 0) continue;
      int f = rows[r][col];
      for (int c = col; c < k; ++c)
        rows[r][c] = static_cast<std::uint8_t>(((rows[r][c] - f * rows[rank][c]) % p + p) % p);
    }
    pivot_col.push_back(col);
    ++rank;
  }
  if (probe) {
    Vec v = *probe;
    for (int r = 0; r < rank; ++r) {
      int f = v[pivot_col[r]];
      if (f == 0) continue;
      for (int c = 0; c < k; ++c)
        v[c] = static_cast<std::uint8_t>(((v[c] - f * rows[r][c]) % p + p) % p);
    }
    *probe_in_span = std::all_of(v.begin(), v.end(), [](std::uint8_t x) { return x == 0; });
  }
  return rank;
}

}  // namespace

VectorSpaceGeometry::VectorSpaceGeometry(int p, int k) : p_(p), k_(k) {
  if (!is_prime(p)) throw AtomError(std::to_string(p) + " is not prime");
  if (k < 0) throw AtomError("negative dimension");
}

Vec VectorSpaceGeometry::basis(int i) const {
  Vec v = zero();
  v.at(static_cast<std::size_t>(i)) = 1;
  return v;
}

Vec VectorSpaceGeometry::add(const Vec& a, const Vec& b) const {
  Vec out(static_cast<std::size_t>(k_));
  for (int i = 0; i < k_; ++i)
    out[i] = static_cast<std::uint8_t>((a.at(i) + b.at(i)) % p_);
  return out;
}

bool VectorSpaceGeometry::span_member(const Vec& v, std::span<const Vec> A) const {
  if (static_cast<int>(v.size()) != k_) throw AtomError("vector dimension mismatch");
  for (const auto& a : A)
    if (static_cast<int>(a.size()) != k_) throw AtomError("vector dimension mismatch");
  bool in = false;
  eliminate(A, p_, k_, &v, &in);
  return in;
}

int VectorSpaceGeometry::rank(std::span<const Vec> A) const {
  return eliminate(A, p_, k_, nullptr, nullptr);
}

int VectorSpaceGeometry::dim_over(std::span<const Vec> A, std::span<const Vec> C) const {
  std::vector<Vec> joint(A.begin(), A.end());
  joint.insert(joint.end(), C.begin(), C.end());
  return rank(joint) - rank(C);
}

bool VectorSpaceGeometry::indep_rel(std::span<const Vec> A, std::span<const Vec> B,
                                    std::span<const Vec> C) const {
  std::vector<Vec> bc(B.begin(), B.end());
  bc.insert(bc.end(), C.begin(), C.end());
  return dim_over(A, bc) == dim_over(A, B);
}

bool VectorSpaceGeometry::cl_dep(std::span<const Vec> x, std::span<const Vec> y) const {
  for (const auto& v : y)
    if (!span_member(v, x)) return false;
  return true;
}

bool VectorSpaceGeometry::is_independent_set(std::span<const Vec> A, std::span<const Vec> C) const {
  for (std::size_t i = 0; i < A.size(); ++i) {
    std::vector<Vec> rest;
    for (std::size_t j = 0; j < A.size(); ++j)
      if (j != i) rest.push_back(A[j]);
    rest.insert(rest.end(), C.begin(), C.end());
    if (span_member(A[i], rest)) return false;
  }
  return true;
}

const Vec& GeometryAssignment::at(int var_id) const {
  auto it = values.find(var_id);
  if (it == values.end()) throw AtomError("variable has no value in geometry assignment");
  return it->second;
}

std::vector<Vec> GeometryAssignment::image(Mask vars) const {
  std::set<Vec> seen;
  mask_for_each(vars, [&](int id) { seen.insert(at(id)); });
  return {seen.begin(), seen.end()};
}

bool sat_ind_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom) {
  auto x = s.image(atom.lhs);
  auto y = s.image(atom.rhs);
  return space.indep_rel(x, {}, y);
}

bool sat_absind_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s,
                       const Atom& atom) {
  auto x = s.image(atom.lhs);
  return space.is_independent_set(x, {});
}

bool sat_dep_closure(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom) {
  auto x = s.image(atom.lhs);
  auto y = s.image(atom.rhs);
  return space.cl_dep(x, y);
}

bool sat_atom_pregeo(const VectorSpaceGeometry& space, const GeometryAssignment& s, const Atom& atom) {
  switch (atom.kind) {
    case Kind::Ind: return sat_ind_pregeo(space, s, atom);
    case Kind::AbsInd: return sat_absind_pregeo(space, s, atom);
    case Kind::Dep: return sat_dep_closure(space, s, atom);
    case Kind::CondInd: {
      auto x = s.image(atom.lhs);
      auto b = s.image(atom.cond);
      auto y = s.image(atom.rhs);
      return space.indep_rel(x, b, y);
    }
  }
  return false;
}

namespace {

struct Sampler {
  const VectorSpaceGeometry& space;
  std::mt19937_64 rng;

  Vec vec() {
    Vec v = space.zero();
    for (int i = 0; i < space.k(); ++i)
      v[i] = static_cast<std::uint8_t>(rng() % static_cast<unsigned>(space.p()));
    return v;
  }

  std::vector<Vec> vec_set(int max_size) {
    std::vector<Vec> out;
    int n = static_cast<int>(rng() % static_cast<unsigned>(max_size + 1));
    for (int i = 0; i < n; ++i) out.push_back(vec());
    return out;
  }

  // Random element of span(A): random coefficient combination.
  Vec span_element(std::span<const Vec> A) {
    Vec acc = space.zero();
    for (const auto& a : A) {
      int coeff = static_cast<int>(rng() % static_cast<unsigned>(space.p()));
      Vec scaled = space.zero();
      for (int i = 0; i < space.k(); ++i)
        scaled[i] = static_cast<std::uint8_t>(a[i] * coeff % space.p());
      acc = space.add(acc, scaled);
    }
    return acc;
  }
};

std::vector<Vec> concat(std::span<const Vec> a, std::span<const Vec> b) {
  std::vector<Vec> out(a.begin(), a.end());
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

AuditReport audit_axioms(const VectorSpaceGeometry& g, int samples, std::uint64_t seed) {
  if (samples < 1) throw AtomError("audit requires at least one sample");
  AuditReport report;
  Sampler s{g, std::mt19937_64{seed}};
  int cap = std::max(2, g.k() + 1);

  auto fail = [&](const std::string& what) { report.violations.push_back(what); };
  auto indep = [&](std::span<const Vec> A, std::span<const Vec> B, std::span<const Vec> C) {
    return g.indep_rel(A, B, C);
  };

  for (int n = 0; n < samples; ++n) {
    auto A = s.vec_set(cap);
    auto B = s.vec_set(cap);
    auto C = s.vec_set(cap);
    auto D = s.vec_set(cap);
    report.checks++;

    // Closure system: extensivity, monotonicity, idempotence.
    for (const auto& a : A)
      if (!g.span_member(a, A)) fail("extensivity: a not in cl(A)");
    {
      Vec v = s.span_element(A);
      if (!g.span_member(v, concat(A, B))) fail("monotonicity: cl(A) not within cl(A u B)");
      // Idempotence: elements generated from cl(A)-members stay in cl(A).
      std::vector<Vec> sampled_cl{v, s.span_element(A)};
      Vec w = s.span_element(sampled_cl);
      if (!g.span_member(w, A)) fail("idempotence: cl(cl(A)) escapes cl(A)");
    }

    // Exchange Principle: a in cl(A u {b}) - cl(A) implies b in cl(A u {a}).
    {
      Vec b = s.vec();
      std::vector<Vec> Ab = concat(A, std::vector<Vec>{b});
      Vec a = s.span_element(Ab);
      if (g.span_member(a, Ab) && !g.span_member(a, A)) {
        if (!g.span_member(b, concat(A, std::vector<Vec>{a}))) fail("exchange principle");
      }
    }
    // Finite Character: membership is witnessed by a finite (here: basis-
    // sized) subset. Check against a maximal independent subset of A.
    {
      Vec v = s.span_element(A);
      std::vector<Vec> basis;
      for (const auto& a : A)
        if (!g.span_member(a, basis)) basis.push_back(a);
      if (!g.span_member(v, basis)) fail("finite character: basis subset loses a member");
    }

    // Independence relation properties (Definition-3.14 relation).
    if (!indep(A, A, B)) fail("existence: A not indep of B over A");
    if (indep(A, C, B)) {
      std::vector<Vec> Dsub;
      for (const auto& b : B)
        if (s.rng() & 1) Dsub.push_back(b);
      if (!indep(A, C, Dsub)) fail("monotonicity of independence");
    }
    {
      auto BuD = concat(B, D);
      bool lhs = indep(A, C, BuD);
      bool rhs = indep(A, C, B) && indep(A, concat(C, B), D);
      if (lhs != rhs) fail("transitivity of independence");
    }
    if (indep(A, C, B) != indep(B, C, A)) fail("symmetry of independence");
    if (indep(A, D, B) && indep(concat(A, B), D, C) && !indep(A, D, concat(B, C)))
      fail("exchange of independence");
    if (indep(A, B, A) && !indep(A, B, C)) fail("anti-reflexivity of independence");

    // Finite character of independence: A indep B over C iff it holds for
    // all finite B0; at finite scale, check one random subset direction.
    if (indep(A, C, B)) {
      std::vector<Vec> B0;
      for (const auto& b : B)
        if (s.rng() & 1) B0.push_back(b);
      if (!indep(A, C, B0)) fail("finite character of independence");
    }

    // Basis cardinality: two maximal independent subsets of A, built in
    // different orders, have the same size.
    {
      std::vector<Vec> shuffled = A;
      std::shuffle(shuffled.begin(), shuffled.end(), s.rng);
      std::vector<Vec> b1, b2;
      for (const auto& a : A)
        if (!g.span_member(a, b1)) b1.push_back(a);
      for (const auto& a : shuffled)
        if (!g.span_member(a, b2)) b2.push_back(a);
      if (b1.size() != b2.size()) fail("basis cardinality");
    }

    // Rank identity backing localization.
    if (g.dim_over(A, C) != g.rank(concat(A, C)) - g.rank(C)) fail("localization rank identity");

    // Disjoint subsets of an independent set are independent over the
    // parameters (independent-sequences lemma).
    {
      std::vector<Vec> pool;
      for (const auto& v : s.vec_set(cap))
        if (!g.span_member(v, concat(pool, C))) pool.push_back(v);
      std::vector<Vec> left, right;
      for (const auto& v : pool) (s.rng() & 1 ? left : right).push_back(v);
      if (!indep(left, C, right)) fail("independent-sequences lemma");
    }
  }
  return report;
}

std::string print_space_assignment(const VectorSpaceGeometry& space, const GeometryAssignment& s,
                                   const VarTable& vars) {
  std::ostringstream out;
  out << "field " << space.p() << " dim " << space.k() << "\n";
  std::vector<std::pair<std::string, const Vec*>> entries;
  for (const auto& [id, v] : s.values) entries.emplace_back(vars.name(id), &v);
  std::sort(entries.begin(), entries.end());
  for (const auto& [name, v] : entries) {
    out << name << " =";
    for (auto c : *v) out << ' ' << static_cast<int>(c);
    out << "\n";
  }
  return out.str();
}

std::pair<VectorSpaceGeometry, GeometryAssignment> parse_space_assignment(std::string_view text,
                                                                          VarTable& vars) {
  std::istringstream in{std::string(text)};
  std::string line;
  int p = 0, k = -1;
  GeometryAssignment assign;
  bool have_header = false;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    std::istringstream ls{line};
    if (!have_header) {
      std::string kw1, kw2;
      if (!(ls >> kw1 >> p >> kw2 >> k) || kw1 != "field" || kw2 != "dim")
        throw ParseError("expected header 'field <p> dim <k>'", line_no, 1);
      have_header = true;
      continue;
    }
    std::string name, eq;
    if (!(ls >> name >> eq) || eq != "=")
      throw ParseError("expected '<var> = c1 ... ck'", line_no, 1);
    Vec v;
    int c;
    while (ls >> c) v.push_back(static_cast<std::uint8_t>(((c % p) + p) % p));
    if (static_cast<int>(v.size()) != k)
      throw ParseError("expected " + std::to_string(k) + " coordinates", line_no, 1);
    assign.values[vars.intern(name)] = std::move(v);
  }
  if (!have_header) throw ParseError("missing 'field <p> dim <k>' header", line_no, 1);
  return {VectorSpaceGeometry(p, k), std::move(assign)};
}

}  // namespace idcalc
