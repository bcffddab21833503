#include "idcalc/derive.hpp"

#include <deque>
#include <unordered_set>

#include "idcalc/parse.hpp"

namespace idcalc {

namespace {

template <typename F>
void for_each_submask(Mask u, F&& f) {
  Mask s = 0;
  while (true) {
    f(s);
    if (s == u) break;
    s = (s - u) & u;
  }
}

// Worklist saturation with first-derivation provenance. Atoms enter the
// queue once; binary rules pair the processed atom against everything
// registered so far, the later partner re-pairs when its own turn comes.
struct Saturator {
  Closure closure;
  std::deque<Atom> queue;

  bool add(const Atom& a, std::string rule, std::vector<Atom> premises) {
    auto [it, fresh] = closure.provenance.try_emplace(a, RuleInstance{std::move(rule), std::move(premises)});
    if (!fresh) return false;
    closure.derived.push_back(a);
    queue.push_back(a);
    return true;
  }
};

void check_sigma(const std::vector<Atom>& sigma, Kind kind, Mask universe) {
  int cap = max_universe_vars(kind);
  if (mask_size(universe) > cap)
    throw CapError("universe of " + std::to_string(mask_size(universe)) +
                   " variables exceeds saturation cap " + std::to_string(cap));
  for (const auto& a : sigma) {
    if (a.kind != kind) throw AtomError("mixed atom kinds in sigma");
    if (!mask_subset(a.vars(), universe)) throw AtomError("sigma atom outside universe");
  }
}

std::uint64_t pack(Mask a, Mask b) { return (std::uint64_t(a) << 32) | b; }

}  // namespace

Closure indep_closure(const std::vector<Atom>& sigma, Mask universe) {
  check_sigma(sigma, Kind::Ind, universe);
  Saturator s;
  std::unordered_map<Mask, std::vector<Mask>> by_lhs;  // lhs -> list of rhs

  auto add = [&](const Atom& a, const char* rule, std::vector<Atom> prem) {
    if (s.add(a, rule, std::move(prem))) by_lhs[a.lhs].push_back(a.rhs);
  };

  for_each_submask(universe, [&](Mask x) { add({Kind::Ind, x, 0, 0}, "a3", {}); });
  for (const auto& a : sigma) add(a, "premise", {});

  while (!s.queue.empty()) {
    Atom a = s.queue.front();
    s.queue.pop_front();
    Mask x = a.lhs, y = a.rhs;

    add({Kind::Ind, y, x, 0}, "b3", {a});
    for_each_submask(y, [&](Mask y2) {
      if (y2 != y) add({Kind::Ind, x, y2, 0}, "c3", {a});
    });
    // d3, this atom as first premise: partner (x u y) _|_ z.
    {
      auto it = by_lhs.find(x | y);
      if (it != by_lhs.end()) {
        // Partner list may grow while we derive; index-based loop.
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          Mask z = it->second[i];
          add({Kind::Ind, x, y | z, 0}, "d3", {a, {Kind::Ind, x | y, z, 0}});
        }
      }
    }
    // d3, this atom as second premise (a = (x2 u y2) _|_ z): enumerate the
    // (x2, y2) covers of its lhs.
    for_each_submask(x, [&](Mask x2) {
      Mask rem = x & ~x2;
      for_each_submask(x2, [&](Mask t) {
        Mask y2 = rem | t;
        Atom first{Kind::Ind, x2, y2, 0};
        if (s.closure.contains(first))
          add({Kind::Ind, x2, y2 | y, 0}, "d3", {first, a});
      });
    });
    if (x == y && mask_size(x) == 1)
      for_each_submask(universe, [&](Mask w) { add({Kind::Ind, x, w, 0}, "e3", {a}); });
  }
  return s.closure;
}

Closure absind_closure(const std::vector<Atom>& sigma, Mask universe) {
  check_sigma(sigma, Kind::AbsInd, universe);
  Saturator s;
  s.add({Kind::AbsInd, 0, 0, 0}, "a2", {});
  for (const auto& a : sigma) s.add(a, "premise", {});
  while (!s.queue.empty()) {
    Atom a = s.queue.front();
    s.queue.pop_front();
    for_each_submask(a.lhs, [&](Mask x2) {
      if (x2 != a.lhs) s.add({Kind::AbsInd, x2, 0, 0}, "b2", {a});
    });
  }
  return s.closure;
}

Closure condind_closure(const std::vector<Atom>& sigma, Mask universe) {
  check_sigma(sigma, Kind::CondInd, universe);
  Saturator s;
  std::unordered_map<std::uint64_t, std::vector<Mask>> by_cond_rhs;  // (cond,rhs) -> lhs
  std::unordered_map<std::uint64_t, std::vector<Mask>> by_lhs_cond;  // (lhs,cond) -> rhs
  std::unordered_map<Mask, std::vector<Atom>> by_cond;

  auto add = [&](const Atom& a, const char* rule, std::vector<Atom> prem) {
    if (!s.add(a, rule, std::move(prem))) return;
    by_cond_rhs[pack(a.cond, a.rhs)].push_back(a.lhs);
    by_lhs_cond[pack(a.lhs, a.cond)].push_back(a.rhs);
    by_cond[a.cond].push_back(a);
  };

  for_each_submask(universe, [&](Mask x) {
    for_each_submask(universe, [&](Mask y) { add({Kind::CondInd, x, y, x}, "a4", {}); });
  });
  for (const auto& a : sigma) add(a, "premise", {});

  while (!s.queue.empty()) {
    Atom a = s.queue.front();
    s.queue.pop_front();
    Mask x = a.lhs, y = a.rhs, z = a.cond;

    add({Kind::CondInd, y, x, z}, "b4", {a});
    for_each_submask(x, [&](Mask x2) {
      for_each_submask(y, [&](Mask y2) {
        if (x2 != x || y2 != y) add({Kind::CondInd, x2, y2, z}, "c4", {a});
      });
    });
    add({Kind::CondInd, x | z, y | z, z}, "d4", {a});

    // e4: x _|_z y  and  u _|_{z u x} y  =>  u _|_z y.
    {
      auto it = by_cond_rhs.find(pack(z | x, y));
      if (it != by_cond_rhs.end())
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          Mask u = it->second[i];
          add({Kind::CondInd, u, y, z}, "e4", {a, {Kind::CondInd, u, y, z | x}});
        }
    }
    for_each_submask(z, [&](Mask z1) {  // a as second premise, cond = z1 u x1
      Mask rem = z & ~z1;
      for_each_submask(z1, [&](Mask t) {
        Mask x1 = rem | t;
        Atom first{Kind::CondInd, x1, y, z1};
        if (s.closure.contains(first)) add({Kind::CondInd, x, y, z1}, "e4", {first, a});
      });
    });

    // f4: y _|_z y  and  (z u x) _|_y u  =>  x _|_z u.
    if (x == y) {
      auto it = by_cond.find(x);
      if (it != by_cond.end())
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          Atom p2 = it->second[i];
          if (!mask_subset(z, p2.lhs)) continue;
          Mask fixed = p2.lhs & ~z;
          for_each_submask(z, [&](Mask t) {
            add({Kind::CondInd, fixed | t, p2.rhs, z}, "f4", {a, p2});
          });
        }
    }
    for_each_submask(x, [&](Mask z1) {  // a as second premise (lhs = z1 u x1, cond = y1)
      Atom p1{Kind::CondInd, z, z, z1};
      if (!s.closure.contains(p1)) return;
      Mask fixed = x & ~z1;
      for_each_submask(z1, [&](Mask t) {
        add({Kind::CondInd, fixed | t, y, z1}, "f4", {p1, a});
      });
    });

    // g4: x _|_z y  and  (x u y) _|_z u  =>  x _|_z (y u u).
    {
      auto it = by_lhs_cond.find(pack(x | y, z));
      if (it != by_lhs_cond.end())
        for (std::size_t i = 0; i < it->second.size(); ++i) {
          Mask u = it->second[i];
          add({Kind::CondInd, x, y | u, z}, "g4", {a, {Kind::CondInd, x | y, u, z}});
        }
    }
    for_each_submask(x, [&](Mask x1) {  // a as second premise, lhs = x1 u y1
      Mask rem = x & ~x1;
      for_each_submask(x1, [&](Mask t) {
        Mask y1 = rem | t;
        Atom first{Kind::CondInd, x1, y1, z};
        if (s.closure.contains(first)) add({Kind::CondInd, x1, y1 | y, z}, "g4", {first, a});
      });
    });
  }
  return s.closure;
}

Mask attribute_closure(Mask x, const std::vector<Atom>& sigma) {
  Mask cur = x;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& a : sigma)
      if (mask_subset(a.lhs, cur) && !mask_subset(a.rhs, cur)) {
        cur |= a.rhs;
        changed = true;
      }
  }
  return cur;
}

ProofNode extract_proof(const Closure& closure, const Atom& goal) {
  const auto it = closure.provenance.find(goal);
  if (it == closure.provenance.end()) throw AtomError("goal not in closure");
  ProofNode node;
  node.atom = goal;
  node.rule = it->second.rule;
  for (const auto& p : it->second.premises) node.premises.push_back(extract_proof(closure, p));
  return node;
}

namespace {

Judgment closure_judgment(const Closure& closure, const Atom& goal, bool incomplete) {
  Judgment j;
  j.incomplete_system = incomplete;
  j.derivable = closure.contains(goal);
  if (j.derivable) j.proof = extract_proof(closure, goal);
  return j;
}

// Proof assembly for the Armstrong system: per-variable proofs of
// dep(x, {v}) grown by firing sigma atoms, then d1-chained into the goal.
struct DepProofBuilder {
  Mask x;
  const std::vector<Atom>& sigma;
  std::unordered_map<int, ProofNode> var_proof;  // v -> proof of dep(x, {v})

  ProofNode premise_node(const Atom& a) const { return {a, "premise", {}}; }

  ProofNode dep_node(Mask lhs, Mask rhs, std::string rule, std::vector<ProofNode> prem) const {
    return {{Kind::Dep, lhs, rhs, 0}, std::move(rule), std::move(prem)};
  }

  // d1-chain the per-variable proofs into dep(x, set).
  ProofNode combine(Mask set) const {
    auto ids = mask_ids(set);
    ProofNode acc = var_proof.at(ids[0]);
    for (std::size_t i = 1; i < ids.size(); ++i) {
      Mask so_far = acc.atom.rhs | bit(ids[i]);
      acc = dep_node(x, so_far, "d1", {acc, var_proof.at(ids[i])});
    }
    return acc;
  }

  void build() {
    ProofNode refl = dep_node(x, x, "a1", {});
    mask_for_each(x, [&](int v) {
      var_proof.emplace(v, dep_node(x, bit(v), "b1", {refl}));
    });
    Mask have = x;
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& a : sigma) {
        if (!mask_subset(a.lhs, have) || mask_subset(a.rhs, have)) continue;
        ProofNode dep_xw =
            a.lhs == 0
                ? dep_node(x, a.rhs, "b1", {premise_node(a)})
                : dep_node(x, a.rhs, "c1", {combine(a.lhs), premise_node(a)});
        mask_for_each(a.rhs & ~have, [&](int v) {
          var_proof.emplace(v, dep_node(x, bit(v), "b1", {dep_xw}));
        });
        have |= a.rhs;
        changed = true;
      }
    }
  }

  ProofNode goal_proof(Mask rhs) const {
    if (rhs == 0) return {{Kind::Dep, 0, 0, 0}, "a1", {}};  // dep((), ())
    ProofNode acc = combine(rhs);
    return acc;
  }
};

}  // namespace

Judgment derives_dep(const Problem& problem) {
  if (problem.kind != Kind::Dep) throw AtomError("derives_dep on non-dep problem");
  for (const auto& a : problem.sigma)
    if (a.kind != Kind::Dep) throw AtomError("mixed atom kinds in sigma");
  Judgment j;
  Mask closed = attribute_closure(problem.goal.lhs, problem.sigma);
  j.derivable = mask_subset(problem.goal.rhs, closed);
  if (j.derivable) {
    DepProofBuilder b{problem.goal.lhs, problem.sigma, {}};
    b.build();
    j.proof = b.goal_proof(problem.goal.rhs);
  }
  return j;
}

Judgment derives_indep(const Problem& problem) {
  if (problem.kind != Kind::Ind) throw AtomError("derives_indep on non-ind problem");
  return closure_judgment(indep_closure(problem.sigma, problem.universe), problem.goal, false);
}

Judgment derives_absind(const Problem& problem) {
  if (problem.kind != Kind::AbsInd) throw AtomError("derives_absind on non-abs problem");
  return closure_judgment(absind_closure(problem.sigma, problem.universe), problem.goal, false);
}

Judgment derives_condind(const Problem& problem) {
  if (problem.kind != Kind::CondInd) throw AtomError("derives_condind on non-cind problem");
  return closure_judgment(condind_closure(problem.sigma, problem.universe), problem.goal, true);
}

Judgment derives(const Problem& problem) {
  switch (problem.kind) {
    case Kind::Dep: return derives_dep(problem);
    case Kind::Ind: return derives_indep(problem);
    case Kind::AbsInd: return derives_absind(problem);
    case Kind::CondInd: return derives_condind(problem);
  }
  throw AtomError("unknown kind");
}

bool check_rule_instance(const std::string& rule, const std::vector<Atom>& p,
                         const Atom& c) {
  auto n = p.size();
  switch (c.kind) {
    case Kind::Dep:
      if (rule == "a1") return n == 0 && c.lhs == c.rhs;
      if (rule == "b1")
        return n == 1 && mask_subset(p[0].lhs, c.lhs) && mask_subset(c.rhs, p[0].rhs) &&
               dep_atom_valid(c.lhs, c.rhs);
      if (rule == "c1")
        return n == 2 && p[0].rhs == p[1].lhs && c.lhs == p[0].lhs && c.rhs == p[1].rhs;
      if (rule == "d1")
        return n == 2 && p[0].lhs == c.lhs && p[1].lhs == c.lhs && c.rhs == (p[0].rhs | p[1].rhs);
      return false;
    case Kind::AbsInd:
      if (rule == "a2") return n == 0 && c.lhs == 0;
      if (rule == "b2") return n == 1 && mask_subset(c.lhs, p[0].lhs);
      return false;
    case Kind::Ind:
      if (rule == "a3") return n == 0 && c.rhs == 0;
      if (rule == "b3") return n == 1 && c.lhs == p[0].rhs && c.rhs == p[0].lhs;
      if (rule == "c3") return n == 1 && c.lhs == p[0].lhs && mask_subset(c.rhs, p[0].rhs);
      if (rule == "d3")
        return n == 2 && p[1].lhs == (p[0].lhs | p[0].rhs) && c.lhs == p[0].lhs &&
               c.rhs == (p[0].rhs | p[1].rhs);
      if (rule == "e3")
        return n == 1 && p[0].lhs == p[0].rhs && mask_size(p[0].lhs) == 1 && c.lhs == p[0].lhs;
      return false;
    case Kind::CondInd:
      if (rule == "a4") return n == 0 && c.cond == c.lhs;
      if (rule == "b4")
        return n == 1 && c.lhs == p[0].rhs && c.rhs == p[0].lhs && c.cond == p[0].cond;
      if (rule == "c4")
        return n == 1 && mask_subset(c.lhs, p[0].lhs) && mask_subset(c.rhs, p[0].rhs) &&
               c.cond == p[0].cond;
      if (rule == "d4")
        return n == 1 && c.cond == p[0].cond && c.lhs == (p[0].lhs | p[0].cond) &&
               c.rhs == (p[0].rhs | p[0].cond);
      if (rule == "e4")
        return n == 2 && p[1].cond == (p[0].cond | p[0].lhs) && p[1].rhs == p[0].rhs &&
               c.lhs == p[1].lhs && c.rhs == p[0].rhs && c.cond == p[0].cond;
      if (rule == "f4")
        return n == 2 && p[0].lhs == p[0].rhs && p[1].cond == p[0].lhs &&
               (c.lhs | p[0].cond) == p[1].lhs && c.rhs == p[1].rhs && c.cond == p[0].cond;
      if (rule == "g4")
        return n == 2 && p[1].lhs == (p[0].lhs | p[0].rhs) && p[1].cond == p[0].cond &&
               c.lhs == p[0].lhs && c.rhs == (p[0].rhs | p[1].rhs) && c.cond == p[0].cond;
      return false;
  }
  return false;
}

bool replay_proof(const ProofNode& node, const std::vector<Atom>& sigma, const Atom& goal) {
  if (node.atom != goal) return false;
  // Bottom-up: verify each node against its children, leaves against sigma.
  std::vector<const ProofNode*> stack{&node};
  while (!stack.empty()) {
    const ProofNode* cur = stack.back();
    stack.pop_back();
    if (cur->rule == "premise") {
      if (!cur->premises.empty()) return false;
      bool in_sigma = false;
      for (const auto& s : sigma)
        if (s == cur->atom) in_sigma = true;
      if (!in_sigma) return false;
      continue;
    }
    std::vector<Atom> prem;
    for (const auto& child : cur->premises) {
      prem.push_back(child.atom);
      stack.push_back(&child);
    }
    if (!check_rule_instance(cur->rule, prem, cur->atom)) return false;
  }
  return true;
}

namespace {

void print_proof_rec(const ProofNode& node, const VarTable& vars, int indent, std::string& out) {
  out.append(static_cast<std::size_t>(indent) * 2, ' ');
  out += print_atom(node.atom, vars);
  out += "  [";
  out += node.rule;
  if (!node.premises.empty()) {
    out += " from ";
    for (std::size_t i = 0; i < node.premises.size(); ++i) {
      if (i) out += "; ";
      out += print_atom(node.premises[i].atom, vars);
    }
  }
  out += "]\n";
  for (const auto& child : node.premises) print_proof_rec(child, vars, indent + 1, out);
}

}  // namespace

std::string print_proof(const ProofNode& proof, const VarTable& vars) {
  std::string out;
  print_proof_rec(proof, vars, 0, out);
  return out;
}

}  // namespace idcalc
