#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "idcalc/atoms.hpp"

namespace idcalc {

// Rule names follow the deductive systems for the four atom kinds:
//   Dep:     a1 reflexivity, b1 augment/project, c1 transitivity, d1 union
//   AbsInd:  a2 empty, b2 subset
//   Ind:     a3 empty, b3 symmetry, c3 projection, d3 exchange,
//            e3 anti-reflexivity (single-variable premise x _|_ x)
//   CondInd: a4 self-condition, b4 symmetry, c4 projection, d4 absorption,
//            e4 contraction, f4 weak transitivity, g4 mixed exchange
// Permutation/duplication rules are structural: canonicalization absorbs
// them, so they never appear in proofs.
struct RuleInstance {
  std::string rule;            // "premise" marks a member of sigma
  std::vector<Atom> premises;  // empty for axiom rules and premises
};

/// Least fixed point of a deductive system over the canonical atom universe,
/// with first-derivation provenance.
struct Closure {
  std::vector<Atom> derived;  // derivation order, deterministic
  std::unordered_map<Atom, RuleInstance, AtomHash> provenance;

  bool contains(const Atom& a) const { return provenance.count(a) != 0; }
};

struct ProofNode {
  Atom atom;
  std::string rule;
  std::vector<ProofNode> premises;
};

struct Judgment {
  bool derivable = false;
  std::optional<ProofNode> proof;   // present iff derivable
  bool incomplete_system = false;   // set for CondInd: "not derivable" is not
                                    // "semantically false"
};

Closure indep_closure(const std::vector<Atom>& sigma, Mask universe);
Closure absind_closure(const std::vector<Atom>& sigma, Mask universe);
Closure condind_closure(const std::vector<Atom>& sigma, Mask universe);

/// The largest y with sigma |-_D dep(x, y), by iterated rule application.
Mask attribute_closure(Mask x, const std::vector<Atom>& sigma);

Judgment derives_indep(const Problem& problem);
Judgment derives_dep(const Problem& problem);
Judgment derives_absind(const Problem& problem);
Judgment derives_condind(const Problem& problem);

/// Dispatch on problem kind.
Judgment derives(const Problem& problem);

/// Extract a proof tree for `goal` from closure provenance.
ProofNode extract_proof(const Closure& closure, const Atom& goal);

/// Check one rule instance: does `conclusion` follow from `premises` by the
/// named rule of its kind's system? Used by proof replay.
bool check_rule_instance(const std::string& rule, const std::vector<Atom>& premises,
                         const Atom& conclusion);

/// Replay a proof bottom-up: every leaf is a sigma member or an axiom rule,
/// every inner node a valid rule instance, and the root equals `goal`.
bool replay_proof(const ProofNode& proof, const std::vector<Atom>& sigma, const Atom& goal);

/// Indented text, one rule instance per line:
///   <conclusion>  [<rule> from <premises>]
std::string print_proof(const ProofNode& proof, const VarTable& vars);

}  // namespace idcalc
