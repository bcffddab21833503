#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "idcalc/counter.hpp"
#include "idcalc/derive.hpp"
#include "idcalc/geometry.hpp"
#include "idcalc/parse.hpp"
#include "idcalc/team.hpp"

namespace {

using namespace idcalc;

constexpr int kExitYes = 0;
constexpr int kExitNo = 1;
constexpr int kExitError = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int cmd_entails(const std::string& file, bool with_proof) {
  VarTable vars;
  Problem problem = parse_problem(slurp(file), vars);
  Judgment j = derives(problem);
  if (j.derivable) {
    std::cout << "derivable\n";
    if (with_proof && j.proof) std::cout << print_proof(*j.proof, vars);
    return kExitYes;
  }
  if (j.incomplete_system)
    std::cout << "not derivable (system incomplete: no semantic conclusion follows)\n";
  else
    std::cout << "not derivable\n";
  return kExitNo;
}

std::string team_witness_text(const Team& team, const Problem& problem, const VarTable& vars) {
  std::string out = print_team_csv(team, vars);
  out += "# certificate: all premises hold, goal fails\n";
  for (const auto& a : problem.sigma)
    out += "# " + print_atom(a, vars) + "\ttrue\n";
  out += "# " + print_atom(problem.goal, vars) + "\tfalse\n";
  return out;
}

std::string geometry_witness_text(const GeometryWitness& w, const Problem& problem,
                                  const VarTable& vars) {
  std::string out = print_space_assignment(w.space, w.assignment, vars);
  out += "# certificate: all premises hold, goal fails\n";
  for (const auto& a : problem.sigma)
    out += "# " + print_atom(a, vars) + "\ttrue\n";
  out += "# " + print_atom(problem.goal, vars) + "\tfalse\n";
  return out;
}

int cmd_counter(const std::string& file, const std::string& semantics, const std::string& out_path) {
  VarTable vars;
  Problem problem = parse_problem(slurp(file), vars);
  if (problem.kind == Kind::CondInd) {
    std::cerr << "error: the conditional system is incomplete; non-derivability licenses "
                 "no countermodel claim\n";
    return kExitError;
  }
  CounterResult result;
  if (semantics == "team") {
    switch (problem.kind) {
      case Kind::Dep: result = counter_dep_team(problem); break;
      case Kind::AbsInd: result = counter_absind_team(problem); break;
      case Kind::Ind: result = counter_ind_team(problem); break;
      default: break;
    }
  } else {
    switch (problem.kind) {
      case Kind::Dep: result = counter_dep_closure(problem); break;
      case Kind::AbsInd: result = counter_absind_pregeo(problem); break;
      case Kind::Ind: result = counter_ind_pregeo(problem); break;
      default: break;
    }
  }
  if (result.is_derivable()) {
    std::cout << "derivable; no countermodel exists\n";
    if (result.judgment->proof) std::cout << print_proof(*result.judgment->proof, vars);
    return kExitNo;
  }
  std::string text = result.team ? team_witness_text(*result.team, problem, vars)
                                 : geometry_witness_text(*result.geometry, problem, vars);
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
  std::cout << "countermodel written (" << (result.team ? "team" : "geometry") << ")\n";
  return kExitYes;
}

int cmd_check(const std::string& team_path, const std::string& atoms_path) {
  VarTable vars;
  Team team = parse_team_csv(slurp(team_path), vars);
  std::vector<Atom> atoms = parse_atom_list(slurp(atoms_path), vars);
  SatReport report = satisfies_all(team, atoms);
  for (const auto& v : report.verdicts) {
    std::cout << print_atom(v.atom, vars) << '\t' << (v.holds ? "true" : "false") << '\t';
    if (v.witness)
      std::cout << "rows " << v.witness->s << ',' << v.witness->s_prime;
    else
      std::cout << '-';
    std::cout << '\n';
  }
  return report.all_hold() ? kExitYes : kExitNo;
}

int cmd_mine(const std::string& team_path, const std::string& kind_name, int max_arity) {
  VarTable vars;
  Team team = parse_team_csv(slurp(team_path), vars);
  Kind kind;
  if (kind_name == "dep") kind = Kind::Dep;
  else if (kind_name == "ind") kind = Kind::Ind;
  else if (kind_name == "abs") kind = Kind::AbsInd;
  else if (kind_name == "cind") kind = Kind::CondInd;
  else throw std::runtime_error("unknown kind " + kind_name);
  for (const auto& a : mine(team, kind, max_arity)) std::cout << print_atom(a, vars) << '\n';
  return kExitYes;
}

int cmd_audit(const std::string& space_spec, int samples, std::uint64_t seed) {
  // Space spec: f<p>:<k>, e.g. f2:6.
  if (space_spec.size() < 4 || space_spec[0] != 'f')
    throw std::runtime_error("space spec must look like f2:6");
  auto colon = space_spec.find(':');
  if (colon == std::string::npos) throw std::runtime_error("space spec must look like f2:6");
  int p = std::stoi(space_spec.substr(1, colon - 1));
  int k = std::stoi(space_spec.substr(colon + 1));
  VectorSpaceGeometry space(p, k);
  AuditReport report = audit_axioms(space, samples, seed);
  std::cout << "checked " << report.checks << " samples, " << report.violations.size()
            << " violations\n";
  for (const auto& v : report.violations) std::cout << "violation: " << v << '\n';
  return report.clean() ? kExitYes : kExitNo;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"calculus engine for dependence and independence atoms"};
  app.require_subcommand(1);

  std::string problem_file, team_file, atoms_file, out_path;
  std::string semantics = "team", kind = "dep", space_spec;
  bool with_proof = false;
  int max_arity = 2, samples = 1000;
  std::uint64_t seed = 0;

  auto* entails = app.add_subcommand("entails", "decide derivability of a problem file");
  entails->add_option("problem", problem_file)->required();
  entails->add_flag("--proof", with_proof, "print the derivation tree");

  auto* counter = app.add_subcommand("counter", "synthesize a verified countermodel");
  counter->add_option("problem", problem_file)->required();
  counter->add_option("--semantics", semantics)->check(CLI::IsMember({"team", "pregeometry"}));
  counter->add_option("-o,--output", out_path, "witness output file (default stdout)");

  auto* check = app.add_subcommand("check", "evaluate atoms against a team CSV");
  check->add_option("team", team_file)->required();
  check->add_option("atoms", atoms_file)->required();

  auto* mine_cmd = app.add_subcommand("mine", "list atoms a team satisfies");
  mine_cmd->add_option("team", team_file)->required();
  mine_cmd->add_option("--kind", kind)->check(CLI::IsMember({"dep", "ind", "abs", "cind"}));
  mine_cmd->add_option("--max-arity", max_arity);

  auto* audit = app.add_subcommand("audit", "randomized pregeometry axiom audit");
  audit->add_option("--space", space_spec)->required();
  audit->add_option("--samples", samples);
  audit->add_option("--seed", seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*entails) return cmd_entails(problem_file, with_proof);
    if (*counter) return cmd_counter(problem_file, semantics, out_path);
    if (*check) return cmd_check(team_file, atoms_file);
    if (*mine_cmd) return cmd_mine(team_file, kind, max_arity);
    if (*audit) return cmd_audit(space_spec, samples, seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
