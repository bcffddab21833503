#include "idcalc/atoms.hpp"

#include <cstdlib>

namespace idcalc {

std::vector<int> mask_ids(Mask m) {
  std::vector<int> out;
  mask_for_each(m, [&](int id) { out.push_back(id); });
  return out;
}

int VarTable::intern(std::string_view name) {
  auto it = index_.find(std::string(name));
  if (it != index_.end()) return it->second;
  int id = static_cast<int>(names_.size());
  if (id >= kMaxVars) throw CapError("variable limit exceeded (max 32 per session)");
  names_.emplace_back(name);
  index_.emplace(names_.back(), id);
  return id;
}

std::optional<int> VarTable::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Mask VarTable::all() const {
  int n = size();
  return n == kMaxVars ? ~Mask{0} : (bit(n) - 1);
}

std::string_view kind_name(Kind k) {
  switch (k) {
    case Kind::Dep: return "dep";
    case Kind::AbsInd: return "abs";
    case Kind::Ind: return "ind";
    case Kind::CondInd: return "cind";
  }
  return "?";
}

int component_count(Kind k) {
  switch (k) {
    case Kind::Dep:
    case Kind::Ind: return 2;
    case Kind::AbsInd: return 1;
    case Kind::CondInd: return 3;
  }
  return 0;
}

bool dep_atom_valid(Mask lhs, Mask rhs) { return lhs == 0 || rhs != 0; }

Atom canonicalize(Kind kind, const std::vector<std::vector<std::string>>& components,
                  VarTable& vars) {
  if (static_cast<int>(components.size()) != component_count(kind))
    throw AtomError("wrong component count for " + std::string(kind_name(kind)));

  auto to_mask = [&](const std::vector<std::string>& names, bool reject_dups) {
    Mask m = 0;
    for (const auto& n : names) {
      Mask b = bit(vars.intern(n));
      if (reject_dups && (m & b)) throw AtomError("duplicate variable '" + n + "' in abs atom");
      m |= b;
    }
    return m;
  };

  Atom a;
  a.kind = kind;
  switch (kind) {
    case Kind::Dep:
      a.lhs = to_mask(components[0], false);
      a.rhs = to_mask(components[1], false);
      if (!dep_atom_valid(a.lhs, a.rhs))
        throw AtomError("dep atom with nonempty lhs requires nonempty rhs");
      break;
    case Kind::Ind:
      a.lhs = to_mask(components[0], false);
      a.rhs = to_mask(components[1], false);
      break;
    case Kind::AbsInd:
      a.lhs = to_mask(components[0], true);
      break;
    case Kind::CondInd:
      a.lhs = to_mask(components[0], false);
      a.cond = to_mask(components[1], false);
      a.rhs = to_mask(components[2], false);
      break;
  }
  return a;
}

int max_universe_vars(Kind k) {
  if (const char* env = std::getenv("IDCALC_MAX_VARS")) {
    int v = std::atoi(env);
    if (v >= 1) return v > kMaxVars ? kMaxVars : v;
  }
  switch (k) {
    case Kind::Dep:
    case Kind::Ind: return 8;
    case Kind::CondInd: return 6;
    case Kind::AbsInd: return 16;
  }
  return 8;
}

namespace {

// Subsets of u in a fixed order: 0, then decreasing (s-1)&u wraps the usual
// submask walk; we emit ascending instead for readability of dumps.
template <typename F>
void for_each_subset(Mask u, F&& f) {
  Mask s = 0;
  while (true) {
    f(s);
    if (s == u) break;
    s = (s - u) & u;  // next subset in increasing numeric order
  }
}

}  // namespace

std::vector<Atom> atom_universe(Kind kind, Mask universe) {
  int n = mask_size(universe);
  if (n > max_universe_vars(kind))
    throw CapError("universe of " + std::to_string(n) + " variables exceeds cap for " +
                   std::string(kind_name(kind)));

  std::vector<Atom> out;
  switch (kind) {
    case Kind::AbsInd:
      out.reserve(std::size_t{1} << n);
      for_each_subset(universe, [&](Mask x) { out.push_back({Kind::AbsInd, x, 0, 0}); });
      break;
    case Kind::Dep:
    case Kind::Ind:
      for_each_subset(universe, [&](Mask x) {
        for_each_subset(universe, [&](Mask y) {
          if (kind == Kind::Dep && !dep_atom_valid(x, y)) return;
          out.push_back({kind, x, y, 0});
        });
      });
      break;
    case Kind::CondInd:
      for_each_subset(universe, [&](Mask x) {
        for_each_subset(universe, [&](Mask z) {
          for_each_subset(universe, [&](Mask y) {
            out.push_back({Kind::CondInd, x, y, z});
          });
        });
      });
      break;
  }
  return out;
}

Problem Problem::make(Kind kind, std::vector<Atom> sigma, Atom goal) {
  Problem p;
  p.kind = kind;
  p.sigma = std::move(sigma);
  p.goal = goal;
  p.universe = goal.vars();
  for (const auto& a : p.sigma) p.universe |= a.vars();
  return p;
}

}  // namespace idcalc
