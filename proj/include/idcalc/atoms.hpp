#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace idcalc {

// Dense variable ids packed into a bitmask. Hard limit of 32 variables per
// session; saturation caps are much lower (see max_universe_vars).
using Mask = std::uint32_t;

inline constexpr int kMaxVars = 32;

inline int mask_size(Mask m) { return __builtin_popcount(m); }
inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }
inline Mask bit(int id) { return Mask{1} << id; }

/// Iterate set bits in ascending id order.
template <typename F>
void mask_for_each(Mask m, F&& f) {
  while (m) {
    int id = __builtin_ctz(m);
    f(id);
    m &= m - 1;
  }
}

std::vector<int> mask_ids(Mask m);

class AtomError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CapError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Injective name <-> dense id interning. Ids are contiguous from 0.
/// Mutation happens during problem/team load; afterwards instances are
/// treated as immutable and shared freely.
class VarTable {
 public:
  int intern(std::string_view name);
  std::optional<int> find(std::string_view name) const;
  const std::string& name(int id) const { return names_.at(id); }
  int size() const { return static_cast<int>(names_.size()); }

  /// All currently interned variables as a mask.
  Mask all() const;

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
};

enum class Kind { Dep, AbsInd, Ind, CondInd };

std::string_view kind_name(Kind k);

/// Canonical set form of the four atom kinds. Sides are variable-id masks;
/// permuted or duplicated spellings collapse to the same value.
///   Dep:     dep(lhs, rhs)        rhs != 0 required when lhs != 0
///   AbsInd:  abs(lhs)
///   Ind:     lhs _|_ rhs
///   CondInd: lhs _|_cond rhs
struct Atom {
  Kind kind{Kind::Ind};
  Mask lhs = 0;
  Mask rhs = 0;
  Mask cond = 0;

  auto operator<=>(const Atom&) const = default;

  Mask vars() const { return lhs | rhs | cond; }
};

struct AtomHash {
  std::size_t operator()(const Atom& a) const {
    std::uint64_t h = (std::uint64_t(a.lhs) << 32) | a.rhs;
    h ^= (std::uint64_t(a.cond) << 13) + 0x9e3779b97f4a7c15ull +
         (std::uint64_t(static_cast<int>(a.kind)) << 57);
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return static_cast<std::size_t>(h);
  }
};

/// Number of components an atom of this kind is built from
/// (Dep/Ind: 2, AbsInd: 1, CondInd: 3; CondInd order is lhs, cond, rhs).
int component_count(Kind k);

/// Build the canonical atom from named components. Throws AtomError on the
/// Dep syntactic constraint (rhs empty while lhs nonempty) and on duplicate
/// variables in an AbsInd list.
Atom canonicalize(Kind kind, const std::vector<std::vector<std::string>>& components,
                  VarTable& vars);

bool dep_atom_valid(Mask lhs, Mask rhs);

/// Saturation/enumeration cap for a universe of the given kind. Defaults:
/// Dep/Ind 8, CondInd 6, AbsInd 16; IDCALC_MAX_VARS overrides all of them.
int max_universe_vars(Kind k);

/// Enumerate every canonical atom of `kind` over subsets of `universe`,
/// exactly once, in a fixed deterministic order. Throws CapError when the
/// universe exceeds the cap.
std::vector<Atom> atom_universe(Kind kind, Mask universe);

/// Premises plus goal, all of one kind, over a finite variable universe.
struct Problem {
  Kind kind{Kind::Ind};
  std::vector<Atom> sigma;
  Atom goal;
  Mask universe = 0;

  static Problem make(Kind kind, std::vector<Atom> sigma, Atom goal);
};

}  // namespace idcalc
