#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "residua/element_set.hpp"
#include "residua/lattice.hpp"

namespace residua {

/// Residual rank: a natural number, or omega for the testbed's limit step.
struct RankValue {
  bool omega = false;
  std::size_t finite = 0;

  static RankValue of(std::size_t k) { return RankValue{false, k}; }
  static RankValue limit() { return RankValue{true, 0}; }

  friend bool operator==(const RankValue&, const RankValue&) = default;
};

std::string to_string(const RankValue& r);

enum class Verification { Verified, Violated, NotApplicable };

std::string_view to_string(Verification v);

struct ResidualProfile {
  Elem element = 0;
  bool family_is_all = true;
  ElementSet maximal;
  Elem mu = 0;
  RankValue rank;
  Elem core = 0;
  /// (m, x - m) for m in M_H(x), increasing in m.
  std::vector<std::pair<Elem, Elem>> residues;
  Elem boundary = 0;
  /// x^(0), ..., x^(rank); the last entry is the core.
  std::vector<Elem> iterates;
  /// strata[a] = {x^(a) - m : m in M_H(x^(a))} for a < rank.
  std::vector<ElementSet> strata;
  ElementSet delta;
  /// First stratum index of every element of delta.
  std::map<Elem, std::size_t> rho;
  std::size_t t_class = 0;

  Verification core_residue_identity = Verification::NotApplicable;
  Verification core_fixpoint = Verification::NotApplicable;
  Verification delta_plus_identity = Verification::NotApplicable;
};

/// True when `h` contains the bottom and is closed under binary joins.
bool is_join_closed_with_bottom(const FiniteLattice& l, const ElementSet& h);

Elem residual_derivative(const FiniteLattice& l, Elem x, const ElementSet& h);
Elem residual_derivative(const FiniteLattice& l, Elem x);

ResidualProfile residual_profile(const FiniteLattice& l, Elem x, const ElementSet& h);
ResidualProfile residual_profile(const FiniteLattice& l, Elem x);
std::vector<ResidualProfile> all_profiles(const FiniteLattice& l);

Elem core_of(const FiniteLattice& l, Elem x);

/// H-outcasts of x by direct scan of the definition.
ElementSet outcasts(const FiniteLattice& l, Elem x, const ElementSet& h);
ElementSet outcasts(const FiniteLattice& l, Elem x);

/// |M(x)|.
std::size_t classify_T(const FiniteLattice& l, Elem x);
/// T_n: elements with exactly n maximal subelements.
ElementSet t_class_members(const FiniteLattice& l, std::size_t n);

/// I(L): |M(x)| = 1 and every z < x lies below mu(x).
ElementSet completely_coirreducibles(const FiniteLattice& l);
/// {s in I(L) : s <= x, s not <= c(x)}.
ElementSet delta_plus(const FiniteLattice& l, Elem x);

struct RelativeStrata {
  std::vector<ElementSet> strata;
  RankValue rank;
  ElementSet delta;
};

/// Strata of z with the elements below x removed. Throws Error(NotBelow)
/// unless x <= z.
RelativeStrata relative_strata(const FiniteLattice& l, Elem x, Elem z);

}  // namespace residua
