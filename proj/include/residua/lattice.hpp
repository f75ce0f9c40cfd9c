#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "residua/element_set.hpp"
#include "residua/poset.hpp"

namespace residua {

/// Explicit finite lattice: closure matrix plus meet/join tables and bottom.
///
/// Every operation reads the tables; the order matrix answers `leq`. The two
/// are consistent for instances built by `as_lattice`. `with_corrupted_entry`
/// produces deliberately inconsistent copies for fault-injection harnesses.
class FiniteLattice {
 public:
  using element_type = Elem;

  enum class Table { Meet, Join };

  FiniteLattice() = default;

  std::size_t size() const noexcept { return poset_.size(); }
  const FinitePoset& poset() const noexcept { return poset_; }
  const std::string& name(Elem e) const { return poset_.name(e); }
  const std::vector<std::string>& names() const noexcept { return poset_.names(); }

  bool leq(Elem a, Elem b) const noexcept { return poset_.leq(a, b); }
  bool lt(Elem a, Elem b) const noexcept { return poset_.lt(a, b); }
  Elem meet(Elem a, Elem b) const noexcept { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const noexcept { return join_[a * size() + b]; }
  Elem bottom() const noexcept { return bottom_; }
  std::optional<Elem> top() const noexcept { return top_; }

  bool distributive() const noexcept { return distributive_; }
  /// Finite case: the dual infinite distributive law reduces to the binary one.
  bool coframe() const noexcept { return distributive_; }

  const ElementSet& down_set(Elem x) const { return poset_.down_set(x); }
  const ElementSet& up_set(Elem x) const { return poset_.up_set(x); }
  ElementSet all() const { return ElementSet::full(size()); }
  ElementSet empty_set() const { return ElementSet(size()); }

  /// Throws Error(NoTop) for the empty meet when the lattice has no top.
  Elem meet_of_set(const ElementSet& s) const;
  Elem join_of_set(const ElementSet& s) const;

  /// Maximal elements of {z in family : z < x}.
  ElementSet maximal_subelements(Elem x, const ElementSet& family) const;
  ElementSet maximal_subelements(Elem x) const;
  std::vector<Elem> lower_covers(Elem x) const { return maximal_subelements(x).to_vector(); }

  /// Co-Heyting subtraction `x - z`: meet of {y <= x : z v y = x}.
  /// Throws Error(NotBelow) unless z <= x.
  Elem co_heyting_sub(Elem x, Elem z) const;

  /// Copy with a single table entry overwritten. Flags are not recomputed.
  FiniteLattice with_corrupted_entry(Table table, Elem a, Elem b, Elem value) const;

  /// Recomputes the distributivity flag by scanning every triple.
  bool distributive_by_triples() const;

  friend FiniteLattice as_lattice(const FinitePoset& p);

 private:
  FinitePoset poset_;
  std::vector<std::uint16_t> meet_;
  std::vector<std::uint16_t> join_;
  Elem bottom_ = 0;
  std::optional<Elem> top_;
  bool distributive_ = false;
};

/// Verifies that every pair has a meet and a join and builds the tables.
/// Throws Error(NotALattice) with a witness pair, or Error(NoBottom).
FiniteLattice as_lattice(const FinitePoset& p);

/// Every element of a finite lattice is dually compact. With `audit` set and
/// at most `audit_cap` elements, the definition is checked over all filtered
/// subsets instead.
bool dually_compact_finite(const FiniteLattice& l, Elem x, bool audit = false,
                           std::size_t audit_cap = 10);

}  // namespace residua
