#pragma once

#include <string>
#include <utility>
#include <vector>

#include "residua/element_set.hpp"

namespace residua {

enum class RelationMode { Covers, Leq };

/// Explicit finite poset with the full closure matrix.
///
/// Row `i` of `up` holds {j : i <= j}; row `i` of `down` holds {j : j <= i}.
/// Instances are immutable once built and the poset axioms are checked by the
/// constructor.
class FinitePoset {
 public:
  FinitePoset() = default;

  /// Takes an already transitively closed, reflexive relation given as up-sets.
  /// Throws Error(CycleDetected) if antisymmetry fails.
  FinitePoset(std::vector<std::string> names, std::vector<ElementSet> up);

  std::size_t size() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const std::string& name(Elem e) const { return names_.at(e); }

  bool leq(Elem a, Elem b) const noexcept { return up_[a].contains(b); }
  bool lt(Elem a, Elem b) const noexcept { return a != b && up_[a].contains(b); }

  const ElementSet& up_set(Elem x) const { return up_.at(x); }
  const ElementSet& down_set(Elem x) const { return down_.at(x); }

  /// Hasse edges (a, b) with a covered by b, sorted.
  std::vector<std::pair<Elem, Elem>> covers() const;

  /// Throws Error(UnknownElement) if missing.
  Elem index_of(const std::string& name) const;

  /// Induced subposet on `keep`, indices renumbered in increasing order.
  FinitePoset induced(const ElementSet& keep) const;

 private:
  std::vector<std::string> names_;
  std::vector<ElementSet> up_;
  std::vector<ElementSet> down_;
};

/// Builds a poset from named pairs. In Covers mode pairs are Hasse edges; in
/// Leq mode they are arbitrary order pairs. Either way the reflexive and
/// transitive closure is taken.
FinitePoset build_poset(std::vector<std::string> names,
                        const std::vector<std::pair<std::string, std::string>>& relation,
                        RelationMode mode);

/// Index-based variant of build_poset.
FinitePoset build_poset_indexed(std::vector<std::string> names,
                                const std::vector<std::pair<Elem, Elem>>& relation);

}  // namespace residua
