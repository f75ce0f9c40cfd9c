#include "residua/poset.hpp"

#include <algorithm>
#include <unordered_map>

#include "residua/error.hpp"

namespace residua {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::CycleDetected: return "CycleDetected";
    case ErrorKind::UnknownElement: return "UnknownElement";
    case ErrorKind::NotALattice: return "NotALattice";
    case ErrorKind::NoBottom: return "NoBottom";
    case ErrorKind::NoTop: return "NoTop";
    case ErrorKind::NotBelow: return "NotBelow";
    case ErrorKind::BudgetExceeded: return "BudgetExceeded";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::InvalidGroup: return "InvalidGroup";
    case ErrorKind::NotT1: return "NotT1";
    case ErrorKind::BoundTooSmall: return "BoundTooSmall";
    case ErrorKind::PreconditionFailed: return "PreconditionFailed";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

FinitePoset::FinitePoset(std::vector<std::string> names, std::vector<ElementSet> up)
    : names_(std::move(names)), up_(std::move(up)) {
  const std::size_t n = names_.size();
  down_.assign(n, ElementSet(n));
  for (Elem i = 0; i < n; ++i) {
    if (!up_[i].contains(i)) up_[i].insert(i);
    for (Elem j : up_[i]) down_[j].insert(i);
  }
  for (Elem i = 0; i < n; ++i) {
    // i <= j and j <= i with j != i
    ElementSet both = up_[i] & down_[i];
    both.erase(i);
    if (!both.empty()) {
      Elem j = both.first();
      throw Error(ErrorKind::CycleDetected,
                  "'" + names_[i] + "' and '" + names_[j] + "' are mutually below each other");
    }
  }
  for (Elem i = 0; i < n; ++i)
    for (Elem j : up_[i])
      if (!up_[j].is_subset_of(up_[i]))
        throw Error(ErrorKind::CycleDetected, "relation is not transitive at '" + names_[j] + "'");
}

std::vector<std::pair<Elem, Elem>> FinitePoset::covers() const {
  std::vector<std::pair<Elem, Elem>> out;
  const std::size_t n = size();
  for (Elem a = 0; a < n; ++a) {
    ElementSet above = up_[a];
    above.erase(a);
    for (Elem b : above) {
      // b covers a iff nothing strictly between them
      ElementSet between = above & down_[b];
      between.erase(b);
      if (between.empty()) out.emplace_back(a, b);
    }
  }
  return out;
}

Elem FinitePoset::index_of(const std::string& name) const {
  auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw Error(ErrorKind::UnknownElement, "'" + name + "'");
  return static_cast<Elem>(it - names_.begin());
}

FinitePoset FinitePoset::induced(const ElementSet& keep) const {
  std::vector<Elem> old = keep.to_vector();
  std::vector<std::string> names;
  names.reserve(old.size());
  for (Elem e : old) names.push_back(names_[e]);
  std::vector<ElementSet> up(old.size(), ElementSet(old.size()));
  for (Elem i = 0; i < old.size(); ++i)
    for (Elem j = 0; j < old.size(); ++j)
      if (leq(old[i], old[j])) up[i].insert(j);
  return FinitePoset(std::move(names), std::move(up));
}

FinitePoset build_poset_indexed(std::vector<std::string> names,
                                const std::vector<std::pair<Elem, Elem>>& relation) {
  const std::size_t n = names.size();
  std::vector<ElementSet> up(n, ElementSet(n));
  for (Elem i = 0; i < n; ++i) up[i].insert(i);
  for (auto [a, b] : relation) {
    if (a >= n || b >= n) throw Error(ErrorKind::UnknownElement, "index out of range");
    up[a].insert(b);
  }
  // Warshall closure on bit rows.
  for (Elem k = 0; k < n; ++k)
    for (Elem i = 0; i < n; ++i)
      if (up[i].contains(k)) up[i] |= up[k];
  return FinitePoset(std::move(names), std::move(up));
}

FinitePoset build_poset(std::vector<std::string> names,
                        const std::vector<std::pair<std::string, std::string>>& relation,
                        RelationMode /*mode*/) {
  // Covers and Leq inputs share the same closure; the mode only documents
  // the caller's intent.
  std::unordered_map<std::string, Elem> index;
  for (Elem i = 0; i < names.size(); ++i) {
    if (!index.emplace(names[i], i).second)
      throw Error(ErrorKind::UnknownElement, "duplicate element '" + names[i] + "'");
  }
  std::vector<std::pair<Elem, Elem>> pairs;
  pairs.reserve(relation.size());
  for (const auto& [a, b] : relation) {
    auto ia = index.find(a);
    if (ia == index.end()) throw Error(ErrorKind::UnknownElement, "'" + a + "'");
    auto ib = index.find(b);
    if (ib == index.end()) throw Error(ErrorKind::UnknownElement, "'" + b + "'");
    pairs.emplace_back(ia->second, ib->second);
  }
  return build_poset_indexed(std::move(names), pairs);
}

}  // namespace residua
