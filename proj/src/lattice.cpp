#include "residua/lattice.hpp"

#include <limits>

#include "residua/error.hpp"

namespace residua {

namespace {

// Greatest element of `s`, if any: the member whose down-set contains `s`.
std::optional<Elem> greatest(const FinitePoset& p, const ElementSet& s,
                             const std::vector<std::size_t>& down_count) {
  if (s.empty()) return std::nullopt;
  Elem best = s.first();
  for (Elem e : s)
    if (down_count[e] > down_count[best]) best = e;
  if (!s.is_subset_of(p.down_set(best))) return std::nullopt;
  return best;
}

std::optional<Elem> least(const FinitePoset& p, const ElementSet& s,
                          const std::vector<std::size_t>& up_count) {
  if (s.empty()) return std::nullopt;
  Elem best = s.first();
  for (Elem e : s)
    if (up_count[e] > up_count[best]) best = e;
  if (!s.is_subset_of(p.up_set(best))) return std::nullopt;
  return best;
}

}  // namespace

FiniteLattice as_lattice(const FinitePoset& p) {
  const std::size_t n = p.size();
  if (n == 0) throw Error(ErrorKind::NoBottom, "empty poset");
  if (n > std::numeric_limits<std::uint16_t>::max())
    throw Error(ErrorKind::TooLarge, "lattice tables are capped at 65535 elements");

  std::vector<std::size_t> down_count(n), up_count(n);
  for (Elem i = 0; i < n; ++i) {
    down_count[i] = p.down_set(i).count();
    up_count[i] = p.up_set(i).count();
  }

  FiniteLattice l;
  l.poset_ = p;
  l.meet_.assign(n * n, 0);
  l.join_.assign(n * n, 0);
  for (Elem i = 0; i < n; ++i) {
    for (Elem j = i; j < n; ++j) {
      auto m = greatest(p, p.down_set(i) & p.down_set(j), down_count);
      if (!m)
        throw Error(ErrorKind::NotALattice,
                    "no meet for ('" + p.name(i) + "', '" + p.name(j) + "')");
      auto v = least(p, p.up_set(i) & p.up_set(j), up_count);
      if (!v)
        throw Error(ErrorKind::NotALattice,
                    "no join for ('" + p.name(i) + "', '" + p.name(j) + "')");
      l.meet_[i * n + j] = l.meet_[j * n + i] = static_cast<std::uint16_t>(*m);
      l.join_[i * n + j] = l.join_[j * n + i] = static_cast<std::uint16_t>(*v);
    }
  }

  bool have_bottom = false;
  for (Elem i = 0; i < n; ++i) {
    if (up_count[i] == n) {
      l.bottom_ = i;
      have_bottom = true;
    }
    if (down_count[i] == n) l.top_ = i;
  }
  if (!have_bottom) throw Error(ErrorKind::NoBottom, "no least element");

  // Distributive iff x -> {join-irreducibles below x} preserves binary joins.
  ElementSet irreducible(n);
  for (Elem x = 0; x < n; ++x)
    if (x != l.bottom_ && l.maximal_subelements(x).count() == 1) irreducible.insert(x);
  std::vector<ElementSet> phi(n);
  for (Elem x = 0; x < n; ++x) phi[x] = p.down_set(x) & irreducible;
  l.distributive_ = true;
  for (Elem x = 0; x < n && l.distributive_; ++x)
    for (Elem y = x + 1; y < n; ++y)
      if (phi[l.join(x, y)] != (phi[x] | phi[y])) {
        l.distributive_ = false;
        break;
      }
  return l;
}

Elem FiniteLattice::meet_of_set(const ElementSet& s) const {
  if (s.empty()) {
    if (!top_) throw Error(ErrorKind::NoTop, "empty meet in a lattice without top");
    return *top_;
  }
  Elem acc = s.first();
  for (Elem e : s) acc = meet(acc, e);
  return acc;
}

Elem FiniteLattice::join_of_set(const ElementSet& s) const {
  Elem acc = bottom_;
  for (Elem e : s) acc = join(acc, e);
  return acc;
}

ElementSet FiniteLattice::maximal_subelements(Elem x, const ElementSet& family) const {
  ElementSet cand = down_set(x) & family;
  cand.erase(x);
  ElementSet out(size());
  for (Elem c : cand) {
    ElementSet above = up_set(c) & cand;
    above.erase(c);
    if (above.empty()) out.insert(c);
  }
  return out;
}

ElementSet FiniteLattice::maximal_subelements(Elem x) const {
  return maximal_subelements(x, all());
}

Elem FiniteLattice::co_heyting_sub(Elem x, Elem z) const {
  if (!leq(z, x))
    throw Error(ErrorKind::NotBelow, "'" + name(z) + "' is not below '" + name(x) + "'");
  Elem acc = x;
  for (Elem y : down_set(x))
    if (join(z, y) == x) acc = meet(acc, y);
  return acc;
}

FiniteLattice FiniteLattice::with_corrupted_entry(Table table, Elem a, Elem b, Elem value) const {
  FiniteLattice copy(*this);
  auto& t = table == Table::Meet ? copy.meet_ : copy.join_;
  t.at(a * size() + b) = static_cast<std::uint16_t>(value);
  return copy;
}

bool FiniteLattice::distributive_by_triples() const {
  const std::size_t n = size();
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        if (meet(x, join(y, z)) != join(meet(x, y), meet(x, z))) return false;
  return true;
}

bool dually_compact_finite(const FiniteLattice& l, Elem x, bool audit, std::size_t audit_cap) {
  const std::size_t n = l.size();
  if (!audit || n > audit_cap) return true;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    ElementSet f(n);
    for (Elem i = 0; i < n; ++i)
      if ((mask >> i) & 1u) f.insert(i);
    bool filtered = true;
    for (Elem a : f) {
      for (Elem b : f) {
        if (!(l.down_set(a) & l.down_set(b) & f).empty()) continue;
        filtered = false;
        break;
      }
      if (!filtered) break;
    }
    if (!filtered || !l.leq(l.meet_of_set(f), x)) continue;
    bool some_below = false;
    for (Elem a : f)
      if (l.leq(a, x)) some_below = true;
    if (!some_below) return false;
  }
  return true;
}

}  // namespace residua
