#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "residua/error.hpp"
#include "residua/generators.hpp"
#include "residua/lattice.hpp"
#include "residua/poset.hpp"

namespace support {

using residua::Elem;
using residua::ElementSet;

template <class F>
residua::ErrorKind kind_of(F&& f) {
  try {
    f();
  } catch (const residua::Error& e) {
    return e.kind();
  }
  throw std::logic_error("no residua::Error thrown");
}

inline residua::FiniteLattice from_covers(std::vector<std::string> names,
                                          const std::vector<std::pair<std::string, std::string>>& covers) {
  return residua::as_lattice(residua::build_poset(std::move(names), covers, residua::RelationMode::Covers));
}

inline residua::FiniteLattice chain(std::size_t k) { return residua::chain_lattice(k); }

inline residua::FiniteLattice diamond() {
  return from_covers({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}});
}

inline residua::FiniteLattice pentagon() {
  return from_covers({"0", "a", "b", "c", "1"}, {{"0", "a"}, {"a", "b"}, {"b", "1"}, {"0", "c"}, {"c", "1"}});
}

inline residua::FiniteLattice m3() {
  return from_covers({"0", "a", "b", "c", "1"},
                     {{"0", "a"}, {"0", "b"}, {"0", "c"}, {"a", "1"}, {"b", "1"}, {"c", "1"}});
}

/// Greatest lower bound found by scanning the order only.
inline Elem scan_meet(const residua::FiniteLattice& l, Elem a, Elem b) {
  Elem best = l.bottom();
  for (Elem z = 0; z < l.size(); ++z)
    if (l.leq(z, a) && l.leq(z, b) && l.leq(best, z)) best = z;
  return best;
}

inline Elem scan_join(const residua::FiniteLattice& l, Elem a, Elem b) {
  std::optional<Elem> best;
  for (Elem z = 0; z < l.size(); ++z)
    if (l.leq(a, z) && l.leq(b, z) && (!best || l.leq(z, *best))) best = z;
  return *best;
}

/// Maximal elements of {z : z < x}, by definition.
inline std::vector<Elem> scan_maximal(const residua::FiniteLattice& l, Elem x) {
  std::vector<Elem> out;
  for (Elem z = 0; z < l.size(); ++z) {
    if (!l.lt(z, x)) continue;
    bool maximal = true;
    for (Elem w = 0; w < l.size(); ++w)
      if (l.lt(z, w) && l.lt(w, x)) maximal = false;
    if (maximal) out.push_back(z);
  }
  return out;
}

/// mu(x) from the definition: meet of the maximal subelements, x when there are none.
inline Elem scan_mu(const residua::FiniteLattice& l, Elem x) {
  auto m = scan_maximal(l, x);
  if (m.empty()) return x;
  Elem r = m.front();
  for (Elem e : m) r = scan_meet(l, r, e);
  return r;
}

/// x - z: least y <= x with z v y = x, by candidate enumeration.
inline Elem scan_sub(const residua::FiniteLattice& l, Elem x, Elem z) {
  std::optional<Elem> best;
  for (Elem y = 0; y < l.size(); ++y)
    if (l.leq(y, x) && scan_join(l, z, y) == x && (!best || l.leq(y, *best))) best = y;
  return *best;
}

/// Transitively closed strict orders on {0..n-1} compatible with the natural
/// labelling, one representative per isomorphism class.
inline std::vector<residua::FinitePoset> posets_up_to(std::size_t n) {
  std::vector<std::pair<Elem, Elem>> slots;
  for (Elem i = 0; i < n; ++i)
    for (Elem j = i + 1; j < n; ++j) slots.emplace_back(i, j);
  std::set<std::vector<bool>> seen;
  std::vector<residua::FinitePoset> out;
  std::vector<std::size_t> perm(n);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << slots.size()); ++mask) {
    std::vector<bool> rel(n * n, false);
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1u) rel[slots[s].first * n + slots[s].second] = true;
    bool transitive = true;
    for (std::size_t a = 0; a < n && transitive; ++a)
      for (std::size_t b = 0; b < n && transitive; ++b)
        for (std::size_t c = 0; c < n && transitive; ++c)
          if (rel[a * n + b] && rel[b * n + c] && !rel[a * n + c]) transitive = false;
    if (!transitive) continue;
    std::vector<bool> canon;
    std::iota(perm.begin(), perm.end(), 0);
    do {
      std::vector<bool> image(n * n, false);
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
          if (rel[a * n + b]) image[perm[a] * n + perm[b]] = true;
      if (canon.empty() || image < canon) canon = image;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (n == 0) canon = rel;
    if (!seen.insert(canon).second) continue;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    std::vector<std::pair<Elem, Elem>> pairs;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if ((mask >> s) & 1u) pairs.push_back(slots[s]);
    out.push_back(residua::build_poset_indexed(std::move(names), pairs));
  }
  return out;
}

/// Down-sets of p counted by subset enumeration.
inline std::size_t brute_downset_count(const residua::FinitePoset& p) {
  std::size_t count = 0;
  const std::size_t n = p.size();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    bool down = true;
    for (Elem a = 0; a < n && down; ++a)
      if ((mask >> a) & 1u)
        for (Elem b = 0; b < n; ++b)
          if (p.leq(b, a) && !((mask >> b) & 1u)) down = false;
    count += down;
  }
  return count;
}

/// Subgroups found by testing every subset for closure (groups of order <= 12).
inline std::vector<std::vector<Elem>> brute_subgroups(const residua::CayleyTable& g) {
  std::vector<std::vector<Elem>> out;
  const std::size_t n = g.order;
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
    if (!((mask >> g.identity) & 1u)) continue;
    bool closed = true;
    for (Elem a = 0; a < n && closed; ++a)
      if ((mask >> a) & 1u)
        for (Elem b = 0; b < n && closed; ++b)
          if ((mask >> b) & 1u && !((mask >> g.table[a][b]) & 1u)) closed = false;
    if (!closed) continue;
    std::vector<Elem> s;
    for (Elem a = 0; a < n; ++a)
      if ((mask >> a) & 1u) s.push_back(a);
    out.push_back(s);
  }
  return out;
}

/// Intersection of the maximal proper subgroups in a list of all subgroups.
inline std::vector<Elem> brute_frattini(const residua::CayleyTable& g,
                                        const std::vector<std::vector<Elem>>& subs) {
  auto subset = [](const std::vector<Elem>& a, const std::vector<Elem>& b) {
    return std::includes(b.begin(), b.end(), a.begin(), a.end());
  };
  std::vector<Elem> result(g.order);
  std::iota(result.begin(), result.end(), 0);
  for (const auto& h : subs) {
    if (h.size() == g.order) continue;
    bool maximal = true;
    for (const auto& k : subs)
      if (k.size() > h.size() && k.size() < g.order && subset(h, k)) maximal = false;
    if (!maximal) continue;
    std::vector<Elem> next;
    std::set_intersection(result.begin(), result.end(), h.begin(), h.end(), std::back_inserter(next));
    result = next;
  }
  return result;
}

inline std::uint64_t trial_radical(std::uint64_t n) {
  std::uint64_t r = 1;
  for (std::uint64_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      r *= p;
      while (n % p == 0) n /= p;
    }
  return n > 1 ? r * n : r;
}

}  // namespace support
