#include "residua/laws.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <exception>
#include <random>
#include <thread>

#include "residua/error.hpp"

namespace residua {

namespace {

const std::vector<LawInfo> kRegistry = {
    {LawId::LATTICE_TABLES, "LATTICE_TABLES",
     "meet/join tables give greatest lower and least upper bounds; bottom is least", false},
    {LawId::COHEYTING_JOIN, "COHEYTING_JOIN", "z v (x - z) = x for z <= x", true},
    {LawId::MU_RESIDUE_DECOMP, "MU_RESIDUE_DECOMP",
     "x = mu_H(x) v join of (x - m), m in M_H(x), for join-closed H containing bottom", true},
    {LawId::CORE_RESIDUE_DECOMP, "CORE_RESIDUE_DECOMP", "x = c(x) v join of (x - n), n in M(x)",
     true},
    {LawId::MAXIMALS_JOIN, "MAXIMALS_JOIN", "distinct y, z in M(x) have y v z = x", false},
    {LawId::MAXIMALS_MEET_MAXIMAL, "MAXIMALS_MEET_MAXIMAL",
     "distinct y, z in M(x) have y ^ z in M(y) and M(z)", true},
    {LawId::RESIDUE_UNIQUE_MAXIMAL, "RESIDUE_UNIQUE_MAXIMAL",
     "M(x - m) has exactly one element for m in M(x)", true},
    {LawId::RESIDUE_MU_BELOW_MAXIMAL, "RESIDUE_MU_BELOW_MAXIMAL", "mu(x - m) <= m for m in M(x)",
     true},
    {LawId::RESIDUE_NO_OUTCAST, "RESIDUE_NO_OUTCAST", "x - m has no outcast for m in M(x)", true},
    {LawId::MAXIMAL_FORMULA, "MAXIMAL_FORMULA",
     "m = mu(x) v join of (x - n), n in M(x), n != m", true},
    {LawId::SURFACE_TREE, "SURFACE_TREE",
     "for m in M(mu(x)): mu(x) - m <= boundary(x) and lies below some x - n", true},
    {LawId::OUTCAST_TRICHOTOMY, "OUTCAST_TRICHOTOMY",
     "x has an outcast iff c(x) not <= boundary(x) iff boundary(x) < x; outcasts are "
     "up(boundary(x)) minus x",
     true},
    {LawId::STRATA_RANKED, "STRATA_RANKED", "s < t in delta(x) implies rho(s) > rho(t)", true},
    {LawId::STRATUM_ANTICHAIN, "STRATUM_ANTICHAIN",
     "distinct elements of one stratum are incomparable", true},
    {LawId::RESIDUE_NOT_DOMINATED, "RESIDUE_NOT_DOMINATED",
     "x - m is not below the join of the other residues", true},
    {LawId::STRATA_PARTITION, "STRATA_PARTITION",
     "strata are disjoint, cover delta(x), and join of s_a(x) is the boundary of x^(a)", true},
    {LawId::DELTA_EQUALS_DELTA_PLUS, "DELTA_EQUALS_DELTA_PLUS", "delta(x) = delta+(x)", true},
    {LawId::S0_COMPLETENESS, "S0_COMPLETENESS",
     "s_0(x) = elements of delta+(x) not below the join of the others; each picks a unique "
     "maximal subelement",
     true},
    {LawId::MAXIMALS_SUBADDITIVE, "MAXIMALS_SUBADDITIVE", "|M(x v z)| <= |M(x)| + |M(z)|", true},
    {LawId::SUBELEMENT_DECOMP, "SUBELEMENT_DECOMP",
     "z = (z ^ c(x)) v join of {s in delta(x) : s <= z} for z <= x", true},
    {LawId::MU_MONOTONE, "MU_MONOTONE", "z <= x implies mu(z) <= mu(x)", true},
    {LawId::MU_JOIN_HOM, "MU_JOIN_HOM", "mu(x v z) = mu(x) v mu(z)", true},
    {LawId::MINMAX_BOUND, "MINMAX_BOUND",
     "z <= x_s v x'_s for monotone x, antitone x' implies z <= (join x_s) v (meet x'_s)", true},
    {LawId::FINITE_DESCENT, "FINITE_DESCENT",
     "c(x) v join of (delta(x) minus finite P) is reached from x by maximal-subelement steps",
     true},
    {LawId::CORE_UNION, "CORE_UNION", "c(x) = join of T_0 below x", true},
    {LawId::CORE_DECOMP, "CORE_DECOMP",
     "y in T_0 and y <= x v z imply y = c(x ^ y) v c(z ^ y)", true},
    {LawId::CORE_JOIN_HOM, "CORE_JOIN_HOM", "c(x v z) = c(x) v c(z)", true},
    {LawId::T0_UPPER_SEMILATTICE, "T0_UPPER_SEMILATTICE",
     "T_0 below any z is a complete upper semilattice", true},
    {LawId::X_MINUS_BOUNDARY_T0, "X_MINUS_BOUNDARY_T0",
     "x - boundary(x) is in T_0 and below c(x)", true},
    {LawId::DOWNSET_UPPER_COMPLETE, "DOWNSET_UPPER_COMPLETE",
     "down(x) is a complete upper semilattice", false},
    {LawId::K_LOWER_SEMILATTICE, "K_LOWER_SEMILATTICE",
     "dually compact elements are closed under binary meet", false},
    {LawId::MAXIMALS_DUALLY_COMPACT, "MAXIMALS_DUALLY_COMPACT",
     "maximal subelements of a dually compact element are dually compact", true},
};

struct Check {
  std::size_t checked = 0;
  bool failed = false;
  std::vector<Elem> witness;
  std::string detail;
  bool exhaustive = true;
  std::string coverage;

  void fail(std::vector<Elem> w, std::string d) {
    if (failed) return;
    failed = true;
    witness = std::move(w);
    detail = std::move(d);
  }
};

std::uint64_t law_seed(const Budget& b, LawId id) {
  return b.seed * 0x9E3779B97F4A7C15ULL + static_cast<std::uint64_t>(id) + 1;
}

std::size_t draw(std::mt19937_64& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

ElementSet outcast_set(const LawContext& c, Elem x) {
  const auto& l = c.lattice();
  ElementSet out = l.down_set(x);
  out.erase(x);
  for (Elem m : c.maximal(x)) out -= l.down_set(m);
  return out;
}

Elem join_residues_except(const LawContext& c, Elem x, Elem skip, bool use_skip) {
  const auto& l = c.lattice();
  Elem acc = l.bottom();
  for (Elem n : c.maximal(x))
    if (!use_skip || n != skip) acc = l.join(acc, c.sub(x, n));
  return acc;
}

using Checker = void (*)(const LawContext&, const Budget&, Check&);

void lattice_tables(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  const Elem n = static_cast<Elem>(l.size());
  if (l.up_set(l.bottom()) != l.all()) return k.fail({l.bottom()}, "bottom is not least");
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      ++k.checked;
      ElementSet lower = l.down_set(a) & l.down_set(b);
      Elem m = l.meet(a, b);
      if (!lower.contains(m) || !lower.is_subset_of(l.down_set(m)))
        return k.fail({a, b}, "meet table entry is not the greatest lower bound");
      ElementSet upper = l.up_set(a) & l.up_set(b);
      Elem j = l.join(a, b);
      if (!upper.contains(j) || !upper.is_subset_of(l.up_set(j)))
        return k.fail({a, b}, "join table entry is not the least upper bound");
    }
  }
}

void coheyting_join(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z : l.down_set(x)) {
      ++k.checked;
      if (l.join(z, c.sub(x, z)) != x) return k.fail({x, z}, "z v (x - z) != x");
    }
}

void mu_residue_decomp(const LawContext& c, const Budget& b, Check& k) {
  const auto& l = c.lattice();
  const std::size_t n = l.size();
  std::vector<ElementSet> families{l.all()};
  std::mt19937_64 rng(law_seed(b, LawId::MU_RESIDUE_DECOMP));
  constexpr std::size_t kSeeded = 4;
  for (std::size_t f = 0; f < kSeeded; ++f) {
    ElementSet h = l.empty_set();
    h.insert(l.bottom());
    for (std::size_t i = 0; i < (n + 1) / 2; ++i) h.insert(static_cast<Elem>(draw(rng, n)));
    // Close under binary joins.
    for (bool grew = true; grew;) {
      grew = false;
      for (Elem a : h)
        for (Elem b2 : h)
          if (!h.contains(l.join(a, b2))) {
            h.insert(l.join(a, b2));
            grew = true;
          }
    }
    families.push_back(h);
  }
  k.coverage = "H = L plus " + std::to_string(kSeeded) + " seeded join-closed families";
  for (const auto& h : families) {
    for (Elem x = 0; x < n; ++x) {
      ++k.checked;
      ElementSet m = l.maximal_subelements(x, h);
      Elem mu = m.empty() ? x : l.meet_of_set(m);
      Elem acc = mu;
      for (Elem e : m) acc = l.join(acc, c.sub(x, e));
      if (acc != x) {
        std::vector<Elem> w{x};
        for (Elem e : h) w.push_back(e);
        return k.fail(w, "x != mu_H(x) v residues (witness: x, then the family H)");
      }
    }
  }
}

void core_residue_decomp(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    if (l.join(c.core(x), c.boundary(x)) != x) return k.fail({x}, "x != c(x) v boundary(x)");
  }
}

void maximals_join(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y : c.maximal(x))
      for (Elem z : c.maximal(x)) {
        if (z <= y) continue;
        ++k.checked;
        if (l.join(y, z) != x) return k.fail({x, y, z}, "y v z != x");
      }
}

void maximals_meet_maximal(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem y : c.maximal(x))
      for (Elem z : c.maximal(x)) {
        if (z <= y) continue;
        ++k.checked;
        Elem w = l.meet(y, z);
        if (!c.maximal(y).contains(w) || !c.maximal(z).contains(w))
          return k.fail({x, y, z}, "y ^ z is not a maximal subelement of both");
      }
}

template <class F>
void for_residues(const LawContext& c, Check& k, F&& f) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem m : c.maximal(x)) {
      if (k.failed) return;
      ++k.checked;
      f(x, m, c.sub(x, m));
    }
}

void residue_unique_maximal(const LawContext& c, const Budget&, Check& k) {
  for_residues(c, k, [&](Elem x, Elem m, Elem r) {
    if (c.maximal(r).count() != 1)
      k.fail({x, m}, "M(x - m) has " + std::to_string(c.maximal(r).count()) + " elements");
  });
}

void residue_mu_below_maximal(const LawContext& c, const Budget&, Check& k) {
  for_residues(c, k, [&](Elem x, Elem m, Elem r) {
    if (!c.lattice().leq(c.mu(r), m)) k.fail({x, m}, "mu(x - m) not <= m");
  });
}

void residue_no_outcast(const LawContext& c, const Budget&, Check& k) {
  for_residues(c, k, [&](Elem x, Elem m, Elem r) {
    ElementSet o = outcast_set(c, r);
    if (!o.empty()) k.fail({x, m, o.first()}, "x - m has an outcast");
  });
}

void maximal_formula(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem m : c.maximal(x)) {
      ++k.checked;
      if (l.join(c.mu(x), join_residues_except(c, x, m, true)) != m)
        return k.fail({x, m}, "m != mu(x) v join of the other residues");
    }
}

void surface_tree(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    Elem mx = c.mu(x);
    for (Elem m : c.maximal(mx)) {
      ++k.checked;
      Elem r = c.sub(mx, m);
      if (!l.leq(r, c.boundary(x))) return k.fail({x, m}, "mu(x) - m not <= boundary(x)");
      bool some = false;
      for (Elem n : c.maximal(x))
        if (l.leq(r, c.sub(x, n))) some = true;
      if (!some) return k.fail({x, m}, "mu(x) - m lies below no residue of x");
    }
  }
}

void outcast_trichotomy(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    ElementSet o = outcast_set(c, x);
    Elem bd = c.boundary(x);
    bool i = !o.empty();
    bool ii = !l.leq(c.core(x), bd);
    bool iii = l.lt(bd, x);
    if (i != ii || ii != iii) return k.fail({x}, "outcast conditions disagree");
    if (i) {
      ElementSet expect = l.up_set(bd) & l.down_set(x);
      expect.erase(x);
      if (o != expect) return k.fail({x}, "outcasts differ from up(boundary(x)) minus x");
    }
  }
}

void strata_ranked(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem s : c.delta(x))
      for (Elem t : c.delta(x)) {
        if (!l.lt(s, t)) continue;
        ++k.checked;
        if (c.rho(x, s) <= c.rho(x, t)) return k.fail({x, s, t}, "s < t but rho(s) <= rho(t)");
      }
}

void stratum_antichain(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (const auto& st : c.strata(x))
      for (Elem s : st)
        for (Elem t : st) {
          if (t <= s) continue;
          ++k.checked;
          if (l.leq(s, t) || l.leq(t, s)) return k.fail({x, s, t}, "comparable stratum members");
        }
}

void residue_not_dominated(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem m : c.maximal(x)) {
      ++k.checked;
      if (l.leq(c.sub(x, m), join_residues_except(c, x, m, true)))
        return k.fail({x, m}, "x - m is below the join of the other residues");
    }
}

void strata_partition(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    const auto& st = c.strata(x);
    ElementSet seen = l.empty_set();
    for (std::size_t a = 0; a < st.size(); ++a) {
      ++k.checked;
      if (seen.intersects(st[a]))
        return k.fail({x, (st[a] & seen).first()}, "element lies in two strata");
      seen |= st[a];
      if (l.join_of_set(st[a]) != c.boundary(c.iterates(x)[a]))
        return k.fail({x}, "join of stratum " + std::to_string(a) + " is not the boundary of x^(" +
                               std::to_string(a) + ")");
    }
    if (seen != c.delta(x)) return k.fail({x}, "strata do not cover delta(x)");
  }
}

void delta_equals_delta_plus(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    ElementSet dp = c.delta_plus(x);
    if (dp != c.delta(x)) {
      ElementSet diff = (dp - c.delta(x)) | (c.delta(x) - dp);
      return k.fail({x, diff.first()}, "delta(x) != delta+(x)");
    }
  }
}

void s0_completeness(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    ElementSet dp = c.delta_plus(x);
    ElementSet s0 = c.strata(x).empty() ? l.empty_set() : c.strata(x)[0];
    ElementSet computed = l.empty_set();
    for (Elem s : dp) {
      ElementSet others = dp;
      others.erase(s);
      if (!l.leq(s, l.join_of_set(others))) computed.insert(s);
    }
    if (computed != s0) return k.fail({x}, "s_0(x) differs from the non-dominated part of delta+(x)");
    for (Elem s : s0) {
      ElementSet others = dp;
      others.erase(s);
      Elem formula = l.join(c.core(x), l.join_of_set(others));
      std::vector<Elem> hits;
      for (Elem m : c.maximal(x))
        if (l.join(s, m) == x) hits.push_back(m);
      if (hits.size() != 1) return k.fail({x, s}, "s v m = x for " + std::to_string(hits.size()) + " maximal m");
      if (hits[0] != formula) return k.fail({x, s}, "c(x) v join(delta+ minus s) is not the partner");
    }
  }
}

void maximals_subadditive(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z = 0; z < l.size(); ++z) {
      ++k.checked;
      if (c.maximal(l.join(x, z)).count() > c.maximal(x).count() + c.maximal(z).count())
        return k.fail({x, z}, "|M(x v z)| > |M(x)| + |M(z)|");
    }
}

void subelement_decomp(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z : l.down_set(x)) {
      ++k.checked;
      Elem acc = l.meet(z, c.core(x));
      for (Elem s : c.delta(x))
        if (l.leq(s, z)) acc = l.join(acc, s);
      if (acc != z) return k.fail({x, z}, "z != (z ^ c(x)) v join of delta(x) below z");
    }
}

void mu_monotone(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z : l.down_set(x)) {
      ++k.checked;
      if (!l.leq(c.mu(z), c.mu(x))) return k.fail({x, z}, "z <= x but mu(z) not <= mu(x)");
    }
}

void mu_join_hom(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z = 0; z < l.size(); ++z) {
      ++k.checked;
      if (c.mu(l.join(x, z)) != l.join(c.mu(x), c.mu(z)))
        return k.fail({x, z}, "mu(x v z) != mu(x) v mu(z)");
    }
}

void minmax_bound(const LawContext& c, const Budget& b, Check& k) {
  const auto& l = c.lattice();
  const std::size_t n = l.size();
  std::mt19937_64 rng(law_seed(b, LawId::MINMAX_BOUND));
  k.exhaustive = false;
  k.coverage = "sampled " + std::to_string(b.samples) + " monotone/antitone pairs, all z";
  for (std::size_t t = 0; t < b.samples; ++t) {
    std::size_t len = 1 + draw(rng, 4);
    std::vector<Elem> up{static_cast<Elem>(draw(rng, n))};
    std::vector<Elem> down{static_cast<Elem>(draw(rng, n))};
    for (std::size_t i = 1; i < len; ++i) {
      up.push_back(l.join(up.back(), static_cast<Elem>(draw(rng, n))));
      down.push_back(l.meet(down.back(), static_cast<Elem>(draw(rng, n))));
    }
    Elem ju = l.bottom();
    for (Elem e : up) ju = l.join(ju, e);
    Elem md = down.front();
    for (Elem e : down) md = l.meet(md, e);
    Elem bound = l.join(ju, md);
    for (Elem z = 0; z < n; ++z) {
      ++k.checked;
      bool below_all = true;
      for (std::size_t i = 0; i < len; ++i)
        if (!l.leq(z, l.join(up[i], down[i]))) below_all = false;
      if (below_all && !l.leq(z, bound)) {
        std::vector<Elem> w{z};
        w.insert(w.end(), up.begin(), up.end());
        w.insert(w.end(), down.begin(), down.end());
        return k.fail(w, "z below every x_s v x'_s but not below the bound (witness: z, x, x')");
      }
    }
  }
}

/// Elements reachable from each x by repeatedly passing to a maximal subelement.
std::vector<ElementSet> descent_closure(const LawContext& c) {
  const auto& l = c.lattice();
  std::vector<Elem> order(l.size());
  for (Elem x = 0; x < l.size(); ++x) order[x] = x;
  std::sort(order.begin(), order.end(),
            [&](Elem a, Elem b) { return l.down_set(a).count() < l.down_set(b).count(); });
  std::vector<ElementSet> reach(l.size(), l.empty_set());
  for (Elem x : order) {
    reach[x].insert(x);
    for (Elem m : c.maximal(x)) reach[x] |= reach[m];
  }
  return reach;
}

void finite_descent(const LawContext& c, const Budget& b, Check& k) {
  const auto& l = c.lattice();
  const std::vector<ElementSet> reach = descent_closure(c);
  std::mt19937_64 rng(law_seed(b, LawId::FINITE_DESCENT));
  std::size_t sampled = 0;
  for (Elem x = 0; x < l.size(); ++x) {
    std::vector<Elem> d = c.delta(x).to_vector();
    auto report = [&](std::uint64_t removed) {
      std::vector<Elem> w{x};
      for (std::size_t i = 0; i < d.size(); ++i)
        if ((removed >> i) & 1u) w.push_back(d[i]);
      k.fail(w, "no maximal-subelement path from x (witness: x, then the removed set P)");
    };
    if (d.size() <= b.exhaustive_subsets) {
      // Depth-first over P, carrying the join of the kept elements.
      auto walk = [&](auto&& self, std::size_t i, Elem target, std::uint64_t removed) -> void {
        if (k.failed) return;
        if (i == d.size()) {
          ++k.checked;
          if (!reach[x].contains(target)) report(removed);
          return;
        }
        self(self, i + 1, l.join(target, d[i]), removed);
        self(self, i + 1, target, removed | (std::uint64_t{1} << i));
      };
      walk(walk, 0, c.core(x), 0);
    } else {
      if (b.strict)
        throw Error(ErrorKind::BudgetExceeded,
                    "FINITE_DESCENT: delta(" + l.name(x) + ") has " + std::to_string(d.size()) +
                        " elements; checked " + std::to_string(k.checked) + " subsets so far");
      k.exhaustive = false;
      ++sampled;
      for (std::size_t t = 0; t < b.samples && !k.failed; ++t) {
        std::uint64_t removed = 0;
        Elem target = c.core(x);
        for (std::size_t i = 0; i < d.size(); ++i) {
          if (i < 64 && (rng() & 1u)) removed |= std::uint64_t{1} << i;
          else target = l.join(target, d[i]);
        }
        ++k.checked;
        if (!reach[x].contains(target)) report(removed);
      }
    }
    if (k.failed) return;
  }
  if (!k.exhaustive)
    k.coverage = std::to_string(sampled) + " elements sampled with " + std::to_string(b.samples) +
                 " subsets each";
}

void core_union(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    if (c.core(x) != l.join_of_set(c.t0() & l.down_set(x)))
      return k.fail({x}, "c(x) != join of T_0 below x");
  }
}

void core_decomp(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem y : c.t0())
    for (Elem x = 0; x < l.size(); ++x)
      for (Elem z = 0; z < l.size(); ++z) {
        if (!l.leq(y, l.join(x, z))) continue;
        ++k.checked;
        if (l.join(c.core(l.meet(x, y)), c.core(l.meet(z, y))) != y)
          return k.fail({x, y, z}, "y != c(x ^ y) v c(z ^ y)");
      }
}

void core_join_hom(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x)
    for (Elem z = 0; z < l.size(); ++z) {
      ++k.checked;
      if (c.core(l.join(x, z)) != l.join(c.core(x), c.core(z)))
        return k.fail({x, z}, "c(x v z) != c(x) v c(z)");
    }
}

void t0_upper_semilattice(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  k.coverage = "reduced to: bottom in T_0 and T_0 closed under binary join";
  if (!c.t0().contains(l.bottom())) return k.fail({l.bottom()}, "bottom is not in T_0");
  for (Elem a : c.t0())
    for (Elem b : c.t0()) {
      ++k.checked;
      if (!c.t0().contains(l.join(a, b))) return k.fail({a, b}, "a v b is not in T_0");
    }
}

void x_minus_boundary_t0(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem x = 0; x < l.size(); ++x) {
    ++k.checked;
    Elem r = c.sub(x, c.boundary(x));
    if (!c.t0().contains(r)) return k.fail({x}, "x - boundary(x) is not in T_0");
    if (!l.leq(r, c.core(x))) return k.fail({x}, "x - boundary(x) not <= c(x)");
  }
}

void downset_upper_complete(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  k.coverage = "reduced to: bottom and binary joins stay below x";
  for (Elem x = 0; x < l.size(); ++x) {
    if (!l.leq(l.bottom(), x)) return k.fail({x}, "bottom not below x");
    for (Elem a : l.down_set(x))
      for (Elem b : l.down_set(x)) {
        if (b < a) continue;
        ++k.checked;
        if (!l.leq(l.join(a, b), x)) return k.fail({x, a, b}, "a v b escapes down(x)");
      }
  }
}

void k_lower_semilattice(const LawContext& c, const Budget&, Check& k) {
  const auto& l = c.lattice();
  for (Elem a : c.dually_compact())
    for (Elem b : c.dually_compact()) {
      if (b < a) continue;
      ++k.checked;
      Elem m = l.meet(a, b);
      if (m >= l.size() || !c.dually_compact().contains(m))
        return k.fail({a, b}, "a ^ b is not dually compact");
    }
}

void maximals_dually_compact(const LawContext& c, const Budget&, Check& k) {
  for (Elem x : c.dually_compact()) {
    ++k.checked;
    if (!c.maximal(x).is_subset_of(c.dually_compact()))
      return k.fail({x, (c.maximal(x) - c.dually_compact()).first()},
                    "maximal subelement that is not dually compact");
  }
}

const Checker kCheckers[kLawCount] = {
    lattice_tables,       coheyting_join,         mu_residue_decomp,
    core_residue_decomp,  maximals_join,          maximals_meet_maximal,
    residue_unique_maximal, residue_mu_below_maximal, residue_no_outcast,
    maximal_formula,      surface_tree,           outcast_trichotomy,
    strata_ranked,        stratum_antichain,      residue_not_dominated,
    strata_partition,     delta_equals_delta_plus, s0_completeness,
    maximals_subadditive, subelement_decomp,      mu_monotone,
    mu_join_hom,          minmax_bound,           finite_descent,
    core_union,           core_decomp,            core_join_hom,
    t0_upper_semilattice, x_minus_boundary_t0,    downset_upper_complete,
    k_lower_semilattice,  maximals_dually_compact,
};

}  // namespace

const std::vector<LawInfo>& law_registry() { return kRegistry; }

std::string_view to_string(LawId id) { return kRegistry.at(static_cast<std::size_t>(id)).name; }

std::optional<LawId> law_from_string(std::string_view name) {
  for (const auto& info : kRegistry)
    if (info.name == name) return info.id;
  return std::nullopt;
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Skipped: return "skipped";
  }
  return "unknown";
}

LawContext::LawContext(const FiniteLattice& l, Faults faults) : l_(l), faults_(std::move(faults)) {
  const std::size_t n = l.size();
  maximal_.resize(n);
  mu_.resize(n);
  for (Elem x = 0; x < n; ++x) {
    maximal_[x] = l.maximal_subelements(x);
    mu_[x] = maximal_[x].empty() ? x : l.meet_of_set(maximal_[x]);
  }
  core_.resize(n);
  boundary_.resize(n);
  strata_.resize(n);
  iterates_.resize(n);
  delta_.assign(n, l.empty_set());
  t0_ = l.empty_set();
  coirreducible_ = l.empty_set();
  compact_ = l.empty_set();
  for (Elem x = 0; x < n; ++x) {
    Elem cur = x;
    iterates_[x].push_back(cur);
    // A corrupted meet table can break strict descent; the step cap keeps
    // the iteration finite and the checkers report the inconsistency.
    for (std::size_t step = 0; step <= n && !maximal_[cur].empty(); ++step) {
      ElementSet st = l.empty_set();
      for (Elem m : maximal_[cur]) st.insert(sub(cur, m));
      delta_[x] |= st;
      strata_[x].push_back(std::move(st));
      Elem next = mu_[cur];
      if (next == cur || next >= n) break;
      cur = next;
      iterates_[x].push_back(cur);
    }
    core_[x] = cur;
    Elem bd = l.bottom();
    for (Elem m : maximal_[x]) bd = l.join(bd, sub(x, m));
    boundary_[x] = bd;
    if (maximal_[x].empty()) t0_.insert(x);
    if (maximal_[x].count() == 1) {
      ElementSet below = l.down_set(x);
      below.erase(x);
      if (below.is_subset_of(l.down_set(maximal_[x].first()))) coirreducible_.insert(x);
    }
    if (dually_compact_finite(l, x, /*audit=*/true)) compact_.insert(x);
  }
}

Elem LawContext::sub(Elem x, Elem z) const {
  Elem correct = l_.co_heyting_sub(x, z);
  return faults_.co_heyting ? faults_.co_heyting(l_, x, z, correct) : correct;
}

std::size_t LawContext::rho(Elem x, Elem s) const {
  const auto& st = strata_[x];
  for (std::size_t a = 0; a < st.size(); ++a)
    if (st[a].contains(s)) return a;
  return st.size();
}

ElementSet LawContext::delta_plus(Elem x) const {
  return (coirreducible_ & l_.down_set(x)) - l_.down_set(core_[x]);
}

LawReport run_law(const LawContext& ctx, LawId law, const Budget& budget,
                  const std::string& instance) {
  LawReport r;
  r.law = law;
  r.instance = instance;
  const auto& info = kRegistry.at(static_cast<std::size_t>(law));
  if (info.needs_coframe && !ctx.lattice().coframe()) {
    r.verdict = Verdict::Skipped;
    r.detail = "hypothesis violated: not a coframe (lattice is not distributive)";
    return r;
  }
  auto start = std::chrono::steady_clock::now();
  Check k;
  try {
    kCheckers[static_cast<std::size_t>(law)](ctx, budget, k);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::BudgetExceeded) throw;
    k.fail({}, std::string("operation raised ") + e.what());
  }
  r.elapsed = std::chrono::duration_cast<std::chrono::microseconds>(
      std::chrono::steady_clock::now() - start);
  r.checked = k.checked;
  r.exhaustive = k.exhaustive;
  r.coverage = k.coverage.empty() ? "exhaustive" : k.coverage;
  if (k.failed) {
    r.verdict = Verdict::Fail;
    r.witness = std::move(k.witness);
    r.detail = std::move(k.detail);
  }
  return r;
}

LawReport run_law(const FiniteLattice& l, LawId law, const Budget& budget, const Faults& faults,
                  const std::string& instance) {
  LawContext ctx(l, faults);
  return run_law(ctx, law, budget, instance);
}

std::vector<LawReport> run_all(const FiniteLattice& l, const Budget& budget, std::size_t jobs,
                               const Faults& faults, const std::vector<LawId>& laws,
                               const std::string& instance) {
  std::vector<LawId> todo = laws;
  if (todo.empty())
    for (const auto& info : kRegistry) todo.push_back(info.id);
  std::sort(todo.begin(), todo.end());
  todo.erase(std::unique(todo.begin(), todo.end()), todo.end());

  LawContext ctx(l, faults);
  std::vector<LawReport> out(todo.size());
  std::vector<std::exception_ptr> errors(todo.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < todo.size();) {
      try {
        out[i] = run_law(ctx, todo[i], budget, instance);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  jobs = std::clamp<std::size_t>(jobs, 1, todo.size() ? todo.size() : 1);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

ShrinkResult shrink(const FiniteLattice& l, LawId law, const Budget& budget, const Faults& faults) {
  ShrinkResult res{l, run_law(l, law, budget, faults), 0};
  if (res.report.verdict != Verdict::Fail) return res;
  for (bool progress = true; progress;) {
    progress = false;
    const FiniteLattice& cur = res.lattice;
    // Single deletions, plus principal ideals and filters: these are
    // sublattices, so distributivity survives the cut.
    std::vector<ElementSet> candidates;
    for (Elem e = 0; e < cur.size() && cur.size() > 1; ++e) {
      ElementSet keep = cur.all();
      keep.erase(e);
      candidates.push_back(keep);
      if (cur.down_set(e).count() < cur.size()) candidates.push_back(cur.down_set(e));
      if (cur.up_set(e).count() < cur.size()) candidates.push_back(cur.up_set(e));
    }
    std::stable_sort(candidates.begin(), candidates.end(),
                     [](const ElementSet& a, const ElementSet& b) { return a.count() < b.count(); });
    for (const auto& keep : candidates) {
      FiniteLattice smaller;
      try {
        smaller = as_lattice(cur.poset().induced(keep));
      } catch (const Error&) {
        continue;
      }
      LawReport r = run_law(smaller, law, budget, faults);
      if (r.verdict == Verdict::Fail) {
        res.lattice = std::move(smaller);
        res.report = std::move(r);
        progress = true;
        break;
      }
    }
  }
  res.removed = l.size() - res.lattice.size();
  return res;
}

bool any_failure(const std::vector<LawReport>& reports) {
  return std::any_of(reports.begin(), reports.end(),
                     [](const LawReport& r) { return r.verdict == Verdict::Fail; });
}

Json report_to_json(const FiniteLattice& l, const LawReport& r, bool with_elapsed) {
  Json j;
  j["law"] = std::string(to_string(r.law));
  j["instance"] = r.instance;
  j["verdict"] = std::string(to_string(r.verdict));
  j["checked"] = r.checked;
  j["exhaustive"] = r.exhaustive;
  j["coverage"] = r.coverage;
  j["detail"] = r.detail;
  Json w = Json::array();
  for (Elem e : r.witness) w.push_back(e < l.size() ? Json(l.name(e)) : Json(e));
  j["witness"] = w;
  if (with_elapsed) j["elapsed_us"] = r.elapsed.count();
  return j;
}

}  // namespace residua
