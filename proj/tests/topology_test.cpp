#include <doctest.h>

#include <random>

#include "residua/topology.hpp"
#include "support.hpp"

using namespace residua;
using support::kind_of;

namespace {

ElementSet set_of(std::size_t n, std::initializer_list<Elem> xs) { return ElementSet(n, xs); }

FiniteTopology sierpinski() { return FiniteTopology::from_subbase(2, {set_of(2, {0})}); }

}  // namespace

TEST_CASE("subbase examples") {
  CHECK(sierpinski().opens() == std::vector<ElementSet>{set_of(2, {}), set_of(2, {0}), set_of(2, {0, 1})});
  FiniteTopology ind = FiniteTopology::from_subbase(3, {});
  CHECK(ind.open_count() == 2);
  std::vector<ElementSet> singles;
  for (Elem p = 0; p < 4; ++p) singles.push_back(set_of(4, {p}));
  FiniteTopology disc = FiniteTopology::from_subbase(4, singles);
  CHECK(disc.is_discrete());
  CHECK(disc.open_count() == 16);
  CHECK(kind_of([] { FiniteTopology::from_subbase(3, {ElementSet(4)}); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("openness agrees with brute-force open enumeration") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 1 + rng() % 6;
    std::vector<ElementSet> subbase;
    for (std::size_t k = rng() % 4; k > 0; --k) {
      ElementSet s(n);
      for (Elem p = 0; p < n; ++p)
        if (rng() & 1u) s.insert(p);
      subbase.push_back(s);
    }
    FiniteTopology t = FiniteTopology::from_subbase(n, subbase);
    std::vector<ElementSet> brute = brute_force_opens(n, subbase);
    CHECK(t.opens() == brute);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      ElementSet s(n);
      for (Elem p = 0; p < n; ++p)
        if ((mask >> p) & 1u) s.insert(p);
      CHECK(t.is_open(s) == std::binary_search(brute.begin(), brute.end(), s));
    }
  }
}

TEST_CASE("dual Lawson topologies are discrete") {
  CHECK(dual_lawson(chain_lattice(3)).open_count() == 8);
  CHECK(dual_lawson(support::diamond()).open_count() == 16);
  for (const auto& l : {support::pentagon(), support::m3(), divisor_lattice(30), boolean_lattice(3)}) {
    FiniteTopology t = dual_lawson(l);
    CHECK(t.is_discrete());
    CHECK(brute_force_opens(t.size(), t.subbase()).size() == (std::size_t{1} << t.size()));
  }
}

TEST_CASE("isolated points") {
  FiniteTopology d = FiniteTopology::discrete(4);
  CHECK(d.isolated_points(set_of(4, {1, 3})) == set_of(4, {1, 3}));
  CHECK(FiniteTopology::indiscrete(3).isolated_points(ElementSet::full(3)).empty());
  CHECK(sierpinski().isolated_points(ElementSet::full(2)) == set_of(2, {0}));
}

TEST_CASE("CB sequences") {
  CBSequence d = cb_sequence(FiniteTopology::discrete(5), ElementSet::full(5));
  CHECK(d.rank == 1);
  CHECK(d.levels.size() == 2);
  CHECK(d.levels[1].empty());
  CBSequence i = cb_sequence(FiniteTopology::indiscrete(3), ElementSet::full(3));
  CHECK(i.rank == 0);
  CHECK(i.levels.front() == ElementSet::full(3));
}

TEST_CASE("chain of limits space") {
  const std::size_t k = 3;
  std::vector<ElementSet> subbase;
  for (Elem i = 0; i <= k; ++i) {
    ElementSet s(k + 1);
    for (Elem j = i; j <= k; ++j) s.insert(j);
    subbase.push_back(s);
  }
  FiniteTopology t = FiniteTopology::from_subbase(k + 1, subbase);
  CBSequence cb = cb_sequence(t, ElementSet::full(k + 1));
  // Only the current maximum is isolated at each step.
  for (std::size_t a = 1; a < cb.levels.size(); ++a) {
    ElementSet removed = cb.levels[a - 1] - cb.levels[a];
    CHECK(removed.count() == 1);
  }
  CHECK(cb.rank == k + 1);
  CHECK(cb_level(cb, k) == 0);
  CHECK(cb_level(cb, 0) == k);
}

TEST_CASE("order compatibility") {
  FiniteLattice d = support::diamond();
  ConditionReport dl = check_order_compatible(d, dual_lawson(d));
  CHECK(dl.all_pass());
  ConditionReport ind = check_order_compatible(d, FiniteTopology::indiscrete(4));
  REQUIRE(ind.find("iii"));
  CHECK_FALSE(ind.find("iii")->pass);
  CHECK(check_order_compatible(chain_lattice(2), FiniteTopology::discrete(2)).all_pass());
}

TEST_CASE("closed-set residual equals CB derivative on discrete spaces") {
  CBResidualReport r = residual_equals_cb_closedsets(FiniteTopology::discrete(3));
  CHECK(r.all_equal);
  for (const auto& row : r.rows) {
    CHECK(row.mu.empty());
    CHECK(row.derived.empty());
  }
  CHECK(kind_of([] { residual_equals_cb_closedsets(sierpinski()); }) == ErrorKind::NotT1);
}

TEST_CASE("closed set lattice of the Sierpinski space") {
  std::vector<ElementSet> sets;
  FiniteLattice l = closed_set_lattice(sierpinski(), &sets);
  CHECK(l.size() == 3);
  CHECK(sets.front().empty());
}

TEST_CASE("convexity") {
  FiniteLattice c = chain_lattice(4);
  CHECK(is_convex(c, set_of(4, {1, 2})));
  CHECK_FALSE(is_convex(c, set_of(4, {1, 3})));
}

TEST_CASE("finite subcover") {
  std::vector<ElementSet> cover{set_of(4, {0, 1}), set_of(4, {1, 2}), set_of(4, {3})};
  auto idx = finite_subcover(ElementSet::full(4), cover);
  REQUIRE(idx);
  ElementSet u(4);
  for (auto i : *idx) u |= cover[i];
  CHECK(u == ElementSet::full(4));
  CHECK_FALSE(finite_subcover(ElementSet::full(4), {set_of(4, {0})}));
}

TEST_CASE("locally constant core on finite lattices") {
  FiniteLattice c = chain_lattice(3);
  ConditionReport r = check_locally_constant_core(c, dual_lawson(c), 2);
  CHECK(r.all_pass());
}

TEST_CASE("isolated below checker needs S_1 minus S_2") {
  FiniteLattice b3 = boolean_lattice(3);
  CHECK(kind_of([&] { check_isolated_below_conditions(b3, dual_lawson(b3), *b3.top(), b3.empty_set()); }) ==
        ErrorKind::PreconditionFailed);
}

TEST_CASE("isolated below checker on a pretend topology") {
  // 3-chain with a topology in which the bottom has CB level 1.
  FiniteLattice c = chain_lattice(3);
  FiniteTopology t = FiniteTopology::from_subbase(3, {set_of(3, {1}), set_of(3, {2}), set_of(3, {0, 1})});
  REQUIRE(cb_level(cb_sequence(t, ElementSet::full(3)), 0) == 1);
  ConditionReport r = check_isolated_below_conditions(c, t, 0, c.empty_set());
  CHECK_FALSE(r.vacuous);
  CHECK_FALSE(r.clauses.empty());
}

TEST_CASE("topology JSON round trip") {
  FiniteTopology t = sierpinski();
  FiniteTopology back = topology_from_json(topology_to_json(t));
  CHECK(back.opens() == t.opens());
}
