#include <doctest.h>

#include "residua/effective.hpp"
#include "residua/testbed.hpp"
#include "support.hpp"

using namespace residua;
using support::kind_of;

namespace {

OrdinalVector v(std::string_view s) { return parse_vector(s); }

}  // namespace

static_assert(EffectiveLattice<Testbed>);

TEST_CASE("vector parsing") {
  CHECK(v("3,inf").coords == std::vector<Coord>{3, kInf});
  CHECK(to_string(v("3,inf")) == "3,inf");
  CHECK(kind_of([] { parse_vector("3,x"); }) == ErrorKind::ParseError);
  CHECK(kind_of([] { parse_vector("3,4", 3); }) == ErrorKind::DimensionMismatch);
  CHECK(kind_of([] { Testbed(5); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("order meet and join") {
  CHECK(vec_order(v("3,inf"), v("1,0")) == VecOrder::Below);
  CHECK(vec_order(v("1,0"), v("3,inf")) == VecOrder::Above);
  CHECK(vec_order(v("1,3"), v("3,1")) == VecOrder::Incomparable);
  CHECK(vec_meet(v("2,5"), v("4,1")) == v("4,5"));
  Testbed t(2);
  CHECK(t.join(v("2,5"), t.bottom()) == v("2,5"));
  CHECK(kind_of([] { vec_order(v("1"), v("1,2")); }) == ErrorKind::DimensionMismatch);
}

TEST_CASE("dual compactness") {
  Testbed t(2);
  CHECK(t.dually_compact(v("5,0")));
  CHECK_FALSE(t.dually_compact(v("inf,0")));
  CHECK_FALSE(t.dually_compact(t.bottom()));
  for (const auto& x : t.box(5)) CHECK(t.dually_compact(x) == dually_compact_oracle(t, x, 8));
}

TEST_CASE("maximal subelements") {
  Testbed t(2);
  CHECK(t.lower_covers(v("3,inf")) == std::vector<OrdinalVector>{v("4,inf")});
  auto m = t.lower_covers(v("2,3"));
  std::sort(m.begin(), m.end());
  CHECK(m == std::vector<OrdinalVector>{v("2,4"), v("3,3")});
  CHECK(t.lower_covers(t.bottom()).empty());
}

TEST_CASE("lower covers match a bounded scan") {
  Testbed t(2);
  const Coord b = 6;
  auto box = t.box(b);
  for (const auto& x : t.box(4)) {
    std::vector<OrdinalVector> expected;
    for (const auto& z : box) {
      if (!t.lt(z, x)) continue;
      bool maximal = true;
      for (const auto& w : box)
        if (t.lt(z, w) && t.lt(w, x)) maximal = false;
      if (maximal) expected.push_back(z);
    }
    auto got = t.lower_covers(x);
    std::sort(got.begin(), got.end());
    std::sort(expected.begin(), expected.end());
    CHECK(got == expected);
  }
}

TEST_CASE("profile closed forms in one dimension") {
  Testbed t(1);
  TestbedProfile p = testbed_profile(t, v("3"), 20);
  CHECK(p.rank == RankValue::limit());
  CHECK(p.core == t.bottom());
  CHECK(p.engine_agrees);
  for (std::size_t k = 0; k <= 20; ++k)
    CHECK(p.strata[k] == std::vector<OrdinalVector>{OrdinalVector{{static_cast<Coord>(3 + k)}}});
  CHECK(to_string(p.delta) == "(>=3)");
  CHECK(p.delta.contains(v("100")));
  CHECK_FALSE(p.delta.contains(v("2")));
}

TEST_CASE("profile closed forms in two dimensions") {
  Testbed t(2);
  TestbedProfile p = testbed_profile(t, v("2,3"), 8);
  std::vector<OrdinalVector> residues;
  for (const auto& [m, r] : p.residues) residues.push_back(r);
  std::sort(residues.begin(), residues.end());
  CHECK(residues == std::vector<OrdinalVector>{v("2,inf"), v("inf,3")});
  CHECK(p.boundary == v("2,3"));
  CHECK(bounded_outcasts(t, v("2,3"), 8).empty());
  TestbedProfile e = testbed_profile(t, t.bottom(), 4);
  CHECK(e.rank == RankValue::of(0));
  CHECK(e.maximal.empty());
  CHECK(e.boundary == t.bottom());
}

TEST_CASE("closed forms agree with the generic engine") {
  for (std::size_t dims = 1; dims <= 3; ++dims) {
    Testbed t(dims);
    for (const auto& x : t.box(3)) {
      CHECK(t.mu(x) == residua::residual_derivative(t, x));
      CHECK(t.boundary(x) == residua::boundary(t, x));
      auto it = mu_iterates(t, x, 6);
      for (std::size_t k = 0; k < it.size(); ++k) CHECK(it[k] == t.iterate(x, k));
    }
  }
}

TEST_CASE("no outcasts, including the non compact edge case") {
  Testbed t(2);
  CHECK(bounded_outcasts(t, v("inf,0"), 8).empty());
  CHECK_FALSE(t.dually_compact(v("inf,0")));
}

TEST_CASE("completely co-irreducibles have one finite coordinate") {
  Testbed t(2);
  for (const auto& s : t.box(4)) {
    std::size_t finite = t.dims() - s.inf_count();
    CHECK(t.completely_coirreducible(s) == (finite == 1));
  }
}

TEST_CASE("relative strata of the witness pair") {
  Testbed t(2);
  for (std::size_t k = 0; k < 10; ++k)
    CHECK(t.relative_stratum(v("inf,0"), v("0,0"), k) ==
          std::vector<OrdinalVector>{OrdinalVector{{static_cast<Coord>(k), kInf}}});
  CHECK(kind_of([&] { t.relative_stratum(v("0,0"), v("inf,0"), 0); }) == ErrorKind::NotBelow);
}

TEST_CASE("isolation oracle") {
  Testbed t(2);
  CHECK(isolated_oracle(t, v("2,3"), 6) == Isolation::Isolated);
  CHECK(isolated_oracle(t, v("inf,0"), 6) == Isolation::NotIsolated);
  CHECK(isolated_oracle(t, t.bottom(), 4) == Isolation::NotIsolated);
  CHECK(kind_of([&] { isolated_oracle(t, v("5,0"), 6); }) == ErrorKind::BoundTooSmall);
  IsolationSearch s = isolation_search(t, v("2,3"), 6);
  CHECK(s.isolated);
  CHECK_FALSE(s.other.has_value());
}

TEST_CASE("characterization predicates") {
  Testbed t(2);
  auto a = characterization_predicates(t, v("2,3"));
  CHECK(a.literal);
  CHECK(a.corrected);
  auto b = characterization_predicates(t, v("inf,0"));
  CHECK(b.literal);
  CHECK_FALSE(b.corrected);
  auto e = characterization_predicates(t, t.bottom());
  CHECK(e.literal);
  CHECK_FALSE(e.corrected);
}

TEST_CASE("CB levels") {
  Testbed t(2);
  CHECK(cb_level(t, v("5,1")) == 0);
  CHECK(cb_level(t, v("inf,7")) == 1);
  CHECK(cb_level(t, t.bottom()) == 2);
  CHECK(cb_level_pattern(t, 3).parts.empty());
  CHECK(to_string(cb_level_pattern(t, 0)) == "(any,any)");
  PatternUnion s1 = cb_level_pattern(t, 1);
  CHECK(isolated_oracle(t, v("inf,0"), 8, &s1) == Isolation::Isolated);
}

TEST_CASE("CB ladder in two dimensions") {
  Testbed t(2);
  auto rows = verify_cb_ladder(t, 6);
  REQUIRE(rows.size() == 4);
  for (const auto& r : rows) CHECK(r.matches);
}

TEST_CASE("isolation from above") {
  Testbed t(2);
  ConditionReport r = check_s1s2_above(t, v("inf,0"), v("0,0"), 8);
  CHECK(r.all_pass());
  CHECK(r.find("converse"));
  CHECK(kind_of([&] { check_s1s2_above(t, v("inf,0"), v("inf,0"), 8); }) == ErrorKind::PreconditionFailed);
  CHECK(kind_of([&] { check_s1s2_above(t, v("2,3"), v("0,0"), 8); }) == ErrorKind::PreconditionFailed);
}

TEST_CASE("locally constant core") {
  Testbed t(2);
  CHECK(check_locally_constant_core(t, v("inf,0"), 8).all_pass());
}

TEST_CASE("isolated below at epsilon") {
  CHECK(check_isolated_below_conditions(Testbed(2), Testbed(2).bottom(), {}, 6).vacuous);
  ConditionReport one = check_isolated_below_conditions(Testbed(1), Testbed(1).bottom(), {}, 6);
  CHECK_FALSE(one.vacuous);
  CHECK_FALSE(one.clauses.empty());
  CHECK(kind_of([] { check_isolated_below_conditions(Testbed(2), parse_vector("0,0"), {}, 6); }) ==
        ErrorKind::PreconditionFailed);
}
