#include <doctest.h>

#include "residua/io.hpp"
#include "residua/residual.hpp"
#include "support.hpp"

using namespace residua;
using support::kind_of;

namespace {

Elem at(const FiniteLattice& l, const std::string& name) { return l.poset().index_of(name); }

std::vector<FiniteLattice> fixtures() {
  std::vector<FiniteLattice> out{support::diamond(), support::pentagon(), support::m3(), chain_lattice(5),
                                 boolean_lattice(3), divisor_lattice(60), divisor_lattice(72)};
  for (std::uint64_t seed = 0; seed < 6; ++seed) out.push_back(random_distributive(seed, 40));
  return out;
}

}  // namespace

TEST_CASE("maximal subelements") {
  FiniteLattice d = support::diamond();
  CHECK(d.maximal_subelements(at(d, "1")).to_vector() == std::vector<Elem>{at(d, "a"), at(d, "b")});
  FiniteLattice c = chain_lattice(3);
  CHECK(c.maximal_subelements(2).to_vector() == std::vector<Elem>{1});
  ElementSet h(4, {d.bottom(), at(d, "1")});
  CHECK(d.maximal_subelements(at(d, "1"), h).to_vector() == std::vector<Elem>{d.bottom()});
}

TEST_CASE("maximal subelements match the definition") {
  for (const auto& l : fixtures())
    for (Elem x = 0; x < l.size(); ++x) CHECK(l.maximal_subelements(x).to_vector() == support::scan_maximal(l, x));
}

TEST_CASE("co-Heyting subtraction") {
  FiniteLattice d = support::diamond();
  CHECK(d.co_heyting_sub(at(d, "1"), at(d, "a")) == at(d, "b"));
  FiniteLattice c = chain_lattice(3);
  CHECK(c.co_heyting_sub(2, 1) == 2);
  for (Elem x = 0; x < d.size(); ++x) CHECK(d.co_heyting_sub(x, x) == d.bottom());
  CHECK(kind_of([&] { d.co_heyting_sub(at(d, "a"), at(d, "b")); }) == ErrorKind::NotBelow);
}

TEST_CASE("co-Heyting subtraction matches candidate enumeration") {
  for (const auto& l : fixtures()) {
    if (!l.distributive()) continue;
    for (Elem x = 0; x < l.size(); ++x)
      for (Elem z = 0; z < l.size(); ++z)
        if (l.leq(z, x)) CHECK(l.co_heyting_sub(x, z) == support::scan_sub(l, x, z));
  }
}

TEST_CASE("residual derivative") {
  FiniteLattice d = support::diamond();
  CHECK(residual_derivative(d, at(d, "1")) == d.bottom());
  CHECK(residual_derivative(d, d.bottom()) == d.bottom());
  for (const auto& l : fixtures())
    for (Elem x = 0; x < l.size(); ++x) CHECK(residual_derivative(l, x) == support::scan_mu(l, x));
}

TEST_CASE("profile of the top of a 3-chain") {
  FiniteLattice c = chain_lattice(3);
  ResidualProfile p = residual_profile(c, 2);
  CHECK(p.rank == RankValue::of(2));
  CHECK(p.core == 0);
  REQUIRE(p.strata.size() == 2);
  CHECK(p.strata[0].to_vector() == std::vector<Elem>{2});
  CHECK(p.strata[1].to_vector() == std::vector<Elem>{1});
  CHECK(p.delta.to_vector() == std::vector<Elem>{1, 2});
  CHECK(p.rho.at(2) == 0);
  CHECK(p.rho.at(1) == 1);
}

TEST_CASE("profile of the top of B_2") {
  FiniteLattice d = support::diamond();
  ResidualProfile p = residual_profile(d, at(d, "1"));
  CHECK(p.rank == RankValue::of(1));
  CHECK(p.core == d.bottom());
  CHECK(p.residues == std::vector<std::pair<Elem, Elem>>{{at(d, "a"), at(d, "b")}, {at(d, "b"), at(d, "a")}});
  CHECK(p.boundary == at(d, "1"));
  CHECK(p.strata.front().to_vector() == std::vector<Elem>{at(d, "a"), at(d, "b")});
  CHECK(outcasts(d, at(d, "1")).empty());
}

TEST_CASE("iterates follow mu until the core") {
  for (const auto& l : fixtures())
    for (Elem x = 0; x < l.size(); ++x) {
      ResidualProfile p = residual_profile(l, x);
      REQUIRE(p.iterates.size() == p.rank.finite + 1);
      Elem cur = x;
      for (std::size_t a = 0; a < p.iterates.size(); ++a) {
        CHECK(p.iterates[a] == cur);
        cur = support::scan_mu(l, cur);
      }
      CHECK(support::scan_mu(l, p.core) == p.core);
      CHECK(p.core == core_of(l, x));
    }
}

TEST_CASE("outcasts relative to a family") {
  FiniteLattice c = chain_lattice(3);
  ElementSet h(3, {0, 2});
  CHECK(outcasts(c, 2, h).empty());
  FiniteLattice n5 = support::pentagon();
  for (Elem x = 0; x < n5.size(); ++x) {
    ElementSet expected = n5.empty_set();
    for (Elem z = 0; z < n5.size(); ++z) {
      if (!n5.lt(z, x)) continue;
      bool covered = false;
      for (Elem m : support::scan_maximal(n5, x)) covered = covered || n5.leq(z, m);
      if (!covered) expected.insert(z);
    }
    CHECK(outcasts(n5, x) == expected);
  }
}

TEST_CASE("T classes") {
  FiniteLattice d = support::diamond();
  CHECK(classify_T(d, at(d, "1")) == 2);
  CHECK(classify_T(d, d.bottom()) == 0);
  FiniteLattice b3 = boolean_lattice(3);
  CHECK(classify_T(b3, *b3.top()) == 3);
}

TEST_CASE("completely co-irreducibles and delta plus") {
  FiniteLattice c = chain_lattice(3);
  CHECK(completely_coirreducibles(c).to_vector() == std::vector<Elem>{1, 2});
  CHECK(delta_plus(c, 2).to_vector() == std::vector<Elem>{1, 2});
  FiniteLattice d = support::diamond();
  CHECK(completely_coirreducibles(d).to_vector() == std::vector<Elem>{at(d, "a"), at(d, "b")});
  CHECK(delta_plus(d, at(d, "1")).to_vector() == std::vector<Elem>{at(d, "a"), at(d, "b")});
}

TEST_CASE("relative strata") {
  FiniteLattice c = chain_lattice(3);
  RelativeStrata same = relative_strata(c, 2, 2);
  CHECK(same.rank == RankValue::of(0));
  CHECK(same.delta.empty());
  RelativeStrata r = relative_strata(c, 0, 2);
  CHECK(r.delta.to_vector() == std::vector<Elem>{1, 2});
  CHECK(kind_of([&] { relative_strata(c, 2, 0); }) == ErrorKind::NotBelow);
}

TEST_CASE("profile checks hold on coframes") {
  for (const auto& l : fixtures()) {
    if (!l.distributive()) continue;
    for (const auto& p : all_profiles(l)) {
      CHECK(p.core_residue_identity == Verification::Verified);
      CHECK(p.core_fixpoint == Verification::Verified);
      CHECK(p.delta_plus_identity == Verification::Verified);
    }
  }
}

TEST_CASE("boundary dot of the top of a 3-chain") {
  FiniteLattice c = chain_lattice(3);
  std::string dot = boundary_dot(c, residual_profile(c, 2));
  CHECK(dot.find("cluster_0") != std::string::npos);
  CHECK(dot.find("cluster_1") != std::string::npos);
  CHECK(dot.find("n1 -> n2") != std::string::npos);
}
