#include <doctest.h>

#include <set>

#include "residua/laws.hpp"
#include "residua/testbed.hpp"
#include "support.hpp"

using namespace residua;

TEST_CASE("registry is a bijection with the enum") {
  const auto& reg = law_registry();
  CHECK(reg.size() == kLawCount);
  CHECK(reg.size() >= 22);
  std::set<std::string_view> names;
  for (std::size_t i = 0; i < reg.size(); ++i) {
    CHECK(static_cast<std::size_t>(reg[i].id) == i);
    CHECK(names.insert(reg[i].name).second);
    CHECK(law_from_string(reg[i].name) == reg[i].id);
    CHECK(to_string(reg[i].id) == reg[i].name);
  }
  CHECK_FALSE(law_from_string("NOT_A_LAW").has_value());
}

TEST_CASE("core residue decomposition on B_3") {
  LawReport r = run_law(boolean_lattice(3), LawId::CORE_RESIDUE_DECOMP);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.exhaustive);
  CHECK(r.checked == 8);
}

TEST_CASE("coframe gate") {
  CHECK(run_law(support::pentagon(), LawId::COHEYTING_JOIN).verdict == Verdict::Skipped);
}

TEST_CASE("mu join homomorphism on divisors of 60") {
  LawReport r = run_law(divisor_lattice(60), LawId::MU_JOIN_HOM);
  CHECK(r.verdict == Verdict::Pass);
  CHECK(r.checked == 144);
}

TEST_CASE("all laws on the N poset") {
  FinitePoset n = build_poset_indexed({"a", "b", "c", "d"}, {{0, 2}, {1, 2}, {1, 3}});
  for (const auto& r : run_all(downset_lattice(n))) CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("all laws on a seeded random lattice") {
  for (const auto& r : run_all(random_distributive(7, 50))) CHECK(r.verdict == Verdict::Pass);
}

TEST_CASE("M3 skips coframe laws and passes the rest") {
  for (const auto& r : run_all(support::m3())) {
    if (law_registry()[static_cast<std::size_t>(r.law)].needs_coframe)
      CHECK(r.verdict == Verdict::Skipped);
    else
      CHECK(r.verdict == Verdict::Pass);
  }
}

TEST_CASE("reports are identical across job counts") {
  FiniteLattice l = random_distributive(3, 40);
  auto one = run_all(l, {}, 1);
  auto four = run_all(l, {}, 4);
  REQUIRE(one.size() == four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    CHECK(one[i].law == four[i].law);
    CHECK(one[i].verdict == four[i].verdict);
    CHECK(one[i].checked == four[i].checked);
  }
}

TEST_CASE("failures carry replayable witnesses") {
  FiniteLattice b3 = boolean_lattice(3);
  Faults faults;
  faults.co_heyting = [](const FiniteLattice& l, Elem x, Elem z, Elem correct) {
    return x == *l.top() && x != z ? l.bottom() : correct;
  };
  LawReport r = run_law(b3, LawId::COHEYTING_JOIN, {}, faults);
  CHECK(r.verdict == Verdict::Fail);
  CHECK_FALSE(r.witness.empty());
  for (Elem e : r.witness) CHECK(e < b3.size());
}

TEST_CASE("shrinking an injected fault") {
  FiniteLattice b3 = boolean_lattice(3);
  Faults faults;
  faults.co_heyting = [](const FiniteLattice& l, Elem x, Elem z, Elem correct) {
    return (z != x && l.maximal_subelements(x).contains(z)) ? l.bottom() : correct;
  };
  ShrinkResult s = shrink(b3, LawId::COHEYTING_JOIN, {}, faults);
  CHECK(s.report.verdict == Verdict::Fail);
  CHECK(s.lattice.size() <= 4);
  CHECK(s.removed >= 4);
}

TEST_CASE("shrinking a passing law is the identity") {
  FiniteLattice d = divisor_lattice(12);
  ShrinkResult s = shrink(d, LawId::MU_MONOTONE);
  CHECK(s.removed == 0);
  CHECK(s.lattice.size() == d.size());
}

TEST_CASE("a three element witness stays") {
  FiniteLattice bad = chain_lattice(3).with_corrupted_entry(FiniteLattice::Table::Join, 0, 1, 0);
  CHECK(run_law(bad, LawId::LATTICE_TABLES).verdict == Verdict::Fail);
  ShrinkResult s = shrink(bad, LawId::LATTICE_TABLES);
  CHECK(s.removed == 0);
  CHECK(s.lattice.size() == 3);
  CHECK(s.report.verdict == Verdict::Fail);
}

TEST_CASE("strict budget refuses to sample") {
  Budget b;
  b.exhaustive_subsets = 1;
  b.strict = true;
  CHECK(support::kind_of([&] { run_law(boolean_lattice(4), LawId::FINITE_DESCENT, b); }) ==
        ErrorKind::BudgetExceeded);
  b.strict = false;
  LawReport r = run_law(boolean_lattice(4), LawId::FINITE_DESCENT, b);
  CHECK(r.verdict == Verdict::Pass);
  CHECK_FALSE(r.exhaustive);
}

TEST_CASE("testbed bounded checkers") {
  for (std::size_t dims = 1; dims <= 3; ++dims) {
    Testbed t(dims);
    for (const auto& info : law_registry()) {
      LawReport r = run_law(t, info.id, 4);
      CHECK(r.verdict != Verdict::Fail);
      if (r.verdict == Verdict::Pass) CHECK_FALSE(r.exhaustive);
    }
  }
}
