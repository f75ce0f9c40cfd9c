#include <doctest.h>

#include "residua/io.hpp"
#include "residua/lattice.hpp"
#include "support.hpp"

using namespace residua;
using support::kind_of;

TEST_CASE("chain closure") {
  FinitePoset p = build_poset({"a", "b", "c"}, {{"a", "b"}, {"b", "c"}}, RelationMode::Covers);
  std::size_t entries = 0;
  for (Elem i = 0; i < 3; ++i)
    for (Elem j = 0; j < 3; ++j) entries += p.leq(i, j);
  CHECK(entries == 6);
  CHECK(p.leq(p.index_of("a"), p.index_of("c")));
}

TEST_CASE("antisymmetry violation") {
  CHECK(kind_of([] { build_poset({"a", "b"}, {{"a", "b"}, {"b", "a"}}, RelationMode::Leq); }) ==
        ErrorKind::CycleDetected);
  CHECK(kind_of([] { build_poset({"a"}, {{"a", "z"}}, RelationMode::Leq); }) == ErrorKind::UnknownElement);
}

TEST_CASE("diamond closure matches brute force") {
  FinitePoset p =
      build_poset({"0", "a", "b", "1"}, {{"0", "a"}, {"0", "b"}, {"a", "1"}, {"b", "1"}}, RelationMode::Covers);
  Elem a = p.index_of("a"), b = p.index_of("b");
  CHECK_FALSE(p.leq(a, b));
  CHECK_FALSE(p.leq(b, a));
  // Closure by repeated path extension.
  std::vector<std::vector<bool>> r(4, std::vector<bool>(4, false));
  for (Elem i = 0; i < 4; ++i) r[i][i] = true;
  for (auto [x, y] : p.covers()) r[x][y] = true;
  for (int round = 0; round < 4; ++round)
    for (Elem i = 0; i < 4; ++i)
      for (Elem j = 0; j < 4; ++j)
        for (Elem k = 0; k < 4; ++k)
          if (r[i][j] && r[j][k]) r[i][k] = true;
  for (Elem i = 0; i < 4; ++i)
    for (Elem j = 0; j < 4; ++j) CHECK(p.leq(i, j) == r[i][j]);
}

TEST_CASE("lattice construction and distributivity") {
  CHECK(support::diamond().distributive());
  CHECK(support::diamond().distributive_by_triples());
  CHECK_FALSE(support::pentagon().distributive());
  CHECK_FALSE(support::pentagon().distributive_by_triples());
  CHECK_FALSE(support::m3().distributive());
  CHECK(kind_of([] { as_lattice(build_poset({"a", "b"}, {}, RelationMode::Covers)); }) ==
        ErrorKind::NotALattice);
}

TEST_CASE("distributivity flag agrees with triple scan on small posets") {
  for (std::size_t n = 1; n <= 5; ++n)
    for (const auto& p : support::posets_up_to(n)) {
      FiniteLattice l;
      try {
        l = as_lattice(p);
      } catch (const Error&) {
        continue;
      }
      CHECK(l.distributive() == l.distributive_by_triples());
    }
}

TEST_CASE("meet and join tables agree with order scans") {
  for (const auto& l : {support::pentagon(), support::m3(), divisor_lattice(60), boolean_lattice(3)})
    for (Elem a = 0; a < l.size(); ++a)
      for (Elem b = 0; b < l.size(); ++b) {
        CHECK(l.meet(a, b) == support::scan_meet(l, a, b));
        CHECK(l.join(a, b) == support::scan_join(l, a, b));
      }
}

TEST_CASE("down and up sets") {
  FiniteLattice c = chain_lattice(3);
  CHECK(c.down_set(1).to_vector() == std::vector<Elem>{0, 1});
  CHECK(c.down_set(c.bottom()).count() == 1);
  FiniteLattice d = support::diamond();
  Elem a = d.poset().index_of("a");
  CHECK(d.up_set(a).to_vector() == std::vector<Elem>{a, d.poset().index_of("1")});
}

TEST_CASE("meet_of_set and join_of_set") {
  FiniteLattice d = support::diamond();
  const auto& p = d.poset();
  CHECK(d.meet_of_set(ElementSet(4, {p.index_of("a"), p.index_of("b")})) == p.index_of("0"));
  CHECK(d.join_of_set(d.empty_set()) == d.bottom());
  FiniteLattice div = divisor_lattice(12);
  ElementSet s(div.size(), {div.poset().index_of("4"), div.poset().index_of("6")});
  CHECK(div.name(div.meet_of_set(s)) == std::to_string(std::gcd(4, 6)));
}

TEST_CASE("empty meet needs a top") {
  FinitePoset p = build_poset({"0"}, {}, RelationMode::Covers);
  FiniteLattice l = as_lattice(p);
  CHECK(l.meet_of_set(l.empty_set()) == 0);
}

TEST_CASE("finite elements are dually compact") {
  for (const auto& l : {support::diamond(), chain_lattice(4), chain_lattice(1)})
    for (Elem x = 0; x < l.size(); ++x) CHECK(dually_compact_finite(l, x, true));
}

TEST_CASE("lattice JSON round trip is byte identical") {
  for (const auto& l : {support::pentagon(), divisor_lattice(36), boolean_lattice(3), chain_lattice(5)}) {
    std::string once = dump_canonical(lattice_to_json(l));
    FiniteLattice back = lattice_from_json(Json::parse(once));
    CHECK(dump_canonical(lattice_to_json(back)) == once);
    CHECK(back.size() == l.size());
  }
}

TEST_CASE("hasse dot of the diamond") {
  std::string dot = hasse_dot(support::diamond());
  CHECK(dot.rfind("digraph", 0) == 0);
  std::size_t edges = 0;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos) ++edges;
  CHECK(edges == 4);
}

TEST_CASE("single element lattice dot") {
  FiniteLattice one = chain_lattice(1);
  std::string dot = hasse_dot(one);
  CHECK(dot.find("->") == std::string::npos);
}
