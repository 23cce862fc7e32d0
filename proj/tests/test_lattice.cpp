#include <doctest.h>

#include "corpus.hpp"
#include "oalat/lattice.hpp"

using namespace oalat;
using oalat::testing::fixture_text;

TEST_CASE("node count is 2 + 2A and every fixture is orthomodular") {
  struct Case {
    const char* name;
    std::size_t nodes;
  };
  for (auto [name, nodes] : {Case{"bub_49_36.mmp", 100}, Case{"peres_57_40.mmp", 116},
                             Case{"reduced_33_21.mmp", 68}}) {
    CAPTURE(name);
    const OmlLattice l = build_hasse(parse_mmp(fixture_text(name)));
    CHECK(l.node_count() == nodes);
    CHECK_FALSE(check_oml(l).has_value());
  }
}

TEST_CASE("joins and meets across two blocks") {
  const OmlLattice l = build_hasse(parse_mmp("123,145."));
  const NodeId a1 = l.atom_node(0), a2 = l.atom_node(1), a3 = l.atom_node(2), a4 = l.atom_node(3);
  CHECK(l.node_count() == 12);
  // 2 and 4 lie in different blocks; both are below 1' and nothing smaller.
  CHECK(l.join(a2, a4) == l.ortho(a1));
  CHECK(l.join(a2, a4) == l.coatom_node(0));
  CHECK(l.meet(l.ortho(a2), l.ortho(a3)) == a1);
  CHECK(l.join(a2, a3) == l.ortho(a1));
  CHECK(l.meet(a2, a4) == kZero);
  CHECK(l.join(a2, l.ortho(a2)) == kOne);
  CHECK(l.meet(l.ortho(a2), l.ortho(a4)) == a1);
}

TEST_CASE("names round-trip through parse_node") {
  const OmlLattice l = build_hasse(parse_mmp(fixture_text("peres_57_40.mmp")));
  CHECK(l.node_name(kZero) == "0");
  CHECK(l.node_name(kOne) == "0'");
  CHECK(l.node_name(l.parse_node("++A'")) == "++A'");
  for (NodeId x = 0; x < l.node_count(); ++x) CHECK(l.parse_node(l.node_name(x)) == x);
  CHECK_THROWS_AS(l.parse_node("++Z"), std::invalid_argument);
  CHECK_THROWS_AS(l.parse_node(""), std::invalid_argument);
  CHECK_THROWS_AS(l.join(0, 116), std::out_of_range);
}

TEST_CASE("Sasaki hook is a' v (a ^ b)") {
  for (const char* name : {"bub_49_36.mmp", "reduced_33_21.mmp"}) {
    const OmlLattice l = build_hasse(parse_mmp(fixture_text(name)));
    for (NodeId a = 0; a < l.node_count(); ++a) {
      for (NodeId b = 0; b < l.node_count(); ++b) {
        REQUIRE(l.sasaki(a, b) == l.join(l.ortho(a), l.meet(a, b)));
      }
    }
  }
}

TEST_CASE("order facts of a Greechie lattice") {
  const OmlLattice l = build_hasse(parse_mmp(fixture_text("reduced_33_21.mmp")));
  for (NodeId x = 0; x < l.node_count(); ++x) {
    CHECK(l.ortho(l.ortho(x)) == x);
    CHECK(l.le(kZero, x));
    CHECK(l.le(x, kOne));
    if (l.is_atom(x)) {
      CHECK(l.is_coatom(l.ortho(x)));
      CHECK(l.atom_of(l.ortho(x)) == l.atom_of(x));
      for (std::size_t b : l.blocks_of(x)) {
        for (AtomIndex y : l.hypergraph().blocks[b]) {
          if (l.atom_node(y) != x) CHECK(l.le(x, l.ortho(l.atom_node(y))));
        }
      }
    }
  }
}

TEST_CASE("short loops are not lattices") {
  CHECK_THROWS_AS(build_hasse(parse_mmp("123,345,561.")), NotALattice);
  CHECK_THROWS_AS(build_hasse(parse_mmp("123,345,567,781.")), NotALattice);
  CHECK_THROWS_AS(build_hasse(parse_mmp("12.")), std::invalid_argument);
  CHECK_NOTHROW(build_hasse(parse_mmp("123,345,567,789,9A1.")));
}

TEST_CASE("check_oml rejects the hexagon") {
  for (const auto& c : oalat::testing::small_corpus()) {
    CAPTURE(c.name);
    CHECK(check_oml(c.lattice).has_value() == (c.name == "O6"));
  }
}

TEST_CASE("dump lists every node") {
  const OmlLattice l = build_hasse(parse_mmp("123."));
  const std::string d = l.dump();
  CHECK(std::count(d.begin(), d.end(), '\n') == 8);
  CHECK(d.find("3'") != std::string::npos);
}
