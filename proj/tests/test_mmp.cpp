#include <doctest.h>

#include <algorithm>
#include <random>

#include "corpus.hpp"
#include "oalat/mmp.hpp"

using namespace oalat;
using oalat::testing::fixture_text;

TEST_CASE("fixture hypergraphs have the published sizes") {
  struct Case {
    const char* name;
    std::size_t atoms, blocks;
  };
  for (auto [name, atoms, blocks] : {Case{"bub_49_36.mmp", 49, 36}, Case{"peres_57_40.mmp", 57, 40},
                                     Case{"reduced_33_21.mmp", 33, 21}}) {
    CAPTURE(name);
    const Hypergraph h = parse_mmp(fixture_text(name));
    CHECK(h.atom_count() == atoms);
    CHECK(h.block_count() == blocks);
    CHECK(validate(h).empty());
    for (const Block& b : h.blocks) CHECK(b.size() == 3);
  }
}

TEST_CASE("serialize inverts parse") {
  for (const char* name : {"bub_49_36.mmp", "peres_57_40.mmp", "reduced_33_21.mmp"}) {
    std::string text = fixture_text(name);
    text.erase(text.find_last_not_of("\n") + 1);
    CHECK(serialize_mmp(parse_mmp(text)) == text);
  }
  CHECK(serialize_mmp(parse_mmp("1~+1,++~+J3.")) == "1~+1,++~+J3.");
}

TEST_CASE("atom labels follow the 90-character alphabet") {
  CHECK(parse_atom_label("1").ordinal() == 0);
  CHECK(parse_atom_label("A").ordinal() == 9);
  CHECK(parse_atom_label("a").ordinal() == 35);
  CHECK(parse_atom_label("~").ordinal() == 89);
  CHECK(parse_atom_label("+1").ordinal() == 90);
  CHECK(parse_atom_label("++~").ordinal() == 269);
  for (std::uint32_t i = 0; i < 400; ++i) {
    CHECK(parse_atom_label(AtomLabel::from_ordinal(i).str()).ordinal() == i);
  }
  CHECK(parse_atom_label("+1") < parse_atom_label("++1"));
  CHECK(parse_atom_label("~") < parse_atom_label("+1"));
  CHECK_THROWS_AS(parse_atom_label("+"), MmpError);
  CHECK_THROWS_AS(parse_atom_label("1 "), MmpError);
}

TEST_CASE("syntax errors carry the offending column") {
  auto column = [](const char* text) {
    try {
      parse_mmp(text);
    } catch (const MmpError& e) {
      return static_cast<long>(e.position());
    }
    return -1L;
  };
  CHECK(column("123") == 3);
  CHECK(column("12 3.") == 2);
  CHECK(column("123,,45.") == 4);
  CHECK(column("+.") == 1);
  CHECK(column("1123.") == 1);
  CHECK(column("") == 0);
  CHECK(column("123.4") >= 4);
}

TEST_CASE("validate reports each MMP condition") {
  auto conditions = [](const char* text) {
    std::vector<MmpCondition> out;
    for (const auto& v : validate(parse_mmp(text))) out.push_back(v.condition);
    return out;
  };
  CHECK(conditions("12.") == std::vector{MmpCondition::small_block});
  CHECK(conditions("123,124.") == std::vector{MmpCondition::large_intersection});
  CHECK(conditions("123,123.") == std::vector{MmpCondition::duplicate_block});
  CHECK(conditions("1234,1256.").empty());
  CHECK(conditions("123,456,147,258,369.").empty());

  Hypergraph h = parse_mmp("123.");
  h.atoms.push_back(parse_atom_label("9"));
  CHECK(validate(h).front().condition == MmpCondition::uncovered_atom);
}

TEST_CASE("canonical renaming is idempotent and preserves structure") {
  const Hypergraph peres = parse_mmp(fixture_text("peres_57_40.mmp"));
  const Renaming r = canonical_rename_with_map(peres);
  CHECK(canonical_rename(r.graph) == r.graph);
  CHECK(r.old_labels.size() == peres.atom_count());
  CHECK(r.graph.atoms.front().str() == "1");
  for (std::size_t b = 0; b < peres.block_count(); ++b) {
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(r.old_labels[r.graph.blocks[b][k]] == peres.atoms[peres.blocks[b][k]]);
    }
  }
}

TEST_CASE("isomorphism survives shuffled blocks and relabelled atoms") {
  const Hypergraph bub = parse_mmp(fixture_text("bub_49_36.mmp"));
  std::mt19937 rng(7);
  for (int round = 0; round < 5; ++round) {
    std::vector<AtomIndex> perm(bub.atom_count());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Hypergraph g;
    for (std::size_t i = 0; i < bub.atom_count(); ++i) g.atoms.push_back(AtomLabel::from_ordinal(i));
    for (Block b : bub.blocks) {
      for (AtomIndex& a : b) a = perm[a];
      std::shuffle(b.begin(), b.end(), rng);
      g.blocks.push_back(b);
    }
    std::shuffle(g.blocks.begin(), g.blocks.end(), rng);
    const auto map = is_isomorphic(bub, g);
    REQUIRE(map);
    // Bub has automorphisms, so check the map rather than compare to perm.
    std::vector<Block> image;
    for (Block b : bub.blocks) {
      for (AtomIndex& a : b) a = (*map)[a];
      std::sort(b.begin(), b.end());
      image.push_back(b);
    }
    std::vector<Block> target;
    for (Block b : g.blocks) {
      std::sort(b.begin(), b.end());
      target.push_back(b);
    }
    std::sort(image.begin(), image.end());
    std::sort(target.begin(), target.end());
    CHECK(image == target);
  }
  CHECK_FALSE(is_isomorphic(bub, parse_mmp(fixture_text("peres_57_40.mmp"))));
  CHECK_FALSE(is_isomorphic(parse_mmp("123,345,567."), parse_mmp("123,145,167.")));
}
