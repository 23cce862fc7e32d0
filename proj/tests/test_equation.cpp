#include <doctest.h>

#include "corpus.hpp"
#include "oalat/equation.hpp"
#include "oalat/search.hpp"

using namespace oalat;
using oalat::testing::fixture_text;

namespace {

std::uint64_t pow3(int k) {
  std::uint64_t r = 1;
  while (k-- > 0) r *= 3;
  return r;
}

bool passes(const OmlLattice& l, const Equation& e) { return scan(l, e).verdict == Verdict::pass; }

}  // namespace

TEST_CASE("orthogonality form of 3OA parses with two hypotheses") {
  const Equation e = parse_equation(fixture_text("oa3_ortho.eq"));
  CHECK(e.var_count() == 4);
  CHECK(e.hypotheses.size() == 2);
  CHECK(e.rel == Relation::le);
  CHECK(e.var_names == std::vector<std::string>{"a", "b", "q", "n"});
  CHECK(print_equation(e) == "a _|_ b # q _|_ n # (avb)^(qvn) < bva^(qv(avq)^(bvn))");
  CHECK(same_equation(e, parse_equation(print_equation(e))));
}

TEST_CASE("printer output parses back to the same equation") {
  for (int n = 3; n <= 7; ++n) {
    for (NoaForm f : {NoaForm::standard, NoaForm::compact}) {
      const Equation e = gen_noa(n, f);
      CHECK(same_equation(parse_equation(print_equation(e)), e));
    }
  }
  for (const char* text : {"a -> b -> c = (a -> b) -> c", "0' v a ^ 1 < a''", "a = a", "(a) < ((a))"}) {
    const Equation e = parse_equation(text);
    CHECK(same_equation(parse_equation(print_equation(e)), e));
  }
}

TEST_CASE("generator matches the golden files") {
  for (int n = 3; n <= 7; ++n) {
    for (auto [form, suffix] : {std::pair{NoaForm::standard, "standard"}, std::pair{NoaForm::compact, "compact"}}) {
      const std::string name = "noa" + std::to_string(n) + "_" + suffix + ".eq";
      CAPTURE(name);
      CHECK(same_equation(parse_equation(fixture_text(name)), gen_noa(n, form)));
    }
  }
}

TEST_CASE("variable occurrence counts follow the closed forms") {
  for (int n = 3; n <= 7; ++n) {
    CAPTURE(n);
    const Equation s = gen_noa(n, NoaForm::standard);
    const Equation c = gen_noa(n, NoaForm::compact);
    CHECK(s.var_count() == static_cast<std::size_t>(n));
    CHECK(c.var_count() == static_cast<std::size_t>(n));
    CHECK(count_var_occurrences(s) == 8 * pow3(n - 3) + 4);
    CHECK(count_var_occurrences(c) == 6 * pow3(n - 3) + 3);
  }
  CHECK(count_var_occurrences(gen_noa(7, NoaForm::compact)) == 489);
  CHECK(count_var_occurrences(gen_noa(6, NoaForm::compact)) == 165);
}

TEST_CASE("7OA compact needs 487 binary operations, one complement and one comparison") {
  const OperationCount ops = count_operations(gen_noa(7, NoaForm::compact));
  CHECK(ops.binary == 487);
  CHECK(ops.ortho == 1);
  CHECK(ops.relations == 1);
  CHECK(ops.total() == 489);
}

TEST_CASE("3OA in both forms prints as expected") {
  CHECK(print_equation(gen_noa(3, NoaForm::standard)) ==
        "(a->c)^((a->c)^(b->c)v(a'->c)^(b'->c)) < b->c");
  CHECK(print_equation(gen_noa(3, NoaForm::compact)) == "a^(a^bv(a->c)^(b->c)) < b'->c");
  CHECK(gen_noa(4, NoaForm::standard).var_names == std::vector<std::string>{"a", "c", "b", "d"});
  CHECK_THROWS_AS(gen_noa(2, NoaForm::standard), std::invalid_argument);
}

TEST_CASE("syntax errors report a column") {
  auto column = [](const char* text) {
    try {
      parse_equation(text);
    } catch (const EquationSyntaxError& e) {
      return static_cast<long>(e.position);
    }
    return -1L;
  };
  CHECK(column("a < (b") == 6);
  CHECK(column("a < b)") == 5);
  CHECK(column("a ^ < b") == 4);
  CHECK(column("a % b") == 2);
  CHECK(column("a v b") == 5);
  CHECK(column("a _|_ b a < a") == 8);
  CHECK(column("a _|_ b # a < a") == 0);  // b only in a hypothesis
  CHECK(column("") == 0);
}

TEST_CASE("hash-consing shares equal subterms") {
  TermPool p;
  const TermId a = p.var(0), b = p.var(1);
  CHECK(p.join(a, b) == p.join(a, b));
  CHECK(p.join(a, b) != p.join(b, a));
  CHECK(p.ortho(p.ortho(a)) != a);
  const std::size_t before = p.size();
  p.sasaki(a, b);
  p.sasaki(a, b);
  CHECK(p.size() == before + 1);
}

TEST_CASE("evaluation agrees with hand computation on 123,145.") {
  const OmlLattice l = build_hasse(parse_mmp("123,145."));
  const Equation e = parse_equation("a v b = c");
  const NodeId n2 = l.atom_node(1), n4 = l.atom_node(3), c1 = l.coatom_node(0);
  CHECK(eval_equation(l, std::vector<NodeId>{n2, n4, c1}, e));
  CHECK_FALSE(eval_equation(l, std::vector<NodeId>{n2, n4, kOne}, e));
  CHECK(eval_term(l, std::vector<NodeId>{n2, n4, c1}, e, e.lhs) == c1);
  const Equation h = parse_equation("a _|_ b # a < b'");
  CHECK(eval_equation(l, std::vector<NodeId>{kOne, kOne}, h));  // hypothesis fails: vacuous
}

TEST_CASE("standard and compact 3OA agree on every corpus lattice") {
  for (const auto& c : oalat::testing::small_corpus()) {
    CAPTURE(c.name);
    CHECK(passes(c.lattice, gen_noa(3, NoaForm::standard)) ==
          passes(c.lattice, gen_noa(3, NoaForm::compact)));
  }
}

TEST_CASE("compact generalization agrees with the standard form for n = 4, 5") {
  for (const auto& c : oalat::testing::small_corpus()) {
    if (c.lattice.node_count() > 16) continue;
    CAPTURE(c.name);
    for (int n : {4, 5}) {
      CHECK(passes(c.lattice, gen_noa(n, NoaForm::standard)) ==
            passes(c.lattice, gen_noa(n, NoaForm::compact)));
    }
  }
}

TEST_CASE("every nOA fails on the non-orthomodular hexagon") {
  for (const auto& c : oalat::testing::small_corpus()) {
    if (c.name != "O6") continue;
    for (int n = 3; n <= 5; ++n) {
      CHECK_FALSE(passes(c.lattice, gen_noa(n, NoaForm::standard)));
      CHECK_FALSE(passes(c.lattice, gen_noa(n, NoaForm::compact)));
    }
  }
}
