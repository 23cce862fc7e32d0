#include <doctest.h>

#include <random>

#include "corpus.hpp"
#include "oalat/search.hpp"

using namespace oalat;
using oalat::testing::fixture_text;

namespace {

const OmlLattice& bub() {
  static const OmlLattice l = build_hasse(parse_mmp(fixture_text("bub_49_36.mmp")));
  return l;
}

const OmlLattice& peres() {
  static const OmlLattice l = build_hasse(parse_mmp(fixture_text("peres_57_40.mmp")));
  return l;
}

std::vector<NodeId> nodes(const OmlLattice& l, std::initializer_list<const char*> names) {
  std::vector<NodeId> out;
  for (const char* n : names) out.push_back(l.parse_node(n));
  return out;
}

ScanOptions with(Algorithm a, int workers = 1, bool deterministic = true) {
  ScanOptions o;
  o.algorithm = a;
  o.workers = workers;
  o.deterministic = deterministic;
  return o;
}

}  // namespace

TEST_CASE("Bub fails standard 3OA") {
  const Equation e = gen_noa(3, NoaForm::standard);
  const ScanOutcome o = scan(bub(), e);
  CHECK(o.verdict == Verdict::fail);
  REQUIRE(o.counterexample);
  CHECK(*o.counterexample == nodes(bub(), {"1", "++3'", "4"}));
  CHECK(o.stats.failures == 1792);
  CHECK(o.stats.evaluations == 999900);
  CHECK(o.stats.skipped == 100);
  CHECK_FALSE(verify_assignment(bub(), e, *o.counterexample));
}

TEST_CASE("Bub fails compact 3OA") {
  const Equation e = gen_noa(3, NoaForm::compact);
  const ScanOutcome o = scan(bub(), e);
  REQUIRE(o.counterexample);
  CHECK(*o.counterexample == nodes(bub(), {"1'", "4'", "++3'"}));
  CHECK(o.stats.failures == 448);
  CHECK(o.stats.evaluations == 980100);
  CHECK(o.stats.skipped == 19900);
}

TEST_CASE("naive and partial evaluation agree on Bub, serial and parallel") {
  for (NoaForm f : {NoaForm::standard, NoaForm::compact}) {
    const Equation e = gen_noa(3, f);
    const ScanOutcome ref = scan(bub(), e, with(Algorithm::naive));
    CHECK(ref.stats.evaluations == 1000000);
    CHECK(ref.stats.skipped == 0);
    for (Algorithm a : {Algorithm::naive, Algorithm::partial_eval}) {
      for (int w : {1, 3, 4}) {
        const ScanOutcome o = scan(bub(), e, with(a, w));
        CHECK(o.counterexample == ref.counterexample);
        CHECK(o.stats.failures == ref.stats.failures);
        CHECK(o.stats.evaluations + o.stats.skipped == 1000000);
      }
    }
    CHECK(scan(bub(), e).stats.evaluations < ref.stats.evaluations);
  }
}

TEST_CASE("fast mode stops at a genuine counterexample") {
  const Equation e = gen_noa(3, NoaForm::standard);
  for (int w : {1, 4}) {
    const ScanOutcome o = scan(bub(), e, with(Algorithm::partial_eval, w, false));
    REQUIRE(o.counterexample);
    CHECK_FALSE(verify_assignment(bub(), e, *o.counterexample));
    CHECK(o.stats.evaluations + o.stats.skipped < 1000000);
  }
}

TEST_CASE("Peres passes 3OA in both forms") {
  const ScanOutcome s = scan(peres(), gen_noa(3, NoaForm::standard), with(Algorithm::partial_eval, 2));
  const ScanOutcome c = scan(peres(), gen_noa(3, NoaForm::compact), with(Algorithm::partial_eval, 2));
  CHECK(s.verdict == Verdict::pass);
  CHECK(c.verdict == Verdict::pass);
  CHECK(s.stats.evaluations == 1560780);
  CHECK(s.stats.skipped == 116);
  CHECK(c.stats.evaluations == 1534100);
  CHECK(c.stats.skipped == 26796);
  CHECK(s.trace.empty());
}

TEST_CASE("sixteen partitions merge to the unpartitioned scan") {
  const Equation e = gen_noa(3, NoaForm::standard);
  const ScanOutcome whole = scan(bub(), e);
  std::vector<ScanOutcome> parts;
  for (const Partition& p : grid_partitions(bub().node_count(), 4, 4)) {
    ScanOptions o;
    o.partition = p;
    parts.push_back(scan(bub(), e, o));
  }
  CHECK(parts.size() == 16);
  const ScanOutcome merged = merge_partitions(parts);
  CHECK(merged.verdict == whole.verdict);
  CHECK(merged.counterexample == whole.counterexample);
  CHECK(merged.stats.evaluations == whole.stats.evaluations);
  CHECK(merged.stats.skipped == whole.stats.skipped);
  CHECK(merged.stats.failures == whole.stats.failures);

  std::vector<ScanOutcome> missing(parts.begin(), parts.end() - 1);
  CHECK_THROWS_AS(merge_partitions(missing), std::invalid_argument);
  std::vector<ScanOutcome> doubled = parts;
  doubled.back() = doubled.front();
  CHECK_THROWS_AS(merge_partitions(doubled), std::invalid_argument);
}

TEST_CASE("quadrants on Bub 3OA keep the first counterexample") {
  const Equation e = gen_noa(3, NoaForm::compact);
  const ScanOutcome whole = scan(bub(), e);
  std::vector<ScanOutcome> parts;
  for (const Partition& p : grid_partitions(100, 2, 2)) {
    ScanOptions o = with(Algorithm::naive);
    o.partition = p;
    parts.push_back(scan(bub(), e, o));
  }
  CHECK(merge_partitions(parts).counterexample == whole.counterexample);
}

TEST_CASE("partition ranges are validated") {
  const Equation e = gen_noa(3, NoaForm::standard);
  ScanOptions o;
  o.partition = Partition{{0, 100}, {0, 99}};
  CHECK_THROWS_AS(scan(bub(), e, o), std::out_of_range);
  CHECK(parse_index_range("3..9") == IndexRange{3, 9});
  CHECK(parse_index_range("97") == IndexRange{97, 97});
  CHECK_THROWS_AS(parse_index_range("9..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_index_range("a..3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_index_range("1..."), std::invalid_argument);
  CHECK_THROWS_AS(grid_partitions(10, 11, 1), std::invalid_argument);
  ScanOptions bad;
  bad.workers = 0;
  CHECK_THROWS_AS(scan(bub(), e, bad), std::invalid_argument);
}

TEST_CASE("every region is fully accounted for") {
  std::mt19937 rng(11);
  const Equation e = gen_noa(3, NoaForm::compact);
  for (int round = 0; round < 10; ++round) {
    std::uniform_int_distribution<std::size_t> d(0, 99);
    std::size_t a = d(rng), b = d(rng), c = d(rng), f = d(rng);
    ScanOptions o;
    o.partition = Partition{{std::min(a, b), std::max(a, b)}, {std::min(c, f), std::max(c, f)}};
    o.workers = 1 + round % 3;
    const ScanOutcome r = scan(bub(), e, o);
    CHECK(r.stats.evaluations + r.stats.skipped ==
          o.partition->outer.size() * o.partition->inner.size() * 100);
  }
}

TEST_CASE("naive and partial evaluation agree on the small corpus") {
  std::vector<Equation> equations;
  for (int n : {3, 4}) {
    equations.push_back(gen_noa(n, NoaForm::standard));
    equations.push_back(gen_noa(n, NoaForm::compact));
  }
  equations.push_back(parse_equation(fixture_text("oa3_ortho.eq")));
  equations.push_back(parse_equation("a _|_ b # a v (a' ^ (a v b)) = a v b"));
  int failing = 0;
  for (const auto& c : oalat::testing::small_corpus()) {
    for (const Equation& e : equations) {
      CAPTURE(c.name);
      CAPTURE(print_equation(e));
      const ScanOutcome n = scan(c.lattice, e, with(Algorithm::naive));
      const ScanOutcome p = scan(c.lattice, e, with(Algorithm::partial_eval));
      CHECK(n.verdict == p.verdict);
      CHECK(n.counterexample == p.counterexample);
      CHECK(n.stats.failures == p.stats.failures);
      CHECK(p.stats.vacuous <= n.stats.vacuous);
      failing += n.verdict == Verdict::fail;
    }
  }
  CHECK(failing > 0);
}

TEST_CASE("trace replay ends in the violated comparison") {
  const Equation e = gen_noa(3, NoaForm::standard);
  const ScanOutcome o = scan(bub(), e);
  REQUIRE_FALSE(o.trace.empty());
  CHECK(o.trace.back().op == TraceOp::le);
  CHECK(o.trace.back().result == kZero);
  CHECK(o.trace == trace_evaluation(bub(), e, *o.counterexample));

  const Equation h = parse_equation("a _|_ b # a < b");
  const auto t = trace_evaluation(bub(), h, std::vector<NodeId>{kOne, kOne});
  REQUIRE(t.size() == 2);
  CHECK(t[1].op == TraceOp::le);
  CHECK(t[1].result == kZero);
}

TEST_CASE("pool mode finds the Peres 7OA failure") {
  const auto pool = nodes(peres(), {"++1", "++4", "1", "7", "+1", "++A"});
  CHECK(expand_pool(peres(), pool).size() == 12);
  for (auto [form, expected] : {std::pair{NoaForm::compact, 4}, std::pair{NoaForm::standard, 8}}) {
    const Equation e = gen_noa(7, form);
    const auto cand = expand_pool(peres(), pool);
    std::vector<std::vector<NodeId>> domains(7, cand);
    const ScanOutcome o = scan_domains(peres(), e, domains, with(Algorithm::partial_eval, 2));
    CHECK(o.stats.failures == static_cast<std::uint64_t>(expected));
    REQUIRE(o.counterexample);
    CHECK_FALSE(verify_assignment(peres(), e, *o.counterexample));
    CHECK(find_pool_counterexample(peres(), e, pool) == o.counterexample);
  }
}

TEST_CASE("verify_assignment checks its input") {
  const Equation e = gen_noa(3, NoaForm::standard);
  CHECK_THROWS_AS(verify_assignment(bub(), e, std::vector<NodeId>{1, 2}), std::invalid_argument);
  CHECK_THROWS_AS(verify_assignment(bub(), e, std::vector<NodeId>{1, 2, 100}), std::out_of_range);
  CHECK(verify_assignment(bub(), e, std::vector<NodeId>{0, 0, 0}));
}

TEST_CASE("cost model") {
  CHECK(cost_model(peres(), gen_noa(7, NoaForm::compact)) == 138202145015414784ULL);
  const OmlLattice reduced = build_hasse(parse_mmp(fixture_text("reduced_33_21.mmp")));
  const std::uint64_t n6 = 68ULL * 68 * 68 * 68 * 68 * 68;
  const OperationCount ops = count_operations(gen_noa(6, NoaForm::compact));
  CHECK(cost_model(reduced, gen_noa(6, NoaForm::compact)) == n6 * ops.total());
  CHECK(ops.total() == 165);
  CHECK_THROWS_AS(cost_model(peres(), gen_noa(12, NoaForm::compact)), std::overflow_error);
}
