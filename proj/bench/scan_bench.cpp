// Serial reference against the OpenMP kernel, naive against partial evaluation.
//
//   scan_bench --benchmark_filter=Peres

#include <benchmark/benchmark.h>

#include <map>

#include "oalat/fixtures.hpp"
#include "oalat/hilbert.hpp"
#include "oalat/search.hpp"

namespace {

using namespace oalat;

const OmlLattice& load(const char* name) {
  static std::map<std::string, OmlLattice> cache;
  auto it = cache.find(name);
  if (it == cache.end()) it = cache.emplace(name, build_hasse(parse_mmp(*find_fixture(name)))).first;
  return it->second;
}

// args: algorithm (0 naive, 1 partial), workers. One worker takes the serial
// path; more go through the OpenMP kernel even on a single core.
void run_scan(benchmark::State& state, const char* fixture, int n, std::optional<Partition> region) {
  const OmlLattice& l = load(fixture);
  const Equation e = gen_noa(n, NoaForm::compact);
  ScanOptions o;
  o.algorithm = state.range(0) == 0 ? Algorithm::naive : Algorithm::partial_eval;
  o.workers = static_cast<unsigned>(state.range(1));
  o.partition = region;
  std::uint64_t evaluations = 0;
  for (auto _ : state) {
    const ScanOutcome r = scan(l, e, o);
    evaluations = r.stats.evaluations;
    benchmark::DoNotOptimize(r.verdict);
  }
  state.counters["evaluations"] = static_cast<double>(evaluations);
  state.counters["workers"] = o.workers;
}

void BM_Bub3(benchmark::State& s) { run_scan(s, "bub_49_36.mmp", 3, std::nullopt); }
void BM_Peres3(benchmark::State& s) { run_scan(s, "peres_57_40.mmp", 3, std::nullopt); }
void BM_Peres4Slice(benchmark::State& s) {
  run_scan(s, "peres_57_40.mmp", 4, Partition{{0, 115}, {0, 7}});
}
void BM_Reduced4(benchmark::State& s) { run_scan(s, "reduced_33_21.mmp", 4, std::nullopt); }

void grid(benchmark::internal::Benchmark* b) {
  for (int algo : {0, 1}) {
    for (int workers : {1, 2, 4}) b->Args({algo, workers});
  }
  b->ArgNames({"partial", "workers"})->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK(BM_Bub3)->Apply(grid);
BENCHMARK(BM_Peres3)->Apply(grid);
BENCHMARK(BM_Peres4Slice)->Apply(grid);
BENCHMARK(BM_Reduced4)->Apply(grid);

void BM_Coloring(benchmark::State& state) {
  const Hypergraph h = parse_mmp(*find_fixture("peres_57_40.mmp"));
  for (auto _ : state) benchmark::DoNotOptimize(ks_colorable(h));
}
BENCHMARK(BM_Coloring)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
