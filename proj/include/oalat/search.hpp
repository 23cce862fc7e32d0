#pragma once

// Exhaustive model checking of an equation over all variable assignments of
// a finite lattice.  Two evaluation algorithms share one loop structure:
//
//   naive         every complete assignment evaluates the whole equation;
//   partial_eval  each loop level substitutes its variable, folds constants
//                 and shrinks the equation for the deeper levels, skipping
//                 whole subtrees once the verdict is known.
//
// Loops nest in variable order (variable 0 outermost) and each loop visits
// nodes in index order, so "first counterexample" is lexicographic.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "oalat/equation.hpp"
#include "oalat/lattice.hpp"

namespace oalat {

enum class Algorithm { naive, partial_eval };

/// Inclusive node-index range.
struct IndexRange {
  std::size_t first = 0;
  std::size_t last = 0;
  std::size_t size() const { return last - first + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Slice of the scan: variable 0 over `outer`, variable 1 over `inner`.
struct Partition {
  IndexRange outer;
  IndexRange inner;
  friend bool operator==(const Partition&, const Partition&) = default;
};

/// Parses "A..B" (inclusive, zero-based); a single number means A..A.
IndexRange parse_index_range(std::string_view text);

/// Row-major split of the outer x inner rectangle into rows x cols pieces.
std::vector<Partition> grid_partitions(std::size_t node_count, std::size_t rows,
                                       std::size_t cols);

struct ScanOptions {
  Algorithm algorithm = Algorithm::partial_eval;
  std::optional<Partition> partition;
  int workers = 1;
  /// Deterministic scans cover the whole region and report the
  /// lexicographically first counterexample plus exact counts.  Otherwise the
  /// scan stops at the first counterexample any worker finds.
  bool deterministic = true;
};

struct ScanStats {
  std::uint64_t evaluations = 0;  // assignments evaluated at the innermost level
  std::uint64_t skipped = 0;      // assignments decided before the innermost level
  /// Assignments seen to violate a hypothesis.  Exact for naive scans; a
  /// lower bound under partial evaluation, which stops looking at the
  /// hypotheses once the conclusion holds.
  std::uint64_t vacuous = 0;
  std::uint64_t failures = 0;     // counterexamples (exact in deterministic scans)
  std::uint64_t operations = 0;   // table operations executed
  double wall_ms = 0;

  ScanStats& operator+=(const ScanStats& o);
};

enum class TraceOp : std::uint8_t { ortho, join, meet, sasaki, le, eq };

/// One operation of a replayed evaluation; `right` is unused for ortho.
struct TraceRecord {
  TraceOp op;
  NodeId left;
  NodeId right;
  NodeId result;
  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

enum class Verdict { pass, fail };

struct ScanOutcome {
  Verdict verdict = Verdict::pass;
  std::optional<std::vector<NodeId>> counterexample;
  ScanStats stats;
  std::vector<TraceRecord> trace;  // replay of the counterexample
  std::size_t node_count = 0;
  std::size_t var_count = 0;
  Partition region;  // what was scanned, with ranges resolved
  bool deterministic = true;
};

ScanOutcome scan(const OmlLattice& l, const Equation& e, const ScanOptions& options = {});

/// Scan with an explicit per-variable list of candidate nodes.  Loops visit
/// candidates in list order.  `region` in the outcome is left empty.
ScanOutcome scan_domains(const OmlLattice& l, const Equation& e,
                         std::span<const std::vector<NodeId>> domains, const ScanOptions& options);

/// Replays one assignment, recording every operation with its operands.
std::vector<TraceRecord> trace_evaluation(const OmlLattice& l, const Equation& e,
                                          std::span<const NodeId> assignment);

/// Exact mode: evaluates the equation at `nodes` (one per variable).
bool verify_assignment(const OmlLattice& l, const Equation& e, std::span<const NodeId> nodes);

/// Pool mode: every variable ranges over the pool nodes and their
/// orthocomplements.  Returns the first falsifying tuple, if any.
std::optional<std::vector<NodeId>> find_pool_counterexample(const OmlLattice& l,
                                                            const Equation& e,
                                                            std::span<const NodeId> pool,
                                                            const ScanOptions& options = {});

/// Candidate list used by pool mode: p0, p0', p1, p1', ... without repeats.
std::vector<NodeId> expand_pool(const OmlLattice& l, std::span<const NodeId> pool);

/// node_count^var_count x operations per full evaluation (binary operations,
/// orthocomplements and the final comparison).  Throws std::overflow_error.
std::uint64_t cost_model(const OmlLattice& l, const Equation& e);

/// Combines deterministic partition outcomes.  The regions must tile the
/// full outer x inner rectangle exactly; throws std::invalid_argument on a
/// gap or an overlap.
ScanOutcome merge_partitions(std::span<const ScanOutcome> outcomes);

}  // namespace oalat
