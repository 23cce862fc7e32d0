#pragma once

// Failure analysis: which blocks of a Greechie diagram take part in a
// counterexample, and the prune-and-rescan loop that shrinks a failing
// lattice while keeping the failure.

#include <optional>
#include <string>
#include <vector>

#include "oalat/equation.hpp"
#include "oalat/lattice.hpp"
#include "oalat/mmp.hpp"
#include "oalat/search.hpp"

namespace oalat {

struct FailureReport {
  std::vector<AtomLabel> unvisited_atoms;          // neither atom nor coatom in the trace
  std::vector<std::size_t> non_affecting_blocks;   // block indices, ascending
  std::vector<NodeId> visited_nodes;               // ascending, 0 and 1 excluded
};

/// A block affects the failure when some single trace record touches two or
/// more distinct atoms of the block, an atom and its coatom counting once.
/// Replays the counterexample when the outcome carries no trace.  Throws
/// std::invalid_argument when the outcome has no counterexample.
FailureReport failure_report(const OmlLattice& l, const Equation& e, const ScanOutcome& outcome);

/// Removes the listed blocks, drops atoms left uncovered and relabels the
/// rest canonically.  old_labels in the result maps new atoms back.
/// Throws std::out_of_range for a bad index and std::invalid_argument when
/// nothing would be left.
Renaming prune_blocks(const Hypergraph& h, const std::vector<std::size_t>& blocks);

struct ReduceOptions {
  /// Pool-mode search for the first counterexample (node names such as
  /// "++1" or "7'"); a full deterministic scan when empty.
  std::vector<std::string> pool;
  ScanOptions scan;
  std::size_t max_iterations = 64;
};

struct ReductionStep {
  std::size_t atoms = 0;
  std::size_t blocks = 0;
  std::vector<NodeId> counterexample;           // in this step's lattice
  std::vector<std::size_t> non_affecting_blocks;  // indices in this step's hypergraph
  std::vector<std::size_t> pruned_blocks;         // the subset actually removed
};

struct Reduction {
  Hypergraph graph;
  /// (original label, final label) for every surviving atom, in final order.
  std::vector<std::pair<AtomLabel, AtomLabel>> renaming;
  std::vector<ReductionStep> steps;  // one per lattice visited, last is the fixed point
};

/// Repeats scan, failure_report and prune_blocks until no non-affecting
/// block is left or none can be removed.  When removing every non-affecting
/// block loses the failure, the largest removable chunks (found by halving)
/// are pruned instead, so every lattice visited still fails.  Throws
/// std::invalid_argument if the input does not fail.
Reduction reduce_loop(const Hypergraph& h, const Equation& e, const ReduceOptions& options = {});

}  // namespace oalat
