#include "oalat/analyze.hpp"

#include <algorithm>
#include <stdexcept>

namespace oalat {

FailureReport failure_report(const OmlLattice& l, const Equation& e, const ScanOutcome& outcome) {
  if (!outcome.counterexample) throw std::invalid_argument("the scan found no counterexample");
  const std::vector<TraceRecord> replay =
      outcome.trace.empty() ? trace_evaluation(l, e, *outcome.counterexample) : outcome.trace;

  const Hypergraph& h = l.hypergraph();
  const std::size_t atoms = h.atom_count();
  std::vector<bool> visited(l.node_count(), false);
  std::vector<bool> affecting(h.block_count(), false);
  std::vector<std::size_t> touched;
  for (const TraceRecord& r : replay) {
    NodeId nodes[3] = {r.left, r.right, r.result};
    const bool relation = r.op == TraceOp::le || r.op == TraceOp::eq;
    const int count = relation ? 2 : 3;  // a relation's result is a truth value
    touched.clear();
    for (int i = 0; i < count; ++i) {
      const NodeId x = nodes[i];
      if (x == kZero || x == kOne) continue;
      visited[x] = true;
      touched.push_back(l.atom_of(x));
    }
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t i = 0; i < touched.size(); ++i) {
      for (std::size_t b : l.blocks_of(l.atom_node(static_cast<AtomIndex>(touched[i])))) {
        if (affecting[b]) continue;
        const Block& blk = h.blocks[b];
        for (std::size_t j = i + 1; j < touched.size(); ++j) {
          if (std::find(blk.begin(), blk.end(), touched[j]) != blk.end()) {
            affecting[b] = true;
            break;
          }
        }
      }
    }
  }

  FailureReport report;
  for (std::size_t b = 0; b < affecting.size(); ++b) {
    if (!affecting[b]) report.non_affecting_blocks.push_back(b);
  }
  for (AtomIndex a = 0; a < atoms; ++a) {
    if (!visited[l.atom_node(a)] && !visited[l.coatom_node(a)]) {
      report.unvisited_atoms.push_back(h.atoms[a]);
    }
  }
  for (std::size_t x = 2; x < visited.size(); ++x) {
    if (visited[x]) report.visited_nodes.push_back(static_cast<NodeId>(x));
  }
  return report;
}

Renaming prune_blocks(const Hypergraph& h, const std::vector<std::size_t>& blocks) {
  std::vector<bool> drop(h.block_count(), false);
  for (std::size_t b : blocks) {
    if (b >= h.block_count()) throw std::out_of_range("block index out of range");
    drop[b] = true;
  }
  Hypergraph kept;
  std::vector<std::int64_t> index(h.atom_count(), -1);
  for (std::size_t b = 0; b < h.block_count(); ++b) {
    if (drop[b]) continue;
    Block nb;
    for (AtomIndex a : h.blocks[b]) {
      if (index[a] < 0) {
        index[a] = static_cast<std::int64_t>(kept.atoms.size());
        kept.atoms.push_back(h.atoms[a]);
      }
      nb.push_back(static_cast<AtomIndex>(index[a]));
    }
    kept.blocks.push_back(std::move(nb));
  }
  if (kept.blocks.empty()) throw std::invalid_argument("pruning removes every block");
  Renaming r = canonical_rename_with_map(kept);
  if (const auto v = validate(r.graph); !v.empty()) {
    throw std::runtime_error("pruned hypergraph is not a valid MMP: " + v.front().message);
  }
  return r;
}

namespace {

// Carries a node across a relabeling; nullopt when its atom was dropped.
std::optional<NodeId> carry_node(const OmlLattice& from, const OmlLattice& to,
                                 const std::vector<AtomLabel>& old_labels, NodeId x) {
  if (x == kZero || x == kOne) return x;
  const AtomLabel& label = from.hypergraph().atoms[from.atom_of(x)];
  const auto it = std::find(old_labels.begin(), old_labels.end(), label);
  if (it == old_labels.end()) return std::nullopt;
  const auto a = static_cast<AtomIndex>(it - old_labels.begin());
  return from.is_atom(x) ? to.atom_node(a) : to.coatom_node(a);
}

struct State {
  Hypergraph graph;
  OmlLattice lattice;
  std::vector<AtomLabel> labels;  // original label of each atom
  std::vector<NodeId> counterexample;
  std::vector<NodeId> pool;
};

class Reducer {
public:
  Reducer(const Equation& e, const ReduceOptions& options) : e_(e), options_(options.scan) {
    options_.deterministic = true;
    pooled_ = !options.pool.empty();
  }

  std::optional<std::vector<NodeId>> find_failure(const OmlLattice& l,
                                                  const std::vector<NodeId>& pool) const {
    if (pooled_) {
      if (pool.empty()) return std::nullopt;
      return find_pool_counterexample(l, e_, pool, options_);
    }
    return scan(l, e_, options_).counterexample;
  }

  /// The state after removing `blocks`, if the result still fails.
  std::optional<State> prune(const State& s, const std::vector<std::size_t>& blocks) const {
    Renaming r;
    try {
      r = prune_blocks(s.graph, blocks);
    } catch (const std::exception&) {
      return std::nullopt;
    }
    std::optional<OmlLattice> next;
    try {
      next.emplace(build_hasse(r.graph));
    } catch (const NotALattice&) {
      return std::nullopt;
    }
    std::vector<NodeId> carried;
    for (NodeId x : s.counterexample) {
      const auto y = carry_node(s.lattice, *next, r.old_labels, x);
      if (!y) break;
      carried.push_back(*y);
    }
    std::vector<NodeId> pool;
    for (NodeId x : s.pool) {
      if (const auto y = carry_node(s.lattice, *next, r.old_labels, x)) pool.push_back(*y);
    }
    std::optional<std::vector<NodeId>> ce;
    if (carried.size() == s.counterexample.size() && !eval_equation(*next, carried, e_)) {
      ce = std::move(carried);
    } else {
      ce = find_failure(*next, pool);
    }
    if (!ce) return std::nullopt;

    std::vector<AtomLabel> labels;
    for (const AtomLabel& old : r.old_labels) labels.push_back(s.labels[*s.graph.find_atom(old)]);
    return State{std::move(r.graph), std::move(*next), std::move(labels), std::move(*ce),
                 std::move(pool)};
  }

  /// Removes all candidates when that keeps the failure, otherwise the
  /// largest chunks found by repeated halving.
  std::pair<std::optional<State>, std::vector<std::size_t>> shrink(
      const State& s, const std::vector<std::size_t>& candidates) const {
    if (auto all = prune(s, candidates)) return {std::move(all), candidates};
    std::vector<std::size_t> removed;
    std::vector<std::size_t> rest = candidates;
    std::optional<State> best;
    std::size_t parts = 2;
    while (!rest.empty()) {
      parts = std::min(parts, rest.size());
      bool progress = false;
      const std::size_t n = rest.size();
      std::vector<std::size_t> still;
      for (std::size_t i = 0; i < parts; ++i) {
        std::vector<std::size_t> chunk(rest.begin() + static_cast<std::ptrdiff_t>(n * i / parts),
                                       rest.begin() + static_cast<std::ptrdiff_t>(n * (i + 1) / parts));
        std::vector<std::size_t> trial = removed;
        trial.insert(trial.end(), chunk.begin(), chunk.end());
        if (auto next = prune(s, trial)) {
          removed = std::move(trial);
          best = std::move(next);
          progress = true;
        } else {
          still.insert(still.end(), chunk.begin(), chunk.end());
        }
      }
      rest = std::move(still);
      if (!progress) {
        if (parts >= rest.size()) break;
        parts *= 2;
      }
    }
    std::sort(removed.begin(), removed.end());
    return {std::move(best), removed};
  }

private:
  const Equation& e_;
  ScanOptions options_;
  bool pooled_ = false;
};

}  // namespace

Reduction reduce_loop(const Hypergraph& h, const Equation& e, const ReduceOptions& options) {
  Reducer reducer(e, options);
  OmlLattice lattice = build_hasse(h);
  std::vector<NodeId> pool;
  for (const std::string& name : options.pool) pool.push_back(lattice.parse_node(name));
  auto ce = reducer.find_failure(lattice, pool);
  if (!ce) throw std::invalid_argument("the equation holds on the input lattice");
  State state{h, std::move(lattice), h.atoms, std::move(*ce), std::move(pool)};

  Reduction out;
  for (std::size_t iteration = 0;; ++iteration) {
    ScanOutcome outcome;
    outcome.verdict = Verdict::fail;
    outcome.counterexample = state.counterexample;
    const FailureReport report = failure_report(state.lattice, e, outcome);

    ReductionStep step;
    step.atoms = state.graph.atom_count();
    step.blocks = state.graph.block_count();
    step.counterexample = state.counterexample;
    step.non_affecting_blocks = report.non_affecting_blocks;
    if (report.non_affecting_blocks.empty() || iteration + 1 >= options.max_iterations) {
      out.steps.push_back(std::move(step));
      break;
    }
    auto [next, removed] = reducer.shrink(state, report.non_affecting_blocks);
    step.pruned_blocks = removed;
    out.steps.push_back(std::move(step));
    if (!next) break;
    state = std::move(*next);
  }

  out.graph = state.graph;
  for (AtomIndex a = 0; a < state.graph.atom_count(); ++a) {
    out.renaming.emplace_back(state.labels[a], state.graph.atoms[a]);
  }
  return out;
}

}  // namespace oalat
