#include "oalat/search.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include "scan_kernel.hpp"

namespace oalat {

ScanStats& ScanStats::operator+=(const ScanStats& o) {
  evaluations += o.evaluations;
  skipped += o.skipped;
  vacuous += o.vacuous;
  failures += o.failures;
  operations += o.operations;
  wall_ms += o.wall_ms;
  return *this;
}

namespace {

std::size_t parse_index(std::string_view s, std::string_view whole) {
  std::size_t value = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw std::invalid_argument("bad index range '" + std::string(whole) + "'");
  }
  return value;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) {
    throw std::overflow_error("assignment count exceeds 64 bits");
  }
  return a * b;
}

std::vector<NodeId> index_span(const IndexRange& r) {
  std::vector<NodeId> out;
  out.reserve(r.size());
  for (std::size_t i = r.first; i <= r.last; ++i) out.push_back(static_cast<NodeId>(i));
  return out;
}

ScanOutcome run(const OmlLattice& l, const Equation& e,
                std::span<const std::vector<NodeId>> domains, const ScanOptions& options) {
  if (options.workers < 1) throw std::invalid_argument("workers must be at least 1");
  std::uint64_t total = 1;
  for (const auto& d : domains) total = checked_mul(total, d.size());

  const auto start = std::chrono::steady_clock::now();
  detail::ScanContext ctx(l, e, domains, options.algorithm, options.deterministic);
  detail::UnitMerge merged = options.workers == 1
                                 ? detail::scan_units_serial(ctx)
                                 : detail::scan_units_parallel(ctx, options.workers);
  const auto stop = std::chrono::steady_clock::now();

  ScanOutcome out;
  out.stats = merged.stats;
  out.stats.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  out.node_count = l.node_count();
  out.var_count = e.var_count();
  out.deterministic = options.deterministic;
  if (merged.counterexample) {
    out.verdict = Verdict::fail;
    out.counterexample = std::move(merged.counterexample);
    out.trace = trace_evaluation(l, e, *out.counterexample);
  }
  if (options.deterministic && out.stats.evaluations + out.stats.skipped != total) {
    throw std::logic_error("scan accounting does not cover the region");
  }
  return out;
}

}  // namespace

IndexRange parse_index_range(std::string_view text) {
  const auto dots = text.find("..");
  IndexRange r;
  if (dots == std::string_view::npos) {
    r.first = r.last = parse_index(text, text);
  } else {
    r.first = parse_index(text.substr(0, dots), text);
    r.last = parse_index(text.substr(dots + 2), text);
  }
  if (r.first > r.last) throw std::invalid_argument("empty index range '" + std::string(text) + "'");
  return r;
}

std::vector<Partition> grid_partitions(std::size_t node_count, std::size_t rows,
                                       std::size_t cols) {
  if (rows == 0 || cols == 0 || rows > node_count || cols > node_count) {
    throw std::invalid_argument("partition grid does not fit the node range");
  }
  auto cut = [&](std::size_t parts, std::size_t i) {
    return IndexRange{node_count * i / parts, node_count * (i + 1) / parts - 1};
  };
  std::vector<Partition> out;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out.push_back({cut(rows, r), cut(cols, c)});
  }
  return out;
}

ScanOutcome scan(const OmlLattice& l, const Equation& e, const ScanOptions& options) {
  const std::size_t n = l.node_count();
  const std::size_t v = e.var_count();
  const IndexRange full{0, n - 1};
  Partition region{full, full};
  if (options.partition) {
    region = *options.partition;
    for (const IndexRange* r : {&region.outer, &region.inner}) {
      if (r->first > r->last || r->last >= n) throw std::out_of_range("partition out of range");
    }
    if (v < 2 && region.inner != full) {
      throw std::invalid_argument("inner range needs an equation with two or more variables");
    }
    if (v == 0 && region.outer != full) {
      throw std::invalid_argument("outer range needs an equation with variables");
    }
  }
  std::vector<std::vector<NodeId>> domains(v);
  for (std::size_t k = 0; k < v; ++k) {
    domains[k] = index_span(k == 0 ? region.outer : k == 1 ? region.inner : full);
  }
  ScanOutcome out = run(l, e, domains, options);
  out.region = region;
  return out;
}

ScanOutcome scan_domains(const OmlLattice& l, const Equation& e,
                         std::span<const std::vector<NodeId>> domains, const ScanOptions& options) {
  return run(l, e, domains, options);
}

std::vector<TraceRecord> trace_evaluation(const OmlLattice& l, const Equation& e,
                                          std::span<const NodeId> assignment) {
  if (assignment.size() != e.var_count()) throw std::invalid_argument("assignment arity mismatch");
  std::vector<TraceRecord> trace;
  std::unordered_map<TermId, NodeId> memo;
  auto value = [&](auto&& self, TermId t) -> NodeId {
    if (auto it = memo.find(t); it != memo.end()) return it->second;
    const TermNode& n = e.pool[t];
    NodeId r = kZero;
    switch (n.op) {
      case Op::var: r = assignment[n.a]; break;
      case Op::zero: r = kZero; break;
      case Op::one: r = kOne; break;
      case Op::ortho: {
        const NodeId a = self(self, n.a);
        r = l.ortho(a);
        trace.push_back({TraceOp::ortho, a, a, r});
        break;
      }
      default: {
        const NodeId a = self(self, n.a);
        const NodeId b = self(self, n.b);
        TraceOp op = TraceOp::join;
        if (n.op == Op::join) r = l.join(a, b);
        if (n.op == Op::meet) {
          r = l.meet(a, b);
          op = TraceOp::meet;
        }
        if (n.op == Op::sasaki) {
          r = l.sasaki(a, b);
          op = TraceOp::sasaki;
        }
        trace.push_back({op, a, b, r});
      }
    }
    memo.emplace(t, r);
    return r;
  };
  for (const Hypothesis& h : e.hypotheses) {
    const NodeId a = value(value, h.left);
    const NodeId b = value(value, h.right);
    const NodeId nb = l.ortho(b);
    trace.push_back({TraceOp::ortho, b, b, nb});
    trace.push_back({TraceOp::le, a, nb, static_cast<NodeId>(l.le(a, nb) ? kOne : kZero)});
    if (!l.le(a, nb)) return trace;
  }
  const NodeId x = value(value, e.lhs);
  const NodeId y = value(value, e.rhs);
  const bool holds = e.rel == Relation::le ? l.le(x, y) : x == y;
  trace.push_back({e.rel == Relation::le ? TraceOp::le : TraceOp::eq, x, y,
                   static_cast<NodeId>(holds ? kOne : kZero)});
  return trace;
}

bool verify_assignment(const OmlLattice& l, const Equation& e, std::span<const NodeId> nodes) {
  if (nodes.size() != e.var_count()) {
    throw std::invalid_argument("expected " + std::to_string(e.var_count()) + " nodes, got " +
                                std::to_string(nodes.size()));
  }
  for (NodeId x : nodes) {
    if (x >= l.node_count()) throw std::out_of_range("node out of range");
  }
  return eval_equation(l, nodes, e);
}

std::vector<NodeId> expand_pool(const OmlLattice& l, std::span<const NodeId> pool) {
  std::vector<NodeId> out;
  for (NodeId p : pool) {
    for (NodeId x : {p, l.ortho(p)}) {
      if (std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
  }
  return out;
}

std::optional<std::vector<NodeId>> find_pool_counterexample(const OmlLattice& l,
                                                            const Equation& e,
                                                            std::span<const NodeId> pool,
                                                            const ScanOptions& options) {
  if (pool.empty()) throw std::invalid_argument("empty node pool");
  const std::vector<NodeId> candidates = expand_pool(l, pool);
  std::vector<std::vector<NodeId>> domains(e.var_count(), candidates);
  return scan_domains(l, e, domains, options).counterexample;
}

std::uint64_t cost_model(const OmlLattice& l, const Equation& e) {
  std::uint64_t total = 1;
  for (std::size_t k = 0; k < e.var_count(); ++k) total = checked_mul(total, l.node_count());
  return checked_mul(total, count_operations(e).total());
}

ScanOutcome merge_partitions(std::span<const ScanOutcome> outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("nothing to merge");
  const ScanOutcome& head = outcomes.front();
  const std::size_t n = head.node_count;
  const bool two_dim = head.var_count >= 2;
  for (const ScanOutcome& o : outcomes) {
    if (o.node_count != n || o.var_count != head.var_count) {
      throw std::invalid_argument("partitions come from different scans");
    }
    if (!o.deterministic) throw std::invalid_argument("cannot merge a fast-mode scan");
  }

  // Cells must tile the rectangle: no pair overlaps and the areas add up.
  auto overlap = [](const IndexRange& a, const IndexRange& b) {
    return a.first <= b.last && b.first <= a.last;
  };
  std::uint64_t area = 0;
  for (std::size_t i = 0; i < outcomes.size(); ++i) {
    const Partition& p = outcomes[i].region;
    area += std::uint64_t{p.outer.size()} * (two_dim ? p.inner.size() : 1);
    for (std::size_t j = 0; j < i; ++j) {
      const Partition& q = outcomes[j].region;
      if (overlap(p.outer, q.outer) && (!two_dim || overlap(p.inner, q.inner))) {
        throw std::invalid_argument("partitions " + std::to_string(j) + " and " +
                                    std::to_string(i) + " overlap");
      }
    }
  }
  const std::uint64_t full = std::uint64_t{n} * (two_dim ? n : 1);
  if (area != full) throw std::invalid_argument("partitions leave a gap");

  ScanOutcome out;
  out.node_count = n;
  out.var_count = head.var_count;
  out.region = {{0, n - 1}, {0, n - 1}};
  const ScanOutcome* best = nullptr;
  for (const ScanOutcome& o : outcomes) {
    out.stats += o.stats;
    if (o.counterexample && (!best || *o.counterexample < *best->counterexample)) best = &o;
  }
  if (best) {
    out.verdict = Verdict::fail;
    out.counterexample = best->counterexample;
    out.trace = best->trace;
  }
  return out;
}

}  // namespace oalat
