#include <stdexcept>

#include "scan_kernel.hpp"

namespace oalat::detail {

ScanContext::ScanContext(const OmlLattice& l, const Equation& e,
                         std::span<const std::vector<NodeId>> doms, Algorithm algo, bool det)
    : tables(l),
      equation(e),
      program(compile(e)),
      domains(doms.begin(), doms.end()),
      algorithm(algo),
      deterministic(det) {
  if (domains.size() != e.var_count()) {
    throw std::invalid_argument("one candidate list per variable is required");
  }
  for (const auto& d : domains) {
    if (d.empty()) throw std::invalid_argument("empty candidate list");
    for (NodeId x : d) {
      if (x >= tables.n) throw std::out_of_range("candidate node out of range");
    }
  }
  to_registers(program, 0, static_cast<std::uint32_t>(domains.size()), full_registers);
}

std::size_t ScanContext::unit_count() const {
  switch (domains.size()) {
    case 0: return 1;
    case 1: return domains[0].size();
    default: return domains[0].size() * domains[1].size();
  }
}

void UnitMerge::add(std::size_t unit, UnitResult& r) {
  stats += r.stats;
  if (r.first_counterexample && unit < counterexample_unit) {
    counterexample = std::move(r.first_counterexample);
    counterexample_unit = unit;
  }
}

void UnitMerge::absorb(UnitMerge& other) {
  stats += other.stats;
  if (other.counterexample && other.counterexample_unit < counterexample_unit) {
    counterexample = std::move(other.counterexample);
    counterexample_unit = other.counterexample_unit;
  }
}

Worker::Worker(const ScanContext& ctx)
    : ctx_(ctx), eval_(ctx.tables), levels_(ctx.var_count() + 1), current_(ctx.var_count()) {
  const std::size_t v = ctx.var_count();
  below_.assign(v, 1);
  for (std::size_t k = v; k-- > 1;) below_[k - 1] = below_[k] * ctx.domains[k].size();
}

std::span<const NodeId> Worker::domain(std::size_t level) const {
  if (level < 2) return {&unit_values_[level], 1};
  return ctx_.domains[level];
}

bool Worker::stopped(const std::atomic<bool>* stop) const {
  return stop != nullptr && stop->load(std::memory_order_relaxed);
}

void Worker::record_failure(std::size_t depth, UnitResult& out, std::atomic<bool>* stop) {
  if (out.first_counterexample) return;
  std::vector<NodeId> ce(current_.begin(), current_.begin() + static_cast<std::ptrdiff_t>(depth));
  for (std::size_t k = depth; k < current_.size(); ++k) ce.push_back(domain(k).front());
  out.first_counterexample = std::move(ce);
  if (!ctx_.deterministic && stop != nullptr) stop->store(true, std::memory_order_relaxed);
}

void Worker::run_unit(std::size_t unit, UnitResult& out, std::atomic<bool>* stop) {
  out = UnitResult{};
  const std::size_t v = ctx_.var_count();
  if (v == 0) {
    regs_.resize(ctx_.full_registers.register_count());
    const EvalResult r = run_registers(ctx_.full_registers, regs_.data(), ctx_.tables);
    out.stats.evaluations = 1;
    out.stats.operations = ctx_.full_registers.code.size() + ctx_.full_registers.hyps.size() + 1;
    if (r == EvalResult::vacuous) out.stats.vacuous = 1;
    if (r == EvalResult::fail) {
      out.stats.failures = 1;
      record_failure(0, out, stop);
    }
    return;
  }
  if (v == 1) {
    unit_values_[0] = ctx_.domains[0][unit];
  } else {
    const std::size_t inner = ctx_.domains[1].size();
    unit_values_[0] = ctx_.domains[0][unit / inner];
    unit_values_[1] = ctx_.domains[1][unit % inner];
  }

  if (ctx_.algorithm == Algorithm::naive) {
    naive_unit(out, stop);
    return;
  }

  // Variable 0 repeats across consecutive units, so its bound program is
  // reused until the value changes.
  const NodeId first = unit_values_[0];
  current_[0] = first;
  if (!cached_first_ || *cached_first_ != first) {
    cached_status_ = eval_.bind(ctx_.program, first, levels_[1]);
    cached_first_ = first;
  }
  if (v == 1) {
    out.stats.evaluations = 1;
    out.stats.operations = ctx_.program.code.size() + ctx_.program.hyps.size() + 1;
    if (cached_status_ == BindStatus::vacuous) out.stats.vacuous = 1;
    if (cached_status_ == BindStatus::fail) {
      out.stats.failures = 1;
      record_failure(1, out, stop);
    }
    return;
  }
  if (cached_status_ != BindStatus::open) {
    const std::uint64_t n = below_[1];
    out.stats.skipped = n;
    if (cached_status_ == BindStatus::vacuous) out.stats.vacuous = n;
    if (cached_status_ == BindStatus::fail) {
      out.stats.failures = n;
      current_[1] = unit_values_[1];
      record_failure(2, out, stop);
    }
    return;
  }
  descend(1, levels_[1], out, stop);
}

void Worker::descend(std::size_t level, const Program& prog, UnitResult& out,
                     std::atomic<bool>* stop) {
  const std::size_t v = ctx_.var_count();
  if (level + 1 == v && level >= 2) {
    leaf(prog, out, stop);
    return;
  }
  const bool innermost = level + 1 == v;
  const std::uint64_t n = below_[level];
  Program& next = levels_[level + 1];
  for (NodeId value : domain(level)) {
    if (stopped(stop)) return;
    current_[level] = value;
    const BindStatus s = eval_.bind(prog, value, next);
    if (innermost) {
      ++out.stats.evaluations;
      out.stats.operations += prog.code.size() + prog.hyps.size() + 1;
    } else if (s != BindStatus::open) {
      out.stats.skipped += n;
    }
    switch (s) {
      case BindStatus::open:
        if (innermost) throw std::logic_error("residual equation after binding every variable");
        descend(level + 1, next, out, stop);
        break;
      case BindStatus::pass: break;
      case BindStatus::vacuous: out.stats.vacuous += n; break;
      case BindStatus::fail:
        out.stats.failures += n;
        record_failure(level + 1, out, stop);
        break;
    }
  }
}

// The residual program depends on the last variable only, so it runs one
// instruction at a time across every candidate value.
void Worker::leaf(const Program& prog, UnitResult& out, std::atomic<bool>* stop) {
  const std::size_t last = ctx_.var_count() - 1;
  const auto& values = ctx_.domains[last];
  const std::size_t width = values.size();
  const detail::Tables& t = ctx_.tables;
  const std::size_t n = t.n;
  RegProgram& rp = leaf_registers_;
  to_registers(prog, static_cast<std::uint32_t>(last), 1, rp);
  lanes_.resize(rp.register_count() * width);
  lane_verdict_.assign(width, 0);

  auto row = [&](std::uint32_t r) { return lanes_.data() + std::size_t{r} * width; };
  std::copy(values.begin(), values.end(), row(0));
  for (std::size_t c = 0; c < rp.constants.size(); ++c) {
    std::fill_n(row(rp.var_count + static_cast<std::uint32_t>(c)), width, rp.constants[c]);
  }
  std::uint32_t dst = rp.base();
  for (const Instr& in : rp.code) {
    NodeId* o = row(dst++);
    const NodeId* a = row(in.a);
    if (in.op == Op::ortho) {
      for (std::size_t i = 0; i < width; ++i) o[i] = t.ortho[a[i]];
      continue;
    }
    const NodeId* b = row(in.b);
    const NodeId* table = in.op == Op::join ? t.join : in.op == Op::meet ? t.meet : t.sasaki;
    for (std::size_t i = 0; i < width; ++i) o[i] = table[a[i] * n + b[i]];
  }
  // 0 = pass, 1 = vacuous, 2 = fail
  for (const HypRoot& h : rp.hyps) {
    const NodeId* a = row(h.left);
    const NodeId* b = row(h.right);
    for (std::size_t i = 0; i < width; ++i) {
      if (!t.le[a[i] * n + b[i]]) lane_verdict_[i] = 1;
    }
  }
  const NodeId* l = row(rp.lhs);
  const NodeId* r = row(rp.rhs);
  for (std::size_t i = 0; i < width; ++i) {
    const bool holds = rp.rel == Relation::le ? t.le[l[i] * n + r[i]] != 0 : l[i] == r[i];
    if (!holds && lane_verdict_[i] == 0) lane_verdict_[i] = 2;
  }

  out.stats.evaluations += width;
  out.stats.operations += width * (rp.code.size() + rp.hyps.size() + 1);
  for (std::size_t i = 0; i < width; ++i) {
    if (lane_verdict_[i] == 1) ++out.stats.vacuous;
    if (lane_verdict_[i] != 2) continue;
    ++out.stats.failures;
    if (!out.first_counterexample) {
      current_[last] = values[i];
      record_failure(last + 1, out, stop);
    }
  }
}

void Worker::naive_unit(UnitResult& out, std::atomic<bool>* stop) {
  const std::size_t v = ctx_.var_count();
  const RegProgram& rp = ctx_.full_registers;
  regs_.resize(rp.register_count());
  const std::uint64_t cost = rp.code.size() + rp.hyps.size() + 1;

  std::vector<std::size_t> pos(v, 0);
  for (std::size_t k = 0; k < v; ++k) current_[k] = domain(k).front();
  for (;;) {
    std::copy(current_.begin(), current_.end(), regs_.begin());
    const EvalResult r = run_registers(rp, regs_.data(), ctx_.tables);
    ++out.stats.evaluations;
    out.stats.operations += cost;
    if (r == EvalResult::vacuous) {
      ++out.stats.vacuous;
    } else if (r == EvalResult::fail) {
      ++out.stats.failures;
      record_failure(v, out, stop);
    }
    // Odometer over the variables below the unit, last variable fastest.
    std::size_t k = v;
    while (k-- > 2) {
      const auto d = domain(k);
      if (++pos[k] < d.size()) {
        current_[k] = d[pos[k]];
        break;
      }
      pos[k] = 0;
      current_[k] = d.front();
    }
    if (k < 2) return;
    if (k == 2 && stopped(stop)) return;
  }
}

}  // namespace oalat::detail
