#include <algorithm>
#include <stdexcept>

#include "scan_kernel.hpp"

namespace oalat::detail {

Program compile(const Equation& e) {
  const TermPool& pool = e.pool;
  std::vector<bool> reachable(pool.size(), false);
  auto mark_root = [&](TermId t) { reachable[t] = true; };
  for (const Hypothesis& h : e.hypotheses) {
    mark_root(h.left);
    mark_root(h.right);
  }
  mark_root(e.lhs);
  mark_root(e.rhs);
  for (TermId t = static_cast<TermId>(pool.size()); t-- > 0;) {
    if (!reachable[t]) continue;
    const TermNode& n = pool[t];
    if (n.op == Op::ortho) reachable[n.a] = true;
    if (n.op == Op::join || n.op == Op::meet || n.op == Op::sasaki) {
      reachable[n.a] = true;
      reachable[n.b] = true;
    }
  }

  Program p;
  std::vector<Operand> operand(pool.size(), kConstZero);
  for (TermId t = 0; t < pool.size(); ++t) {
    if (!reachable[t]) continue;
    const TermNode& n = pool[t];
    switch (n.op) {
      case Op::var: operand[t] = kVar | n.a; break;
      case Op::zero: operand[t] = kConstZero; break;
      case Op::one: operand[t] = kConstOne; break;
      case Op::ortho:
        operand[t] = kSlot | static_cast<Operand>(p.code.size());
        p.code.push_back({Op::ortho, operand[n.a], 0});
        break;
      default:
        operand[t] = kSlot | static_cast<Operand>(p.code.size());
        p.code.push_back({n.op, operand[n.a], operand[n.b]});
    }
  }
  for (const Hypothesis& h : e.hypotheses) {
    const Operand right = kSlot | static_cast<Operand>(p.code.size());
    p.code.push_back({Op::ortho, operand[h.right], 0});
    p.hyps.push_back({operand[h.left], right});
  }
  p.lhs = operand[e.lhs];
  p.rhs = operand[e.rhs];
  p.rel = e.rel;
  if (p.code.size() >= kIndexMask) throw std::length_error("equation too large");
  return p;
}

void to_registers(const Program& p, std::uint32_t first_var, std::uint32_t var_count,
                  RegProgram& out) {
  out.first_var = first_var;
  out.var_count = var_count;
  out.code.clear();
  out.hyps.clear();
  out.rel = p.rel;

  // Constants get registers after the variables, in order of first use.
  auto& slot_of = out.const_register_scratch;
  auto const_reg = [&](NodeId value) -> std::uint32_t {
    if (value >= slot_of.size()) slot_of.resize(std::size_t{value} + 1, -1);
    if (slot_of[value] < 0) {
      slot_of[value] = static_cast<std::int32_t>(out.constants.size());
      out.constants.push_back(value);
    }
    return var_count + static_cast<std::uint32_t>(slot_of[value]);
  };
  for (NodeId c : out.constants) slot_of[c] = -1;
  out.constants.clear();
  auto scan_const = [&](Operand x) {
    if (kind_of(x) == kConst) const_reg(static_cast<NodeId>(index_of(x)));
  };
  for (const Instr& in : p.code) {
    scan_const(in.a);
    if (in.op != Op::ortho) scan_const(in.b);
  }
  for (const HypRoot& h : p.hyps) {
    scan_const(h.left);
    scan_const(h.right);
  }
  scan_const(p.lhs);
  scan_const(p.rhs);

  const std::uint32_t base = out.base();
  auto reg = [&](Operand x) -> std::uint32_t {
    switch (kind_of(x)) {
      case kConst: return const_reg(static_cast<NodeId>(index_of(x)));
      case kVar: {
        const std::uint32_t v = index_of(x);
        if (v < first_var || v >= first_var + var_count) {
          throw std::logic_error("register program references an unbound variable");
        }
        return v - first_var;
      }
      default: return base + index_of(x);
    }
  };
  out.code.reserve(p.code.size());
  for (const Instr& in : p.code) {
    out.code.push_back({in.op, reg(in.a), in.op == Op::ortho ? 0 : reg(in.b)});
  }
  for (const HypRoot& h : p.hyps) out.hyps.push_back({reg(h.left), reg(h.right)});
  out.lhs = reg(p.lhs);
  out.rhs = reg(p.rhs);
}

BindStatus PartialEvaluator::bind(const Program& in, NodeId value, Program& out) {
  const std::uint32_t var = in.first_unbound;
  const Operand bound = kConst | value;
  const std::size_t n = t_.n;

  map_.resize(in.code.size());
  tmp_.clear();
  tmp_hyps_.clear();

  auto resolve = [&](Operand x) -> Operand {
    const Operand k = kind_of(x);
    if (k == kSlot) return map_[index_of(x)];
    if (k == kVar && index_of(x) == var) return bound;
    return x;
  };
  auto emit = [&](Op op, Operand a, Operand b) -> Operand {
    const Operand slot = kSlot | static_cast<Operand>(tmp_.size());
    tmp_.push_back({op, a, b});
    return slot;
  };

  for (std::size_t i = 0; i < in.code.size(); ++i) {
    const Instr& ins = in.code[i];
    const Operand a = resolve(ins.a);
    Operand r;
    if (ins.op == Op::ortho) {
      r = kind_of(a) == kConst ? (kConst | t_.ortho[index_of(a)]) : emit(Op::ortho, a, 0);
      map_[i] = r;
      continue;
    }
    const Operand b = resolve(ins.b);
    const bool ca = kind_of(a) == kConst;
    const bool cb = kind_of(b) == kConst;
    switch (ins.op) {
      case Op::meet:
        if (ca && cb) {
          r = kConst | t_.meet[index_of(a) * n + index_of(b)];
        } else if (a == kConstZero || b == kConstZero) {
          r = kConstZero;
        } else if (a == kConstOne) {
          r = b;
        } else if (b == kConstOne) {
          r = a;
        } else {
          r = emit(Op::meet, a, b);
        }
        break;
      case Op::join:
        if (ca && cb) {
          r = kConst | t_.join[index_of(a) * n + index_of(b)];
        } else if (a == kConstOne || b == kConstOne) {
          r = kConstOne;
        } else if (a == kConstZero) {
          r = b;
        } else if (b == kConstZero) {
          r = a;
        } else {
          r = emit(Op::join, a, b);
        }
        break;
      default:  // Sasaki: a -> b = a' v (a ^ b)
        if (ca && cb) {
          r = kConst | t_.sasaki[index_of(a) * n + index_of(b)];
        } else if (a == kConstZero) {
          r = kConstOne;
        } else if (a == kConstOne) {
          r = b;
        } else if (b == kConstZero) {
          r = emit(Op::ortho, a, 0);
        } else {
          r = emit(Op::sasaki, a, b);
        }
        break;
    }
    map_[i] = r;
  }

  for (const HypRoot& h : in.hyps) {
    const Operand l = resolve(h.left);
    const Operand r = resolve(h.right);
    if (kind_of(l) == kConst && kind_of(r) == kConst) {
      if (!t_.le[index_of(l) * n + index_of(r)]) return BindStatus::vacuous;
      continue;
    }
    if (l == kConstZero || r == kConstOne) continue;
    tmp_hyps_.push_back({l, r});
  }

  const Operand lhs = resolve(in.lhs);
  const Operand rhs = resolve(in.rhs);
  const bool cl = kind_of(lhs) == kConst;
  const bool cr = kind_of(rhs) == kConst;
  if (in.rel == Relation::le) {
    if (lhs == kConstZero || rhs == kConstOne) return BindStatus::pass;
    if (cl && cr) {
      if (t_.le[index_of(lhs) * n + index_of(rhs)]) return BindStatus::pass;
      if (tmp_hyps_.empty()) return BindStatus::fail;
    }
  } else if (cl && cr) {
    if (lhs == rhs) return BindStatus::pass;
    if (tmp_hyps_.empty()) return BindStatus::fail;
  }

  // Keep only instructions reachable from the remaining roots.
  renum_.assign(tmp_.size(), 0);
  auto mark = [&](Operand x) {
    if (kind_of(x) == kSlot) renum_[index_of(x)] = 1;
  };
  mark(lhs);
  mark(rhs);
  for (const HypRoot& h : tmp_hyps_) {
    mark(h.left);
    mark(h.right);
  }
  for (std::size_t i = tmp_.size(); i-- > 0;) {
    if (!renum_[i]) continue;
    mark(tmp_[i].a);
    if (tmp_[i].op != Op::ortho) mark(tmp_[i].b);
  }
  out.code.clear();
  for (std::size_t i = 0; i < tmp_.size(); ++i) {
    if (!renum_[i]) continue;
    renum_[i] = static_cast<std::uint32_t>(out.code.size());
    out.code.push_back(tmp_[i]);
  }
  auto fix = [&](Operand x) -> Operand {
    return kind_of(x) == kSlot ? (kSlot | renum_[index_of(x)]) : x;
  };
  for (Instr& ins : out.code) {
    ins.a = fix(ins.a);
    if (ins.op != Op::ortho) ins.b = fix(ins.b);
  }
  out.hyps.clear();
  for (const HypRoot& h : tmp_hyps_) out.hyps.push_back({fix(h.left), fix(h.right)});
  out.lhs = fix(lhs);
  out.rhs = fix(rhs);
  out.rel = in.rel;
  out.first_unbound = var + 1;
  return BindStatus::open;
}

}  // namespace oalat::detail
