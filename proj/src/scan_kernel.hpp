#pragma once

// Internal machinery shared by the serial and OpenMP scan kernels.

#include <atomic>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "oalat/equation.hpp"
#include "oalat/lattice.hpp"
#include "oalat/search.hpp"

namespace oalat::detail {

// An operand is a tagged 32-bit word: a constant node, a variable, or the
// result slot of an earlier instruction.
using Operand = std::uint32_t;
inline constexpr Operand kIndexMask = (Operand{1} << 30) - 1;
inline constexpr Operand kConst = Operand{0} << 30;
inline constexpr Operand kVar = Operand{1} << 30;
inline constexpr Operand kSlot = Operand{2} << 30;
inline constexpr Operand kConstZero = kConst | kZero;
inline constexpr Operand kConstOne = kConst | kOne;

inline Operand kind_of(Operand x) { return x & ~kIndexMask; }
inline std::uint32_t index_of(Operand x) { return x & kIndexMask; }

struct Instr {
  Op op;
  Operand a;
  Operand b;
};

/// left <= right, with the orthocomplement of "x _|_ y" already applied.
struct HypRoot {
  Operand left;
  Operand right;
};

/// Straight-line program in topological order.  Variables below
/// `first_unbound` have been substituted away.
struct Program {
  std::vector<Instr> code;
  std::vector<HypRoot> hyps;
  Operand lhs = kConstZero;
  Operand rhs = kConstZero;
  Relation rel = Relation::le;
  std::uint32_t first_unbound = 0;
};

Program compile(const Equation& e);

struct Tables {
  std::size_t n;
  const NodeId* join;
  const NodeId* meet;
  const NodeId* sasaki;
  const NodeId* ortho;
  const std::uint8_t* le;

  explicit Tables(const OmlLattice& l)
      : n(l.node_count()),
        join(l.join_table()),
        meet(l.meet_table()),
        sasaki(l.sasaki_table()),
        ortho(l.ortho_table()),
        le(l.le_table()) {}
};

/// Register form of a Program for repeated full evaluation.  Registers
/// [0, var_count) hold variables first_var.., then the constants, then one
/// register per instruction.
struct RegProgram {
  std::uint32_t first_var = 0;
  std::uint32_t var_count = 0;
  std::vector<NodeId> constants;
  std::vector<Instr> code;  // operands are register numbers
  std::vector<HypRoot> hyps;
  std::uint32_t lhs = 0, rhs = 0;
  Relation rel = Relation::le;
  std::vector<std::int32_t> const_register_scratch;  // node -> constant index or -1

  std::uint32_t base() const { return var_count + static_cast<std::uint32_t>(constants.size()); }
  std::size_t register_count() const { return base() + code.size(); }
};

void to_registers(const Program& p, std::uint32_t first_var, std::uint32_t var_count,
                  RegProgram& out);

enum class EvalResult { pass, vacuous, fail };

/// Evaluates with variables already stored in regs[0, var_count).
inline EvalResult run_registers(const RegProgram& rp, NodeId* regs, const Tables& t) {
  std::copy(rp.constants.begin(), rp.constants.end(), regs + rp.var_count);
  NodeId* out = regs + rp.base();
  const std::size_t n = t.n;
  for (const Instr& in : rp.code) {
    switch (in.op) {
      case Op::join: *out = t.join[regs[in.a] * n + regs[in.b]]; break;
      case Op::meet: *out = t.meet[regs[in.a] * n + regs[in.b]]; break;
      case Op::sasaki: *out = t.sasaki[regs[in.a] * n + regs[in.b]]; break;
      case Op::ortho: *out = t.ortho[regs[in.a]]; break;
      default: break;
    }
    ++out;
  }
  for (const HypRoot& h : rp.hyps) {
    if (!t.le[regs[h.left] * n + regs[h.right]]) return EvalResult::vacuous;
  }
  const NodeId l = regs[rp.lhs];
  const NodeId r = regs[rp.rhs];
  const bool holds = rp.rel == Relation::le ? t.le[l * n + r] != 0 : l == r;
  return holds ? EvalResult::pass : EvalResult::fail;
}

enum class BindStatus { open, pass, vacuous, fail };

/// Substitutes one variable into a Program and shrinks the result.
class PartialEvaluator {
public:
  explicit PartialEvaluator(const Tables& t) : t_(t) {}

  BindStatus bind(const Program& in, NodeId value, Program& out);

private:
  const Tables& t_;
  std::vector<Operand> map_;
  std::vector<Instr> tmp_;
  std::vector<HypRoot> tmp_hyps_;
  std::vector<std::uint32_t> renum_;
};

/// Everything a worker needs; immutable and shared.
struct ScanContext {
  Tables tables;
  const Equation& equation;
  Program program;
  RegProgram full_registers;
  std::vector<std::vector<NodeId>> domains;
  Algorithm algorithm;
  bool deterministic;

  ScanContext(const OmlLattice& l, const Equation& e,
              std::span<const std::vector<NodeId>> doms, Algorithm algo, bool det);

  std::size_t var_count() const { return domains.size(); }
  /// Units are (variable 0, variable 1) pairs, row-major; one per value of
  /// variable 0 when there is a single variable.
  std::size_t unit_count() const;
};

struct UnitResult {
  ScanStats stats;
  std::optional<std::vector<NodeId>> first_counterexample;
};

/// Per-thread scratch; scans one unit at a time.
class Worker {
public:
  explicit Worker(const ScanContext& ctx);

  void run_unit(std::size_t unit, UnitResult& out, std::atomic<bool>* stop);

private:
  void naive_unit(UnitResult& out, std::atomic<bool>* stop);
  void descend(std::size_t level, const Program& prog, UnitResult& out,
               std::atomic<bool>* stop);
  void leaf(const Program& prog, UnitResult& out, std::atomic<bool>* stop);
  /// current_[0, depth) is set; deeper variables take their first candidate.
  void record_failure(std::size_t depth, UnitResult& out, std::atomic<bool>* stop);
  bool stopped(const std::atomic<bool>* stop) const;
  std::span<const NodeId> domain(std::size_t level) const;

  const ScanContext& ctx_;
  PartialEvaluator eval_;
  std::vector<Program> levels_;
  RegProgram leaf_registers_;
  std::vector<NodeId> regs_;
  std::vector<NodeId> lanes_;  // leaf registers, one row of candidates per register
  std::vector<std::uint8_t> lane_verdict_;
  std::vector<NodeId> current_;
  std::vector<std::uint64_t> below_;  // assignments under one value at each level
  NodeId unit_values_[2] = {0, 0};
  std::optional<NodeId> cached_first_;
  BindStatus cached_status_ = BindStatus::open;
};

/// Combines unit results in unit order; the earliest counterexample wins.
struct UnitMerge {
  ScanStats stats;
  std::optional<std::vector<NodeId>> counterexample;
  std::size_t counterexample_unit = ~std::size_t{0};

  void add(std::size_t unit, UnitResult& r);
  void absorb(UnitMerge& other);
};

UnitMerge scan_units_serial(const ScanContext& ctx);
UnitMerge scan_units_parallel(const ScanContext& ctx, int workers);

}  // namespace oalat::detail
