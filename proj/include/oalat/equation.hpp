#pragma once

// Lattice terms and equations: hash-consed term DAGs, a small text syntax,
// the generalized orthoarguesian (nOA) family, and direct evaluation.
//
// Text syntax (single-letter variables, 'v' is reserved for join):
//   x v y   join          x ^ y   meet          x'   orthocomplement
//   x -> y  Sasaki hook   0 1     constants     ( ) grouping
//   s < t   s <= t        s = t   equality
//   hypotheses precede the conclusion, each "x _|_ y #" (x <= y')

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "oalat/lattice.hpp"

namespace oalat {

enum class Op : std::uint8_t { var, zero, one, ortho, join, meet, sasaki };

using TermId = std::uint32_t;

struct TermNode {
  Op op;
  std::uint32_t a = 0;  // variable index for Op::var, else first child
  std::uint32_t b = 0;  // second child of binary operations

  friend bool operator==(const TermNode&, const TermNode&) = default;
};

/// Append-only store of structurally unique terms.  Children always have
/// smaller ids than their parents.
class TermPool {
public:
  TermId var(std::uint32_t index);
  TermId zero();
  TermId one();
  TermId ortho(TermId t);
  TermId join(TermId t, TermId u);
  TermId meet(TermId t, TermId u);
  /// t -> u, i.e. t' v (t ^ u)
  TermId sasaki(TermId t, TermId u);
  TermId make(Op op, std::uint32_t a, std::uint32_t b);

  const TermNode& operator[](TermId t) const { return nodes_.at(t); }
  std::size_t size() const { return nodes_.size(); }

private:
  struct KeyHash {
    std::size_t operator()(const TermNode& n) const noexcept {
      return (std::size_t(n.a) * 0x9E3779B97F4A7C15ULL) ^ (std::size_t(n.b) << 3) ^
             std::size_t(n.op);
    }
  };
  std::vector<TermNode> nodes_;
  std::unordered_map<TermNode, TermId, KeyHash> index_;
};

enum class Relation : std::uint8_t { le, eq };

/// left _|_ right, meaning left <= right'.
struct Hypothesis {
  TermId left;
  TermId right;
};

struct Equation {
  TermPool pool;
  std::vector<Hypothesis> hypotheses;
  TermId lhs = 0;
  Relation rel = Relation::le;
  TermId rhs = 0;
  std::vector<std::string> var_names;  // index = variable number

  std::size_t var_count() const { return var_names.size(); }
};

class EquationSyntaxError : public std::runtime_error {
public:
  EquationSyntaxError(const std::string& what, std::size_t position)
      : std::runtime_error(what + " at column " + std::to_string(position + 1)),
        position(position) {}
  std::size_t position;
};

/// Variables are numbered by first appearance in the text.
Equation parse_equation(std::string_view text);
std::string print_equation(const Equation& e);
std::string print_term(const Equation& e, TermId t);

/// Structural equality (pools may differ).
bool same_equation(const Equation& x, const Equation& y);

/// Renumbers variables by first appearance in hypotheses, lhs, then rhs,
/// left to right; checks that every variable is used in the conclusion.
Equation normalize_variables(const Equation& e);

enum class NoaForm { standard, compact };

/// nOA for n >= 3.  Standard: (a->c) ^ (a ==(n) b) <= b->c.  Compact: the
/// shortened form a ^ ((a^b) v ((a->c)^(b->c))) <= b'->c for n = 3, and the
/// same shape with the ==(n) recursion applied to the middle for n > 3.
Equation gen_noa(int n, NoaForm form);

/// Variable leaves in lhs and rhs of the unshared tree (hypotheses excluded).
std::uint64_t count_var_occurrences(const Equation& e);

struct OperationCount {
  std::uint64_t binary = 0;  // join, meet, Sasaki
  std::uint64_t ortho = 0;
  std::uint64_t relations = 0;  // final comparison plus one per hypothesis
  std::uint64_t total() const { return binary + ortho + relations; }
};

/// Operations of one full evaluation of the unshared tree.
OperationCount count_operations(const Equation& e);

NodeId eval_term(const OmlLattice& l, std::span<const NodeId> assignment, const Equation& e,
                 TermId t);

/// True when some hypothesis fails (vacuously) or the conclusion holds.
bool eval_equation(const OmlLattice& l, std::span<const NodeId> assignment, const Equation& e);

}  // namespace oalat
