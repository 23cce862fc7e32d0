#include "oalat/equation.hpp"

#include <functional>
#include <limits>
#include <optional>

namespace oalat {

TermId TermPool::make(Op op, std::uint32_t a, std::uint32_t b) {
  TermNode key{op, a, b};
  if (op != Op::var) {
    if (op == Op::zero || op == Op::one) key.a = key.b = 0;
    if (op == Op::ortho) key.b = 0;
    if (op != Op::zero && op != Op::one) {
      if (key.a >= nodes_.size() || (op != Op::ortho && key.b >= nodes_.size())) {
        throw std::out_of_range("term child id out of range");
      }
    }
  } else {
    key.b = 0;
  }
  auto [it, inserted] = index_.emplace(key, static_cast<TermId>(nodes_.size()));
  if (inserted) nodes_.push_back(key);
  return it->second;
}

TermId TermPool::var(std::uint32_t index) { return make(Op::var, index, 0); }
TermId TermPool::zero() { return make(Op::zero, 0, 0); }
TermId TermPool::one() { return make(Op::one, 0, 0); }
TermId TermPool::ortho(TermId t) { return make(Op::ortho, t, 0); }
TermId TermPool::join(TermId t, TermId u) { return make(Op::join, t, u); }
TermId TermPool::meet(TermId t, TermId u) { return make(Op::meet, t, u); }
TermId TermPool::sasaki(TermId t, TermId u) { return make(Op::sasaki, t, u); }

namespace {

constexpr int kPrecSasaki = 1;
constexpr int kPrecJoin = 2;
constexpr int kPrecMeet = 3;
constexpr int kPrecPostfix = 4;

void print_rec(const Equation& e, TermId t, int min_prec, std::string& out) {
  const TermNode& n = e.pool[t];
  int prec = kPrecPostfix;
  switch (n.op) {
    case Op::join: prec = kPrecJoin; break;
    case Op::meet: prec = kPrecMeet; break;
    case Op::sasaki: prec = kPrecSasaki; break;
    default: break;
  }
  const bool parens = prec < min_prec;
  if (parens) out.push_back('(');
  switch (n.op) {
    case Op::var: out += e.var_names.at(n.a); break;
    case Op::zero: out.push_back('0'); break;
    case Op::one: out.push_back('1'); break;
    case Op::ortho:
      print_rec(e, n.a, kPrecPostfix, out);
      out.push_back('\'');
      break;
    case Op::meet:
      print_rec(e, n.a, kPrecMeet, out);
      out.push_back('^');
      print_rec(e, n.b, kPrecPostfix, out);
      break;
    case Op::join:
      print_rec(e, n.a, kPrecJoin, out);
      out.push_back('v');
      print_rec(e, n.b, kPrecMeet, out);
      break;
    case Op::sasaki:
      print_rec(e, n.a, kPrecJoin, out);
      out += "->";
      print_rec(e, n.b, kPrecSasaki, out);
      break;
  }
  if (parens) out.push_back(')');
}

bool same_term(const Equation& x, TermId tx, const Equation& y, TermId ty) {
  const TermNode& a = x.pool[tx];
  const TermNode& b = y.pool[ty];
  if (a.op != b.op) return false;
  switch (a.op) {
    case Op::var: return x.var_names.at(a.a) == y.var_names.at(b.a) && a.a == b.a;
    case Op::zero:
    case Op::one: return true;
    case Op::ortho: return same_term(x, a.a, y, b.a);
    default: return same_term(x, a.a, y, b.a) && same_term(x, a.b, y, b.b);
  }
}

}  // namespace

std::string print_term(const Equation& e, TermId t) {
  std::string out;
  print_rec(e, t, kPrecSasaki, out);
  return out;
}

std::string print_equation(const Equation& e) {
  std::string out;
  for (const Hypothesis& h : e.hypotheses) {
    out += print_term(e, h.left);
    out += " _|_ ";
    out += print_term(e, h.right);
    out += " # ";
  }
  out += print_term(e, e.lhs);
  out += e.rel == Relation::le ? " < " : " = ";
  out += print_term(e, e.rhs);
  return out;
}

bool same_equation(const Equation& x, const Equation& y) {
  if (x.rel != y.rel || x.hypotheses.size() != y.hypotheses.size() ||
      x.var_count() != y.var_count()) {
    return false;
  }
  for (std::size_t i = 0; i < x.hypotheses.size(); ++i) {
    if (!same_term(x, x.hypotheses[i].left, y, y.hypotheses[i].left) ||
        !same_term(x, x.hypotheses[i].right, y, y.hypotheses[i].right)) {
      return false;
    }
  }
  return same_term(x, x.lhs, y, y.lhs) && same_term(x, x.rhs, y, y.rhs);
}

Equation normalize_variables(const Equation& e) {
  constexpr std::uint32_t kUnseen = std::numeric_limits<std::uint32_t>::max();
  std::vector<std::uint32_t> renum(e.var_count(), kUnseen);
  std::vector<std::string> names;

  // In-order walk matches the textual order produced by print_equation.
  std::function<void(TermId)> visit = [&](TermId t) {
    const TermNode& n = e.pool[t];
    switch (n.op) {
      case Op::var:
        if (renum.at(n.a) == kUnseen) {
          renum[n.a] = static_cast<std::uint32_t>(names.size());
          names.push_back(e.var_names.at(n.a));
        }
        break;
      case Op::zero:
      case Op::one: break;
      case Op::ortho: visit(n.a); break;
      default:
        visit(n.a);
        visit(n.b);
    }
  };
  for (const Hypothesis& h : e.hypotheses) {
    visit(h.left);
    visit(h.right);
  }
  visit(e.lhs);
  visit(e.rhs);

  std::vector<bool> in_conclusion(e.var_count(), false);
  std::function<void(TermId)> mark = [&](TermId t) {
    const TermNode& n = e.pool[t];
    if (n.op == Op::var) in_conclusion[n.a] = true;
    if (n.op == Op::ortho) mark(n.a);
    if (n.op == Op::join || n.op == Op::meet || n.op == Op::sasaki) {
      mark(n.a);
      mark(n.b);
    }
  };
  mark(e.lhs);
  mark(e.rhs);
  for (std::size_t v = 0; v < e.var_count(); ++v) {
    if (renum[v] != kUnseen && !in_conclusion[v]) {
      throw std::invalid_argument("variable '" + e.var_names[v] +
                                  "' occurs in a hypothesis but not in the conclusion");
    }
  }

  Equation out;
  out.var_names = std::move(names);
  out.rel = e.rel;
  std::vector<std::optional<TermId>> copied(e.pool.size());
  std::function<TermId(TermId)> copy = [&](TermId t) -> TermId {
    if (copied[t]) return *copied[t];
    const TermNode& n = e.pool[t];
    TermId r = 0;
    switch (n.op) {
      case Op::var: r = out.pool.var(renum[n.a]); break;
      case Op::zero: r = out.pool.zero(); break;
      case Op::one: r = out.pool.one(); break;
      case Op::ortho: r = out.pool.ortho(copy(n.a)); break;
      default: {
        TermId a = copy(n.a);
        TermId b = copy(n.b);
        r = out.pool.make(n.op, a, b);
      }
    }
    copied[t] = r;
    return r;
  };
  for (const Hypothesis& h : e.hypotheses) {
    TermId l = copy(h.left);
    TermId r = copy(h.right);
    out.hypotheses.push_back({l, r});
  }
  out.lhs = copy(e.lhs);
  out.rhs = copy(e.rhs);
  return out;
}

namespace {

std::string noa_var_name(int k) {
  // a1, a2, a3, ... print as a, b, c, ...; 'v' is the join operator.
  static constexpr std::string_view letters = "abcdefghijklmnopqrstuwxyz";
  if (k < 1 || k > static_cast<int>(letters.size())) {
    throw std::invalid_argument("nOA variable index out of range");
  }
  return std::string(1, letters[k - 1]);
}

struct NoaBuilder {
  Equation e;
  TermId c = 0;

  explicit NoaBuilder(int n) {
    for (int k = 1; k <= n; ++k) e.var_names.push_back(noa_var_name(k));
    c = e.pool.var(2);
  }
  TermId v(int k) { return e.pool.var(static_cast<std::uint32_t>(k - 1)); }
  TermId to_c(TermId x) { return e.pool.sasaki(x, c); }

  // x ==(k) y of the nOA operation.
  TermId equiv(int k, TermId x, TermId y) {
    if (k == 3) {
      TermId lhs = e.pool.meet(to_c(x), to_c(y));
      TermId rhs = e.pool.meet(to_c(e.pool.ortho(x)), to_c(e.pool.ortho(y)));
      return e.pool.join(lhs, rhs);
    }
    TermId ak = v(k);
    return e.pool.join(equiv(k - 1, x, y),
                       e.pool.meet(equiv(k - 1, x, ak), equiv(k - 1, y, ak)));
  }

  // The same recursion after substituting x' for every non-c variable and
  // weakening each x' -> c to x.
  TermId compact_equiv(int k, TermId x, TermId y) {
    if (k == 3) {
      return e.pool.join(e.pool.meet(x, y), e.pool.meet(to_c(x), to_c(y)));
    }
    TermId ak = v(k);
    return e.pool.join(compact_equiv(k - 1, x, y),
                       e.pool.meet(compact_equiv(k - 1, x, ak), compact_equiv(k - 1, y, ak)));
  }
};

}  // namespace

Equation gen_noa(int n, NoaForm form) {
  if (n < 3) throw std::invalid_argument("nOA requires n >= 3");
  if (n > 25) throw std::invalid_argument("nOA generation supports n <= 25");
  NoaBuilder b(n);
  TermId a = b.v(1);
  TermId bb = b.v(2);
  if (form == NoaForm::standard) {
    b.e.lhs = b.e.pool.meet(b.to_c(a), b.equiv(n, a, bb));
    b.e.rhs = b.to_c(bb);
  } else {
    b.e.lhs = b.e.pool.meet(a, b.compact_equiv(n, a, bb));
    b.e.rhs = b.to_c(b.e.pool.ortho(bb));
  }
  b.e.rel = Relation::le;
  return normalize_variables(b.e);
}

namespace {

std::uint64_t sat_add(std::uint64_t x, std::uint64_t y) {
  return x > std::numeric_limits<std::uint64_t>::max() - y
             ? std::numeric_limits<std::uint64_t>::max()
             : x + y;
}

// Per-term tree-view counts, memoized over the DAG.
struct TreeCounts {
  std::vector<std::uint64_t> vars, binary, ortho;

  explicit TreeCounts(const TermPool& pool)
      : vars(pool.size()), binary(pool.size()), ortho(pool.size()) {
    for (TermId t = 0; t < pool.size(); ++t) {
      const TermNode& n = pool[t];
      switch (n.op) {
        case Op::var: vars[t] = 1; break;
        case Op::zero:
        case Op::one: break;
        case Op::ortho:
          vars[t] = vars[n.a];
          binary[t] = binary[n.a];
          ortho[t] = sat_add(ortho[n.a], 1);
          break;
        default:
          vars[t] = sat_add(vars[n.a], vars[n.b]);
          binary[t] = sat_add(sat_add(binary[n.a], binary[n.b]), 1);
          ortho[t] = sat_add(ortho[n.a], ortho[n.b]);
      }
    }
  }
};

}  // namespace

std::uint64_t count_var_occurrences(const Equation& e) {
  TreeCounts c(e.pool);
  return sat_add(c.vars[e.lhs], c.vars[e.rhs]);
}

OperationCount count_operations(const Equation& e) {
  TreeCounts c(e.pool);
  OperationCount out;
  auto add = [&](TermId t) {
    out.binary = sat_add(out.binary, c.binary[t]);
    out.ortho = sat_add(out.ortho, c.ortho[t]);
  };
  add(e.lhs);
  add(e.rhs);
  out.relations = 1;
  for (const Hypothesis& h : e.hypotheses) {
    add(h.left);
    add(h.right);
    out.ortho = sat_add(out.ortho, 1);  // the implicit prime of x _|_ y
    ++out.relations;
  }
  return out;
}

NodeId eval_term(const OmlLattice& l, std::span<const NodeId> assignment, const Equation& e,
                 TermId t) {
  const TermNode& n = e.pool[t];
  switch (n.op) {
    case Op::var:
      if (n.a >= assignment.size()) throw std::out_of_range("assignment misses a variable");
      return assignment[n.a];
    case Op::zero: return kZero;
    case Op::one: return kOne;
    case Op::ortho: return l.ortho(eval_term(l, assignment, e, n.a));
    case Op::join:
      return l.join(eval_term(l, assignment, e, n.a), eval_term(l, assignment, e, n.b));
    case Op::meet:
      return l.meet(eval_term(l, assignment, e, n.a), eval_term(l, assignment, e, n.b));
    case Op::sasaki:
      return l.sasaki(eval_term(l, assignment, e, n.a), eval_term(l, assignment, e, n.b));
  }
  throw std::logic_error("unknown term operation");
}

bool eval_equation(const OmlLattice& l, std::span<const NodeId> assignment, const Equation& e) {
  if (assignment.size() < e.var_count()) {
    throw std::invalid_argument("assignment does not cover every variable");
  }
  // Memoize over the DAG so shared subterms are evaluated once.
  std::vector<std::optional<NodeId>> memo(e.pool.size());
  std::function<NodeId(TermId)> ev = [&](TermId t) -> NodeId {
    if (memo[t]) return *memo[t];
    const TermNode& n = e.pool[t];
    NodeId r = 0;
    switch (n.op) {
      case Op::var: r = assignment[n.a]; break;
      case Op::zero: r = kZero; break;
      case Op::one: r = kOne; break;
      case Op::ortho: r = l.ortho(ev(n.a)); break;
      case Op::join: r = l.join(ev(n.a), ev(n.b)); break;
      case Op::meet: r = l.meet(ev(n.a), ev(n.b)); break;
      case Op::sasaki: r = l.sasaki(ev(n.a), ev(n.b)); break;
    }
    memo[t] = r;
    return r;
  };
  for (const Hypothesis& h : e.hypotheses) {
    if (!l.le(ev(h.left), l.ortho(ev(h.right)))) return true;
  }
  const NodeId lhs = ev(e.lhs);
  const NodeId rhs = ev(e.rhs);
  return e.rel == Relation::le ? l.le(lhs, rhs) : lhs == rhs;
}

}  // namespace oalat
