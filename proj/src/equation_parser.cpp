#include <cctype>
#include <map>

#include "oalat/equation.hpp"

namespace oalat {

namespace {

enum class Tok { var, zero, one, join, meet, prime, sasaki, le, eq, perp, hash, lparen, rparen, end };

struct Token {
  Tok kind;
  std::size_t pos;
  char letter = 0;
};

std::vector<Token> tokenize(std::string_view s) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t at = i;
    if (s.substr(i, 3) == "_|_") {
      out.push_back({Tok::perp, at});
      i += 3;
    } else if (s.substr(i, 2) == "->") {
      out.push_back({Tok::sasaki, at});
      i += 2;
    } else if (s.substr(i, 2) == "<=") {
      out.push_back({Tok::le, at});
      i += 2;
    } else if (c == '<') {
      out.push_back({Tok::le, at});
      ++i;
    } else if (c == '=') {
      out.push_back({Tok::eq, at});
      ++i;
    } else if (c == 'v') {
      out.push_back({Tok::join, at});
      ++i;
    } else if (c == '^') {
      out.push_back({Tok::meet, at});
      ++i;
    } else if (c == '\'') {
      out.push_back({Tok::prime, at});
      ++i;
    } else if (c == '#') {
      out.push_back({Tok::hash, at});
      ++i;
    } else if (c == '(') {
      out.push_back({Tok::lparen, at});
      ++i;
    } else if (c == ')') {
      out.push_back({Tok::rparen, at});
      ++i;
    } else if (c == '0') {
      out.push_back({Tok::zero, at});
      ++i;
    } else if (c == '1') {
      out.push_back({Tok::one, at});
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      out.push_back({Tok::var, at, c});
      ++i;
    } else {
      throw EquationSyntaxError(std::string("unknown token '") + c + "'", at);
    }
  }
  out.push_back({Tok::end, s.size()});
  return out;
}

class Parser {
public:
  explicit Parser(std::string_view text) : toks_(tokenize(text)) {}

  Equation parse() {
    for (;;) {
      TermId left = expr();
      if (peek().kind == Tok::perp) {
        next();
        TermId right = expr();
        expect(Tok::hash, "'#' after hypothesis");
        e_.hypotheses.push_back({left, right});
        continue;
      }
      if (peek().kind == Tok::le) {
        e_.rel = Relation::le;
      } else if (peek().kind == Tok::eq) {
        e_.rel = Relation::eq;
      } else {
        throw EquationSyntaxError("expected '<', '=' or '_|_'", peek().pos);
      }
      next();
      e_.lhs = left;
      e_.rhs = expr();
      if (peek().kind == Tok::rparen) throw EquationSyntaxError("unbalanced ')'", peek().pos);
      expect(Tok::end, "end of equation");
      try {
        return normalize_variables(e_);
      } catch (const std::invalid_argument& ex) {
        throw EquationSyntaxError(ex.what(), 0);
      }
    }
  }

private:
  const Token& peek() const { return toks_[i_]; }
  const Token& next() { return toks_[i_++]; }
  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw EquationSyntaxError(std::string("expected ") + what, peek().pos);
    next();
  }

  TermId expr() {
    TermId left = join_expr();
    if (peek().kind == Tok::sasaki) {
      next();
      TermId right = expr();  // right associative
      return e_.pool.sasaki(left, right);
    }
    return left;
  }

  TermId join_expr() {
    TermId t = meet_expr();
    while (peek().kind == Tok::join) {
      next();
      t = e_.pool.join(t, meet_expr());
    }
    return t;
  }

  TermId meet_expr() {
    TermId t = postfix();
    while (peek().kind == Tok::meet) {
      next();
      t = e_.pool.meet(t, postfix());
    }
    return t;
  }

  TermId postfix() {
    TermId t = primary();
    while (peek().kind == Tok::prime) {
      next();
      t = e_.pool.ortho(t);
    }
    return t;
  }

  TermId primary() {
    const Token& tok = next();
    switch (tok.kind) {
      case Tok::var: {
        auto [it, inserted] = vars_.emplace(tok.letter, static_cast<std::uint32_t>(vars_.size()));
        if (inserted) e_.var_names.emplace_back(1, tok.letter);
        return e_.pool.var(it->second);
      }
      case Tok::zero: return e_.pool.zero();
      case Tok::one: return e_.pool.one();
      case Tok::lparen: {
        TermId t = expr();
        if (peek().kind != Tok::rparen) {
          throw EquationSyntaxError("unbalanced '(' (missing ')')", peek().pos);
        }
        next();
        return t;
      }
      case Tok::rparen: throw EquationSyntaxError("unbalanced ')'", tok.pos);
      case Tok::end: throw EquationSyntaxError("unexpected end of equation", tok.pos);
      default: throw EquationSyntaxError("expected a term", tok.pos);
    }
  }

  std::vector<Token> toks_;
  std::size_t i_ = 0;
  Equation e_;
  std::map<char, std::uint32_t> vars_;
};

}  // namespace

Equation parse_equation(std::string_view text) { return Parser(text).parse(); }

}  // namespace oalat
