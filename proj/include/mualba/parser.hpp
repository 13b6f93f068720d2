#pragma once

// Recursive descent parser for the concrete formula grammar.
//
//   inequality ::= formula "<=" formula
//   formula    ::= ("mu"|"nu"|"mu*"|"nu*") FIXVAR "." formula | impl
//   impl       ::= or (("->" | "-<") formula)?          (right associative)
//   or         ::= and ("|" (and | trailing-binder))*
//   and        ::= unary ("&" (unary | trailing-binder))*
//   unary      ::= ("<>" | "[]" | "<b>" | "[b]") unary | atom
//   atom       ::= "T" | "F" | PROPVAR | FIXVAR | "$"NAME | "#"NAME | "?"NAME
//                | "(" formula ")"
//
// Propositional variables start with a lowercase letter, fixed point
// variables with an uppercase letter.  "T", "F", "mu" and "nu" are reserved.
// Binders extend as far right as possible; a binder may appear directly as
// the right operand of any binary connective.

#include <cctype>
#include <string>
#include <vector>

#include "mualba/formula.hpp"

namespace mualba {

struct SyntaxError : std::runtime_error {
  size_t position;
  std::string expected;
  SyntaxError(size_t pos, const std::string& exp, const std::string& found)
      : std::runtime_error("syntax error at " + std::to_string(pos) + ": expected " +
                           exp + ", found " + found),
        position(pos), expected(exp) {}
};

namespace detail {

enum class Tok {
  End, LParen, RParen, Dot, Leq,
  AndOp, OrOp, ImpOp, CoImpOp,
  BoxOp, DiaOp, BBoxOp, BDiaOp,
  KwTop, KwBot, KwMu, KwNu, KwMuStar, KwNuStar,
  PropName, FixName, NomName, CoNomName, PlaceName
};

struct Token {
  Tok kind;
  std::string text;
  size_t pos;
};

inline bool ident_start(char c) { return std::isalpha((unsigned char)c) || c == '_'; }
inline bool ident_char(char c) {
  return std::isalnum((unsigned char)c) || c == '_' || c == '\'';
}

inline std::vector<Token> lex(const std::string& s) {
  std::vector<Token> out;
  size_t i = 0, n = s.size();
  auto push = [&](Tok k, size_t pos, std::string text = {}) {
    out.push_back({k, std::move(text), pos});
  };
  while (i < n) {
    char c = s[i];
    if (std::isspace((unsigned char)c)) { ++i; continue; }
    size_t pos = i;
    if (c == '(') { push(Tok::LParen, pos); ++i; continue; }
    if (c == ')') { push(Tok::RParen, pos); ++i; continue; }
    if (c == '.') { push(Tok::Dot, pos); ++i; continue; }
    if (c == '&') { push(Tok::AndOp, pos); ++i; continue; }
    if (c == '|') { push(Tok::OrOp, pos); ++i; continue; }
    if (c == '-') {
      if (i + 1 < n && s[i + 1] == '>') { push(Tok::ImpOp, pos); i += 2; continue; }
      if (i + 1 < n && s[i + 1] == '<') { push(Tok::CoImpOp, pos); i += 2; continue; }
      throw SyntaxError(pos, "'->' or '-<'", std::string(1, c));
    }
    if (c == '<') {
      if (i + 1 < n && s[i + 1] == '>') { push(Tok::DiaOp, pos); i += 2; continue; }
      if (i + 1 < n && s[i + 1] == '=') { push(Tok::Leq, pos); i += 2; continue; }
      if (i + 2 < n && s[i + 1] == 'b' && s[i + 2] == '>') { push(Tok::BDiaOp, pos); i += 3; continue; }
      throw SyntaxError(pos, "'<>', '<b>' or '<='", std::string(1, c));
    }
    if (c == '[') {
      // allow whitespace inside the box token, as in "[ ]"
      size_t j = i + 1;
      while (j < n && std::isspace((unsigned char)s[j])) ++j;
      if (j < n && s[j] == ']') { push(Tok::BoxOp, pos); i = j + 1; continue; }
      if (j + 1 < n && s[j] == 'b' && s[j + 1] == ']') { push(Tok::BBoxOp, pos); i = j + 2; continue; }
      throw SyntaxError(pos, "'[]' or '[b]'", std::string(1, c));
    }
    if (c == '$' || c == '#' || c == '?') {
      ++i;
      if (i >= n || !ident_start(s[i]))
        throw SyntaxError(pos, "name after sigil", i < n ? std::string(1, s[i]) : "end of input");
      size_t j = i;
      while (j < n && ident_char(s[j])) ++j;
      Tok k = c == '$' ? Tok::NomName : c == '#' ? Tok::CoNomName : Tok::PlaceName;
      push(k, pos, s.substr(i, j - i));
      i = j;
      continue;
    }
    if (ident_start(c)) {
      size_t j = i;
      while (j < n && ident_char(s[j])) ++j;
      std::string w = s.substr(i, j - i);
      i = j;
      if (w == "T") { push(Tok::KwTop, pos); continue; }
      if (w == "F") { push(Tok::KwBot, pos); continue; }
      if (w == "mu" || w == "nu") {
        bool starred = i < n && s[i] == '*';
        if (starred) ++i;
        push(w == "mu" ? (starred ? Tok::KwMuStar : Tok::KwMu)
                       : (starred ? Tok::KwNuStar : Tok::KwNu), pos);
        continue;
      }
      push(std::isupper((unsigned char)w[0]) ? Tok::FixName : Tok::PropName, pos, w);
      continue;
    }
    throw SyntaxError(pos, "formula token", std::string(1, c));
  }
  push(Tok::End, n);
  return out;
}

class Parser {
 public:
  explicit Parser(const std::string& text) : toks_(lex(text)) {}

  Formula formula() {
    Formula f = parse_formula();
    expect(Tok::End, "end of input");
    return f;
  }

  Inequality inequality() {
    Formula l = parse_formula();
    expect(Tok::Leq, "'<='");
    Formula r = parse_formula();
    expect(Tok::End, "end of input");
    return {l, r};
  }

 private:
  std::vector<Token> toks_;
  size_t at_ = 0;

  const Token& peek() const { return toks_[at_]; }
  Token next() { return toks_[at_++]; }
  void expect(Tok k, const std::string& what) {
    if (peek().kind != k) throw SyntaxError(peek().pos, what, describe(peek()));
    ++at_;
  }
  static std::string describe(const Token& t) {
    if (t.kind == Tok::End) return "end of input";
    return t.text.empty() ? "token" : "'" + t.text + "'";
  }

  static bool is_binder_kw(Tok k) {
    return k == Tok::KwMu || k == Tok::KwNu || k == Tok::KwMuStar || k == Tok::KwNuStar;
  }

  Formula parse_formula() {
    if (is_binder_kw(peek().kind)) return parse_binder();
    return parse_impl();
  }

  Formula parse_binder() {
    Token kw = next();
    if (peek().kind != Tok::FixName)
      throw SyntaxError(peek().pos, "fixed point variable", describe(peek()));
    std::string var = next().text;
    expect(Tok::Dot, "'.'");
    Formula body = parse_formula();
    Conn c = kw.kind == Tok::KwMu ? Conn::Mu : kw.kind == Tok::KwNu ? Conn::Nu :
             kw.kind == Tok::KwMuStar ? Conn::MuStar : Conn::NuStar;
    return binder(c, var, std::move(body));  // PolarityError propagates
  }

  Formula parse_impl() {
    Formula l = parse_or();
    if (peek().kind == Tok::ImpOp || peek().kind == Tok::CoImpOp) {
      Tok op = next().kind;
      Formula r = parse_formula();  // right associative; binders allowed
      return op == Tok::ImpOp ? imp(std::move(l), std::move(r))
                              : coimp(std::move(l), std::move(r));
    }
    return l;
  }

  Formula parse_or() {
    Formula l = parse_and();
    while (peek().kind == Tok::OrOp) {
      next();
      if (is_binder_kw(peek().kind)) return f_or(std::move(l), parse_binder());
      l = f_or(std::move(l), parse_and());
    }
    return l;
  }

  Formula parse_and() {
    Formula l = parse_unary();
    while (peek().kind == Tok::AndOp) {
      next();
      if (is_binder_kw(peek().kind)) return f_and(std::move(l), parse_binder());
      l = f_and(std::move(l), parse_unary());
    }
    return l;
  }

  Formula parse_unary() {
    switch (peek().kind) {
      case Tok::BoxOp: next(); return box(parse_unary());
      case Tok::DiaOp: next(); return dia(parse_unary());
      case Tok::BBoxOp: next(); return bbox(parse_unary());
      case Tok::BDiaOp: next(); return bdia(parse_unary());
      default:
        // a binder directly under a unary operator is unambiguous: it
        // extends as far right as possible
        if (is_binder_kw(peek().kind)) return parse_binder();
        return parse_atom();
    }
  }

  Formula parse_atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::KwTop: next(); return top();
      case Tok::KwBot: next(); return bot();
      case Tok::PropName: return prop(next().text);
      case Tok::FixName: return fixvar(next().text);
      case Tok::NomName: return nominal(next().text);
      case Tok::CoNomName: return conominal(next().text);
      case Tok::PlaceName: return placevar(next().text);
      case Tok::LParen: {
        next();
        Formula f = parse_formula();
        expect(Tok::RParen, "')'");
        return f;
      }
      default:
        throw SyntaxError(t.pos, "formula", describe(t));
    }
  }
};

}  // namespace detail

inline Formula parse_formula(const std::string& text) {
  return detail::Parser(text).formula();
}

inline Inequality parse_inequality(const std::string& text) {
  return detail::Parser(text).inequality();
}

}  // namespace mualba
