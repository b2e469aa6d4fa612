// Copyright 2026 The so-lab Authors
// SPDX-License-Identifier: Apache-2.0

// Recursive-descent parser for the formula syntax:
//
//   formula := "ALL" var formula | "EX" var formula
//            | "ALL2" REL ":" NAT formula | "EX2" REL ":" NAT formula | iff
//   iff     := imp ("<->" imp)*      left associative
//   imp     := or ("->" imp)?        right associative
//   or      := and ("|" and)*
//   and     := unary ("&" unary)*
//   unary   := "~" unary | "(" formula ")" | quantified | atom
//   atom    := NAME "(" var ("," var)* ")" | var "=" var | var "!=" var
//
// Quantifiers are also accepted in operand position, extending as far right
// as possible; the printer parenthesizes them there.

#include <cctype>
#include <map>

#include "solab/error.hpp"
#include "solab/formula.hpp"

namespace solab {

namespace {

enum class Tok {
  Lower,  // [a-z][a-zA-Z0-9_]*
  Upper,  // [A-Z][a-zA-Z0-9_]* (not a keyword)
  Nat,
  All,
  Ex,
  All2,
  Ex2,
  LParen,
  RParen,
  Comma,
  Colon,
  Eq,
  Neq,
  Not,
  And,
  Or,
  Implies,
  Iff,
  End,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    for (;;) {
      skip_space();
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "end of input", line_, col_});
        return out;
      }
      out.push_back(next());
    }
  }

 private:
  void skip_space() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) advance();
  }

  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  bool starts_with(std::string_view s) const { return src_.substr(pos_, s.size()) == s; }

  Token punct(Tok kind, std::size_t len) {
    Token t{kind, std::string(src_.substr(pos_, len)), line_, col_};
    for (std::size_t i = 0; i < len; ++i) advance();
    return t;
  }

  Token next() {
    const char c = src_[pos_];
    const std::size_t line = line_, col = col_;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[end])) || src_[end] == '_'))
        ++end;
      std::string word(src_.substr(pos_, end - pos_));
      while (pos_ < end) advance();
      Tok kind = std::islower(static_cast<unsigned char>(c)) ? Tok::Lower : Tok::Upper;
      if (word == "ALL") kind = Tok::All;
      if (word == "EX") kind = Tok::Ex;
      if (word == "ALL2") kind = Tok::All2;
      if (word == "EX2") kind = Tok::Ex2;
      return {kind, word, line, col};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t end = pos_;
      while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
      return punct(Tok::Nat, end - pos_);
    }
    if (starts_with("<->")) return punct(Tok::Iff, 3);
    if (starts_with("->")) return punct(Tok::Implies, 2);
    if (starts_with("!=")) return punct(Tok::Neq, 2);
    switch (c) {
      case '(':
        return punct(Tok::LParen, 1);
      case ')':
        return punct(Tok::RParen, 1);
      case ',':
        return punct(Tok::Comma, 1);
      case ':':
        return punct(Tok::Colon, 1);
      case '=':
        return punct(Tok::Eq, 1);
      case '~':
        return punct(Tok::Not, 1);
      case '&':
        return punct(Tok::And, 1);
      case '|':
        return punct(Tok::Or, 1);
      default:
        throw SyntaxError(std::string("unexpected character '") + c + "'", line, col);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = formula();
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'");
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw SyntaxError(msg, peek().line, peek().column);
  }

  Token expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail(std::string("expected ") + what + ", found '" + peek().text + "'");
    return take();
  }

  bool at_quantifier() const {
    const Tok k = peek().kind;
    return k == Tok::All || k == Tok::Ex || k == Tok::All2 || k == Tok::Ex2;
  }

  Formula formula() {
    if (at_quantifier()) return quantified();
    return iff();
  }

  Formula quantified() {
    const Token q = take();
    if (q.kind == Tok::All || q.kind == Tok::Ex) {
      std::string v = expect(Tok::Lower, "a variable").text;
      Formula body = formula();
      return q.kind == Tok::All ? Formula::forall(std::move(v), body)
                                : Formula::exists(std::move(v), body);
    }
    if (peek().kind != Tok::Upper && peek().kind != Tok::Lower)
      fail("expected a relation variable, found '" + peek().text + "'");
    std::string r = take().text;
    expect(Tok::Colon, "':'");
    const Token nat = expect(Tok::Nat, "an arity");
    int arity = 0;
    try {
      arity = std::stoi(nat.text);
    } catch (const std::exception&) {
      throw SyntaxError("arity out of range", nat.line, nat.column);
    }
    if (arity < 1) throw SyntaxError("arity must be at least 1", nat.line, nat.column);
    Formula body = formula();
    return q.kind == Tok::All2 ? Formula::forall_so(std::move(r), arity, body)
                               : Formula::exists_so(std::move(r), arity, body);
  }

  Formula iff() {
    Formula f = imp();
    while (peek().kind == Tok::Iff) {
      take();
      f = Formula::iff(f, imp());
    }
    return f;
  }

  Formula imp() {
    Formula f = disj();
    if (peek().kind == Tok::Implies) {
      take();
      return Formula::implies(f, imp());
    }
    return f;
  }

  Formula disj() {
    Formula f = conj();
    while (peek().kind == Tok::Or) {
      take();
      f = Formula::disj(f, conj());
    }
    return f;
  }

  Formula conj() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      take();
      f = Formula::conj(f, unary());
    }
    return f;
  }

  Formula unary() {
    if (peek().kind == Tok::Not) {
      take();
      return Formula::negation(unary());
    }
    if (peek().kind == Tok::LParen) {
      take();
      Formula f = formula();
      expect(Tok::RParen, "')'");
      return f;
    }
    if (at_quantifier()) return quantified();
    return atom();
  }

  Formula atom() {
    const Token head = peek();
    if (head.kind != Tok::Lower && head.kind != Tok::Upper)
      fail("expected a formula, found '" + head.text + "'");
    take();
    if (peek().kind == Tok::LParen) {
      take();
      std::vector<std::string> args;
      args.push_back(expect(Tok::Lower, "a variable").text);
      while (peek().kind == Tok::Comma) {
        take();
        args.push_back(expect(Tok::Lower, "a variable").text);
      }
      expect(Tok::RParen, "')'");
      return Formula::atom(head.text, std::move(args));
    }
    if (head.kind != Tok::Lower) fail("expected '(' after relation name '" + head.text + "'");
    if (peek().kind == Tok::Eq) {
      take();
      return Formula::eq(head.text, expect(Tok::Lower, "a variable").text);
    }
    if (peek().kind == Tok::Neq) {
      take();
      return Formula::neq(head.text, expect(Tok::Lower, "a variable").text);
    }
    fail("expected '(', '=' or '!=' after '" + head.text + "'");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

// One identifier must be applied with a single argument count per scope:
// binders fix the count for their body, free names are fixed globally.
void check_arities(const Formula& f, std::vector<std::pair<std::string, int>>& binders,
                   std::map<std::string, int>& free_names) {
  auto mismatch = [](const std::string& name, int expected, int got) {
    throw ValidationError(ValidationError::Kind::ArityMismatch,
                          "arity mismatch for '" + name + "': used with " +
                              std::to_string(expected) + " and " + std::to_string(got) +
                              " arguments");
  };
  switch (f.kind()) {
    case FormulaKind::Atom: {
      for (auto it = binders.rbegin(); it != binders.rend(); ++it) {
        if (it->first == f.name()) {
          if (it->second != f.arity()) mismatch(f.name(), it->second, f.arity());
          return;
        }
      }
      auto [pos, inserted] = free_names.emplace(f.name(), f.arity());
      if (!inserted && pos->second != f.arity()) mismatch(f.name(), pos->second, f.arity());
      return;
    }
    case FormulaKind::Eq:
      return;
    case FormulaKind::ExistsSO:
    case FormulaKind::ForallSO:
      binders.emplace_back(f.name(), f.arity());
      check_arities(f.sub(), binders, free_names);
      binders.pop_back();
      return;
    case FormulaKind::Not:
    case FormulaKind::ExistsFO:
    case FormulaKind::ForallFO:
      check_arities(f.sub(), binders, free_names);
      return;
    default:
      check_arities(f.lhs(), binders, free_names);
      check_arities(f.rhs(), binders, free_names);
  }
}

}  // namespace

Formula parse_formula(std::string_view text) {
  Formula f = Parser(Lexer(text).run()).parse_all();
  std::vector<std::pair<std::string, int>> binders;
  std::map<std::string, int> free_names;
  check_arities(f, binders, free_names);
  return f;
}

}  // namespace solab
