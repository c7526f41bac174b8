//
// Copyright 2026 The dpcheck Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef DPCHECK_PARSER_HPP_
#define DPCHECK_PARSER_HPP_

// Concrete syntax for .pfor programs.
//
//   program NAME
//   input x : int          input d : db
//   query q[N] sensitivity R
//   budget eps | 2*eps | eps/2 | 3/2*eps
//   requires adjacent
//   ensures o<1> == o<2>
//   output o : int | int[N] | int[N] = bot
//
//   begin
//     x := e;  a[e] := e;  x :~ lap(e, e);  skip;
//     if e then ... else ... end            (true iff e > 0)
//     for i in e1:e2 do ... end
//     ⟨ c1 | c2 ⟩                            (relational pair, ASCII <| c1 | c2 |>)
//   end
//
// `#` starts a line comment. The pretty-printer emits a canonical rendering;
// parse-then-print is byte-identical on canonical files.

#include <cctype>
#include <functional>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "dpcheck/ast.hpp"

namespace dpcheck {
namespace parser {

using ast::BinOpKind;
using ast::Cmd;
using ast::CmdPtr;
using ast::Expr;
using ast::ExprPtr;
using ast::Program;

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok {
  End, Ident, Int, Assign, Sample,  // := and :~
  Semi, Colon, Comma, Dot, LParen, RParen, LBrack, RBrack,
  Plus, Minus, Star, Slash,
  PairOpen, PairSep, PairClose,     // ⟨ | ⟩ (or <| ... |>)
  Proj1, Proj2,                      // <1> <2>
  Lt, Le, Gt, Ge, EqEq, Ne, AndAnd, Bang, Eq,
  DotDot,
};

struct Token {
  Tok kind;
  std::string text;
  Int value = 0;
  SourceLoc loc;
};

class Lexer {
 public:
  explicit Lexer(const std::string& src) : src_(src) { advance(); }

  const Token& peek() const { return tok_; }
  Token next() {
    Token t = tok_;
    advance();
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const {
    throw Error("syntax error at " + cur_loc().str() + ": " + msg, 64);
  }

  SourceLoc cur_loc() const { return {line_, col_}; }

  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char ahead(size_t k) const {
    return pos_ + k < src_.size() ? src_[pos_ + k] : '\0';
  }

  void bump() {
    if (cur() == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  void skip_ws() {
    for (;;) {
      char c = cur();
      if (c == '#') {
        while (cur() != '\n' && cur() != '\0') bump();
      } else if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        bump();
      } else {
        break;
      }
    }
  }

  void advance() {
    skip_ws();
    Token t;
    t.loc = cur_loc();
    char c = cur();
    if (c == '\0') {
      t.kind = Tok::End;
      tok_ = t;
      return;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (std::isalnum(static_cast<unsigned char>(cur())) || cur() == '_') {
        s += cur();
        bump();
      }
      t.kind = Tok::Ident;
      t.text = s;
      // Side projections bind to the identifier: x<1>, q[i]<2>.
      tok_ = t;
      return;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (std::isdigit(static_cast<unsigned char>(cur()))) {
        s += cur();
        bump();
      }
      t.kind = Tok::Int;
      t.text = s;
      t.value = std::stoll(s);
      tok_ = t;
      return;
    }
    // UTF-8 pair brackets ⟨ (e2 9f a8) and ⟩ (e2 9f a9).
    if (static_cast<unsigned char>(c) == 0xE2 &&
        static_cast<unsigned char>(ahead(1)) == 0x9F) {
      unsigned char third = static_cast<unsigned char>(ahead(2));
      if (third == 0xA8 || third == 0xA9) {
        bump();
        bump();
        bump();
        t.kind = third == 0xA8 ? Tok::PairOpen : Tok::PairClose;
        tok_ = t;
        return;
      }
    }
    auto two = [&](char a, char b) { return c == a && ahead(1) == b; };
    if (two(':', '=')) { bump(); bump(); t.kind = Tok::Assign; tok_ = t; return; }
    if (two(':', '~')) { bump(); bump(); t.kind = Tok::Sample; tok_ = t; return; }
    if (two('<', '|')) { bump(); bump(); t.kind = Tok::PairOpen; tok_ = t; return; }
    if (two('|', '>')) { bump(); bump(); t.kind = Tok::PairClose; tok_ = t; return; }
    if (two('<', '1') && ahead(2) == '>') {
      bump(); bump(); bump();
      t.kind = Tok::Proj1; tok_ = t; return;
    }
    if (two('<', '2') && ahead(2) == '>') {
      bump(); bump(); bump();
      t.kind = Tok::Proj2; tok_ = t; return;
    }
    if (two('<', '=')) { bump(); bump(); t.kind = Tok::Le; tok_ = t; return; }
    if (two('>', '=')) { bump(); bump(); t.kind = Tok::Ge; tok_ = t; return; }
    if (two('=', '=')) { bump(); bump(); t.kind = Tok::EqEq; tok_ = t; return; }
    if (two('!', '=')) { bump(); bump(); t.kind = Tok::Ne; tok_ = t; return; }
    if (two('&', '&')) { bump(); bump(); t.kind = Tok::AndAnd; tok_ = t; return; }
    if (two('.', '.')) { bump(); bump(); t.kind = Tok::DotDot; tok_ = t; return; }
    bump();
    switch (c) {
      case ';': t.kind = Tok::Semi; break;
      case ':': t.kind = Tok::Colon; break;
      case ',': t.kind = Tok::Comma; break;
      case '.': t.kind = Tok::Dot; break;
      case '(': t.kind = Tok::LParen; break;
      case ')': t.kind = Tok::RParen; break;
      case '[': t.kind = Tok::LBrack; break;
      case ']': t.kind = Tok::RBrack; break;
      case '+': t.kind = Tok::Plus; break;
      case '-': t.kind = Tok::Minus; break;
      case '*': t.kind = Tok::Star; break;
      case '/': t.kind = Tok::Slash; break;
      case '|': t.kind = Tok::PairSep; break;
      case '<': t.kind = Tok::Lt; break;
      case '>': t.kind = Tok::Gt; break;
      case '!': t.kind = Tok::Bang; break;
      case '=': t.kind = Tok::Eq; break;
      default:
        fail(std::string("unexpected character '") + c + "'");
    }
    tok_ = t;
  }

  std::string src_;
  size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
  Token tok_;
};

// ---------------------------------------------------------------------------
// Parser
// ---------------------------------------------------------------------------

class Parser {
 public:
  explicit Parser(const std::string& src) : lex_(src) {}

  Program parse_program() {
    Program p;
    expect_kw("program");
    p.name = expect_ident("program name");
    bool saw_output = false;
    for (;;) {
      const Token& t = lex_.peek();
      if (t.kind != Tok::Ident) break;
      if (t.text == "input") {
        lex_.next();
        ast::Param prm;
        prm.loc = t.loc;
        prm.name = expect_ident("input name");
        expect(Tok::Colon);
        std::string ty = expect_ident("type");
        if (ty == "int") prm.type = ast::ParamType::IntScalar;
        else if (ty == "db") prm.type = ast::ParamType::Database;
        else fail(t.loc, "unknown input type '" + ty + "'");
        declare(prm.name, t.loc);
        p.params.push_back(prm);
      } else if (t.text == "query") {
        lex_.next();
        ast::QueryDecl q;
        q.loc = t.loc;
        q.name = expect_ident("query name");
        expect(Tok::LBrack);
        q.count = parse_expr();
        expect(Tok::RBrack);
        expect_kw("sensitivity");
        Token s = expect(Tok::Int);
        q.sensitivity = s.value;
        declare(q.name, t.loc);
        p.queries.push_back(q);
      } else if (t.text == "budget") {
        lex_.next();
        p.budget_eps = parse_budget();
      } else if (t.text == "requires") {
        lex_.next();
        p.requires_ = parse_assertion();
      } else if (t.text == "ensures") {
        lex_.next();
        p.ensures_ = parse_assertion();
      } else if (t.text == "output") {
        lex_.next();
        p.output.loc = t.loc;
        p.output.name = expect_ident("output name");
        expect(Tok::Colon);
        std::string ty = expect_ident("type");
        if (ty != "int") fail(t.loc, "output type must be int or int[n]");
        if (lex_.peek().kind == Tok::LBrack) {
          lex_.next();
          p.output.is_array = true;
          p.output.length = parse_expr();
          expect(Tok::RBrack);
          if (lex_.peek().kind == Tok::Eq) {
            lex_.next();
            p.output.init = parse_expr();
          }
        }
        saw_output = true;
      } else if (t.text == "begin") {
        break;
      } else {
        fail(t.loc, "unexpected header keyword '" + t.text + "'");
      }
    }
    if (!saw_output) fail({}, "missing output declaration");
    if (!p.requires_) p.requires_ = ast::RelAssertion::adjacent();
    if (!p.ensures_) {
      auto o = Expr::var(p.output.name);
      p.ensures_ = ast::RelAssertion::cmp_(ast::CmpOp::Eq,
                                           ast::RelExpr::proj(1, o),
                                           ast::RelExpr::proj(2, o));
    }
    expect_kw("begin");
    p.body = parse_stmts("end");
    expect_kw("end");
    if (lex_.peek().kind != Tok::End)
      fail(lex_.peek().loc, "trailing input after program end");
    validate_names(p);
    return p;
  }

  // Expression entry point for tests.
  ExprPtr parse_expr_only() {
    auto e = parse_expr();
    if (lex_.peek().kind != Tok::End)
      fail(lex_.peek().loc, "trailing input after expression");
    return e;
  }

 private:
  [[noreturn]] void fail(SourceLoc loc, const std::string& msg) {
    throw Error("syntax error at " + loc.str() + ": " + msg, 64);
  }

  Token expect(Tok k) {
    Token t = lex_.next();
    if (t.kind != k) fail(t.loc, "unexpected token '" + t.text + "'");
    return t;
  }

  std::string expect_ident(const std::string& what) {
    Token t = lex_.next();
    if (t.kind != Tok::Ident) fail(t.loc, "expected " + what);
    return t.text;
  }

  void expect_kw(const std::string& kw) {
    Token t = lex_.next();
    if (t.kind != Tok::Ident || t.text != kw)
      fail(t.loc, "expected '" + kw + "'");
  }

  bool peek_kw(const std::string& kw) {
    return lex_.peek().kind == Tok::Ident && lex_.peek().text == kw;
  }

  void declare(const std::string& n, SourceLoc loc) {
    if (!declared_.insert(n).second)
      fail(loc, "duplicate declaration of '" + n + "'");
  }

  Rat parse_budget() {
    // eps | N*eps | eps/D | N/D*eps
    if (peek_kw("eps")) {
      lex_.next();
      if (lex_.peek().kind == Tok::Slash) {
        lex_.next();
        Token d = expect(Tok::Int);
        return Rat(1, d.value);
      }
      return Rat(1);
    }
    Token n = expect(Tok::Int);
    if (lex_.peek().kind == Tok::Slash) {
      lex_.next();
      Token d = expect(Tok::Int);
      expect(Tok::Star);
      expect_kw("eps");
      return Rat(n.value, d.value);
    }
    expect(Tok::Star);
    expect_kw("eps");
    return Rat(n.value);
  }

  // --- commands ---

  CmdPtr parse_stmts(const std::string& terminator) {
    std::vector<CmdPtr> list;
    for (;;) {
      if (peek_kw(terminator) || peek_kw("else")) break;
      Tok k = lex_.peek().kind;
      if (k == Tok::End || k == Tok::PairSep || k == Tok::PairClose) break;
      list.push_back(parse_stmt());
      if (lex_.peek().kind == Tok::Semi) {
        lex_.next();
        continue;
      }
      break;
    }
    if (list.empty()) return Cmd::skip();
    CmdPtr c = list.back();
    for (size_t i = list.size() - 1; i-- > 0;) c = Cmd::seq(list[i], c);
    return c;
  }

  CmdPtr parse_stmt() {
    Token t = lex_.peek();
    if (t.kind == Tok::PairOpen) {
      lex_.next();
      CmdPtr left = parse_stmts("|nope|");
      expect(Tok::PairSep);
      CmdPtr right = parse_stmts("|nope|");
      Token close = lex_.next();
      if (close.kind != Tok::PairClose)
        fail(close.loc, "expected closing pair bracket");
      if (ast::cmd_has_pair(left) || ast::cmd_has_pair(right))
        fail(t.loc, "nested relational pair");
      return Cmd::pair(left, right, t.loc);
    }
    if (t.kind != Tok::Ident) fail(t.loc, "expected statement");
    if (t.text == "skip") {
      lex_.next();
      return Cmd::skip(t.loc);
    }
    if (t.text == "if") {
      lex_.next();
      ExprPtr g = parse_expr();
      expect_kw("then");
      CmdPtr then_c = parse_stmts("end");
      CmdPtr else_c = Cmd::skip();
      if (peek_kw("else")) {
        lex_.next();
        else_c = parse_stmts("end");
      }
      expect_kw("end");
      return Cmd::if_(g, then_c, else_c, t.loc);
    }
    if (t.text == "for") {
      lex_.next();
      std::string v = expect_ident("loop variable");
      expect_kw("in");
      ExprPtr lo = parse_expr();
      expect(Tok::Colon);
      ExprPtr hi = parse_expr();
      expect_kw("do");
      CmdPtr body = parse_stmts("end");
      expect_kw("end");
      return Cmd::for_(v, lo, hi, body, t.loc);
    }
    // Assignment forms: x := e, x :~ lap(...), a[e] := e.
    lex_.next();
    std::string name = t.text;
    if (lex_.peek().kind == Tok::LBrack) {
      lex_.next();
      ExprPtr idx = parse_expr();
      expect(Tok::RBrack);
      expect(Tok::Assign);
      ExprPtr rhs = parse_expr();
      return Cmd::arr_assign(name, idx, rhs, t.loc);
    }
    if (lex_.peek().kind == Tok::Sample) {
      lex_.next();
      expect_kw("lap");
      expect(Tok::LParen);
      ExprPtr mean = parse_expr();
      expect(Tok::Comma);
      ExprPtr scale = parse_expr();
      expect(Tok::RParen);
      return Cmd::lap_sample(name, mean, scale, t.loc);
    }
    expect(Tok::Assign);
    ExprPtr rhs = parse_expr();
    return Cmd::assign(name, rhs, t.loc);
  }

  // --- expressions ---

  ExprPtr parse_expr() { return parse_additive(); }

  ExprPtr parse_additive() {
    ExprPtr e = parse_multiplicative();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus || k == Tok::Minus) {
        Token t = lex_.next();
        ExprPtr rhs = parse_multiplicative();
        e = Expr::binop(k == Tok::Plus ? BinOpKind::Add : BinOpKind::Sub, e,
                        rhs, t.loc);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr parse_multiplicative() {
    ExprPtr e = parse_unary();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Star || k == Tok::Slash) {
        Token t = lex_.next();
        ExprPtr rhs = parse_unary();
        e = Expr::binop(k == Tok::Star ? BinOpKind::Mul : BinOpKind::Div, e,
                        rhs, t.loc);
      } else {
        break;
      }
    }
    return e;
  }

  ExprPtr parse_unary() {
    if (lex_.peek().kind == Tok::Minus) {
      Token t = lex_.next();
      ExprPtr e = parse_unary();
      if (e->kind == Expr::Kind::IntLit) return Expr::int_lit(-e->lit, t.loc);
      return Expr::binop(BinOpKind::Sub, Expr::int_lit(0, t.loc), e, t.loc);
    }
    return parse_primary();
  }

  ExprPtr parse_primary() {
    Token t = lex_.peek();
    if (t.kind == Tok::Int) {
      lex_.next();
      return Expr::int_lit(t.value, t.loc);
    }
    if (t.kind == Tok::LParen) {
      lex_.next();
      ExprPtr e = parse_expr();
      expect(Tok::RParen);
      return e;
    }
    if (t.kind == Tok::PairOpen) {
      lex_.next();
      ExprPtr l = parse_expr();
      expect(Tok::PairSep);
      ExprPtr r = parse_expr();
      Token close = lex_.next();
      if (close.kind != Tok::PairClose)
        fail(close.loc, "expected closing pair bracket");
      if (ast::expr_has_pair(l) || ast::expr_has_pair(r))
        fail(t.loc, "nested relational pair");
      return Expr::pair(l, r, t.loc);
    }
    if (t.kind == Tok::Ident) {
      lex_.next();
      if (t.text == "bot") return Expr::int_lit(kBotValue, t.loc);
      if (t.text == "top") return Expr::int_lit(kTopValue, t.loc);
      if (t.text == "len") {
        expect(Tok::LParen);
        std::string n = expect_ident("array name");
        expect(Tok::RParen);
        return Expr::len(n, t.loc);
      }
      if (lex_.peek().kind == Tok::LBrack) {
        lex_.next();
        ExprPtr idx = parse_expr();
        expect(Tok::RBrack);
        return Expr::arr_idx(t.text, idx, t.loc);
      }
      return Expr::var(t.text, t.loc);
    }
    fail(t.loc, "expected expression");
  }

  // --- relational assertions ---

  ast::RelAssertionPtr parse_assertion() {
    auto a = parse_assert_atom();
    while (lex_.peek().kind == Tok::AndAnd) {
      lex_.next();
      a = ast::RelAssertion::and_(a, parse_assert_atom());
    }
    return a;
  }

  ast::RelAssertionPtr parse_assert_atom() {
    Token t = lex_.peek();
    if (t.kind == Tok::Bang) {
      lex_.next();
      return ast::RelAssertion::not_(parse_assert_atom());
    }
    if (t.kind == Tok::LParen) {
      lex_.next();
      auto a = parse_assertion();
      expect(Tok::RParen);
      return a;
    }
    if (peek_kw("adjacent")) {
      lex_.next();
      return ast::RelAssertion::adjacent();
    }
    if (peek_kw("true")) {
      lex_.next();
      return ast::RelAssertion::mk_true();
    }
    if (peek_kw("forall")) {
      lex_.next();
      std::string v = expect_ident("bound variable");
      expect_kw("in");
      auto lo = parse_rel_expr();
      expect(Tok::DotDot);
      auto hi = parse_rel_expr();
      expect(Tok::Dot);
      auto body = parse_assert_atom();
      return ast::RelAssertion::forall(v, lo, hi, body);
    }
    auto lhs = parse_rel_expr();
    Token op = lex_.next();
    ast::CmpOp c;
    switch (op.kind) {
      case Tok::EqEq: c = ast::CmpOp::Eq; break;
      case Tok::Ne: c = ast::CmpOp::Ne; break;
      case Tok::Lt: c = ast::CmpOp::Lt; break;
      case Tok::Le: c = ast::CmpOp::Le; break;
      case Tok::Gt: c = ast::CmpOp::Gt; break;
      case Tok::Ge: c = ast::CmpOp::Ge; break;
      default: fail(op.loc, "expected comparison operator");
    }
    auto rhs = parse_rel_expr();
    return ast::RelAssertion::cmp_(c, lhs, rhs);
  }

  ast::RelExprPtr parse_rel_expr() {
    auto e = parse_rel_mul();
    for (;;) {
      Tok k = lex_.peek().kind;
      if (k == Tok::Plus || k == Tok::Minus) {
        lex_.next();
        auto rhs = parse_rel_mul();
        e = ast::RelExpr::binop(
            k == Tok::Plus ? BinOpKind::Add : BinOpKind::Sub, e, rhs);
      } else {
        break;
      }
    }
    return e;
  }

  ast::RelExprPtr parse_rel_mul() {
    auto e = parse_rel_primary();
    while (lex_.peek().kind == Tok::Star) {
      lex_.next();
      e = ast::RelExpr::binop(BinOpKind::Mul, e, parse_rel_primary());
    }
    return e;
  }

  ast::RelExprPtr parse_rel_primary() {
    Token t = lex_.peek();
    if (t.kind == Tok::Int) {
      lex_.next();
      return ast::RelExpr::int_lit(t.value);
    }
    if (t.kind == Tok::Minus) {
      lex_.next();
      Token n = expect(Tok::Int);
      return ast::RelExpr::int_lit(-n.value);
    }
    if (t.kind == Tok::LParen) {
      lex_.next();
      auto e = parse_rel_expr();
      expect(Tok::RParen);
      return e;
    }
    if (t.kind == Tok::Ident) {
      lex_.next();
      if (t.text == "abs") {
        expect(Tok::LParen);
        auto inner = parse_rel_expr();
        expect(Tok::RParen);
        return ast::RelExpr::abs(inner);
      }
      if (t.text == "bot")
        return ast::RelExpr::int_lit(kBotValue);
      if (t.text == "top")
        return ast::RelExpr::int_lit(kTopValue);
      ExprPtr prog;
      if (lex_.peek().kind == Tok::LBrack) {
        lex_.next();
        // Index inside assertions: int literal or bound variable name.
        Token idx = lex_.next();
        ExprPtr ie;
        if (idx.kind == Tok::Int) ie = Expr::int_lit(idx.value);
        else if (idx.kind == Tok::Ident) ie = Expr::var(idx.text);
        else fail(idx.loc, "expected index");
        expect(Tok::RBrack);
        prog = Expr::arr_idx(t.text, ie, t.loc);
      } else {
        prog = Expr::var(t.text, t.loc);
      }
      if (lex_.peek().kind == Tok::Proj1 || lex_.peek().kind == Tok::Proj2) {
        Token pj = lex_.next();
        return ast::RelExpr::proj(pj.kind == Tok::Proj1 ? 1 : 2, prog);
      }
      // Bare identifier: logical variable (e.g. a forall-bound index).
      return ast::RelExpr::log_var_(t.text);
    }
    fail(t.loc, "expected assertion expression");
  }

  void validate_names(const Program& p) {
    auto diags = ast::check_wellformed(p);
    for (const auto& d : diags) {
      // Only undeclared-name problems are parser-fatal; the rest surface
      // through check_wellformed for callers that want diagnostics.
      if (d.message.find("neither a declared query") != std::string::npos)
        throw Error("error: " + d.str(), 64);
    }
  }

  Lexer lex_;
  std::set<std::string> declared_;
};

inline Program parse_program(const std::string& source) {
  Parser p(source);
  return p.parse_program();
}

inline ExprPtr parse_expr(const std::string& source) {
  Parser p(source);
  return p.parse_expr_only();
}

// ---------------------------------------------------------------------------
// Pretty-printer (canonical form)
// ---------------------------------------------------------------------------

namespace detail {

inline int prec(BinOpKind op) {
  return (op == BinOpKind::Mul || op == BinOpKind::Div) ? 2 : 1;
}

inline void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec);

inline void print_expr_child(std::ostream& os, const ExprPtr& e, int p) {
  print_expr(os, e, p);
}

inline void print_expr(std::ostream& os, const ExprPtr& e, int parent_prec) {
  switch (e->kind) {
    case Expr::Kind::IntLit:
      if (e->lit == kBotValue) os << "bot";
      else if (e->lit == kTopValue) os << "top";
      else os << e->lit;
      return;
    case Expr::Kind::Var:
      os << e->name;
      return;
    case Expr::Kind::Len:
      os << "len(" << e->name << ")";
      return;
    case Expr::Kind::ArrIdx:
      os << e->name << "[";
      print_expr(os, e->a, 0);
      os << "]";
      return;
    case Expr::Kind::Pair:
      os << "⟨";
      print_expr(os, e->a, 0);
      os << " | ";
      print_expr(os, e->b, 0);
      os << "⟩";
      return;
    case Expr::Kind::BinOp: {
      int p = prec(e->op);
      bool need = p < parent_prec;
      if (need) os << "(";
      print_expr_child(os, e->a, p);
      os << " " << ast::binop_str(e->op) << " ";
      // Right operand of - and / needs parens at equal precedence.
      bool strict = e->op == BinOpKind::Sub || e->op == BinOpKind::Div;
      print_expr_child(os, e->b, strict ? p + 1 : p);
      if (need) os << ")";
      return;
    }
  }
}

inline std::string indent(int n) { return std::string(2 * n, ' '); }

inline void print_cmd(std::ostream& os, const CmdPtr& c, int depth) {
  switch (c->kind) {
    case Cmd::Kind::Skip:
      os << indent(depth) << "skip;\n";
      return;
    case Cmd::Kind::Seq:
      print_cmd(os, c->c1, depth);
      print_cmd(os, c->c2, depth);
      return;
    case Cmd::Kind::Assign:
      os << indent(depth) << c->name << " := ";
      print_expr(os, c->e1, 0);
      os << ";\n";
      return;
    case Cmd::Kind::ArrAssign:
      os << indent(depth) << c->name << "[";
      print_expr(os, c->e1, 0);
      os << "] := ";
      print_expr(os, c->e2, 0);
      os << ";\n";
      return;
    case Cmd::Kind::LapSample:
      os << indent(depth) << c->name << " :~ lap(";
      print_expr(os, c->e1, 0);
      os << ", ";
      print_expr(os, c->e2, 0);
      os << ");\n";
      return;
    case Cmd::Kind::If: {
      os << indent(depth) << "if ";
      print_expr(os, c->e1, 0);
      os << " then\n";
      print_cmd(os, c->c1, depth + 1);
      if (!(c->c2 && c->c2->kind == Cmd::Kind::Skip)) {
        os << indent(depth) << "else\n";
        print_cmd(os, c->c2, depth + 1);
      }
      os << indent(depth) << "end;\n";
      return;
    }
    case Cmd::Kind::For:
      os << indent(depth) << "for " << c->name << " in ";
      print_expr(os, c->e1, 0);
      os << ":";
      print_expr(os, c->e2, 0);
      os << " do\n";
      print_cmd(os, c->c1, depth + 1);
      os << indent(depth) << "end;\n";
      return;
    case Cmd::Kind::PairCmd:
      os << indent(depth) << "⟨\n";
      print_cmd(os, c->c1, depth + 1);
      os << indent(depth) << "|\n";
      print_cmd(os, c->c2, depth + 1);
      os << indent(depth) << "⟩;\n";
      return;
  }
}

inline void print_rel_expr(std::ostream& os, const ast::RelExprPtr& e,
                           int parent_prec) {
  using K = ast::RelExpr::Kind;
  switch (e->kind) {
    case K::IntLit:
      if (e->lit == kBotValue) os << "bot";
      else if (e->lit == kTopValue) os << "top";
      else os << e->lit;
      return;
    case K::Proj:
      print_expr(os, e->prog, 3);
      os << "<" << e->side << ">";
      return;
    case K::LogVar:
      os << e->log_var;
      return;
    case K::Abs:
      os << "abs(";
      print_rel_expr(os, e->a, 0);
      os << ")";
      return;
    case K::BinOp: {
      int p = prec(e->op);
      bool need = p < parent_prec;
      if (need) os << "(";
      print_rel_expr(os, e->a, p);
      os << " " << ast::binop_str(e->op) << " ";
      bool strict = e->op == BinOpKind::Sub || e->op == BinOpKind::Div;
      print_rel_expr(os, e->b, strict ? p + 1 : p);
      if (need) os << ")";
      return;
    }
  }
}

inline void print_assertion(std::ostream& os, const ast::RelAssertionPtr& a) {
  using K = ast::RelAssertion::Kind;
  switch (a->kind) {
    case K::True:
      os << "true";
      return;
    case K::Adjacent:
      os << "adjacent";
      return;
    case K::Cmp:
      print_rel_expr(os, a->lhs, 0);
      os << " " << ast::cmp_str(a->cmp) << " ";
      print_rel_expr(os, a->rhs, 0);
      return;
    case K::And:
      print_assertion(os, a->a);
      os << " && ";
      print_assertion(os, a->b);
      return;
    case K::Not:
      os << "!(";
      print_assertion(os, a->a);
      os << ")";
      return;
    case K::Forall:
      os << "forall " << a->bound_var << " in ";
      print_rel_expr(os, a->lo, 0);
      os << "..";
      print_rel_expr(os, a->hi, 0);
      os << ". ";
      print_assertion(os, a->a);
      return;
  }
}

}  // namespace detail

inline std::string print_expr(const ExprPtr& e) {
  std::ostringstream os;
  detail::print_expr(os, e, 0);
  return os.str();
}

inline std::string print_cmd(const CmdPtr& c) {
  std::ostringstream os;
  detail::print_cmd(os, c, 0);
  return os.str();
}

inline std::string print_budget(const Rat& b) {
  if (b.num == 1 && b.den == 1) return "eps";
  if (b.den == 1) return std::to_string(b.num) + "*eps";
  if (b.num == 1) return "eps/" + std::to_string(b.den);
  return std::to_string(b.num) + "/" + std::to_string(b.den) + "*eps";
}

inline std::string print_program(const Program& p) {
  std::ostringstream os;
  os << "program " << p.name << "\n";
  for (const auto& prm : p.params) {
    os << "input " << prm.name << " : "
       << (prm.type == ast::ParamType::Database ? "db" : "int") << "\n";
  }
  for (const auto& q : p.queries) {
    os << "query " << q.name << "[";
    detail::print_expr(os, q.count, 0);
    os << "] sensitivity " << q.sensitivity << "\n";
  }
  os << "budget " << print_budget(p.budget_eps) << "\n";
  os << "requires ";
  detail::print_assertion(os, p.requires_);
  os << "\n";
  os << "ensures ";
  detail::print_assertion(os, p.ensures_);
  os << "\n";
  os << "output " << p.output.name << " : int";
  if (p.output.is_array) {
    os << "[";
    detail::print_expr(os, p.output.length, 0);
    os << "]";
    if (p.output.init) {
      os << " = ";
      detail::print_expr(os, p.output.init, 0);
    }
  }
  os << "\n\nbegin\n";
  detail::print_cmd(os, p.body, 1);
  os << "end\n";
  return os.str();
}

}  // namespace parser
}  // namespace dpcheck

#endif  // DPCHECK_PARSER_HPP_
