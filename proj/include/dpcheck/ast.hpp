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

#ifndef DPCHECK_AST_HPP_
#define DPCHECK_AST_HPP_

#include <functional>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "dpcheck/common.hpp"

namespace dpcheck {
namespace ast {

// ---------------------------------------------------------------------------
// Expressions
//
// Values are integers; `bot`/`top` parse to sentinel integers. A pair
// expression <e1|e2> holds the two relational sides and never nests.
// Query occurrences q[i] share the ArrIdx shape; the declaration kind tells
// them apart from ordinary arrays.
// ---------------------------------------------------------------------------

enum class BinOpKind { Add, Sub, Mul, Div };

inline const char* binop_str(BinOpKind k) {
  switch (k) {
    case BinOpKind::Add: return "+";
    case BinOpKind::Sub: return "-";
    case BinOpKind::Mul: return "*";
    case BinOpKind::Div: return "/";
  }
  return "?";
}

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { IntLit, Var, ArrIdx, Len, BinOp, Pair };

  Kind kind;
  SourceLoc loc;

  Int lit = 0;              // IntLit
  std::string name;         // Var, ArrIdx, Len
  BinOpKind op{};           // BinOp
  ExprPtr a, b;             // BinOp lhs/rhs, ArrIdx index in a, Pair sides

  static ExprPtr int_lit(Int v, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::IntLit;
    e->lit = v;
    e->loc = loc;
    return e;
  }
  static ExprPtr var(std::string n, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Var;
    e->name = std::move(n);
    e->loc = loc;
    return e;
  }
  static ExprPtr arr_idx(std::string n, ExprPtr idx, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::ArrIdx;
    e->name = std::move(n);
    e->a = std::move(idx);
    e->loc = loc;
    return e;
  }
  static ExprPtr len(std::string n, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Len;
    e->name = std::move(n);
    e->loc = loc;
    return e;
  }
  static ExprPtr binop(BinOpKind op, ExprPtr lhs, ExprPtr rhs,
                       SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::BinOp;
    e->op = op;
    e->a = std::move(lhs);
    e->b = std::move(rhs);
    e->loc = loc;
    return e;
  }
  static ExprPtr pair(ExprPtr l, ExprPtr r, SourceLoc loc = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = Kind::Pair;
    e->a = std::move(l);
    e->b = std::move(r);
    e->loc = loc;
    return e;
  }
};

inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::IntLit: return x->lit == y->lit;
    case Expr::Kind::Var: return x->name == y->name;
    case Expr::Kind::Len: return x->name == y->name;
    case Expr::Kind::ArrIdx:
      return x->name == y->name && expr_equal(x->a, y->a);
    case Expr::Kind::BinOp:
      return x->op == y->op && expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
    case Expr::Kind::Pair:
      return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
  }
  return false;
}

inline bool expr_has_pair(const ExprPtr& e) {
  if (!e) return false;
  if (e->kind == Expr::Kind::Pair) return true;
  return expr_has_pair(e->a) || expr_has_pair(e->b);
}

// ---------------------------------------------------------------------------
// Commands
// ---------------------------------------------------------------------------

struct Cmd;
using CmdPtr = std::shared_ptr<const Cmd>;

struct Cmd {
  enum class Kind { Skip, Seq, Assign, ArrAssign, LapSample, If, For, PairCmd };

  Kind kind;
  SourceLoc loc;

  std::string name;       // Assign/ArrAssign/LapSample target, For loop var
  ExprPtr e1, e2, e3;     // operands: see constructors
  CmdPtr c1, c2;          // Seq, If branches, For body in c1, Pair sides

  static CmdPtr skip(SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::Skip;
    c->loc = loc;
    return c;
  }
  static CmdPtr seq(CmdPtr a, CmdPtr b, SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::Seq;
    c->c1 = std::move(a);
    c->c2 = std::move(b);
    c->loc = loc;
    return c;
  }
  static CmdPtr assign(std::string x, ExprPtr e, SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::Assign;
    c->name = std::move(x);
    c->e1 = std::move(e);
    c->loc = loc;
    return c;
  }
  static CmdPtr arr_assign(std::string a, ExprPtr idx, ExprPtr rhs,
                           SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::ArrAssign;
    c->name = std::move(a);
    c->e1 = std::move(idx);
    c->e2 = std::move(rhs);
    c->loc = loc;
    return c;
  }
  static CmdPtr lap_sample(std::string x, ExprPtr mean, ExprPtr inv_scale,
                           SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::LapSample;
    c->name = std::move(x);
    c->e1 = std::move(mean);
    c->e2 = std::move(inv_scale);
    c->loc = loc;
    return c;
  }
  static CmdPtr if_(ExprPtr guard, CmdPtr then_c, CmdPtr else_c,
                    SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::If;
    c->e1 = std::move(guard);
    c->c1 = std::move(then_c);
    c->c2 = std::move(else_c);
    c->loc = loc;
    return c;
  }
  static CmdPtr for_(std::string x, ExprPtr lo, ExprPtr hi, CmdPtr body,
                     SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::For;
    c->name = std::move(x);
    c->e1 = std::move(lo);
    c->e2 = std::move(hi);
    c->c1 = std::move(body);
    c->loc = loc;
    return c;
  }
  static CmdPtr pair(CmdPtr l, CmdPtr r, SourceLoc loc = {}) {
    auto c = std::make_shared<Cmd>();
    c->kind = Kind::PairCmd;
    c->c1 = std::move(l);
    c->c2 = std::move(r);
    c->loc = loc;
    return c;
  }
};

inline bool cmd_equal(const CmdPtr& x, const CmdPtr& y) {
  if (x == y) return true;
  if (!x || !y) return false;
  if (x->kind != y->kind || x->name != y->name) return false;
  return expr_equal(x->e1, y->e1) && expr_equal(x->e2, y->e2) &&
         expr_equal(x->e3, y->e3) && cmd_equal(x->c1, y->c1) &&
         cmd_equal(x->c2, y->c2);
}

inline bool cmd_has_pair(const CmdPtr& c) {
  if (!c) return false;
  if (c->kind == Cmd::Kind::PairCmd) return true;
  if (expr_has_pair(c->e1) || expr_has_pair(c->e2) || expr_has_pair(c->e3))
    return true;
  return cmd_has_pair(c->c1) || cmd_has_pair(c->c2);
}

inline bool cmd_has_lap(const CmdPtr& c) {
  if (!c) return false;
  if (c->kind == Cmd::Kind::LapSample) return true;
  return cmd_has_lap(c->c1) || cmd_has_lap(c->c2);
}

// ---------------------------------------------------------------------------
// project: side projection of relational expressions and commands.
// Pair nodes collapse to the chosen side; unary nodes map to themselves.
// ---------------------------------------------------------------------------

inline ExprPtr project(int side, const ExprPtr& e) {
  if (!e) return e;
  switch (e->kind) {
    case Expr::Kind::Pair:
      return side == 1 ? e->a : e->b;
    case Expr::Kind::IntLit:
    case Expr::Kind::Var:
    case Expr::Kind::Len:
      return e;
    case Expr::Kind::ArrIdx: {
      auto idx = project(side, e->a);
      if (idx == e->a) return e;
      return Expr::arr_idx(e->name, idx, e->loc);
    }
    case Expr::Kind::BinOp: {
      auto l = project(side, e->a);
      auto r = project(side, e->b);
      if (l == e->a && r == e->b) return e;
      return Expr::binop(e->op, l, r, e->loc);
    }
  }
  return e;
}

inline CmdPtr project(int side, const CmdPtr& c) {
  if (!c) return c;
  switch (c->kind) {
    case Cmd::Kind::PairCmd:
      return side == 1 ? c->c1 : c->c2;
    case Cmd::Kind::Skip:
      return c;
    case Cmd::Kind::Seq: {
      auto a = project(side, c->c1);
      auto b = project(side, c->c2);
      if (a == c->c1 && b == c->c2) return c;
      return Cmd::seq(a, b, c->loc);
    }
    case Cmd::Kind::Assign:
      return Cmd::assign(c->name, project(side, c->e1), c->loc);
    case Cmd::Kind::ArrAssign:
      return Cmd::arr_assign(c->name, project(side, c->e1),
                             project(side, c->e2), c->loc);
    case Cmd::Kind::LapSample:
      return Cmd::lap_sample(c->name, project(side, c->e1),
                             project(side, c->e2), c->loc);
    case Cmd::Kind::If:
      return Cmd::if_(project(side, c->e1), project(side, c->c1),
                      project(side, c->c2), c->loc);
    case Cmd::Kind::For:
      return Cmd::for_(c->name, project(side, c->e1), project(side, c->e2),
                       project(side, c->c1), c->loc);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Relational assertions (requires/ensures).
// ---------------------------------------------------------------------------

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

inline const char* cmp_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "==";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

struct RelExpr;
using RelExprPtr = std::shared_ptr<const RelExpr>;

// Side-projected program expressions plus logical variables and abs.
struct RelExpr {
  enum class Kind { IntLit, Proj, LogVar, BinOp, Abs };

  Kind kind;
  Int lit = 0;
  int side = 0;          // Proj: 1 or 2
  ExprPtr prog;          // Proj: unary program expression
  std::string log_var;   // LogVar
  BinOpKind op{};
  RelExprPtr a, b;

  static RelExprPtr int_lit(Int v) {
    auto e = std::make_shared<RelExpr>();
    e->kind = Kind::IntLit;
    e->lit = v;
    return e;
  }
  static RelExprPtr proj(int side, ExprPtr prog) {
    auto e = std::make_shared<RelExpr>();
    e->kind = Kind::Proj;
    e->side = side;
    e->prog = std::move(prog);
    return e;
  }
  static RelExprPtr log_var_(std::string n) {
    auto e = std::make_shared<RelExpr>();
    e->kind = Kind::LogVar;
    e->log_var = std::move(n);
    return e;
  }
  static RelExprPtr binop(BinOpKind op, RelExprPtr l, RelExprPtr r) {
    auto e = std::make_shared<RelExpr>();
    e->kind = Kind::BinOp;
    e->op = op;
    e->a = std::move(l);
    e->b = std::move(r);
    return e;
  }
  static RelExprPtr abs(RelExprPtr x) {
    auto e = std::make_shared<RelExpr>();
    e->kind = Kind::Abs;
    e->a = std::move(x);
    return e;
  }
};

struct RelAssertion;
using RelAssertionPtr = std::shared_ptr<const RelAssertion>;

struct RelAssertion {
  enum class Kind { True, Adjacent, Cmp, And, Not, Forall };

  Kind kind;
  CmpOp cmp{};
  RelExprPtr lhs, rhs;
  RelAssertionPtr a, b;
  std::string bound_var;    // Forall
  RelExprPtr lo, hi;        // Forall range, inclusive

  static RelAssertionPtr mk_true() {
    auto r = std::make_shared<RelAssertion>();
    r->kind = Kind::True;
    return r;
  }
  static RelAssertionPtr adjacent() {
    auto r = std::make_shared<RelAssertion>();
    r->kind = Kind::Adjacent;
    return r;
  }
  static RelAssertionPtr cmp_(CmpOp op, RelExprPtr l, RelExprPtr r) {
    auto x = std::make_shared<RelAssertion>();
    x->kind = Kind::Cmp;
    x->cmp = op;
    x->lhs = std::move(l);
    x->rhs = std::move(r);
    return x;
  }
  static RelAssertionPtr and_(RelAssertionPtr l, RelAssertionPtr r) {
    auto x = std::make_shared<RelAssertion>();
    x->kind = Kind::And;
    x->a = std::move(l);
    x->b = std::move(r);
    return x;
  }
  static RelAssertionPtr not_(RelAssertionPtr c) {
    auto x = std::make_shared<RelAssertion>();
    x->kind = Kind::Not;
    x->a = std::move(c);
    return x;
  }
  static RelAssertionPtr forall(std::string v, RelExprPtr lo, RelExprPtr hi,
                                RelAssertionPtr body) {
    auto x = std::make_shared<RelAssertion>();
    x->kind = Kind::Forall;
    x->bound_var = std::move(v);
    x->lo = std::move(lo);
    x->hi = std::move(hi);
    x->a = std::move(body);
    return x;
  }
};

// ---------------------------------------------------------------------------
// Programs
// ---------------------------------------------------------------------------

enum class ParamType { IntScalar, Database };

struct Param {
  std::string name;
  ParamType type;
  SourceLoc loc;
};

// `query q[count] sensitivity r` declares the family q[1..count]; each
// occurrence q[i] on side j becomes the uninterpreted integer Q_{i,j}.
struct QueryDecl {
  std::string name;
  ExprPtr count;      // int literal or int param
  Int sensitivity = 0;
  SourceLoc loc;
};

struct OutputDecl {
  std::string name;
  bool is_array = false;
  ExprPtr length;     // arrays only
  ExprPtr init;       // optional fill value
  SourceLoc loc;
};

struct Program {
  std::string name;
  std::vector<Param> params;
  std::vector<QueryDecl> queries;
  Rat budget_eps{1};  // budget as a rational multiple of eps
  RelAssertionPtr requires_;
  RelAssertionPtr ensures_;
  OutputDecl output;
  CmdPtr body;

  const Param* find_param(const std::string& n) const {
    for (const auto& p : params)
      if (p.name == n) return &p;
    return nullptr;
  }
  const QueryDecl* find_query(const std::string& n) const {
    for (const auto& q : queries)
      if (q.name == n) return &q;
    return nullptr;
  }
  const std::string* database_param() const {
    for (const auto& p : params)
      if (p.type == ParamType::Database) return &p.name;
    return nullptr;
  }
};

// ---------------------------------------------------------------------------
// Well-formedness: diagnostics are the result, an empty list means OK.
// ---------------------------------------------------------------------------

namespace detail {

inline void collect_expr_names(const ExprPtr& e, std::set<std::string>* vars,
                               std::set<std::string>* indexed) {
  if (!e) return;
  switch (e->kind) {
    case Expr::Kind::Var:
      vars->insert(e->name);
      break;
    case Expr::Kind::ArrIdx:
    case Expr::Kind::Len:
      indexed->insert(e->name);
      collect_expr_names(e->a, vars, indexed);
      break;
    default:
      collect_expr_names(e->a, vars, indexed);
      collect_expr_names(e->b, vars, indexed);
  }
}

// True when every syntactic path through c assigns the output.
inline bool assigns_on_all_paths(const CmdPtr& c, const OutputDecl& out) {
  if (!c) return false;
  switch (c->kind) {
    case Cmd::Kind::Skip:
      return false;
    case Cmd::Kind::Seq:
      return assigns_on_all_paths(c->c1, out) ||
             assigns_on_all_paths(c->c2, out);
    case Cmd::Kind::Assign:
      return !out.is_array && c->name == out.name;
    case Cmd::Kind::ArrAssign:
      return out.is_array && c->name == out.name;
    case Cmd::Kind::LapSample:
      return !out.is_array && c->name == out.name;
    case Cmd::Kind::If:
      return assigns_on_all_paths(c->c1, out) &&
             assigns_on_all_paths(c->c2, out);
    case Cmd::Kind::For:
      // A loop may run zero times; writes inside it do not count.
      return false;
    case Cmd::Kind::PairCmd:
      return assigns_on_all_paths(c->c1, out) &&
             assigns_on_all_paths(c->c2, out);
  }
  return false;
}

}  // namespace detail

inline std::vector<Diagnostic> check_wellformed(const Program& p) {
  std::vector<Diagnostic> out;

  std::set<std::string> declared;
  for (const auto& pr : p.params) {
    if (!declared.insert(pr.name).second)
      out.push_back({"duplicate declaration of '" + pr.name + "'", pr.loc});
  }
  for (const auto& q : p.queries) {
    if (!declared.insert(q.name).second)
      out.push_back({"duplicate declaration of '" + q.name + "'", q.loc});
    if (q.sensitivity < 0)
      out.push_back({"query '" + q.name + "' has negative sensitivity", q.loc});
  }

  // Every indexed name in the body must be a declared query or a program
  // array (the output array or a loop-local created by assignment).
  std::set<std::string> vars, indexed;
  std::function<void(const CmdPtr&)> walk = [&](const CmdPtr& c) {
    if (!c) return;
    detail::collect_expr_names(c->e1, &vars, &indexed);
    detail::collect_expr_names(c->e2, &vars, &indexed);
    detail::collect_expr_names(c->e3, &vars, &indexed);
    if (c->kind == Cmd::Kind::ArrAssign) indexed.insert(c->name);
    walk(c->c1);
    walk(c->c2);
  };
  walk(p.body);

  for (const auto& name : indexed) {
    if (p.find_query(name)) continue;
    if (p.output.is_array && name == p.output.name) continue;
    out.push_back({"indexed name '" + name +
                   "' is neither a declared query nor the output array",
                   {}});
  }

  bool assigned =
      (p.output.is_array && p.output.init != nullptr) ||
      detail::assigns_on_all_paths(p.body, p.output);
  if (!assigned)
    out.push_back({"output '" + p.output.name +
                   "' is not assigned on every syntactic path",
                   p.output.loc});

  if (cmd_has_pair(p.body)) {
    // Nested pairs are a parse error already; re-check the invariant here.
    std::function<void(const CmdPtr&)> check_nest = [&](const CmdPtr& c) {
      if (!c) return;
      if (c->kind == Cmd::Kind::PairCmd) {
        if (cmd_has_pair(c->c1) || cmd_has_pair(c->c2))
          out.push_back({"nested relational pair", c->loc});
        return;
      }
      check_nest(c->c1);
      check_nest(c->c2);
    };
    check_nest(p.body);
  }
  return out;
}

}  // namespace ast
}  // namespace dpcheck

#endif  // DPCHECK_AST_HPP_
