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

#ifndef DPCHECK_CONSTRAINTS_HPP_
#define DPCHECK_CONSTRAINTS_HPP_

// Symbol registries and the two constraint languages: integer constraints s
// over symbols X (set X) and probabilistic path constraints p over
// distribution symbols Y (set X_p). The two namespaces are disjoint.

#include <algorithm>
#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpcheck/common.hpp"

namespace dpcheck {
namespace cstr {

// ---------------------------------------------------------------------------
// Symbols
// ---------------------------------------------------------------------------

enum class Side : std::uint8_t { Shared = 0, Left = 1, Right = 2 };

inline const char* side_str(Side s) {
  switch (s) {
    case Side::Shared: return "shared";
    case Side::Left: return "1";
    case Side::Right: return "2";
  }
  return "?";
}

enum class Origin : std::uint8_t {
  Input,          // program inputs and query symbols
  Branch,         // symbols introduced while atomizing guard expressions
  CouplingShift,  // K of the Laplace coupling X1 + K = X2
  CouplingBound,  // K' companion symbol
  Budget,         // E'' budget-chain symbols
  Other,          // uncoupled samples, operator atomization, array bases
};

inline const char* origin_str(Origin o) {
  switch (o) {
    case Origin::Input: return "input";
    case Origin::Branch: return "branch";
    case Origin::CouplingShift: return "coupling-shift";
    case Origin::CouplingBound: return "coupling-bound";
    case Origin::Budget: return "budget";
    case Origin::Other: return "other";
  }
  return "?";
}

using SymId = std::uint32_t;

struct SymInfo {
  SymId id = 0;
  Side side = Side::Shared;
  Origin origin = Origin::Other;
  bool is_array = false;  // array content symbol (integer-indexed)
  std::string name;
};

struct ProbSymInfo {
  SymId id = 0;
  Side side = Side::Left;
  std::string name;
};

// Issues fresh symbols; ids are unique within a run and never reissued.
// fresh() is serialized so concurrent workers may share one registry.
class Registry {
 public:
  SymId fresh_sym(Side side, Origin origin, const std::string& hint,
                  bool is_array = false) {
    std::lock_guard<std::mutex> lock(mu_);
    SymInfo info;
    info.id = static_cast<SymId>(syms_.size());
    info.side = side;
    info.origin = origin;
    info.is_array = is_array;
    info.name = unique_name(hint.empty() ? "X" : hint);
    syms_.push_back(info);
    return info.id;
  }

  SymId fresh_prob(Side side, const std::string& hint) {
    std::lock_guard<std::mutex> lock(mu_);
    ProbSymInfo info;
    info.id = static_cast<SymId>(prob_syms_.size());
    info.side = side;
    info.name = unique_name(hint.empty() ? "Y" : hint);
    prob_syms_.push_back(info);
    return info.id;
  }

  const SymInfo& sym(SymId id) const { return syms_.at(id); }
  const ProbSymInfo& prob(SymId id) const { return prob_syms_.at(id); }
  size_t sym_count() const { return syms_.size(); }
  size_t prob_count() const { return prob_syms_.size(); }

  // Registry audit: all names unique across both namespaces.
  bool names_unique() const {
    std::set<std::string> seen;
    for (const auto& s : syms_)
      if (!seen.insert(s.name).second) return false;
    for (const auto& s : prob_syms_)
      if (!seen.insert(s.name).second) return false;
    return true;
  }

 private:
  std::string unique_name(const std::string& hint) {
    if (used_names_.insert(hint).second) return hint;
    for (int k = 2;; ++k) {
      std::string cand = hint + "_" + std::to_string(k);
      if (used_names_.insert(cand).second) return cand;
    }
  }

  std::mutex mu_;
  std::vector<SymInfo> syms_;
  std::vector<ProbSymInfo> prob_syms_;
  std::set<std::string> used_names_;
};

// ---------------------------------------------------------------------------
// Integer constraint expressions (no probabilistic symbols allowed)
// ---------------------------------------------------------------------------

enum class CeOp { Add, Sub, Mul, Div };

inline const char* ce_op_str(CeOp op) {
  switch (op) {
    case CeOp::Add: return "+";
    case CeOp::Sub: return "-";
    case CeOp::Mul: return "*";
    case CeOp::Div: return "/";
  }
  return "?";
}

struct Ce;
using CePtr = std::shared_ptr<const Ce>;

struct Ce {
  enum class Kind { Lit, Sym, BoundVar, BinOp, Store, Select, Abs };

  Kind kind;
  Int lit = 0;
  SymId sym = 0;
  int bound_var = 0;
  CeOp op{};
  CePtr a, b, c;

  static CePtr lit_(Int v) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::Lit;
    e->lit = v;
    return e;
  }
  static CePtr sym_(SymId s) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::Sym;
    e->sym = s;
    return e;
  }
  static CePtr bound(int i) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::BoundVar;
    e->bound_var = i;
    return e;
  }
  static CePtr binop(CeOp op, CePtr x, CePtr y) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::BinOp;
    e->op = op;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
  }
  static CePtr add(CePtr x, CePtr y) { return binop(CeOp::Add, x, y); }
  static CePtr sub(CePtr x, CePtr y) { return binop(CeOp::Sub, x, y); }
  static CePtr mul(CePtr x, CePtr y) { return binop(CeOp::Mul, x, y); }
  static CePtr store(CePtr arr, CePtr idx, CePtr val) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::Store;
    e->a = std::move(arr);
    e->b = std::move(idx);
    e->c = std::move(val);
    return e;
  }
  static CePtr select(CePtr arr, CePtr idx) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::Select;
    e->a = std::move(arr);
    e->b = std::move(idx);
    return e;
  }
  static CePtr abs_(CePtr x) {
    auto e = std::make_shared<Ce>();
    e->kind = Kind::Abs;
    e->a = std::move(x);
    return e;
  }
};

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

inline const char* cmp_op_str(CmpOp op) {
  switch (op) {
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Gt: return ">";
    case CmpOp::Ge: return ">=";
  }
  return "?";
}

struct Constraint;
using ConstraintPtr = std::shared_ptr<const Constraint>;

struct Constraint {
  enum class Kind { True, Cmp, And, Not, Forall };

  Kind kind;
  CmpOp op{};
  CePtr lhs, rhs;
  ConstraintPtr a, b;
  int bound_var = 0;  // Forall binder index

  static ConstraintPtr true_() {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::True;
    return c;
  }
  static ConstraintPtr cmp(CmpOp op, CePtr l, CePtr r) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::Cmp;
    c->op = op;
    c->lhs = std::move(l);
    c->rhs = std::move(r);
    return c;
  }
  static ConstraintPtr and_(ConstraintPtr l, ConstraintPtr r) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::And;
    c->a = std::move(l);
    c->b = std::move(r);
    return c;
  }
  static ConstraintPtr not_(ConstraintPtr x) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::Not;
    c->a = std::move(x);
    return c;
  }
  static ConstraintPtr forall(int bound_var, ConstraintPtr body) {
    auto c = std::make_shared<Constraint>();
    c->kind = Kind::Forall;
    c->bound_var = bound_var;
    c->a = std::move(body);
    return c;
  }
};

// ---------------------------------------------------------------------------
// Canonical text
// ---------------------------------------------------------------------------

inline void ce_text(std::ostream& os, const CePtr& e, const Registry& reg) {
  switch (e->kind) {
    case Ce::Kind::Lit:
      os << e->lit;
      return;
    case Ce::Kind::Sym:
      os << reg.sym(e->sym).name;
      return;
    case Ce::Kind::BoundVar:
      os << "i" << e->bound_var;
      return;
    case Ce::Kind::BinOp:
      os << "(";
      ce_text(os, e->a, reg);
      os << " " << ce_op_str(e->op) << " ";
      ce_text(os, e->b, reg);
      os << ")";
      return;
    case Ce::Kind::Store:
      os << "store(";
      ce_text(os, e->a, reg);
      os << ", ";
      ce_text(os, e->b, reg);
      os << ", ";
      ce_text(os, e->c, reg);
      os << ")";
      return;
    case Ce::Kind::Select:
      os << "select(";
      ce_text(os, e->a, reg);
      os << ", ";
      ce_text(os, e->b, reg);
      os << ")";
      return;
    case Ce::Kind::Abs:
      os << "|";
      ce_text(os, e->a, reg);
      os << "|";
      return;
  }
}

inline void constraint_text(std::ostream& os, const ConstraintPtr& c,
                            const Registry& reg) {
  switch (c->kind) {
    case Constraint::Kind::True:
      os << "true";
      return;
    case Constraint::Kind::Cmp:
      ce_text(os, c->lhs, reg);
      os << " " << cmp_op_str(c->op) << " ";
      ce_text(os, c->rhs, reg);
      return;
    case Constraint::Kind::And:
      constraint_text(os, c->a, reg);
      os << " && ";
      constraint_text(os, c->b, reg);
      return;
    case Constraint::Kind::Not:
      os << "!(";
      constraint_text(os, c->a, reg);
      os << ")";
      return;
    case Constraint::Kind::Forall:
      os << "forall i" << c->bound_var << ". (";
      constraint_text(os, c->a, reg);
      os << ")";
      return;
  }
}

inline std::string constraint_str(const ConstraintPtr& c, const Registry& reg) {
  std::ostringstream os;
  constraint_text(os, c, reg);
  return os.str();
}

// ---------------------------------------------------------------------------
// Constraint sets: insertion-ordered with syntactic deduplication.
// ---------------------------------------------------------------------------

class ConstraintSet {
 public:
  void add(ConstraintPtr c, const Registry& reg) {
    if (c->kind == Constraint::Kind::True) return;
    std::string key = constraint_str(c, reg);
    if (keys_.insert(key).second) items_.push_back(std::move(c));
  }

  void add_all(const ConstraintSet& other, const Registry& reg) {
    for (const auto& c : other.items_) add(c, reg);
  }

  const std::vector<ConstraintPtr>& items() const { return items_; }
  bool empty() const { return items_.empty(); }
  size_t size() const { return items_.size(); }

  // Deterministic serialization: sorted item texts, one per line.
  std::string canonical_text() const {
    std::vector<std::string> lines(keys_.begin(), keys_.end());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines) {
      out += l;
      out += "\n";
    }
    return out;
  }

  bool same_as(const ConstraintSet& other) const {
    return keys_ == other.keys_;
  }

 private:
  std::vector<ConstraintPtr> items_;
  std::set<std::string> keys_;
};

// ---------------------------------------------------------------------------
// Probabilistic path constraints
// ---------------------------------------------------------------------------

// Inverse scale of a Laplace declaration: either an exact rational multiple
// of the budget symbol eps, or a concrete positive rational.
struct Scale {
  enum class Kind { EpsMultiple, Concrete };
  Kind kind = Kind::Concrete;
  Rat value{1};

  static Scale eps_multiple(Rat coef) { return {Kind::EpsMultiple, coef}; }
  static Scale concrete(Rat v) { return {Kind::Concrete, v}; }

  bool positive() const { return Rat(0) < value; }

  std::string str() const {
    if (kind == Kind::Concrete) return value.str();
    if (value == Rat(1)) return "eps";
    if (value.den == 1) return std::to_string(value.num) + "*eps";
    if (value.num == 1) return "eps/" + std::to_string(value.den);
    return value.str() + "*eps";
  }

  friend bool operator==(const Scale& a, const Scale& b) {
    return a.kind == b.kind && a.value == b.value;
  }
};

// Random expressions may mention both integer symbols and prob symbols.
struct RandExpr;
using RandExprPtr = std::shared_ptr<const RandExpr>;

struct RandExpr {
  enum class Kind { Lit, Sym, PSym, BinOp };

  Kind kind;
  Int lit = 0;
  SymId sym = 0;   // X in 𝒳 (Kind::Sym) or Y in 𝒳p (Kind::PSym)
  CeOp op{};
  RandExprPtr a, b;

  static RandExprPtr lit_(Int v) {
    auto e = std::make_shared<RandExpr>();
    e->kind = Kind::Lit;
    e->lit = v;
    return e;
  }
  static RandExprPtr sym_(SymId s) {
    auto e = std::make_shared<RandExpr>();
    e->kind = Kind::Sym;
    e->sym = s;
    return e;
  }
  static RandExprPtr psym(SymId s) {
    auto e = std::make_shared<RandExpr>();
    e->kind = Kind::PSym;
    e->sym = s;
    return e;
  }
  static RandExprPtr binop(CeOp op, RandExprPtr x, RandExprPtr y) {
    auto e = std::make_shared<RandExpr>();
    e->kind = Kind::BinOp;
    e->op = op;
    e->a = std::move(x);
    e->b = std::move(y);
    return e;
  }
};

struct ProbConstraint {
  enum class Kind { LapDecl, Eq, Gt0, Le0 };

  Kind kind;
  SymId y = 0;        // LapDecl / Eq target
  CePtr mean;         // LapDecl
  Scale inv_scale;    // LapDecl
  RandExprPtr expr;   // Eq rhs, Gt0/Le0 subject

  static ProbConstraint lap_decl(SymId y, CePtr mean, Scale s) {
    ProbConstraint p;
    p.kind = Kind::LapDecl;
    p.y = y;
    p.mean = std::move(mean);
    p.inv_scale = s;
    return p;
  }
  static ProbConstraint eq(SymId y, RandExprPtr e) {
    ProbConstraint p;
    p.kind = Kind::Eq;
    p.y = y;
    p.expr = std::move(e);
    return p;
  }
  static ProbConstraint gt0(RandExprPtr e) {
    ProbConstraint p;
    p.kind = Kind::Gt0;
    p.expr = std::move(e);
    return p;
  }
  static ProbConstraint le0(RandExprPtr e) {
    ProbConstraint p;
    p.kind = Kind::Le0;
    p.expr = std::move(e);
    return p;
  }
};

// Ordered list; declaration order is conditioning order and every prob
// symbol is declared (LapDecl or Eq) before use.
using ProbTrace = std::vector<ProbConstraint>;

inline void rand_expr_text(std::ostream& os, const RandExprPtr& e,
                           const Registry& reg) {
  switch (e->kind) {
    case RandExpr::Kind::Lit:
      os << e->lit;
      return;
    case RandExpr::Kind::Sym:
      os << reg.sym(e->sym).name;
      return;
    case RandExpr::Kind::PSym:
      os << reg.prob(e->sym).name;
      return;
    case RandExpr::Kind::BinOp:
      os << "(";
      rand_expr_text(os, e->a, reg);
      os << " " << ce_op_str(e->op) << " ";
      rand_expr_text(os, e->b, reg);
      os << ")";
      return;
  }
}

inline std::string prob_constraint_str(const ProbConstraint& p,
                                       const Registry& reg) {
  std::ostringstream os;
  switch (p.kind) {
    case ProbConstraint::Kind::LapDecl:
      os << reg.prob(p.y).name << " ~ lap(";
      ce_text(os, p.mean, reg);
      os << ", " << p.inv_scale.str() << ")";
      break;
    case ProbConstraint::Kind::Eq:
      os << reg.prob(p.y).name << " = ";
      rand_expr_text(os, p.expr, reg);
      break;
    case ProbConstraint::Kind::Gt0:
      rand_expr_text(os, p.expr, reg);
      os << " > 0";
      break;
    case ProbConstraint::Kind::Le0:
      rand_expr_text(os, p.expr, reg);
      os << " <= 0";
      break;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Symbol scans
// ---------------------------------------------------------------------------

inline void collect_syms(const CePtr& e, std::set<SymId>* out) {
  if (!e) return;
  if (e->kind == Ce::Kind::Sym) out->insert(e->sym);
  collect_syms(e->a, out);
  collect_syms(e->b, out);
  collect_syms(e->c, out);
}

inline void collect_syms(const ConstraintPtr& c, std::set<SymId>* out) {
  if (!c) return;
  collect_syms(c->lhs, out);
  collect_syms(c->rhs, out);
  collect_syms(c->a, out);
  collect_syms(c->b, out);
}

inline std::set<SymId> constraint_syms(const ConstraintPtr& c) {
  std::set<SymId> s;
  collect_syms(c, &s);
  return s;
}

// ---------------------------------------------------------------------------
// Omega decomposition
// ---------------------------------------------------------------------------

struct OmegaTriple {
  ConstraintSet omega1;
  ConstraintSet omega2;
  ConstraintSet relational;
  std::vector<SymId> k_vec;  // coupling shifts in declaration order
};

// Keeps exactly the constraints all of whose symbols carry side i.
inline ConstraintSet project_side(Side side, const ConstraintSet& s,
                                  const Registry& reg) {
  ConstraintSet out;
  for (const auto& c : s.items()) {
    auto syms = constraint_syms(c);
    if (syms.empty()) continue;
    bool all = true;
    for (SymId id : syms) {
      if (reg.sym(id).side != side) {
        all = false;
        break;
      }
    }
    if (all) out.add(c, reg);
  }
  return out;
}

inline OmegaTriple omega_decompose(const ConstraintSet& s,
                                   const Registry& reg) {
  OmegaTriple t;
  std::set<SymId> k_seen;
  for (const auto& c : s.items()) {
    auto syms = constraint_syms(c);
    bool pure1 = !syms.empty(), pure2 = !syms.empty();
    bool has_shift = false;
    for (SymId id : syms) {
      const auto& info = reg.sym(id);
      if (info.side != Side::Left) pure1 = false;
      if (info.side != Side::Right) pure2 = false;
      if (info.origin == Origin::CouplingShift) has_shift = true;
      if (info.origin == Origin::CouplingShift) k_seen.insert(id);
    }
    if (pure1 && !has_shift) t.omega1.add(c, reg);
    else if (pure2 && !has_shift) t.omega2.add(c, reg);
    else t.relational.add(c, reg);
  }
  t.k_vec.assign(k_seen.begin(), k_seen.end());
  std::sort(t.k_vec.begin(), t.k_vec.end());
  return t;
}

// ---------------------------------------------------------------------------
// Substitutions and ground evaluation
// ---------------------------------------------------------------------------

struct Substitution {
  std::map<SymId, Int> scalars;
  std::map<SymId, std::map<Int, Int>> arrays;  // base symbol -> index -> value

  std::optional<Int> lookup(SymId id) const {
    auto it = scalars.find(id);
    if (it == scalars.end()) return std::nullopt;
    return it->second;
  }
};

namespace detail {

struct ArrayValue {
  SymId base;                // unsubstituted base (for error reporting)
  std::map<Int, Int> elems;  // known elements
};

struct GroundValue {
  bool is_array = false;
  Int scalar = 0;
  ArrayValue array;
};

inline GroundValue eval_ce(const CePtr& e, const Substitution& sigma,
                           const Registry& reg,
                           const std::map<int, Int>* bound) {
  switch (e->kind) {
    case Ce::Kind::Lit:
      return {false, e->lit, {}};
    case Ce::Kind::Sym: {
      const auto& info = reg.sym(e->sym);
      if (info.is_array) {
        GroundValue v;
        v.is_array = true;
        v.array.base = e->sym;
        auto it = sigma.arrays.find(e->sym);
        if (it != sigma.arrays.end()) v.array.elems = it->second;
        return v;
      }
      auto s = sigma.lookup(e->sym);
      if (!s) throw Error("substitution does not map symbol " + info.name);
      return {false, *s, {}};
    }
    case Ce::Kind::BoundVar: {
      if (!bound) throw Error("unbound quantifier variable");
      auto it = bound->find(e->bound_var);
      if (it == bound->end()) throw Error("unbound quantifier variable");
      return {false, it->second, {}};
    }
    case Ce::Kind::BinOp: {
      Int l = eval_ce(e->a, sigma, reg, bound).scalar;
      Int r = eval_ce(e->b, sigma, reg, bound).scalar;
      switch (e->op) {
        case CeOp::Add: return {false, checked_add(l, r), {}};
        case CeOp::Sub: return {false, checked_sub(l, r), {}};
        case CeOp::Mul: return {false, checked_mul(l, r), {}};
        case CeOp::Div: return {false, checked_div(l, r), {}};
      }
      return {false, 0, {}};
    }
    case Ce::Kind::Abs: {
      Int v = eval_ce(e->a, sigma, reg, bound).scalar;
      return {false, v < 0 ? -v : v, {}};
    }
    case Ce::Kind::Store: {
      GroundValue arr = eval_ce(e->a, sigma, reg, bound);
      Int idx = eval_ce(e->b, sigma, reg, bound).scalar;
      Int val = eval_ce(e->c, sigma, reg, bound).scalar;
      arr.array.elems[idx] = val;
      return arr;
    }
    case Ce::Kind::Select: {
      GroundValue arr = eval_ce(e->a, sigma, reg, bound);
      Int idx = eval_ce(e->b, sigma, reg, bound).scalar;
      auto it = arr.array.elems.find(idx);
      if (it == arr.array.elems.end())
        throw Error("substitution does not determine array element " +
                    reg.sym(arr.array.base).name + "[" + std::to_string(idx) +
                    "]");
      return {false, it->second, {}};
    }
  }
  return {false, 0, {}};
}

}  // namespace detail

inline Int eval_ground_ce(const CePtr& e, const Substitution& sigma,
                          const Registry& reg) {
  return detail::eval_ce(e, sigma, reg, nullptr).scalar;
}

// Ground truth of a constraint under sigma. Forall binders must have been
// grounded to finite ranges before this is called (the engine always does).
inline bool eval_ground(const ConstraintPtr& c, const Substitution& sigma,
                        const Registry& reg) {
  switch (c->kind) {
    case Constraint::Kind::True:
      return true;
    case Constraint::Kind::Cmp: {
      Int l = eval_ground_ce(c->lhs, sigma, reg);
      Int r = eval_ground_ce(c->rhs, sigma, reg);
      switch (c->op) {
        case CmpOp::Eq: return l == r;
        case CmpOp::Ne: return l != r;
        case CmpOp::Lt: return l < r;
        case CmpOp::Le: return l <= r;
        case CmpOp::Gt: return l > r;
        case CmpOp::Ge: return l >= r;
      }
      return false;
    }
    case Constraint::Kind::And:
      return eval_ground(c->a, sigma, reg) && eval_ground(c->b, sigma, reg);
    case Constraint::Kind::Not:
      return !eval_ground(c->a, sigma, reg);
    case Constraint::Kind::Forall:
      throw Error("cannot ground-evaluate an ungrounded forall");
  }
  return false;
}

inline bool eval_ground_all(const ConstraintSet& s, const Substitution& sigma,
                            const Registry& reg) {
  for (const auto& c : s.items())
    if (!eval_ground(c, sigma, reg)) return false;
  return true;
}

// apply_subst on constraint expressions: replaces every mapped symbol by its
// literal; unmapped symbols raise. Prob symbols are untouched by design.
inline CePtr subst_ce(const CePtr& e, const Substitution& sigma,
                      const Registry& reg) {
  if (!e) return e;
  switch (e->kind) {
    case Ce::Kind::Lit:
    case Ce::Kind::BoundVar:
      return e;
    case Ce::Kind::Sym: {
      const auto& info = reg.sym(e->sym);
      if (info.is_array) return e;  // arrays stay; Select resolves via sigma
      auto v = sigma.lookup(e->sym);
      if (!v) throw Error("substitution does not map symbol " + info.name);
      return Ce::lit_(*v);
    }
    case Ce::Kind::BinOp:
      return Ce::binop(e->op, subst_ce(e->a, sigma, reg),
                       subst_ce(e->b, sigma, reg));
    case Ce::Kind::Abs:
      return Ce::abs_(subst_ce(e->a, sigma, reg));
    case Ce::Kind::Store:
      return Ce::store(subst_ce(e->a, sigma, reg), subst_ce(e->b, sigma, reg),
                       subst_ce(e->c, sigma, reg));
    case Ce::Kind::Select:
      return Ce::select(subst_ce(e->a, sigma, reg),
                        subst_ce(e->b, sigma, reg));
  }
  return e;
}

inline ConstraintPtr subst_constraint(const ConstraintPtr& c,
                                      const Substitution& sigma,
                                      const Registry& reg) {
  if (!c) return c;
  switch (c->kind) {
    case Constraint::Kind::True:
      return c;
    case Constraint::Kind::Cmp:
      return Constraint::cmp(c->op, subst_ce(c->lhs, sigma, reg),
                             subst_ce(c->rhs, sigma, reg));
    case Constraint::Kind::And:
      return Constraint::and_(subst_constraint(c->a, sigma, reg),
                              subst_constraint(c->b, sigma, reg));
    case Constraint::Kind::Not:
      return Constraint::not_(subst_constraint(c->a, sigma, reg));
    case Constraint::Kind::Forall:
      return Constraint::forall(c->bound_var,
                                subst_constraint(c->a, sigma, reg));
  }
  return c;
}

inline ConstraintSet apply_subst(const ConstraintSet& s,
                                 const Substitution& sigma,
                                 const Registry& reg) {
  ConstraintSet out;
  for (const auto& c : s.items()) out.add(subst_constraint(c, sigma, reg), reg);
  return out;
}

inline RandExprPtr subst_rand(const RandExprPtr& e, const Substitution& sigma,
                              const Registry& reg) {
  if (!e) return e;
  switch (e->kind) {
    case RandExpr::Kind::Lit:
    case RandExpr::Kind::PSym:
      return e;
    case RandExpr::Kind::Sym: {
      auto v = sigma.lookup(e->sym);
      if (!v)
        throw Error("substitution does not map symbol " +
                    reg.sym(e->sym).name);
      return RandExpr::lit_(*v);
    }
    case RandExpr::Kind::BinOp:
      return RandExpr::binop(e->op, subst_rand(e->a, sigma, reg),
                             subst_rand(e->b, sigma, reg));
  }
  return e;
}

inline ProbTrace apply_subst(const ProbTrace& p, const Substitution& sigma,
                             const Registry& reg) {
  ProbTrace out;
  out.reserve(p.size());
  for (const auto& pc : p) {
    ProbConstraint q = pc;
    if (pc.mean) q.mean = subst_ce(pc.mean, sigma, reg);
    if (pc.expr) q.expr = subst_rand(pc.expr, sigma, reg);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace cstr
}  // namespace dpcheck

#endif  // DPCHECK_CONSTRAINTS_HPP_
