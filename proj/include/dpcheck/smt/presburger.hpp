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

#ifndef DPCHECK_SMT_PRESBURGER_HPP_
#define DPCHECK_SMT_PRESBURGER_HPP_

// Decision procedure for linear integer arithmetic with quantifiers
// (Presburger arithmetic), based on Cooper's quantifier elimination over
// negation-normal-form formulas. Supports satisfiability, validity, model
// extraction and block projection. Instances produced by the checker are
// small; coefficients use arbitrary precision to keep eliminations exact.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <chrono>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace dpcheck {
namespace presburger {

using BigInt = boost::multiprecision::cpp_int;
using Var = std::uint32_t;

class LimitExceeded : public std::runtime_error {
 public:
  explicit LimitExceeded(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// Linear terms: sum of coef*var plus constant.
// ---------------------------------------------------------------------------

struct LinTerm {
  std::map<Var, BigInt> coefs;
  BigInt constant = 0;

  static LinTerm of_const(BigInt c) {
    LinTerm t;
    t.constant = std::move(c);
    return t;
  }
  static LinTerm of_var(Var v, BigInt c = 1) {
    LinTerm t;
    if (c != 0) t.coefs[v] = std::move(c);
    return t;
  }

  bool is_const() const { return coefs.empty(); }

  BigInt coef(Var v) const {
    auto it = coefs.find(v);
    return it == coefs.end() ? BigInt(0) : it->second;
  }

  void add_mul(const LinTerm& other, const BigInt& k) {
    if (k == 0) return;
    constant += other.constant * k;
    for (const auto& [v, c] : other.coefs) {
      BigInt& slot = coefs[v];
      slot += c * k;
      if (slot == 0) coefs.erase(v);
    }
  }

  LinTerm scaled(const BigInt& k) const {
    LinTerm t;
    if (k == 0) return t;
    t.constant = constant * k;
    for (const auto& [v, c] : coefs) t.coefs[v] = c * k;
    return t;
  }

  // Replaces v by the given term (v's own coefficient is removed first).
  LinTerm substituted(Var v, const LinTerm& repl) const {
    auto it = coefs.find(v);
    if (it == coefs.end()) return *this;
    BigInt k = it->second;
    LinTerm t = *this;
    t.coefs.erase(v);
    t.add_mul(repl, k);
    return t;
  }

  friend LinTerm operator+(const LinTerm& a, const LinTerm& b) {
    LinTerm t = a;
    t.add_mul(b, 1);
    return t;
  }
  friend LinTerm operator-(const LinTerm& a, const LinTerm& b) {
    LinTerm t = a;
    t.add_mul(b, -1);
    return t;
  }
  LinTerm negated() const { return scaled(-1); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (const auto& [v, c] : coefs) {
      if (!first) os << (c > 0 ? " + " : " - ");
      else if (c < 0) os << "-";
      BigInt a = c > 0 ? c : BigInt(-c);
      if (a != 1) os << a << "*";
      os << "v" << v;
      first = false;
    }
    if (first) {
      os << constant;
    } else if (constant != 0) {
      os << (constant > 0 ? " + " : " - ")
         << (constant > 0 ? constant : BigInt(-constant));
    }
    return os.str();
  }
};

inline BigInt big_gcd(BigInt a, BigInt b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    BigInt r = a % b;
    a = b;
    b = r;
  }
  return a;
}

inline BigInt big_lcm(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return a / big_gcd(a, b) * b;
}

// Floor division for BigInt (cpp_int division truncates toward zero).
inline BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

inline BigInt mod_floor(const BigInt& a, const BigInt& b) {
  return a - floor_div(a, b) * b;
}

// ---------------------------------------------------------------------------
// Atoms and formulas (NNF)
// ---------------------------------------------------------------------------

// Le: term <= 0. Eq: term == 0. Dvd / NDvd: modulus (|) term.
enum class AtomKind { Le, Eq, Dvd, NDvd };

struct Atom {
  AtomKind kind;
  LinTerm term;
  BigInt modulus = 0;  // Dvd/NDvd only, >= 2 after normalization

  std::string str() const {
    switch (kind) {
      case AtomKind::Le: return term.str() + " <= 0";
      case AtomKind::Eq: return term.str() + " == 0";
      case AtomKind::Dvd: return modulus.str() + " | " + term.str();
      case AtomKind::NDvd: return "!(" + modulus.str() + " | " + term.str() + ")";
    }
    return "?";
  }
};

struct FNode;
using Formula = std::shared_ptr<const FNode>;

struct FNode {
  enum class Kind { True, False, Atom, And, Or };
  Kind kind;
  Atom atom;                     // Kind::Atom
  std::vector<Formula> children;  // And / Or
};

inline Formula f_true() {
  static const Formula t = [] {
    auto n = std::make_shared<FNode>();
    n->kind = FNode::Kind::True;
    return n;
  }();
  return t;
}

inline Formula f_false() {
  static const Formula f = [] {
    auto n = std::make_shared<FNode>();
    n->kind = FNode::Kind::False;
    return n;
  }();
  return f;
}

inline Formula f_atom(Atom a) {
  auto n = std::make_shared<FNode>();
  n->kind = FNode::Kind::Atom;
  n->atom = std::move(a);
  return n;
}

// t <= 0
inline Formula f_le0(LinTerm t) {
  return f_atom({AtomKind::Le, std::move(t), 0});
}
// t == 0
inline Formula f_eq0(LinTerm t) {
  return f_atom({AtomKind::Eq, std::move(t), 0});
}

Formula f_and(std::vector<Formula> cs);
Formula f_or(std::vector<Formula> cs);

// ---------------------------------------------------------------------------
// Normalization
// ---------------------------------------------------------------------------

inline Formula normalize_atom(Atom a) {
  switch (a.kind) {
    case AtomKind::Le: {
      if (a.term.is_const())
        return a.term.constant <= 0 ? f_true() : f_false();
      BigInt g = 0;
      for (const auto& [v, c] : a.term.coefs) g = big_gcd(g, c);
      if (g > 1) {
        LinTerm t;
        for (const auto& [v, c] : a.term.coefs) t.coefs[v] = c / g;
        // sum(g*ai*xi) + c <= 0  <=>  sum(ai*xi) + ceil(c/g) <= 0
        t.constant = -floor_div(-a.term.constant, g);
        a.term = std::move(t);
      }
      return f_atom(std::move(a));
    }
    case AtomKind::Eq: {
      if (a.term.is_const())
        return a.term.constant == 0 ? f_true() : f_false();
      BigInt g = 0;
      for (const auto& [v, c] : a.term.coefs) g = big_gcd(g, c);
      if (g > 1) {
        if (a.term.constant % g != 0) return f_false();
        LinTerm t;
        for (const auto& [v, c] : a.term.coefs) t.coefs[v] = c / g;
        t.constant = a.term.constant / g;
        a.term = std::move(t);
      }
      return f_atom(std::move(a));
    }
    case AtomKind::Dvd:
    case AtomKind::NDvd: {
      bool is_dvd = a.kind == AtomKind::Dvd;
      if (a.modulus < 0) a.modulus = -a.modulus;
      if (a.modulus == 0) {
        // 0 | t  <=>  t == 0
        Atom eq{AtomKind::Eq, a.term, 0};
        Formula f = normalize_atom(std::move(eq));
        if (is_dvd) return f;
        // negate the result
        if (f->kind == FNode::Kind::True) return f_false();
        if (f->kind == FNode::Kind::False) return f_true();
        Atom na = f->atom;  // Eq atom
        // != : t <= -1 or -t <= -1
        LinTerm t1 = na.term;
        t1.constant += 1;
        LinTerm t2 = na.term.negated();
        t2.constant += 1;
        return f_or({f_le0(t1), f_le0(t2)});
      }
      if (a.modulus == 1) return is_dvd ? f_true() : f_false();
      LinTerm t;
      for (const auto& [v, c] : a.term.coefs) {
        BigInt r = mod_floor(c, a.modulus);
        if (r != 0) t.coefs[v] = r;
      }
      t.constant = mod_floor(a.term.constant, a.modulus);
      if (t.is_const()) {
        bool holds = t.constant == 0;
        return holds == is_dvd ? f_true() : f_false();
      }
      a.term = std::move(t);
      return f_atom(std::move(a));
    }
  }
  return f_false();
}

inline std::string atom_key(const Atom& a) {
  return std::to_string(static_cast<int>(a.kind)) + "#" + a.modulus.str() +
         "#" + a.term.str();
}

inline Formula f_and(std::vector<Formula> cs) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (auto& c : cs) {
    if (c->kind == FNode::Kind::True) continue;
    if (c->kind == FNode::Kind::False) return f_false();
    if (c->kind == FNode::Kind::And) {
      for (const auto& g : c->children) {
        if (g->kind == FNode::Kind::False) return f_false();
        if (g->kind == FNode::Kind::True) continue;
        if (g->kind == FNode::Kind::Atom && !seen.insert(atom_key(g->atom)).second)
          continue;
        out.push_back(g);
      }
    } else {
      if (c->kind == FNode::Kind::Atom && !seen.insert(atom_key(c->atom)).second)
        continue;
      out.push_back(std::move(c));
    }
  }
  if (out.empty()) return f_true();
  if (out.size() == 1) return out[0];
  auto n = std::make_shared<FNode>();
  n->kind = FNode::Kind::And;
  n->children = std::move(out);
  return n;
}

inline Formula f_or(std::vector<Formula> cs) {
  std::vector<Formula> out;
  std::set<std::string> seen;
  for (auto& c : cs) {
    if (c->kind == FNode::Kind::False) continue;
    if (c->kind == FNode::Kind::True) return f_true();
    if (c->kind == FNode::Kind::Or) {
      for (const auto& g : c->children) {
        if (g->kind == FNode::Kind::True) return f_true();
        if (g->kind == FNode::Kind::False) continue;
        if (g->kind == FNode::Kind::Atom && !seen.insert(atom_key(g->atom)).second)
          continue;
        out.push_back(g);
      }
    } else {
      if (c->kind == FNode::Kind::Atom && !seen.insert(atom_key(c->atom)).second)
        continue;
      out.push_back(std::move(c));
    }
  }
  if (out.empty()) return f_false();
  if (out.size() == 1) return out[0];
  auto n = std::make_shared<FNode>();
  n->kind = FNode::Kind::Or;
  n->children = std::move(out);
  return n;
}

// NNF negation.
inline Formula f_not(const Formula& f) {
  switch (f->kind) {
    case FNode::Kind::True:
      return f_false();
    case FNode::Kind::False:
      return f_true();
    case FNode::Kind::And: {
      std::vector<Formula> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children) cs.push_back(f_not(c));
      return f_or(std::move(cs));
    }
    case FNode::Kind::Or: {
      std::vector<Formula> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children) cs.push_back(f_not(c));
      return f_and(std::move(cs));
    }
    case FNode::Kind::Atom: {
      const Atom& a = f->atom;
      switch (a.kind) {
        case AtomKind::Le: {
          // !(t <= 0)  <=>  -t + 1 <= 0
          LinTerm t = a.term.negated();
          t.constant += 1;
          return normalize_atom({AtomKind::Le, std::move(t), 0});
        }
        case AtomKind::Eq: {
          LinTerm t1 = a.term;
          t1.constant += 1;
          LinTerm t2 = a.term.negated();
          t2.constant += 1;
          return f_or({normalize_atom({AtomKind::Le, std::move(t1), 0}),
                       normalize_atom({AtomKind::Le, std::move(t2), 0})});
        }
        case AtomKind::Dvd:
          return f_atom({AtomKind::NDvd, a.term, a.modulus});
        case AtomKind::NDvd:
          return f_atom({AtomKind::Dvd, a.term, a.modulus});
      }
      return f_false();
    }
  }
  return f_false();
}

// Convenience comparisons over terms: a (op) b.
inline Formula f_le(const LinTerm& a, const LinTerm& b) {
  return normalize_atom({AtomKind::Le, a - b, 0});
}
inline Formula f_lt(const LinTerm& a, const LinTerm& b) {
  LinTerm t = a - b;
  t.constant += 1;
  return normalize_atom({AtomKind::Le, std::move(t), 0});
}
inline Formula f_eq(const LinTerm& a, const LinTerm& b) {
  return normalize_atom({AtomKind::Eq, a - b, 0});
}
inline Formula f_implies(const Formula& a, const Formula& b) {
  return f_or({f_not(a), b});
}

// Formulas share subtrees heavily after eliminations, so every traversal
// below memoizes on node identity.

namespace detail {

template <typename T>
using NodeCache = std::unordered_map<const FNode*, T>;

inline size_t formula_size_rec(const Formula& f, NodeCache<size_t>* seen) {
  auto it = seen->find(f.get());
  if (it != seen->end()) return 0;  // shared node, count once
  (*seen)[f.get()] = 1;
  size_t n = 1;
  if (f->kind == FNode::Kind::And || f->kind == FNode::Kind::Or)
    for (const auto& c : f->children) n += formula_size_rec(c, seen);
  return n;
}

}  // namespace detail

inline size_t formula_size(const Formula& f) {
  detail::NodeCache<size_t> seen;
  return detail::formula_size_rec(f, &seen);
}

namespace detail {

inline void collect_vars_rec(const Formula& f, std::set<Var>* out,
                             std::set<const FNode*>* seen) {
  if (!seen->insert(f.get()).second) return;
  if (f->kind == FNode::Kind::Atom) {
    for (const auto& [v, c] : f->atom.term.coefs) out->insert(v);
  } else if (f->kind == FNode::Kind::And || f->kind == FNode::Kind::Or) {
    for (const auto& c : f->children) collect_vars_rec(c, out, seen);
  }
}

inline bool mentions_rec(const Formula& f, Var v,
                         std::set<const FNode*>* seen) {
  if (!seen->insert(f.get()).second) return false;
  if (f->kind == FNode::Kind::Atom) return f->atom.term.coef(v) != 0;
  if (f->kind == FNode::Kind::And || f->kind == FNode::Kind::Or) {
    for (const auto& c : f->children)
      if (mentions_rec(c, v, seen)) return true;
  }
  return false;
}

}  // namespace detail

inline void collect_vars(const Formula& f, std::set<Var>* out) {
  std::set<const FNode*> seen;
  detail::collect_vars_rec(f, out, &seen);
}

inline bool mentions(const Formula& f, Var v) {
  std::set<const FNode*> seen;
  return detail::mentions_rec(f, v, &seen);
}

// Distinct atom nodes mentioning v; a proxy for elimination cost.
inline size_t count_occurrences(const Formula& f, Var v) {
  std::set<const FNode*> seen;
  size_t n = 0;
  std::function<void(const Formula&)> walk = [&](const Formula& g) {
    if (!seen.insert(g.get()).second) return;
    if (g->kind == FNode::Kind::Atom) {
      if (g->atom.term.coef(v) != 0) ++n;
    } else if (g->kind == FNode::Kind::And || g->kind == FNode::Kind::Or) {
      for (const auto& c : g->children) walk(c);
    }
  };
  walk(f);
  return n;
}

namespace detail {

inline Formula substitute_rec(const Formula& f, Var v, const LinTerm& repl,
                              NodeCache<Formula>* cache) {
  auto it = cache->find(f.get());
  if (it != cache->end()) return it->second;
  Formula out;
  switch (f->kind) {
    case FNode::Kind::True:
    case FNode::Kind::False:
      out = f;
      break;
    case FNode::Kind::Atom: {
      if (f->atom.term.coef(v) == 0) {
        out = f;
      } else {
        Atom a = f->atom;
        a.term = a.term.substituted(v, repl);
        out = normalize_atom(std::move(a));
      }
      break;
    }
    case FNode::Kind::And: {
      std::vector<Formula> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children)
        cs.push_back(substitute_rec(c, v, repl, cache));
      out = f_and(std::move(cs));
      break;
    }
    case FNode::Kind::Or: {
      std::vector<Formula> cs;
      cs.reserve(f->children.size());
      for (const auto& c : f->children)
        cs.push_back(substitute_rec(c, v, repl, cache));
      out = f_or(std::move(cs));
      break;
    }
  }
  (*cache)[f.get()] = out;
  return out;
}

}  // namespace detail

// Substitute v := repl throughout.
inline Formula substitute(const Formula& f, Var v, const LinTerm& repl) {
  detail::NodeCache<Formula> cache;
  return detail::substitute_rec(f, v, repl, &cache);
}

// ---------------------------------------------------------------------------
// Solver
// ---------------------------------------------------------------------------

struct Limits {
  std::chrono::milliseconds timeout{10000};
  size_t max_formula_size = 400000;
};

class Solver {
 public:
  explicit Solver(Limits limits = {}) : limits_(limits) {}

  // Existential elimination of one variable (Cooper). Result has no v.
  Formula eliminate(Formula f, Var v) {
    start_if_needed();
    return eliminate_inner(std::move(f), v);
  }

  // Projects away every variable in vs: returns formula equivalent to
  // exists vs. f.
  Formula project(Formula f, const std::set<Var>& vs) {
    start_if_needed();
    std::set<Var> remaining;
    for (Var v : vs)
      if (mentions(f, v)) remaining.insert(v);
    while (!remaining.empty()) {
      check_limits(f);
      Var best = *remaining.begin();
      size_t best_count = SIZE_MAX;
      for (Var v : remaining) {
        size_t n = count_occurrences(f, v);
        if (n < best_count) {
          best_count = n;
          best = v;
        }
      }
      f = eliminate_inner(std::move(f), best);
      remaining.erase(best);
      // Elimination may have dropped other candidates entirely.
      for (auto it = remaining.begin(); it != remaining.end();) {
        if (!mentions(f, *it)) it = remaining.erase(it);
        else ++it;
      }
    }
    return f;
  }

  bool sat(const Formula& f) {
    start_if_needed();
    if (f->kind == FNode::Kind::True) return true;
    if (f->kind == FNode::Kind::False) return false;
    std::set<Var> vars;
    collect_vars(f, &vars);
    // Cheap ground guesses first; they hit often on satisfiable queries.
    if (guess_model(f, vars) != std::nullopt) return true;
    Formula g = project(f, vars);
    return g->kind == FNode::Kind::True;
  }

  bool valid(const Formula& f) { return !sat(f_not(f)); }

  using Model = std::map<Var, BigInt>;

  std::optional<Model> model(const Formula& f) {
    start_if_needed();
    std::set<Var> vars;
    collect_vars(f, &vars);
    if (auto m = guess_model(f, vars)) return m;
    return model_rec(f, std::vector<Var>(vars.begin(), vars.end()));
  }

  void reset_clock() { started_ = false; }

 private:
  void start_if_needed() {
    if (!started_) {
      deadline_ = std::chrono::steady_clock::now() + limits_.timeout;
      started_ = true;
    }
  }

  void check_limits(const Formula& f) {
    if (std::chrono::steady_clock::now() > deadline_)
      throw LimitExceeded("presburger timeout");
    if (formula_size(f) > limits_.max_formula_size)
      throw LimitExceeded("presburger formula too large");
  }

  // --- model search helpers ---

  static bool eval_ground_formula(const Formula& f, const Model& m) {
    switch (f->kind) {
      case FNode::Kind::True:
        return true;
      case FNode::Kind::False:
        return false;
      case FNode::Kind::Atom: {
        const Atom& a = f->atom;
        BigInt val = a.term.constant;
        for (const auto& [v, c] : a.term.coefs) {
          auto it = m.find(v);
          BigInt x = it == m.end() ? BigInt(0) : it->second;
          val += c * x;
        }
        switch (a.kind) {
          case AtomKind::Le: return val <= 0;
          case AtomKind::Eq: return val == 0;
          case AtomKind::Dvd: return mod_floor(val, a.modulus) == 0;
          case AtomKind::NDvd: return mod_floor(val, a.modulus) != 0;
        }
        return false;
      }
      case FNode::Kind::And:
        for (const auto& c : f->children)
          if (!eval_ground_formula(c, m)) return false;
        return true;
      case FNode::Kind::Or:
        for (const auto& c : f->children)
          if (eval_ground_formula(c, m)) return true;
        return false;
    }
    return false;
  }

  std::optional<Model> guess_model(const Formula& f,
                                   const std::set<Var>& vars) {
    if (vars.size() > 24) return std::nullopt;
    static const int kPatterns[][2] = {{0, 0}, {1, 1}, {-1, -1}, {1, 0},
                                       {0, 1}, {2, 1},  {1, 2}};
    for (const auto& pat : kPatterns) {
      Model m;
      int i = 0;
      for (Var v : vars) m[v] = BigInt(pat[i++ % 2]);
      if (eval_ground_formula(f, m)) return m;
    }
    return std::nullopt;
  }

  std::optional<Model> model_rec(const Formula& f, std::vector<Var> vars) {
    check_limits(f);
    if (vars.empty()) {
      if (eval_ground_formula(f, {})) return Model{};
      return std::nullopt;
    }
    // Eliminate the variable with the fewest occurrences; find values for it
    // afterwards by scanning Cooper's candidate terms under the sub-model.
    std::sort(vars.begin(), vars.end(), [&](Var a, Var b) {
      return count_occurrences(f, a) < count_occurrences(f, b);
    });
    Var v = vars.front();
    vars.erase(vars.begin());
    Formula g = eliminate_inner(f, v);
    // New variables never appear; vars list stays valid.
    auto sub = model_rec(g, vars);
    if (!sub) return std::nullopt;
    // Ground f except for v; scan candidates by increasing magnitude.
    auto val = find_value(f, v, *sub);
    if (!val) return std::nullopt;  // should not happen; be safe
    Model m = *sub;
    m[v] = *val;
    return m;
  }

  std::optional<BigInt> find_value(const Formula& f, Var v, const Model& m) {
    // Collect candidate values: solutions of equalities, bound terms +- j,
    // and a window around zero.
    std::vector<BigInt> candidates;
    BigInt delta = 1;
    std::vector<Atom> atoms;
    collect_atoms_with(f, v, &atoms);
    for (const auto& a : atoms) {
      if (a.kind == AtomKind::Dvd || a.kind == AtomKind::NDvd)
        delta = big_lcm(delta, a.modulus);
      BigInt c = a.term.coef(v);
      if (c == 0) continue;
      // Remaining value r with v removed: a.term = c*v + r.
      BigInt r = a.term.constant;
      for (const auto& [w, cw] : a.term.coefs) {
        if (w == v) continue;
        auto it = m.find(w);
        BigInt x = it == m.end() ? BigInt(0) : it->second;
        r += cw * x;
      }
      // c*v + r (<=|==) 0: boundary v0 = floor(-r/c).
      BigInt v0 = floor_div(-r, c);
      candidates.push_back(v0);
      candidates.push_back(v0 + 1);
      candidates.push_back(v0 - 1);
    }
    if (delta > 512) delta = 512;
    std::vector<BigInt> expanded;
    for (const auto& c : candidates)
      for (BigInt j = -delta; j <= delta; ++j) expanded.push_back(c + j);
    for (BigInt j = -delta; j <= delta; ++j) expanded.push_back(j);
    std::sort(expanded.begin(), expanded.end(),
              [](const BigInt& a, const BigInt& b) {
                BigInt aa = a < 0 ? -a : a, bb = b < 0 ? -b : b;
                if (aa != bb) return aa < bb;
                return a < b;
              });
    expanded.erase(std::unique(expanded.begin(), expanded.end()),
                   expanded.end());
    Model trial = m;
    for (const auto& cand : expanded) {
      trial[v] = cand;
      if (eval_ground_formula(f, trial)) return cand;
    }
    // Last-resort linear scan by increasing magnitude.
    for (BigInt j = 0; j <= 4096; ++j) {
      trial[v] = j;
      if (eval_ground_formula(f, trial)) return BigInt(j);
      if (j != 0) {
        trial[v] = -j;
        if (eval_ground_formula(f, trial)) return BigInt(-j);
      }
    }
    return std::nullopt;
  }

  static void collect_atoms_with(const Formula& f, Var v,
                                 std::vector<Atom>* out) {
    if (f->kind == FNode::Kind::Atom) {
      if (f->atom.term.coef(v) != 0) out->push_back(f->atom);
    } else if (f->kind == FNode::Kind::And || f->kind == FNode::Kind::Or) {
      for (const auto& c : f->children) collect_atoms_with(c, v, out);
    }
  }

  // --- Cooper elimination ---

  Formula eliminate_inner(Formula f, Var v) {
    check_limits(f);
    if (!mentions(f, v)) return f;

    // Equality fast path: a top-level conjunct c*v + r == 0 with |c| == 1
    // turns the quantifier into a substitution.
    if (f->kind == FNode::Kind::And || f->kind == FNode::Kind::Atom) {
      const std::vector<Formula>* kids = nullptr;
      std::vector<Formula> self{f};
      kids = f->kind == FNode::Kind::And ? &f->children : &self;
      for (const auto& c : *kids) {
        if (c->kind != FNode::Kind::Atom) continue;
        const Atom& a = c->atom;
        if (a.kind != AtomKind::Eq) continue;
        BigInt cv = a.term.coef(v);
        if (cv != 1 && cv != -1) continue;
        // v = -(rest)/cv
        LinTerm rest = a.term;
        rest.coefs.erase(v);
        LinTerm repl = rest.scaled(cv == 1 ? BigInt(-1) : BigInt(1));
        return substitute(f, v, repl);
      }
    }

    // Scale so v's coefficient is +-1 everywhere; x' = lambda*v.
    BigInt lambda = 1;
    std::vector<Atom> atoms;
    collect_atoms_with(f, v, &atoms);
    for (const auto& a : atoms) {
      BigInt c = a.term.coef(v);
      lambda = big_lcm(lambda, c < 0 ? BigInt(-c) : c);
    }
    Formula scaled = scale_var(f, v, lambda);
    if (lambda != 1) {
      Atom dv{AtomKind::Dvd, LinTerm::of_var(v), lambda};
      scaled = f_and({scaled, f_atom(std::move(dv))});
    }

    // delta: lcm of divisibility moduli mentioning v.
    BigInt delta = 1;
    atoms.clear();
    collect_atoms_with(scaled, v, &atoms);
    std::vector<LinTerm> lower, upper;  // b <= v  /  v <= a
    for (const auto& a : atoms) {
      if (a.kind == AtomKind::Dvd || a.kind == AtomKind::NDvd) {
        delta = big_lcm(delta, a.modulus);
        continue;
      }
      BigInt c = a.term.coef(v);
      LinTerm rest = a.term;
      rest.coefs.erase(v);
      if (a.kind == AtomKind::Le) {
        if (c == 1) {
          // v + rest <= 0  =>  v <= -rest
          upper.push_back(rest.negated());
        } else {
          // -v + rest <= 0  =>  rest <= v
          lower.push_back(rest);
        }
      } else {  // Eq: acts as both bounds
        if (c == 1) {
          upper.push_back(rest.negated());
          lower.push_back(rest.negated());
        } else {
          lower.push_back(rest);
          upper.push_back(rest);
        }
      }
    }

    bool use_lower = lower.size() <= upper.size();
    const std::vector<LinTerm>& bounds = use_lower ? lower : upper;

    // Bounds are non-strict (b <= v resp. v <= a), so the witness offsets
    // range over 0..delta-1; the infinity disjunct only needs one residue
    // system, for which the same range serves.
    std::vector<Formula> disjuncts;
    Formula inf = infinity_case(scaled, v, use_lower);
    for (BigInt j = 0; j < delta; ++j) {
      LinTerm jt = LinTerm::of_const(use_lower ? j : -j);
      disjuncts.push_back(substitute(inf, v, jt));
      for (const auto& b : bounds) {
        LinTerm t = b;
        t.constant += use_lower ? j : -j;
        disjuncts.push_back(substitute(scaled, v, t));
      }
      check_limits(f);
    }
    Formula result = f_or(std::move(disjuncts));
    check_limits(result);
    return result;
  }

  // Replaces every atom "c*v + r (op) 0" by the equivalent with v's
  // coefficient +-lambda, then renames lambda*v to v.
  Formula scale_var(const Formula& f, Var v, const BigInt& lambda) {
    switch (f->kind) {
      case FNode::Kind::True:
      case FNode::Kind::False:
        return f;
      case FNode::Kind::Atom: {
        const Atom& a = f->atom;
        BigInt c = a.term.coef(v);
        if (c == 0) return f;
        BigInt m = lambda / (c < 0 ? -c : c);
        Atom out = a;
        out.term = a.term.scaled(m);
        if (out.kind == AtomKind::Dvd || out.kind == AtomKind::NDvd)
          out.modulus = a.modulus * m;
        // Rename lambda*v -> v (coefficient becomes +-1).
        BigInt cv = out.term.coef(v);
        out.term.coefs[v] = cv > 0 ? 1 : -1;
        return f_atom(std::move(out));
      }
      case FNode::Kind::And: {
        std::vector<Formula> cs;
        cs.reserve(f->children.size());
        for (const auto& c : f->children) cs.push_back(scale_var(c, v, lambda));
        return f_and(std::move(cs));
      }
      case FNode::Kind::Or: {
        std::vector<Formula> cs;
        cs.reserve(f->children.size());
        for (const auto& c : f->children) cs.push_back(scale_var(c, v, lambda));
        return f_or(std::move(cs));
      }
    }
    return f;
  }

  // F_{-inf} (use_lower) or F_{+inf}: inequalities on the unbounded side
  // become trivial.
  Formula infinity_case(const Formula& f, Var v, bool use_lower) {
    switch (f->kind) {
      case FNode::Kind::True:
      case FNode::Kind::False:
        return f;
      case FNode::Kind::Atom: {
        const Atom& a = f->atom;
        BigInt c = a.term.coef(v);
        if (c == 0) return f;
        if (a.kind == AtomKind::Le) {
          // v -> -inf: (v <= a) true, (b <= v) false; dual for +inf.
          bool is_upper = c > 0;
          if (use_lower) return is_upper ? f_true() : f_false();
          return is_upper ? f_false() : f_true();
        }
        if (a.kind == AtomKind::Eq) return f_false();
        return f;  // divisibility handled by the j scan
      }
      case FNode::Kind::And: {
        std::vector<Formula> cs;
        for (const auto& c : f->children)
          cs.push_back(infinity_case(c, v, use_lower));
        return f_and(std::move(cs));
      }
      case FNode::Kind::Or: {
        std::vector<Formula> cs;
        for (const auto& c : f->children)
          cs.push_back(infinity_case(c, v, use_lower));
        return f_or(std::move(cs));
      }
    }
    return f;
  }

  Limits limits_;
  bool started_ = false;
  std::chrono::steady_clock::time_point deadline_;
};

}  // namespace presburger
}  // namespace dpcheck

#endif  // DPCHECK_SMT_PRESBURGER_HPP_
