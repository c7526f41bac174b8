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

// dpsolve: an SMT-LIB2 solver for quantified linear integer arithmetic.
// Reads a script from stdin (or a file argument), answers check-sat and
// get-model. Intended as the default backend of dpcheck; any SMT-LIB2
// solver with Int support (z3, cvc5) is interchangeable.

#include <cctype>
#include <fstream>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "dpcheck/smt/presburger.hpp"
#include "dpcheck/smt/sexpr.hpp"

namespace {

using dpcheck::presburger::BigInt;
using dpcheck::presburger::Formula;
using dpcheck::presburger::LinTerm;
using dpcheck::presburger::Limits;
using dpcheck::presburger::Solver;
using dpcheck::presburger::Var;
using dpcheck::smt::SExpr;
using dpcheck::smt::SExprReader;

namespace pb = dpcheck::presburger;

class Session {
 public:
  void run(std::istream& in, std::ostream& out) {
    std::stringstream buf;
    buf << in.rdbuf();
    SExprReader reader(buf.str());
    while (auto cmd = reader.next()) {
      try {
        handle(*cmd, out);
      } catch (const std::exception& e) {
        out << "(error \"" << e.what() << "\")\n";
        out.flush();
      }
      if (done_) break;
    }
  }

 private:
  struct QVar {
    std::string name;
    Var var;
  };

  void handle(const SExpr& cmd, std::ostream& out) {
    const std::string& head = cmd.head();
    if (head == "set-logic" || head == "set-info") {
      return;
    }
    if (head == "set-option") {
      if (cmd.items.size() == 3 && cmd.items[1].atom == ":timeout")
        timeout_ms_ = std::stoll(cmd.items[2].atom);
      return;
    }
    if (head == "declare-const") {
      declare(cmd.items.at(1).atom, cmd.items.at(2));
      return;
    }
    if (head == "declare-fun") {
      if (!cmd.items.at(2).items.empty())
        throw std::runtime_error("only 0-ary functions are supported");
      declare(cmd.items.at(1).atom, cmd.items.at(3));
      return;
    }
    if (head == "assert") {
      asserts_.push_back(to_formula(cmd.items.at(1), {}));
      return;
    }
    if (head == "check-sat") {
      check(out);
      return;
    }
    if (head == "get-model") {
      print_model(out);
      return;
    }
    if (head == "reset") {
      asserts_.clear();
      vars_.clear();
      names_.clear();
      model_.reset();
      return;
    }
    if (head == "echo") {
      out << cmd.items.at(1).atom << "\n";
      out.flush();
      return;
    }
    if (head == "exit") {
      done_ = true;
      return;
    }
    throw std::runtime_error("unsupported command: " + head);
  }

  void declare(const std::string& name, const SExpr& sort) {
    if (!(!sort.is_list && sort.atom == "Int"))
      throw std::runtime_error("only Int sort is supported");
    if (vars_.count(name)) throw std::runtime_error("redeclared: " + name);
    Var v = static_cast<Var>(names_.size());
    vars_[name] = v;
    names_.push_back(name);
  }

  Var lookup(const std::string& name, const std::vector<QVar>& scope) {
    for (auto it = scope.rbegin(); it != scope.rend(); ++it)
      if (it->name == name) return it->var;
    auto it = vars_.find(name);
    if (it == vars_.end()) throw std::runtime_error("unknown symbol: " + name);
    return it->second;
  }

  // Linear term parsing. Throws on nonlinear constructs.
  LinTerm to_term(const SExpr& e, const std::vector<QVar>& scope) {
    if (!e.is_list) {
      const std::string& a = e.atom;
      if (!a.empty() && (std::isdigit(static_cast<unsigned char>(a[0])) ||
                         (a[0] == '-' && a.size() > 1)))
        return LinTerm::of_const(BigInt(a));
      return LinTerm::of_var(lookup(a, scope));
    }
    const std::string& op = e.head();
    if (op == "-") {
      if (e.items.size() == 2) return to_term(e.items[1], scope).negated();
      LinTerm t = to_term(e.items.at(1), scope);
      for (size_t i = 2; i < e.items.size(); ++i)
        t.add_mul(to_term(e.items[i], scope), -1);
      return t;
    }
    if (op == "+") {
      LinTerm t;
      for (size_t i = 1; i < e.items.size(); ++i)
        t.add_mul(to_term(e.items[i], scope), 1);
      return t;
    }
    if (op == "*") {
      // Exactly one non-constant factor keeps the term linear.
      LinTerm acc = LinTerm::of_const(1);
      bool have_var_part = false;
      BigInt coef = 1;
      LinTerm var_part;
      for (size_t i = 1; i < e.items.size(); ++i) {
        LinTerm f = to_term(e.items[i], scope);
        if (f.is_const()) {
          coef *= f.constant;
        } else if (!have_var_part) {
          have_var_part = true;
          var_part = f;
        } else {
          throw std::runtime_error("nonlinear multiplication");
        }
      }
      if (!have_var_part) return LinTerm::of_const(coef);
      return var_part.scaled(coef);
    }
    throw std::runtime_error("unsupported term operator: " + op);
  }

  Formula to_formula(const SExpr& e, std::vector<QVar> scope) {
    if (!e.is_list) {
      if (e.atom == "true") return pb::f_true();
      if (e.atom == "false") return pb::f_false();
      throw std::runtime_error("boolean atoms are not supported: " + e.atom);
    }
    const std::string& op = e.head();
    if (op == "and") {
      std::vector<Formula> cs;
      for (size_t i = 1; i < e.items.size(); ++i)
        cs.push_back(to_formula(e.items[i], scope));
      return pb::f_and(std::move(cs));
    }
    if (op == "or") {
      std::vector<Formula> cs;
      for (size_t i = 1; i < e.items.size(); ++i)
        cs.push_back(to_formula(e.items[i], scope));
      return pb::f_or(std::move(cs));
    }
    if (op == "not") return pb::f_not(to_formula(e.items.at(1), scope));
    if (op == "=>") {
      Formula a = to_formula(e.items.at(1), scope);
      Formula b = to_formula(e.items.at(2), scope);
      return pb::f_implies(a, b);
    }
    if (op == "=" || op == "<" || op == "<=" || op == ">" || op == ">=") {
      LinTerm a = to_term(e.items.at(1), scope);
      LinTerm b = to_term(e.items.at(2), scope);
      if (op == "=") return pb::f_eq(a, b);
      if (op == "<") return pb::f_lt(a, b);
      if (op == "<=") return pb::f_le(a, b);
      if (op == ">") return pb::f_lt(b, a);
      return pb::f_le(b, a);
    }
    if (op == "distinct") {
      LinTerm a = to_term(e.items.at(1), scope);
      LinTerm b = to_term(e.items.at(2), scope);
      return pb::f_not(pb::f_eq(a, b));
    }
    if (op == "exists" || op == "forall") {
      std::vector<QVar> inner = scope;
      std::set<Var> bound;
      for (const auto& binding : e.items.at(1).items) {
        const std::string& name = binding.items.at(0).atom;
        Var v = static_cast<Var>(names_.size());
        names_.push_back("!" + name + "!" + std::to_string(v));
        inner.push_back({name, v});
        bound.insert(v);
      }
      Formula body = to_formula(e.items.at(2), inner);
      Solver solver(limits());
      if (op == "exists") return solver.project(body, bound);
      return pb::f_not(solver.project(pb::f_not(body), bound));
    }
    throw std::runtime_error("unsupported formula operator: " + op);
  }

  Limits limits() const {
    Limits l;
    l.timeout = std::chrono::milliseconds(timeout_ms_);
    return l;
  }

  void check(std::ostream& out) {
    model_.reset();
    try {
      Formula f = pb::f_and(std::vector<Formula>(asserts_));
      Solver solver(limits());
      auto m = solver.model(f);
      if (m) {
        model_ = std::move(m);
        out << "sat\n";
      } else {
        // model() may miss when sat; confirm unsat by elimination.
        if (solver.sat(f)) {
          out << "unknown\n";
        } else {
          out << "unsat\n";
        }
      }
    } catch (const dpcheck::presburger::LimitExceeded&) {
      out << "unknown\n";
    }
    out.flush();
  }

  void print_model(std::ostream& out) {
    if (!model_) {
      out << "(error \"no model available\")\n";
      out.flush();
      return;
    }
    out << "(\n";
    for (const auto& [name, v] : vars_) {
      BigInt val = 0;
      auto it = model_->find(v);
      if (it != model_->end()) val = it->second;
      out << "  (define-fun " << name << " () Int ";
      if (val < 0)
        out << "(- " << -val << ")";
      else
        out << val;
      out << ")\n";
    }
    out << ")\n";
    out.flush();
  }

  std::vector<Formula> asserts_;
  std::map<std::string, Var> vars_;
  std::vector<std::string> names_;
  std::optional<Solver::Model> model_;
  long long timeout_ms_ = 10000;
  bool done_ = false;
};

}  // namespace

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  Session session;
  if (argc > 1 && std::string(argv[1]) != "-") {
    std::ifstream f(argv[1]);
    if (!f) {
      std::cerr << "dpsolve: cannot open " << argv[1] << "\n";
      return 66;
    }
    session.run(f, std::cout);
    return 0;
  }
  session.run(std::cin, std::cout);
  return 0;
}
