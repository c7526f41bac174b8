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

#include <gtest/gtest.h>

#include <random>

#include "dpcheck/smt/presburger.hpp"

namespace dpcheck {
namespace presburger {
namespace {

LinTerm T(std::initializer_list<std::pair<Var, int>> coefs, int c = 0) {
  LinTerm t;
  for (auto [v, k] : coefs)
    if (k != 0) t.coefs[v] = k;
  t.constant = c;
  return t;
}

TEST(Presburger, TrivialSatUnsat) {
  Solver s;
  // x > 0 and x <= 0 is unsat.
  Formula f = f_and({f_lt(LinTerm::of_const(0), LinTerm::of_var(0)),
                     f_le(LinTerm::of_var(0), LinTerm::of_const(0))});
  EXPECT_FALSE(s.sat(f));
  Solver s2;
  EXPECT_TRUE(s2.sat(f_true()));
  Solver s3;
  EXPECT_TRUE(s3.sat(f_lt(LinTerm::of_const(0), LinTerm::of_var(0))));
}

TEST(Presburger, PointEquality) {
  // 5 <= x && x <= 5 is sat exactly at x = 5.
  Solver s;
  Formula f = f_and({f_le(LinTerm::of_const(5), LinTerm::of_var(0)),
                     f_le(LinTerm::of_var(0), LinTerm::of_const(5))});
  auto m = s.model(f);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ((*m)[0], 5);
}

TEST(Presburger, ParityUnsat) {
  // 2x = 2y + 1 has no integer solution.
  Solver s;
  Formula f = f_eq(T({{0, 2}}), T({{1, 2}}, 1));
  EXPECT_FALSE(s.sat(f));
}

TEST(Presburger, DivisibilityReasoning) {
  // 3 | x and 5 <= x <= 7 forces x = 6.
  Solver s;
  Formula f = f_and({f_atom({AtomKind::Dvd, LinTerm::of_var(0), 3}),
                     f_le(LinTerm::of_const(5), LinTerm::of_var(0)),
                     f_le(LinTerm::of_var(0), LinTerm::of_const(7))});
  auto m = s.model(f);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ((*m)[0], 6);
}

TEST(Presburger, EliminationKeepsEquivalence) {
  // exists x: y <= x && x <= y  is true for all y.
  Solver s;
  Formula f = f_and({f_le(LinTerm::of_var(1), LinTerm::of_var(0)),
                     f_le(LinTerm::of_var(0), LinTerm::of_var(1))});
  Formula g = s.eliminate(f, 0);
  Solver s2;
  EXPECT_TRUE(s2.valid(g));
}

TEST(Presburger, ValidImplication) {
  // x > 1 implies x > 0.
  Solver s;
  Formula f = f_implies(f_lt(LinTerm::of_const(1), LinTerm::of_var(0)),
                        f_lt(LinTerm::of_const(0), LinTerm::of_var(0)));
  EXPECT_TRUE(s.valid(f));
  // x > 0 does not imply x > 1.
  Solver s2;
  Formula g = f_implies(f_lt(LinTerm::of_const(0), LinTerm::of_var(0)),
                        f_lt(LinTerm::of_const(1), LinTerm::of_var(0)));
  EXPECT_FALSE(s2.valid(g));
}

TEST(Presburger, CoefficientScaling) {
  // 3x = y && 1 <= y <= 2 is unsat; with y <= 3 it gives x=1, y=3.
  Formula base = f_eq(T({{0, 3}}), T({{1, 1}}));
  {
    Solver s;
    Formula f = f_and({base, f_le(LinTerm::of_const(1), LinTerm::of_var(1)),
                       f_le(LinTerm::of_var(1), LinTerm::of_const(2))});
    EXPECT_FALSE(s.sat(f));
  }
  {
    Solver s;
    Formula f = f_and({base, f_le(LinTerm::of_const(1), LinTerm::of_var(1)),
                       f_le(LinTerm::of_var(1), LinTerm::of_const(3))});
    auto m = s.model(f);
    ASSERT_TRUE(m.has_value());
    EXPECT_EQ((*m)[0], 1);
    EXPECT_EQ((*m)[1], 3);
  }
}

TEST(Presburger, QuantifierAlternation) {
  // forall x exists y: y > x   — valid.
  Solver s;
  Formula body = f_lt(LinTerm::of_var(0), LinTerm::of_var(1));
  Formula ex_y = s.project(body, {1});
  // not exists x not (exists y ...) == forall x ...
  Solver s2;
  EXPECT_FALSE(s2.sat(f_not(ex_y)));
}

TEST(Presburger, AbsEncodingPattern) {
  // The backend lowers |e| as a with a>=e, a>=-e, (a=e or a=-e).
  // Check |x| <= 1 && x >= 1 forces x == 1.
  Var x = 0, a = 1;
  Formula low = f_and({
      f_le(LinTerm::of_var(x), LinTerm::of_var(a)),
      f_le(LinTerm::of_var(x).negated(), LinTerm::of_var(a)),
      f_or({f_eq(LinTerm::of_var(a), LinTerm::of_var(x)),
            f_eq(LinTerm::of_var(a), LinTerm::of_var(x).negated())}),
      f_le(LinTerm::of_var(a), LinTerm::of_const(1)),
      f_le(LinTerm::of_const(1), LinTerm::of_var(x)),
  });
  Solver s;
  auto m = s.model(low);
  ASSERT_TRUE(m.has_value());
  EXPECT_EQ((*m)[x], 1);
  EXPECT_EQ((*m)[a], 1);
}

// Randomized cross-check against brute force over a small box.
TEST(Presburger, RandomFormulasAgreeWithBruteForce) {
  std::mt19937 rng(7);
  auto rnd = [&](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  const int kVars = 3, kBox = 4;
  for (int iter = 0; iter < 300; ++iter) {
    // Random conjunction/disjunction of 2..5 atoms with small coefs,
    // each variable clamped to the box so brute force is exact.
    std::vector<Formula> atoms;
    int n_atoms = rnd(2, 5);
    for (int i = 0; i < n_atoms; ++i) {
      LinTerm t;
      for (Var v = 0; v < kVars; ++v) {
        int c = rnd(-2, 2);
        if (c != 0) t.coefs[v] = c;
      }
      t.constant = rnd(-4, 4);
      int kind = rnd(0, 2);
      if (kind == 0) atoms.push_back(normalize_atom({AtomKind::Le, t, 0}));
      else if (kind == 1) atoms.push_back(normalize_atom({AtomKind::Eq, t, 0}));
      else atoms.push_back(normalize_atom({AtomKind::Dvd, t, rnd(2, 4)}));
    }
    std::vector<Formula> parts;
    for (size_t i = 0; i < atoms.size(); i += 2) {
      if (i + 1 < atoms.size()) parts.push_back(f_or({atoms[i], atoms[i + 1]}));
      else parts.push_back(atoms[i]);
    }
    std::vector<Formula> box;
    for (Var v = 0; v < kVars; ++v) {
      box.push_back(f_le(LinTerm::of_var(v), LinTerm::of_const(kBox)));
      box.push_back(f_le(LinTerm::of_const(-kBox), LinTerm::of_var(v)));
    }
    Formula f = f_and({f_and(std::move(parts)), f_and(std::move(box))});

    bool brute = false;
    for (int x = -kBox; x <= kBox && !brute; ++x)
      for (int y = -kBox; y <= kBox && !brute; ++y)
        for (int z = -kBox; z <= kBox && !brute; ++z) {
          Solver::Model m{{0, x}, {1, y}, {2, z}};
          struct Probe : Solver {
          };
          // Evaluate via a fresh model check: substitute and test.
          Formula g = f;
          g = substitute(g, 0, LinTerm::of_const(x));
          g = substitute(g, 1, LinTerm::of_const(y));
          g = substitute(g, 2, LinTerm::of_const(z));
          if (g->kind == FNode::Kind::True) brute = true;
        }

    Solver s;
    bool got = s.sat(f);
    ASSERT_EQ(got, brute) << "iteration " << iter;
    if (got) {
      Solver s2;
      auto m = s2.model(f);
      ASSERT_TRUE(m.has_value()) << "model missing on sat formula, iter "
                                 << iter;
      Formula g = f;
      for (auto& [v, val] : *m) g = substitute(g, v, LinTerm::of_const(val));
      std::set<Var> leftover;
      collect_vars(g, &leftover);
      for (Var v : leftover) g = substitute(g, v, LinTerm::of_const(0));
      EXPECT_EQ(g->kind, FNode::Kind::True) << "bad model, iter " << iter;
    }
  }
}

}  // namespace
}  // namespace presburger
}  // namespace dpcheck
