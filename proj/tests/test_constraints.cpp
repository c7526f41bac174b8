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

#include <set>
#include <thread>

#include "dpcheck/constraints.hpp"

namespace dpcheck {
namespace cstr {
namespace {

TEST(Registry, FreshSymbolsAreDistinct) {
  Registry reg;
  SymId a = reg.fresh_prob(Side::Left, "Y");
  SymId b = reg.fresh_prob(Side::Left, "Y");
  EXPECT_NE(reg.prob(a).name, reg.prob(b).name);
  EXPECT_EQ(reg.prob(a).name, "Y");

  SymId e1 = reg.fresh_sym(Side::Shared, Origin::Budget, "E");
  SymId e2 = reg.fresh_sym(Side::Shared, Origin::Budget, "E");
  EXPECT_NE(e1, e2);
  EXPECT_NE(reg.sym(e1).name, reg.sym(e2).name);
  EXPECT_TRUE(reg.names_unique());
}

TEST(Registry, FreshIsThreadSafe) {
  Registry reg;
  std::vector<std::thread> workers;
  for (int t = 0; t < 8; ++t) {
    workers.emplace_back([&reg] {
      for (int i = 0; i < 200; ++i) reg.fresh_sym(Side::Left, Origin::Other, "X");
    });
  }
  for (auto& w : workers) w.join();
  EXPECT_EQ(reg.sym_count(), 1600u);
  EXPECT_TRUE(reg.names_unique());
}

struct Fixture {
  Registry reg;
  SymId t1, t2, q11, q12, k;

  Fixture() {
    t1 = reg.fresh_sym(Side::Left, Origin::Other, "T1");
    t2 = reg.fresh_sym(Side::Right, Origin::Other, "T2");
    q11 = reg.fresh_sym(Side::Left, Origin::Input, "q1d1");
    q12 = reg.fresh_sym(Side::Right, Origin::Input, "q1d2");
    k = reg.fresh_sym(Side::Shared, Origin::CouplingShift, "K");
  }

  ConstraintPtr gt(SymId a, SymId b) {
    return Constraint::cmp(CmpOp::Gt, Ce::sym_(a), Ce::sym_(b));
  }
};

TEST(OmegaDecompose, PartitionBySides) {
  Fixture f;
  ConstraintSet s;
  s.add(f.gt(f.t1, f.q11), f.reg);                    // pure side 1
  s.add(f.gt(f.t2, f.q12), f.reg);                    // pure side 2
  s.add(Constraint::cmp(CmpOp::Eq,                     // coupling: relational
                        Ce::add(Ce::sym_(f.t1), Ce::sym_(f.k)),
                        Ce::sym_(f.t2)),
        f.reg);
  auto omega = omega_decompose(s, f.reg);
  EXPECT_EQ(omega.omega1.size(), 1u);
  EXPECT_EQ(omega.omega2.size(), 1u);
  EXPECT_EQ(omega.relational.size(), 1u);
  ASSERT_EQ(omega.k_vec.size(), 1u);
  EXPECT_EQ(omega.k_vec[0], f.k);

  // Partition: sizes add up and parts are disjoint by canonical text.
  EXPECT_EQ(omega.omega1.size() + omega.omega2.size() +
                omega.relational.size(),
            s.size());
  std::set<std::string> all;
  for (const auto& part :
       {omega.omega1.items(), omega.omega2.items(), omega.relational.items()})
    for (const auto& c : part)
      EXPECT_TRUE(all.insert(constraint_str(c, f.reg)).second);
}

TEST(OmegaDecompose, EmptySet) {
  Registry reg;
  ConstraintSet s;
  auto omega = omega_decompose(s, reg);
  EXPECT_TRUE(omega.omega1.empty());
  EXPECT_TRUE(omega.omega2.empty());
  EXPECT_TRUE(omega.relational.empty());
  EXPECT_TRUE(omega.k_vec.empty());
}

TEST(OmegaDecompose, SharedOnlyConstraintIsRelational) {
  Registry reg;
  SymId e = reg.fresh_sym(Side::Shared, Origin::Budget, "E");
  ConstraintSet s;
  s.add(Constraint::cmp(CmpOp::Gt, Ce::sym_(e), Ce::lit_(0)), reg);
  auto omega = omega_decompose(s, reg);
  EXPECT_EQ(omega.relational.size(), 1u);
  EXPECT_TRUE(omega.k_vec.empty());
}

TEST(ProjectSide, MirrorsDecomposition) {
  Fixture f;
  ConstraintSet s;
  s.add(f.gt(f.t1, f.q11), f.reg);
  s.add(f.gt(f.t2, f.q12), f.reg);
  auto s1 = project_side(Side::Left, s, f.reg);
  auto s2 = project_side(Side::Right, s, f.reg);
  ASSERT_EQ(s1.size(), 1u);
  ASSERT_EQ(s2.size(), 1u);
  EXPECT_EQ(constraint_str(s1.items()[0], f.reg), "T1 > q1d1");
  EXPECT_EQ(constraint_str(s2.items()[0], f.reg), "T2 > q1d2");
}

TEST(ApplySubst, GroundsAndEvaluates) {
  Registry reg;
  SymId x = reg.fresh_sym(Side::Left, Origin::Input, "X");
  ConstraintSet s;
  s.add(Constraint::cmp(CmpOp::Gt, Ce::sym_(x), Ce::lit_(0)), reg);
  Substitution sigma;
  sigma.scalars[x] = 3;
  auto g = apply_subst(s, sigma, reg);
  EXPECT_EQ(constraint_str(g.items()[0], reg), "3 > 0");
  EXPECT_TRUE(eval_ground_all(s, sigma, reg));
}

TEST(ApplySubst, UnmappedSymbolFails) {
  Registry reg;
  SymId x = reg.fresh_sym(Side::Left, Origin::Input, "X");
  ConstraintSet s;
  s.add(Constraint::cmp(CmpOp::Gt, Ce::sym_(x), Ce::lit_(0)), reg);
  Substitution sigma;
  EXPECT_THROW(apply_subst(s, sigma, reg), Error);
}

TEST(ApplySubst, HomomorphicOnLapDecl) {
  Registry reg;
  SymId x = reg.fresh_sym(Side::Left, Origin::Input, "X");
  SymId y = reg.fresh_prob(Side::Left, "Y");
  ProbTrace p;
  p.push_back(ProbConstraint::lap_decl(
      y, Ce::mul(Ce::lit_(2), Ce::sym_(x)), Scale::concrete(Rat(2))));
  Substitution sigma;
  sigma.scalars[x] = 3;
  auto g = apply_subst(p, sigma, reg);
  EXPECT_EQ(prob_constraint_str(g[0], reg), "Y ~ lap((2 * 3), 2)");
  // Prob symbols are untouched by substitution.
  ProbTrace p2;
  p2.push_back(ProbConstraint::gt0(RandExpr::psym(y)));
  auto g2 = apply_subst(p2, sigma, reg);
  EXPECT_EQ(prob_constraint_str(g2[0], reg), "Y > 0");
}

TEST(ApplySubst, CommutesWithProjectSide) {
  Fixture f;
  ConstraintSet s;
  s.add(f.gt(f.t1, f.q11), f.reg);
  s.add(f.gt(f.t2, f.q12), f.reg);
  Substitution sigma;
  sigma.scalars[f.t1] = 2;
  sigma.scalars[f.q11] = 1;
  sigma.scalars[f.t2] = 5;
  sigma.scalars[f.q12] = 9;
  auto left_then_subst =
      apply_subst(project_side(Side::Left, s, f.reg), sigma, f.reg);
  EXPECT_EQ(left_then_subst.size(), 1u);
  EXPECT_EQ(constraint_str(left_then_subst.items()[0], f.reg), "2 > 1");
}

TEST(ConstraintSet, DeduplicatesSyntactically) {
  Fixture f;
  ConstraintSet s;
  s.add(f.gt(f.t1, f.q11), f.reg);
  s.add(f.gt(f.t1, f.q11), f.reg);
  EXPECT_EQ(s.size(), 1u);
}

TEST(Scale, Rendering) {
  EXPECT_EQ(Scale::eps_multiple(Rat(1)).str(), "eps");
  EXPECT_EQ(Scale::eps_multiple(Rat(1, 2)).str(), "eps/2");
  EXPECT_EQ(Scale::eps_multiple(Rat(2)).str(), "2*eps");
  EXPECT_EQ(Scale::concrete(Rat(1, 4)).str(), "1/4");
}

}  // namespace
}  // namespace cstr
}  // namespace dpcheck
