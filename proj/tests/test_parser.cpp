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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "dpcheck/ast.hpp"
#include "dpcheck/parser.hpp"

namespace dpcheck {
namespace {

using ast::Cmd;
using ast::Expr;

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  EXPECT_TRUE(f.good()) << "missing " << path;
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

std::string src_dir() {
  const char* d = std::getenv("DPCHECK_SRC_DIR");
  return d ? d : ".";
}

TEST(Parser, SmallestWellFormedBody) {
  auto p = parser::parse_program(
      "program tiny\n"
      "output o : int\n"
      "begin\n  o := 0;\n  skip;\nend\n");
  ASSERT_EQ(p.body->kind, Cmd::Kind::Seq);
  EXPECT_EQ(p.body->c1->kind, Cmd::Kind::Assign);
  EXPECT_EQ(p.body->c2->kind, Cmd::Kind::Skip);
}

TEST(Parser, LaplaceBodyShape) {
  auto p = parser::parse_program(
      "program alg1\n"
      "input d : db\n"
      "query q[1] sensitivity 2\n"
      "budget eps\n"
      "output o : int\n"
      "begin\n"
      "  v := q[1];\n"
      "  rho :~ lap(0, eps);\n"
      "  o := v + rho;\n"
      "end\n");
  // Seq(Assign(v, q[1]), Seq(LapSample(rho, 0, eps), Assign(o, v+rho)))
  ASSERT_EQ(p.body->kind, Cmd::Kind::Seq);
  EXPECT_EQ(p.body->c1->kind, Cmd::Kind::Assign);
  EXPECT_EQ(p.body->c1->name, "v");
  ASSERT_EQ(p.body->c2->kind, Cmd::Kind::Seq);
  const auto& lap = p.body->c2->c1;
  EXPECT_EQ(lap->kind, Cmd::Kind::LapSample);
  EXPECT_EQ(lap->name, "rho");
  EXPECT_EQ(lap->e1->lit, 0);
  EXPECT_EQ(lap->e2->name, "eps");
  EXPECT_EQ(p.budget_eps, Rat(1));
  EXPECT_EQ(p.queries.at(0).sensitivity, 2);
}

TEST(Parser, NestedPairIsRejected) {
  EXPECT_THROW(parser::parse_program(
                   "program bad\noutput o : int\nbegin\n"
                   "⟨ x := 1 | ⟨ x := 2 | x := 3 ⟩ ⟩;\n"
                   "o := 0;\nend\n"),
               Error);
  // ASCII pair brackets behave identically.
  EXPECT_THROW(parser::parse_program(
                   "program bad\noutput o : int\nbegin\n"
                   "<| x := 1 | <| x := 2 | x := 3 |> |>;\no := 0;\nend\n"),
               Error);
}

TEST(Parser, PairCommandParses) {
  auto p = parser::parse_program(
      "program ok\noutput o : int\nbegin\n"
      "<| x := 1 | x := 2 |>;\no := x;\nend\n");
  ASSERT_EQ(p.body->kind, Cmd::Kind::Seq);
  EXPECT_EQ(p.body->c1->kind, Cmd::Kind::PairCmd);
}

TEST(Parser, UndeclaredQueryIsAnError) {
  EXPECT_THROW(parser::parse_program("program bad\noutput o : int\nbegin\n"
                                     "  o := q[7];\nend\n"),
               Error);
}

TEST(Parser, SyntaxErrorHasLocation) {
  try {
    parser::parse_program("program bad\noutput o : int\nbegin\n  o := ;\nend\n");
    FAIL() << "expected a syntax error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("4:"), std::string::npos) << e.what();
  }
}

TEST(Project, PairAndUnaryFixpoint) {
  auto pair = Expr::pair(Expr::int_lit(5), Expr::int_lit(7));
  EXPECT_EQ(ast::project(1, pair)->lit, 5);
  EXPECT_EQ(ast::project(2, pair)->lit, 7);
  auto unary = Expr::int_lit(4);
  EXPECT_EQ(ast::project(2, unary)->lit, 4);
}

TEST(Project, HomomorphicOnSeq) {
  auto c1 = Cmd::assign("x", Expr::int_lit(1));
  auto c2 = Cmd::assign("x", Expr::int_lit(2));
  auto c3 = Cmd::assign("y", Expr::pair(Expr::int_lit(3), Expr::int_lit(4)));
  auto seq = Cmd::seq(Cmd::pair(c1, c2), c3);
  auto left = ast::project(1, seq);
  ASSERT_EQ(left->kind, Cmd::Kind::Seq);
  EXPECT_TRUE(ast::cmd_equal(left->c1, c1));
  EXPECT_EQ(left->c2->e1->lit, 3);
  EXPECT_FALSE(ast::cmd_has_pair(left));
  EXPECT_FALSE(ast::cmd_has_pair(ast::project(2, seq)));
}

TEST(WellFormed, OutputAssignedOnOneBranchOnly) {
  auto p = parser::parse_program(
      "program partial\ninput t : int\noutput o : int\nbegin\n"
      "  if t then\n    o := 1;\n  end;\nend\n");
  auto diags = ast::check_wellformed(p);
  ASSERT_EQ(diags.size(), 1u);
  EXPECT_NE(diags[0].message.find("not assigned"), std::string::npos);
}

TEST(WellFormed, CorpusProgramsAreClean) {
  for (const char* name :
       {"alg1_buggy", "alg1_safe", "alg2_buggy", "alg2_safe_top",
        "alg2_safe_noised", "alg3_buggy"}) {
    std::string path = src_dir() + "/programs/" + name + ".pfor";
    auto p = parser::parse_program(read_file(path));
    EXPECT_TRUE(ast::check_wellformed(p).empty()) << name;
  }
}

TEST(RoundTrip, CorpusFilesAreCanonical) {
  namespace fs = std::filesystem;
  int n = 0;
  for (const auto& entry : fs::directory_iterator(src_dir() + "/programs")) {
    if (entry.path().extension() != ".pfor") continue;
    std::string text = read_file(entry.path().string());
    auto prog = parser::parse_program(text);
    EXPECT_EQ(parser::print_program(prog), text) << entry.path();
    ++n;
  }
  EXPECT_GE(n, 6);
}

// Random ASTs: parse(print(prog)) == prog.
class AstGen {
 public:
  explicit AstGen(unsigned seed) : rng_(seed) {}

  ast::ExprPtr gen_expr(int depth) {
    int pick = depth <= 0 ? rand_int(0, 1) : rand_int(0, 3);
    switch (pick) {
      case 0:
        return Expr::int_lit(rand_int(-9, 9));
      case 1:
        return Expr::var(var_name());
      case 2:
        return Expr::arr_idx("o", gen_expr(depth - 1));
      default:
        return Expr::binop(static_cast<ast::BinOpKind>(rand_int(0, 3)),
                           gen_expr(depth - 1), gen_expr(depth - 1));
    }
  }

  ast::CmdPtr gen_cmd(int depth) {
    int pick = depth <= 0 ? rand_int(0, 2) : rand_int(0, 6);
    switch (pick) {
      case 0:
        return Cmd::skip();
      case 1:
        return Cmd::assign(var_name(), gen_expr(depth - 1));
      case 2:
        return Cmd::arr_assign("o", gen_expr(depth - 1), gen_expr(depth - 1));
      case 3:
        return Cmd::seq(gen_cmd(depth - 1), gen_cmd(depth - 1));
      case 4:
        return Cmd::lap_sample(var_name(), gen_expr(depth - 1),
                               Expr::var("eps"));
      case 5:
        return Cmd::if_(gen_expr(depth - 1), gen_cmd(depth - 1),
                        gen_cmd(depth - 1));
      default:
        return Cmd::for_("i", gen_expr(depth - 1), gen_expr(depth - 1),
                         gen_cmd(depth - 1));
    }
  }

 private:
  int rand_int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  std::string var_name() {
    static const char* names[] = {"x", "y", "z", "v"};
    return names[rand_int(0, 3)];
  }
  std::mt19937 rng_;
};

TEST(RoundTrip, PrintThenParseIsIdentityOnRandomAsts) {
  AstGen gen(20260810);
  for (int i = 0; i < 200; ++i) {
    auto body = gen.gen_cmd(3);
    std::string src = "program rt\ninput x : int\ninput y : int\n"
                      "input z : int\ninput v : int\n"
                      "output o : int[3] = bot\nbegin\n" +
                      parser::print_cmd(body) + "end\n";
    ast::Program prog;
    try {
      prog = parser::parse_program(src);
    } catch (const Error& e) {
      FAIL() << "failed to reparse printed program:\n" << src << "\n"
             << e.what();
    }
    // Printed body reparses to a structurally equal command, up to the
    // canonical Seq normalization that printing flattens anyway.
    EXPECT_EQ(parser::print_cmd(prog.body), parser::print_cmd(body));
  }
}

TEST(Budget, Forms) {
  EXPECT_EQ(parser::print_budget(Rat(1)), "eps");
  EXPECT_EQ(parser::print_budget(Rat(2)), "2*eps");
  EXPECT_EQ(parser::print_budget(Rat(1, 2)), "eps/2");
  EXPECT_EQ(parser::print_budget(Rat(3, 2)), "3/2*eps");
}

}  // namespace
}  // namespace dpcheck
