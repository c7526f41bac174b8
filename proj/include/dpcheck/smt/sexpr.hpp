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

#ifndef DPCHECK_SMT_SEXPR_HPP_
#define DPCHECK_SMT_SEXPR_HPP_

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace dpcheck {
namespace smt {

// Minimal s-expression values for SMT-LIB2 scripts and solver replies.
struct SExpr {
  bool is_list = false;
  std::string atom;
  std::vector<SExpr> items;

  static SExpr mk_atom(std::string a) {
    SExpr s;
    s.atom = std::move(a);
    return s;
  }
  static SExpr mk_list(std::vector<SExpr> xs) {
    SExpr s;
    s.is_list = true;
    s.items = std::move(xs);
    return s;
  }

  const std::string& head() const {
    static const std::string empty;
    if (!is_list || items.empty() || items[0].is_list) return empty;
    return items[0].atom;
  }

  std::string str() const {
    if (!is_list) return atom;
    std::string out = "(";
    for (size_t i = 0; i < items.size(); ++i) {
      if (i) out += " ";
      out += items[i].str();
    }
    out += ")";
    return out;
  }
};

class SExprReader {
 public:
  explicit SExprReader(std::string text) : text_(std::move(text)) {}

  // Reads the next toplevel s-expression; nullopt at end of input.
  std::optional<SExpr> next() {
    skip_ws();
    if (pos_ >= text_.size()) return std::nullopt;
    return parse();
  }

 private:
  void skip_ws() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == ';') {
        while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
      } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r') {
        ++pos_;
      } else {
        break;
      }
    }
  }

  SExpr parse() {
    skip_ws();
    if (pos_ >= text_.size()) throw std::runtime_error("unexpected end of sexpr");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      std::vector<SExpr> items;
      for (;;) {
        skip_ws();
        if (pos_ >= text_.size())
          throw std::runtime_error("unterminated sexpr list");
        if (text_[pos_] == ')') {
          ++pos_;
          break;
        }
        items.push_back(parse());
      }
      return SExpr::mk_list(std::move(items));
    }
    if (c == ')') throw std::runtime_error("unexpected ')'");
    if (c == '|') {  // quoted symbol
      size_t end = text_.find('|', pos_ + 1);
      if (end == std::string::npos)
        throw std::runtime_error("unterminated quoted symbol");
      SExpr a = SExpr::mk_atom(text_.substr(pos_ + 1, end - pos_ - 1));
      pos_ = end + 1;
      return a;
    }
    if (c == '"') {
      size_t end = text_.find('"', pos_ + 1);
      if (end == std::string::npos)
        throw std::runtime_error("unterminated string");
      SExpr a = SExpr::mk_atom(text_.substr(pos_, end - pos_ + 1));
      pos_ = end + 1;
      return a;
    }
    size_t start = pos_;
    while (pos_ < text_.size()) {
      char d = text_[pos_];
      if (d == '(' || d == ')' || d == ' ' || d == '\t' || d == '\n' ||
          d == '\r' || d == ';')
        break;
      ++pos_;
    }
    return SExpr::mk_atom(text_.substr(start, pos_ - start));
  }

  std::string text_;
  size_t pos_ = 0;
};

}  // namespace smt
}  // namespace dpcheck

#endif  // DPCHECK_SMT_SEXPR_HPP_
