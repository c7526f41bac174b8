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

#ifndef DPCHECK_COMMON_HPP_
#define DPCHECK_COMMON_HPP_

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpcheck {

using Int = std::int64_t;

// Sentinels for the array fill values written as `bot` / `top` in source.
// They sit far outside every value window the oracle ever enumerates, so a
// sampled integer colliding with them has mass below the truncation budget.
inline constexpr Int kBotValue = -(Int{1} << 40) - 1;
inline constexpr Int kTopValue = (Int{1} << 40) + 1;

struct SourceLoc {
  int line = 0;
  int column = 0;

  std::string str() const {
    return std::to_string(line) + ":" + std::to_string(column);
  }
};

// Error raised by parsing, evaluation and engine plumbing. `code` mirrors the
// CLI exit-code contract where relevant (64 usage, 66 file, 69 solver).
class Error : public std::runtime_error {
 public:
  explicit Error(std::string msg, int code = 1)
      : std::runtime_error(std::move(msg)), code_(code) {}
  int code() const { return code_; }

 private:
  int code_;
};

struct Diagnostic {
  std::string message;
  SourceLoc loc;

  std::string str() const {
    if (loc.line > 0) return loc.str() + ": " + message;
    return message;
  }
};

inline Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw Error("integer overflow in +");
  return r;
}

inline Int checked_sub(Int a, Int b) {
  Int r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error("integer overflow in -");
  return r;
}

inline Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error("integer overflow in *");
  return r;
}

// Division truncating toward zero, as C++ does natively; division by zero is
// a reported evaluation error, not UB.
inline Int checked_div(Int a, Int b) {
  if (b == 0) throw Error("division by zero");
  if (a == std::numeric_limits<Int>::min() && b == -1)
    throw Error("integer overflow in /");
  return a / b;
}

// Exact rational with small components. Used for Laplace inverse scales and
// privacy-budget coefficients; magnitudes stay tiny in practice.
struct Rat {
  Int num = 0;
  Int den = 1;

  Rat() = default;
  Rat(Int n) : num(n), den(1) {}  // NOLINT: implicit by design
  Rat(Int n, Int d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw Error("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    Int g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  double to_double() const { return static_cast<double>(num) / den; }

  friend Rat operator+(Rat a, Rat b) {
    return Rat(checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator-(Rat a, Rat b) {
    return Rat(checked_sub(checked_mul(a.num, b.den), checked_mul(b.num, a.den)),
               checked_mul(a.den, b.den));
  }
  friend Rat operator*(Rat a, Rat b) {
    return Rat(checked_mul(a.num, b.num), checked_mul(a.den, b.den));
  }
  friend Rat operator/(Rat a, Rat b) {
    if (b.num == 0) throw Error("rational division by zero");
    return Rat(checked_mul(a.num, b.den), checked_mul(a.den, b.num));
  }
  friend bool operator==(const Rat& a, const Rat& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) {
    return checked_mul(a.num, b.den) < checked_mul(b.num, a.den);
  }
  friend bool operator<=(const Rat& a, const Rat& b) {
    return checked_mul(a.num, b.den) <= checked_mul(b.num, a.den);
  }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "3", "-2", "1/2", "0.25", "1.5".
  static std::optional<Rat> parse(const std::string& s) {
    if (s.empty()) return std::nullopt;
    auto slash = s.find('/');
    try {
      if (slash != std::string::npos) {
        Int n = std::stoll(s.substr(0, slash));
        Int d = std::stoll(s.substr(slash + 1));
        if (d == 0) return std::nullopt;
        return Rat(n, d);
      }
      auto dot = s.find('.');
      if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        Int scale = 1;
        for (size_t i = dot + 1; i < s.size(); ++i) scale = checked_mul(scale, 10);
        return Rat(std::stoll(digits), scale);
      }
      return Rat(std::stoll(s));
    } catch (const std::exception&) {
      return std::nullopt;
    }
  }
};

inline Int lcm_int(Int a, Int b) { return std::lcm(a, b); }

}  // namespace dpcheck

#endif  // DPCHECK_COMMON_HPP_
