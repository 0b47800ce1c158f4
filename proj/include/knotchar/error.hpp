// Copyright 2026 The knotchar Authors.
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

#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace knotchar {

enum class Errc {
  Overflow,
  InvalidArgument,
  InvalidKnot,
  InputTooLarge,
  IncompatiblePair,
  SweepTooLarge,
  ProductNotOne,
  DegenerateCircle,
  NonIntegerResult,
  ZeroClass,
  EvenM,
  SurjectivityFailure,
};

constexpr std::string_view to_string(Errc e) {
  switch (e) {
    case Errc::Overflow: return "Overflow";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidKnot: return "InvalidKnot";
    case Errc::InputTooLarge: return "InputTooLarge";
    case Errc::IncompatiblePair: return "IncompatiblePair";
    case Errc::SweepTooLarge: return "SweepTooLarge";
    case Errc::ProductNotOne: return "ProductNotOne";
    case Errc::DegenerateCircle: return "DegenerateCircle";
    case Errc::NonIntegerResult: return "NonIntegerResult";
    case Errc::ZeroClass: return "ZeroClass";
    case Errc::EvenM: return "EvenM";
    case Errc::SurjectivityFailure: return "SurjectivityFailure";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Checked 64-bit integer helpers. Every overflow throws Errc::Overflow.
namespace checked {

inline std::int64_t add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer addition");
  return r;
}

inline std::int64_t sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer subtraction");
  return r;
}

inline std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Error(Errc::Overflow, "integer multiplication");
  return r;
}

inline std::int64_t neg(std::int64_t a) { return sub(0, a); }

inline std::int64_t abs(std::int64_t a) { return a < 0 ? neg(a) : a; }

// Least non-negative residue; n > 0.
inline std::int64_t mod(std::int64_t a, std::int64_t n) {
  std::int64_t r = a % n;
  return r < 0 ? r + n : r;
}

inline std::int64_t lcm(std::int64_t a, std::int64_t b) {
  if (a == 0 || b == 0) return 0;
  return abs(mul(a / std::gcd(a, b), b));
}

}  // namespace checked

struct Bezout {
  std::int64_t g;
  std::int64_t x;
  std::int64_t y;
};

// g = gcd(a, b) >= 0 and a*x + b*y = g.
inline Bezout xgcd(std::int64_t a, std::int64_t b) {
  std::int64_t old_r = a, r = b;
  std::int64_t old_s = 1, s = 0;
  std::int64_t old_t = 0, t = 1;
  while (r != 0) {
    const std::int64_t q = old_r / r;
    old_r = checked::sub(old_r, checked::mul(q, r));
    std::swap(old_r, r);
    old_s = checked::sub(old_s, checked::mul(q, s));
    std::swap(old_s, s);
    old_t = checked::sub(old_t, checked::mul(q, t));
    std::swap(old_t, t);
  }
  if (old_r < 0) return {checked::neg(old_r), checked::neg(old_s), checked::neg(old_t)};
  return {old_r, old_s, old_t};
}

}  // namespace knotchar
