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
#include <ostream>
#include <string>

#include "knotchar/error.hpp"
#include "knotchar/rational.hpp"

namespace knotchar {

/// A root of unity e^{2 pi i exp / order}, stored as a residue in the ambient
/// group mu_order. The order is not reduced: (6, 2) stays in mu_6 even though
/// it generates mu_3. Equality compares the underlying complex numbers.
class Root {
 public:
  Root() = default;
  Root(std::int64_t order, std::int64_t exp) : order_(order) {
    if (order < 1) throw Error(Errc::InvalidArgument, "root order must be >= 1");
    exp_ = checked::mod(exp, order);
  }

  static Root one(std::int64_t order = 1) { return {order, 0}; }

  std::int64_t order() const { return order_; }
  std::int64_t exp() const { return exp_; }

  // exp / order in [0, 1).
  Rational fraction() const { return {exp_, order_}; }

  bool is_one() const { return exp_ == 0; }

  // Same element, viewed in mu_{order}; order must be a multiple of order().
  Root embed(std::int64_t order) const {
    if (order % order_ != 0) throw Error(Errc::InvalidArgument, "embedding into a non-multiple order");
    return {order, checked::mul(exp_, order / order_)};
  }

  std::string str() const { return "(" + std::to_string(order_) + "," + std::to_string(exp_) + ")"; }

  friend bool operator==(const Root& a, const Root& b) {
    return static_cast<__int128>(a.exp_) * b.order_ == static_cast<__int128>(b.exp_) * a.order_;
  }

  // Position on the circle; consistent with ==.
  friend std::weak_ordering operator<=>(const Root& a, const Root& b) {
    const __int128 lhs = static_cast<__int128>(a.exp_) * b.order_;
    const __int128 rhs = static_cast<__int128>(b.exp_) * a.order_;
    return lhs <=> rhs;
  }

  friend std::ostream& operator<<(std::ostream& os, const Root& r) { return os << r.str(); }

 private:
  std::int64_t order_ = 1;
  std::int64_t exp_ = 0;
};

inline Root mul(const Root& a, const Root& b) {
  const std::int64_t l = checked::lcm(a.order(), b.order());
  const std::int64_t ea = checked::mul(a.exp(), l / a.order());
  const std::int64_t eb = checked::mul(b.exp(), l / b.order());
  return {l, checked::mod(checked::add(ea, eb), l)};
}

inline Root pow(const Root& a, std::int64_t e) {
  const std::int64_t reduced = checked::mod(e, a.order());
  return {a.order(), static_cast<std::int64_t>(static_cast<__int128>(a.exp()) * reduced % a.order())};
}

inline Root inverse(const Root& a) { return pow(a, -1); }

inline Root operator*(const Root& a, const Root& b) { return mul(a, b); }

/// The unique t with t^m = lambda and t^n = nu, for coprime (n, m) and
/// lambda^n = nu^m. Built as lambda^a nu^b with a m + b n = 1.
inline Root canonical_t(std::int64_t n, std::int64_t m, const Root& lambda, const Root& nu) {
  if (n < 1 || m < 1 || std::gcd(n, m) != 1)
    throw Error(Errc::InvalidKnot, "canonical_t needs coprime positive n, m");
  if (pow(lambda, n) != pow(nu, m))
    throw Error(Errc::IncompatiblePair, "lambda^n != nu^m for lambda=" + lambda.str() + " nu=" + nu.str());
  const Bezout bz = xgcd(m, n);
  const Root t = mul(pow(lambda, bz.x), pow(nu, bz.y));
  if (pow(t, m) != lambda || pow(t, n) != nu)
    throw std::logic_error("canonical_t postcondition violated");
  return t;
}

}  // namespace knotchar
