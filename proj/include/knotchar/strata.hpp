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

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "knotchar/cyclotomic.hpp"
#include "knotchar/error.hpp"

namespace knotchar {

inline constexpr std::int64_t kDefaultMaxMn = 10000;

/// The torus knot group <a, b | a^n = b^m> with gcd(n, m) = 1, n, m >= 2.
struct TorusKnot {
  std::int64_t n = 2;
  std::int64_t m = 3;

  static TorusKnot make(std::int64_t n, std::int64_t m) {
    if (n < 2 || m < 2)
      throw Error(Errc::InvalidKnot, "need n, m >= 2 (got " + std::to_string(n) + ", " + std::to_string(m) + ")");
    if (std::gcd(n, m) != 1)
      throw Error(Errc::InvalidKnot, "n and m must be coprime (got " + std::to_string(n) + ", " + std::to_string(m) + ")");
    // 3 * n * m * r with r = 3 must stay below 2^31.
    if (n > (std::int64_t{1} << 31) / (9 * m))
      throw Error(Errc::InputTooLarge, "9*n*m exceeds 2^31");
    return {n, m};
  }

  std::int64_t mn() const { return n * m; }
  TorusKnot swapped() const { return {m, n}; }

  friend bool operator==(const TorusKnot&, const TorusKnot&) = default;
};

enum class StratumClass { TR, PartialCylinder, PartialMobius, Irr3a, Irr3bA, Irr3bB };

inline constexpr std::array<StratumClass, 6> kAllClasses = {
    StratumClass::TR,    StratumClass::PartialCylinder, StratumClass::PartialMobius,
    StratumClass::Irr3a, StratumClass::Irr3bA,          StratumClass::Irr3bB};

constexpr std::string_view to_string(StratumClass c) {
  switch (c) {
    case StratumClass::TR: return "TR";
    case StratumClass::PartialCylinder: return "PartialCylinder";
    case StratumClass::PartialMobius: return "PartialMobius";
    case StratumClass::Irr3a: return "Irr3a";
    case StratumClass::Irr3bA: return "Irr3bA";
    case StratumClass::Irr3bB: return "Irr3bB";
  }
  return "?";
}

enum class Topology { Triangle2D, OpenCylinder, OpenMobius, OrthantBlock3a, OpenTriangle3b };

constexpr std::string_view to_string(Topology t) {
  switch (t) {
    case Topology::Triangle2D: return "Triangle2D";
    case Topology::OpenCylinder: return "OpenCylinder";
    case Topology::OpenMobius: return "OpenMobius";
    case Topology::OrthantBlock3a: return "OrthantBlock3a";
    case Topology::OpenTriangle3b: return "OpenTriangle3b";
  }
  return "?";
}

enum class PointClass { Irr3aPoint, Irr3bPoint, ReduciblePoint };

constexpr std::string_view to_string(PointClass p) {
  switch (p) {
    case PointClass::Irr3aPoint: return "Irr3a";
    case PointClass::Irr3bPoint: return "Irr3b";
    case PointClass::ReduciblePoint: return "Reducible";
  }
  return "?";
}

/// One connected piece of a stratum, identified by its discrete eigenvalue
/// data in canonical form.
///
/// Irr3a / Irr3b: the eigenvalue multisets of A (in mu_3n) and B (in mu_3m),
/// ascending by exponent, plus the common value varpi = lambda^n = nu^m in
/// mu_3. For Irr3bA the repeated eigenvalue sits in `repeated`; likewise for
/// Irr3bB on the B side.
///
/// Partial*: the eigenvalue ratios eps in mu_n^+ and veps in mu_m^+ of the
/// two-dimensional summand, i.e. exponents in [1, order/2].
struct Component {
  StratumClass kind = StratumClass::TR;
  Topology topology = Topology::Triangle2D;
  std::vector<Root> a_eigenvalues;
  std::vector<Root> b_eigenvalues;
  std::optional<Root> repeated;
  std::optional<Root> varpi;
  std::optional<Root> a_ratio;
  std::optional<Root> b_ratio;

  std::string label() const {
    auto list = [](const std::vector<Root>& v) {
      std::string s = "{";
      for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
      return s + "}";
    };
    std::string s(to_string(kind));
    switch (kind) {
      case StratumClass::TR: break;
      case StratumClass::PartialCylinder:
      case StratumClass::PartialMobius: s += " eps=" + a_ratio->str() + " veps=" + b_ratio->str(); break;
      default: s += " A=" + list(a_eigenvalues) + " B=" + list(b_eigenvalues) + " varpi=" + varpi->str(); break;
    }
    return s;
  }

  friend bool operator==(const Component&, const Component&) = default;
};

namespace detail {

// Ascending triples e1 < e2 < e3 in [0, order) with e_i = w (mod 3) and
// e1 + e2 + e3 = 0 (mod order); order is a multiple of 3. These are the
// distinct-eigenvalue triples with product 1 and common cube class w.
template <class F>
void for_each_distinct_triple(std::int64_t order, std::int64_t w, F&& f) {
  for (std::int64_t e1 = w; e1 < order; e1 += 3) {
    for (std::int64_t e2 = e1 + 3; e2 < order; e2 += 3) {
      const std::int64_t e3 = checked::mod(-e1 - e2, order);
      if (e3 > e2) f(e1, e2, e3);
    }
  }
}

inline std::int64_t count_distinct_triples(std::int64_t order, std::int64_t w) {
  std::int64_t c = 0;
  for_each_distinct_triple(order, w, [&](auto, auto, auto) { ++c; });
  return c;
}

inline std::vector<Root> roots_of(std::int64_t order, std::initializer_list<std::int64_t> exps) {
  std::vector<Root> v;
  for (auto e : exps) v.emplace_back(order, e);
  return v;
}

// Representative of x and -x modulo `order` in [0, order/2].
inline std::int64_t fold(std::int64_t x, std::int64_t order) {
  x = checked::mod(x, order);
  return std::min(x, order - x);
}

}  // namespace detail

/// Closed-form component count of one stratum class.
inline std::int64_t count_components(const TorusKnot& k, StratumClass c) {
  const std::int64_t n = k.n, m = k.m;
  switch (c) {
    case StratumClass::TR: return 1;
    case StratumClass::PartialCylinder:
      if (n % 2 == 1 && m % 2 == 1) return (n - 1) * (m - 1) / 4;
      if (n % 2 == 0) return ((n - 1) / 2) * ((m - 1) / 2);
      return ((m - 1) / 2) * ((n - 1) / 2);
    case StratumClass::PartialMobius:
      if (n % 2 == 0) return (m - 1) / 2;
      if (m % 2 == 0) return (n - 1) / 2;
      return 0;
    case StratumClass::Irr3a: return (n - 1) * (n - 2) * (m - 1) * (m - 2) / 12;
    case StratumClass::Irr3bA: return (n - 1) * (m - 1) * (m - 2) / 2;
    case StratumClass::Irr3bB: return (n - 1) * (n - 2) * (m - 1) / 2;
  }
  return 0;
}

/// Visits every component of class `c` in canonical order.
template <class Visitor>
void for_each_component(const TorusKnot& k, StratumClass c, Visitor&& visit) {
  const std::int64_t n = k.n, m = k.m;
  using detail::roots_of;
  switch (c) {
    case StratumClass::TR: {
      Component comp;
      visit(std::move(comp));
      return;
    }
    case StratumClass::PartialCylinder:
    case StratumClass::PartialMobius: {
      for (std::int64_t a = 1; 2 * a <= n; ++a) {
        for (std::int64_t b = 1; 2 * b <= m; ++b) {
          const bool mobius = (2 * a == n) || (2 * b == m);
          if (mobius != (c == StratumClass::PartialMobius)) continue;
          Component comp;
          comp.kind = c;
          comp.topology = mobius ? Topology::OpenMobius : Topology::OpenCylinder;
          comp.a_ratio = Root(n, a);
          comp.b_ratio = Root(m, b);
          visit(std::move(comp));
        }
      }
      return;
    }
    case StratumClass::Irr3a: {
      for (std::int64_t w = 0; w < 3; ++w) {
        detail::for_each_distinct_triple(3 * n, w, [&](auto a1, auto a2, auto a3) {
          detail::for_each_distinct_triple(3 * m, w, [&](auto b1, auto b2, auto b3) {
            Component comp;
            comp.kind = c;
            comp.topology = Topology::OrthantBlock3a;
            comp.a_eigenvalues = roots_of(3 * n, {a1, a2, a3});
            comp.b_eigenvalues = roots_of(3 * m, {b1, b2, b3});
            comp.varpi = Root(3, w);
            visit(std::move(comp));
          });
        });
      }
      return;
    }
    case StratumClass::Irr3bA:
    case StratumClass::Irr3bB: {
      // The repeated side has lambda in mu_3q \ mu_3, eigenvalues {lambda, lambda, lambda^-2}.
      const bool on_a = c == StratumClass::Irr3bA;
      const std::int64_t q = on_a ? n : m;
      const std::int64_t p = on_a ? m : n;
      for (std::int64_t e = 0; e < 3 * q; ++e) {
        if (e % q == 0) continue;
        const std::int64_t w = e % 3;
        std::int64_t rep[3] = {e, e, checked::mod(-2 * e, 3 * q)};
        std::sort(rep, rep + 3);
        detail::for_each_distinct_triple(3 * p, w, [&](auto f1, auto f2, auto f3) {
          Component comp;
          comp.kind = c;
          comp.topology = Topology::OpenTriangle3b;
          auto repeated = roots_of(3 * q, {rep[0], rep[1], rep[2]});
          auto distinct = roots_of(3 * p, {f1, f2, f3});
          comp.a_eigenvalues = on_a ? repeated : distinct;
          comp.b_eigenvalues = on_a ? distinct : repeated;
          comp.repeated = Root(3 * q, e);
          comp.varpi = Root(3, w);
          visit(std::move(comp));
        });
      }
      return;
    }
  }
}

inline std::vector<Component> enumerate_components(const TorusKnot& k, StratumClass c) {
  std::vector<Component> out;
  for_each_component(k, c, [&](Component&& comp) { out.push_back(std::move(comp)); });
  return out;
}

/// Component count obtained by walking the eigenvalue data rather than
/// evaluating the closed forms. Cheap enough for large sweeps.
inline std::int64_t count_by_enumeration(const TorusKnot& k, StratumClass c) {
  const std::int64_t n = k.n, m = k.m;
  switch (c) {
    case StratumClass::TR: return 1;
    case StratumClass::PartialCylinder:
    case StratumClass::PartialMobius: {
      std::int64_t cnt = 0;
      for_each_component(k, c, [&](Component&&) { ++cnt; });
      return cnt;
    }
    case StratumClass::Irr3a: {
      std::int64_t total = 0;
      for (std::int64_t w = 0; w < 3; ++w)
        total += detail::count_distinct_triples(3 * n, w) * detail::count_distinct_triples(3 * m, w);
      return total;
    }
    case StratumClass::Irr3bA:
    case StratumClass::Irr3bB: {
      const bool on_a = c == StratumClass::Irr3bA;
      const std::int64_t q = on_a ? n : m;
      const std::int64_t p = on_a ? m : n;
      std::array<std::int64_t, 3> per_w{};
      for (std::int64_t w = 0; w < 3; ++w) per_w[w] = detail::count_distinct_triples(3 * p, w);
      std::int64_t total = 0;
      for (std::int64_t e = 0; e < 3 * q; ++e)
        if (e % q != 0) total += per_w[e % 3];
      return total;
    }
  }
  return 0;
}

/// Number of the six congruences k = 0, k' = 0, k + k' = 0 (mod m) and
/// (mod n) that hold.
inline int congruence_count(std::int64_t k, std::int64_t kp, const TorusKnot& knot) {
  int c = 0;
  for (const std::int64_t q : {knot.m, knot.n}) {
    c += (checked::mod(k, q) == 0);
    c += (checked::mod(kp, q) == 0);
    c += (checked::mod(k + kp, q) == 0);
  }
  return c;
}

/// Class of the totally reducible point with u1 = k/mn, u2 = k'/mn.
inline PointClass classify_pair(std::int64_t k, std::int64_t kp, const TorusKnot& knot) {
  const int c = congruence_count(k, kp, knot);
  if (c == 0) return PointClass::Irr3aPoint;
  if (c == 1) return PointClass::Irr3bPoint;
  return PointClass::ReduciblePoint;
}

/// For an Irr3b point: true if the single congruence is mod n (A has the
/// repeated eigenvalue), false if it is mod m.
inline bool irr3b_repeats_on_a(std::int64_t k, std::int64_t kp, const TorusKnot& knot) {
  return checked::mod(k, knot.n) == 0 || checked::mod(kp, knot.n) == 0 || checked::mod(k + kp, knot.n) == 0;
}

/// Closed-form number of TR points in the closure of the Irr3a (resp. Irr3b)
/// stratum.
inline std::int64_t count_tr_intersections(const TorusKnot& k, PointClass which) {
  const std::int64_t n = k.n, m = k.m;
  switch (which) {
    case PointClass::Irr3aPoint: return (n - 1) * (n - 2) * (m - 1) * (m - 2) / 2;
    case PointClass::Irr3bPoint: return 3 * (n - 1) * (m - 1) * (n + m - 4) / 2;
    case PointClass::ReduciblePoint: break;
  }
  throw Error(Errc::InvalidArgument, "count_tr_intersections takes Irr3a or Irr3b");
}

struct TrCensus {
  std::int64_t irr3a = 0;
  std::int64_t irr3b = 0;
  std::int64_t irr3b_a_repeated = 0;
  std::int64_t irr3b_b_repeated = 0;
  std::int64_t reducible = 0;

  std::int64_t total() const { return irr3a + irr3b + reducible; }
  friend bool operator==(const TrCensus&, const TrCensus&) = default;
};

inline void check_sweep(const TorusKnot& k, std::int64_t max_mn) {
  if (k.mn() > max_mn)
    throw Error(Errc::SweepTooLarge, "mn = " + std::to_string(k.mn()) + " exceeds bound " + std::to_string(max_mn));
}

/// Classifies every lattice point (a/mn, b/mn, 1 - (a+b)/mn) of the TR
/// triangle by brute-force congruence checks.
inline TrCensus brute_tr_census(const TorusKnot& k, std::int64_t max_mn = kDefaultMaxMn) {
  check_sweep(k, max_mn);
  const std::int64_t N = k.mn();
  TrCensus c;
  for (std::int64_t a = 0; a <= N; ++a) {
    for (std::int64_t b = 0; a + b <= N; ++b) {
      switch (classify_pair(a, b, k)) {
        case PointClass::Irr3aPoint: ++c.irr3a; break;
        case PointClass::Irr3bPoint:
          ++c.irr3b;
          ++(irr3b_repeats_on_a(a, b, k) ? c.irr3b_a_repeated : c.irr3b_b_repeated);
          break;
        case PointClass::ReduciblePoint: ++c.reducible; break;
      }
    }
  }
  return c;
}

}  // namespace knotchar
