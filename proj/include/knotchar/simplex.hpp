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
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "knotchar/cyclotomic.hpp"
#include "knotchar/error.hpp"
#include "knotchar/rational.hpp"
#include "knotchar/strata.hpp"

namespace knotchar {

/// Normalized lift (s_1, ..., s_r): ascending, s_r <= s_1 + 1, sum zero.
struct Lift {
  std::vector<Rational> s;
  friend bool operator==(const Lift&, const Lift&) = default;
};

/// Barycentric point of the (r-1)-simplex: u_i >= 0, sum one, with
/// u_i = s_{i+1} - s_i and u_r = s_1 + 1 - s_r.
struct SimplexPoint {
  std::vector<Rational> u;
  friend bool operator==(const SimplexPoint&, const SimplexPoint&) = default;
  friend auto operator<=>(const SimplexPoint&, const SimplexPoint&) = default;
};

namespace detail {

// x holds exponents in units of 1/M (residues in [0, M)) whose sum is 0 mod
// M. On return x holds the normalized lift numerators: s_i = x_i / M.
inline void normalize_lift(std::span<std::int64_t> x, std::int64_t M) {
  const auto r = static_cast<std::int64_t>(x.size());
  std::sort(x.begin(), x.end());
  std::int64_t sum = 0;
  for (auto v : x) sum = checked::add(sum, v);
  if (sum % M != 0) throw Error(Errc::ProductNotOne, "product of the roots is not 1");
  const std::int64_t q = sum / M;
  // Starting the cyclic order at index c raises the sum by c*M; a uniform
  // integer shift z must then cancel it, so exactly one c in [0, r) works.
  std::int64_t c = -1;
  for (std::int64_t cand = 0; cand < r; ++cand) {
    if ((q + cand) % r != 0) continue;
    if (c >= 0) throw std::logic_error("normalized lift is not unique");
    c = cand;
  }
  if (c < 0) throw std::logic_error("no normalized lift");
  std::rotate(x.begin(), x.begin() + c, x.end());
  for (std::int64_t i = r - c; i < r; ++i) x[i] = checked::add(x[i], M);
  const std::int64_t z = (q + c) / r;
  const std::int64_t shift = checked::mul(z, M);
  for (auto& v : x) v -= shift;
}

// Gaps (u-numerators in units of 1/M) of a normalized lift.
inline void lift_gaps(std::span<const std::int64_t> s, std::int64_t M, std::span<std::int64_t> gaps) {
  const std::size_t r = s.size();
  for (std::size_t i = 0; i + 1 < r; ++i) gaps[i] = s[i + 1] - s[i];
  gaps[r - 1] = s[0] + M - s[r - 1];
}

// Gaps of a 3-element multiset, without materializing the shift. The
// normalized order starts at index c = -q mod 3 of the sorted residues.
inline std::array<std::int64_t, 3> simplex_gaps3(std::array<std::int64_t, 3> x, std::int64_t M) {
  for (auto& v : x) v = checked::mod(v, M);
  if (x[0] > x[1]) std::swap(x[0], x[1]);
  if (x[1] > x[2]) std::swap(x[1], x[2]);
  if (x[0] > x[1]) std::swap(x[0], x[1]);
  const std::int64_t sum = x[0] + x[1] + x[2];
  if (sum % M != 0) throw Error(Errc::ProductNotOne, "product of the roots is not 1");
  const std::int64_t c = (3 - sum / M % 3) % 3;
  std::array<std::int64_t, 3> y{};
  for (std::int64_t i = 0; i < 3; ++i) y[i] = i + c < 3 ? x[i + c] : x[i + c - 3] + M;
  return {y[1] - y[0], y[2] - y[1], y[0] + M - y[2]};
}

inline std::int64_t common_order(std::span<const Root> roots) {
  std::int64_t l = 1;
  for (const auto& r : roots) l = checked::lcm(l, r.order());
  return l;
}

}  // namespace detail

/// Normalized lift of a multiset of roots with product one.
inline Lift lift_of(std::span<const Root> roots) {
  if (roots.empty()) throw Error(Errc::InvalidArgument, "empty multiset");
  const std::int64_t L = detail::common_order(roots);
  std::vector<std::int64_t> x;
  x.reserve(roots.size());
  for (const auto& r : roots) x.push_back(checked::mul(r.exp(), L / r.order()));
  detail::normalize_lift(x, L);
  Lift lift;
  for (auto v : x) lift.s.emplace_back(v, L);
  return lift;
}

inline SimplexPoint to_simplex(const Lift& lift) {
  const std::size_t r = lift.s.size();
  SimplexPoint p;
  for (std::size_t i = 0; i + 1 < r; ++i) p.u.push_back(lift.s[i + 1] - lift.s[i]);
  p.u.push_back(lift.s[0] + 1 - lift.s[r - 1]);
  return p;
}

/// Position in the TR simplex of a multiset of roots with product one.
/// Independent of the input order.
inline SimplexPoint to_simplex(std::span<const Root> roots) { return to_simplex(lift_of(roots)); }

/// Inverse of to_simplex: s_1 = -sum_{i<r} (r-i)/r u_i, s_i = s_1 + u_1 + ... + u_{i-1}.
inline Lift lift_from_simplex(const SimplexPoint& p) {
  const auto r = static_cast<std::int64_t>(p.u.size());
  Rational s1;
  for (std::int64_t i = 1; i < r; ++i) s1 -= Rational(r - i, r) * p.u[i - 1];
  Lift lift;
  lift.s.push_back(s1);
  for (std::int64_t i = 1; i < r; ++i) lift.s.push_back(lift.s.back() + p.u[i - 1]);
  return lift;
}

/// exp(2 pi i s_k) for each lift coordinate.
inline std::vector<Root> roots_from_lift(const Lift& lift) {
  std::vector<Root> out;
  for (const auto& s : lift.s) out.emplace_back(s.den(), s.num());
  return out;
}

inline bool is_valid(const Lift& lift) {
  if (lift.s.empty()) return false;
  Rational sum;
  for (std::size_t i = 0; i < lift.s.size(); ++i) {
    sum += lift.s[i];
    if (i + 1 < lift.s.size() && lift.s[i] > lift.s[i + 1]) return false;
  }
  return sum == 0 && lift.s.back() <= lift.s.front() + 1;
}

inline bool is_valid(const SimplexPoint& p) {
  if (p.u.empty()) return false;
  Rational sum;
  for (const auto& u : p.u) {
    if (u < 0) return false;
    sum += u;
  }
  return sum == 1;
}

/// Gluing map of the TR bundle over S^1 at the branch cut, on lifts:
/// (s_1..s_r) -> (s_r - 1 + 1/r, s_1 + 1/r, ..., s_{r-1} + 1/r).
inline Lift glue_lift(const Lift& lift) {
  const auto r = static_cast<std::int64_t>(lift.s.size());
  const Rational step(1, r);
  Lift out;
  out.s.push_back(lift.s.back() - 1 + step);
  for (std::int64_t i = 0; i + 1 < r; ++i) out.s.push_back(lift.s[i] + step);
  return out;
}

struct Monodromy {
  // New coordinate i is old coordinate permutation[i].
  std::vector<int> permutation;
  bool orientable = true;
};

inline int permutation_sign(const std::vector<int>& p) {
  std::vector<bool> seen(p.size(), false);
  int sign = 1;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i]) continue;
    std::size_t len = 0;
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      ++len;
    }
    if (len % 2 == 0) sign = -sign;
  }
  return sign;
}

/// Monodromy (u_1..u_r) -> (u_r, u_1, ..., u_{r-1}) of the TR bundle and
/// whether it preserves the orientation of the fiber.
inline Monodromy monodromy(int r) {
  if (r < 2) throw Error(Errc::InvalidArgument, "monodromy needs r >= 2");
  Monodromy md;
  md.permutation.push_back(r - 1);
  for (int i = 0; i + 1 < r; ++i) md.permutation.push_back(i);
  md.orientable = permutation_sign(md.permutation) == 1;
  return md;
}

inline SimplexPoint apply(const Monodromy& md, const SimplexPoint& p) {
  SimplexPoint q;
  for (int src : md.permutation) q.u.push_back(p.u[static_cast<std::size_t>(src)]);
  return q;
}

// ---------------------------------------------------------------------------
// Circles {t, t alpha, t^-2 alpha^-1} in the SU(3) TR triangle.

inline void check_circle(const TorusKnot& knot, std::int64_t k) {
  if (checked::mod(k, knot.n) == 0 || checked::mod(k, knot.m) == 0)
    throw Error(Errc::DegenerateCircle,
                "alpha = exp(2 pi i " + std::to_string(k) + "/" + std::to_string(knot.mn()) +
                    ") has alpha^m = 1 or alpha^n = 1");
}

/// Visits the 3mn rational points t = exp(2 pi i j / 3mn) of circle k as
/// f(j, a, b, boundary) with u1 = a/mn, u2 = b/mn.
template <class F>
void for_each_circle_point(const TorusKnot& knot, std::int64_t k, F&& f) {
  check_circle(knot, k);
  const std::int64_t N = knot.mn();
  const std::int64_t M = 3 * N;
  const std::int64_t kk = checked::mod(k, N);
  for (std::int64_t j = 0; j < M; ++j) {
    const auto g = detail::simplex_gaps3({j, j + 3 * kk, -2 * j - 3 * kk}, M);
    const bool boundary = g[0] == 0 || g[1] == 0 || g[2] == 0;
    f(j, g[0] / 3, g[1] / 3, boundary);
  }
}

struct CirclePath {
  TorusKnot knot;
  std::int64_t k = 0;
  // Sampled points for j = 0..3mn-1 followed by the first one again.
  std::vector<SimplexPoint> vertices;
  std::vector<std::int64_t> boundary_samples;
  std::vector<SimplexPoint> boundary_hits;
  // Maximal straight pieces, starting at the first boundary hit.
  std::vector<std::pair<SimplexPoint, SimplexPoint>> segments;
};

namespace detail {

inline bool collinear_same_direction(const SimplexPoint& a, const SimplexPoint& b, const SimplexPoint& c) {
  const Rational dx1 = b.u[0] - a.u[0], dy1 = b.u[1] - a.u[1];
  const Rational dx2 = c.u[0] - b.u[0], dy2 = c.u[1] - b.u[1];
  if (dx1 * dy2 - dy1 * dx2 != 0) return false;
  return dx1 * dx2 + dy1 * dy2 > 0;
}

}  // namespace detail

inline CirclePath circle_path(const TorusKnot& knot, std::int64_t k) {
  check_circle(knot, k);
  const std::int64_t N = knot.mn();
  const std::int64_t M = 3 * N;
  CirclePath path;
  path.knot = knot;
  path.k = checked::mod(k, N);
  for (std::int64_t j = 0; j < M; ++j) {
    const std::array<Root, 3> triple = {Root(M, j), Root(M, j + 3 * path.k), Root(M, -2 * j - 3 * path.k)};
    path.vertices.push_back(to_simplex(triple));
    if (triple[2] == triple[0] || triple[2] == triple[1]) {
      path.boundary_samples.push_back(j);
      path.boundary_hits.push_back(path.vertices.back());
    }
  }
  path.vertices.push_back(path.vertices.front());
  if (path.boundary_hits.size() != 6)
    throw std::logic_error("circle " + std::to_string(path.k) + " has " + std::to_string(path.boundary_hits.size()) +
                           " boundary hits");

  const auto at = [&](std::int64_t i) -> const SimplexPoint& { return path.vertices[checked::mod(i, M)]; };
  const std::int64_t start = path.boundary_samples.front();
  std::int64_t seg_start = start;
  for (std::int64_t i = start + 1; i <= start + M; ++i) {
    if (i == start + M || !detail::collinear_same_direction(at(i - 1), at(i), at(i + 1))) {
      path.segments.emplace_back(at(seg_start), at(i));
      seg_start = i;
    }
  }
  return path;
}

struct CircleCensus {
  std::int64_t irr3a = 0;
  std::int64_t irr3b = 0;
  std::int64_t reducible = 0;
  std::int64_t boundary = 0;  // reducible points on the sides of T

  std::int64_t total() const { return irr3a + irr3b + reducible; }
  friend bool operator==(const CircleCensus&, const CircleCensus&) = default;
};

/// Classifies the 3mn rational points of circle k by eigenvalue coincidences.
inline CircleCensus circle_point_census(const TorusKnot& knot, std::int64_t k) {
  CircleCensus c;
  for_each_circle_point(knot, k, [&](std::int64_t, std::int64_t a, std::int64_t b, bool boundary) {
    switch (classify_pair(a, b, knot)) {
      case PointClass::Irr3aPoint: ++c.irr3a; break;
      case PointClass::Irr3bPoint: ++c.irr3b; break;
      case PointClass::ReduciblePoint: ++c.reducible; break;
    }
    c.boundary += boundary;
  });
  if (c.total() != 3 * knot.mn() || c.boundary != 6) throw std::logic_error("circle census totals inconsistent");
  return c;
}

/// Closed forms for n, m odd: 3mn - 6m - 6n + 12 and 6m + 6n - 24.
inline CircleCensus circle_census_formula(const TorusKnot& knot) {
  const std::int64_t n = knot.n, m = knot.m;
  CircleCensus c;
  c.irr3a = 3 * m * n - 6 * m - 6 * n + 12;
  c.irr3b = 6 * m + 6 * n - 24;
  c.reducible = 3 * m * n - c.irr3a - c.irr3b;
  c.boundary = 6;
  return c;
}

}  // namespace knotchar
