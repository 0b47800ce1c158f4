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
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "knotchar/cyclotomic.hpp"
#include "knotchar/error.hpp"
#include "knotchar/simplex.hpp"
#include "knotchar/strata.hpp"

namespace knotchar {

/// Rational point (a/mn, b/mn, 1 - (a+b)/mn) of the TR triangle.
struct TrPoint {
  std::int64_t a = 0;
  std::int64_t b = 0;
  PointClass cls = PointClass::ReduciblePoint;
};

/// Circle {t, t alpha, t^-2 alpha^-1}, alpha = exp(2 pi i k / mn), with k
/// canonical under alpha -> alpha^-1.
struct Circle {
  std::int64_t k = 0;
  std::size_t owner = 0;  // partial component it bounds
};

/// Irreducible component -> TR vertex of its closure. `label` is the
/// bijection index into kPermutations (Irr3a) or the vertex j (Irr3b).
struct ComponentPointEdge {
  std::size_t component = 0;
  std::size_t point = 0;
  int label = 0;
};

/// One-dimensional piece of the closure of an irreducible component lying in
/// the partial component `partial`; (i, j) names the surviving 1-dimensional
/// summand (lambda_i, nu_j). circle[e] is a boundary circle of `partial`
/// through endpoint e (or -1), circle_count[e] how many there are.
struct Segment {
  std::size_t component = 0;
  std::size_t partial = 0;
  int i = 0;
  int j = 0;
  std::array<std::size_t, 2> endpoints{};
  std::array<std::int32_t, 2> circle{-1, -1};
  std::array<std::uint8_t, 2> circle_count{};

  bool attached() const { return circle_count[0] > 0 && circle_count[1] > 0; }
};

struct CirclePointEdge {
  std::size_t circle = 0;
  std::size_t point = 0;
  std::int64_t multiplicity = 0;  // number of t in mu_3mn landing on the point
};

inline constexpr std::array<std::array<int, 3>, 6> kPermutations = {
    {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

struct IncidenceGraph {
  TorusKnot knot;
  std::vector<Component> components;
  std::vector<TrPoint> points;
  std::vector<Circle> circles;
  std::vector<ComponentPointEdge> component_points;  // grouped by component
  std::vector<Segment> segments;                     // grouped by component
  std::vector<std::pair<std::size_t, std::size_t>> partial_circles;  // (component, circle)
  std::vector<CirclePointEdge> circle_points;

  std::vector<std::int32_t> circle_index;  // canonical k -> circle, or -1
  std::vector<std::size_t> point_circle_offsets;
  std::vector<std::size_t> point_circle_list;

  // Points are stored row by row: a ascending, then b in [0, mn - a].
  std::size_t point_at(std::int64_t a, std::int64_t b) const {
    const std::int64_t N = knot.mn();
    if (a < 0 || b < 0 || a + b > N) throw std::logic_error("not a lattice point of T");
    return static_cast<std::size_t>(a * (N + 1) - a * (a - 1) / 2 + b);
  }

  // Circles through (a, b) from the eigenvalue ratios of its roots: t2/t1,
  // t3/t2 and t3/t1 are exp(2 pi i k/mn) for k = a, b, a + b. Degenerate
  // ratios are skipped; a circle may appear twice.
  template <class F>
  void for_each_circle_by_ratio(std::int64_t a, std::int64_t b, F&& f) const {
    for (const std::int64_t k : {a, b, a + b}) {
      if (k % knot.n == 0 || k % knot.m == 0) continue;
      const auto c = circle_index[static_cast<std::size_t>(detail::fold(k, knot.mn()))];
      if (c >= 0) f(static_cast<std::size_t>(c));
    }
  }

  std::span<const std::size_t> circles_through(std::size_t point) const {
    return {point_circle_list.data() + point_circle_offsets[point],
            point_circle_offsets[point + 1] - point_circle_offsets[point]};
  }

  std::string edge_label(const ComponentPointEdge& e) const {
    if (components[e.component].kind == StratumClass::Irr3a) {
      const auto& s = kPermutations[static_cast<std::size_t>(e.label)];
      return "sigma=" + std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]);
    }
    return "v=" + std::to_string(e.label);
  }
};

inline std::int64_t canonical_circle(std::int64_t k, std::int64_t mn) { return detail::fold(k, mn); }

namespace detail {

// Least k in [0, nm) with k = x (mod n), k = y (mod m).
inline std::int64_t crt(std::int64_t x, std::int64_t n, std::int64_t y, std::int64_t m) {
  const Bezout bz = xgcd(n, m);
  const std::int64_t t = checked::mod(checked::mul(checked::mod(y - x, m), checked::mod(bz.x, m)), m);
  return checked::mod(x + n * t, n * m);
}

// Lattice coordinates (a, b) of {t_1, t_2, t_3}, exponents in units of 1/3mn.
inline std::pair<std::int64_t, std::int64_t> tr_key(const std::array<std::int64_t, 3>& t, std::int64_t mn) {
  const auto g = simplex_gaps3(t, 3 * mn);
  if (g[0] % 3 != 0 || g[1] % 3 != 0) throw std::logic_error("TR point off the 1/mn lattice");
  return {g[0] / 3, g[1] / 3};
}

inline bool is_partial(StratumClass c) { return c == StratumClass::PartialCylinder || c == StratumClass::PartialMobius; }
inline bool is_irr3b(StratumClass c) { return c == StratumClass::Irr3bA || c == StratumClass::Irr3bB; }

}  // namespace detail

/// Builds the closure-incidence graph of the SU(3) stratification.
inline IncidenceGraph build_incidence(const TorusKnot& knot, std::int64_t max_mn = kDefaultMaxMn) {
  check_sweep(knot, max_mn);
  const std::int64_t n = knot.n, m = knot.m, N = knot.mn();
  IncidenceGraph g;
  g.knot = knot;

  std::int64_t n_comp = 0;
  for (auto c : kAllClasses) n_comp += count_components(knot, c);
  g.components.reserve(static_cast<std::size_t>(n_comp));
  for (auto c : kAllClasses) for_each_component(knot, c, [&](Component&& comp) { g.components.push_back(std::move(comp)); });

  g.points.reserve(static_cast<std::size_t>((N + 1) * (N + 2) / 2));
  for (std::int64_t a = 0; a <= N; ++a)
    for (std::int64_t b = 0; a + b <= N; ++b) g.points.push_back({a, b, classify_pair(a, b, knot)});

  // Partial components and their boundary circles.
  const std::int64_t stride = m / 2 + 1;
  std::vector<std::int64_t> partial_at(static_cast<std::size_t>((n / 2 + 1) * stride), -1);
  g.circle_index.assign(static_cast<std::size_t>(N), -1);
  for (std::size_t ci = 0; ci < g.components.size(); ++ci) {
    const auto& comp = g.components[ci];
    if (!detail::is_partial(comp.kind)) continue;
    const std::int64_t ea = comp.a_ratio->exp(), eb = comp.b_ratio->exp();
    partial_at[static_cast<std::size_t>(ea * stride + eb)] = static_cast<std::int64_t>(ci);
    for (const std::int64_t sb : {eb, -eb}) {
      const std::int64_t k = canonical_circle(detail::crt(ea, n, sb, m), N);
      auto& slot = g.circle_index[static_cast<std::size_t>(k)];
      if (slot >= 0) {
        if (g.circles[static_cast<std::size_t>(slot)].owner != ci)
          throw std::logic_error("circle " + std::to_string(k) + " bounds two partial components");
        continue;
      }
      slot = static_cast<std::int32_t>(g.circles.size());
      g.circles.push_back({k, ci});
      g.partial_circles.emplace_back(ci, static_cast<std::size_t>(slot));
    }
  }

  // Rational points on each circle.
  {
    std::vector<std::int64_t> count(g.points.size(), 0);
    std::vector<std::size_t> touched;
    std::vector<std::size_t> offsets(g.points.size() + 1, 0);
    g.circle_points.reserve(g.circles.size() * static_cast<std::size_t>(3 * N));
    for (std::size_t c = 0; c < g.circles.size(); ++c) {
      touched.clear();
      for_each_circle_point(knot, g.circles[c].k, [&](std::int64_t, std::int64_t a, std::int64_t b, bool) {
        const std::size_t p = g.point_at(a, b);
        if (count[p]++ == 0) touched.push_back(p);
      });
      std::sort(touched.begin(), touched.end());
      for (auto p : touched) {
        g.circle_points.push_back({c, p, count[p]});
        ++offsets[p + 1];
        count[p] = 0;
      }
    }
    std::partial_sum(offsets.begin(), offsets.end(), offsets.begin());
    g.point_circle_offsets = offsets;
    g.point_circle_list.resize(g.circle_points.size());
    for (const auto& e : g.circle_points) g.point_circle_list[offsets[e.point]++] = e.circle;
  }

  const auto partial_of = [&](std::int64_t da, std::int64_t db) -> std::size_t {
    const std::int64_t ea = detail::fold(da, n), eb = detail::fold(db, m);
    if (ea == 0 || eb == 0) throw std::logic_error("segment summand is reducible");
    const auto idx = partial_at[static_cast<std::size_t>(ea * stride + eb)];
    if (idx < 0) throw std::logic_error("missing partial component");
    return static_cast<std::size_t>(idx);
  };
  const auto add_segment = [&](std::size_t comp, std::size_t partial, int i, int j, std::size_t p, std::size_t q) {
    Segment s{comp, partial, i, j, {p, q}};
    for (std::size_t e = 0; e < 2; ++e) {
      const auto& pt = g.points[s.endpoints[e]];
      g.for_each_circle_by_ratio(pt.a, pt.b, [&](std::size_t c) {
        if (g.circles[c].owner != partial) return;
        if (s.circle_count[e]++ == 0) s.circle[e] = static_cast<std::int32_t>(c);
      });
    }
    g.segments.push_back(s);
  };

  const auto n3a = static_cast<std::size_t>(count_components(knot, StratumClass::Irr3a));
  const auto n3b = static_cast<std::size_t>(count_components(knot, StratumClass::Irr3bA) +
                                            count_components(knot, StratumClass::Irr3bB));
  g.component_points.reserve(6 * n3a + 3 * n3b);
  g.segments.reserve(9 * n3a + 3 * n3b);

  // t = lambda^x nu^y with x m + y n = 1; exponents in units of 1/3mn.
  const Bezout bz = xgcd(m, n);
  const std::int64_t xm = checked::mod(checked::mul(bz.x, m), 3 * N);
  const std::int64_t yn = checked::mod(checked::mul(bz.y, n), 3 * N);
  const auto t_exp = [&](std::int64_t e, std::int64_t f) { return (xm * e + yn * f) % (3 * N); };

  for (std::size_t ci = 0; ci < g.components.size(); ++ci) {
    const auto& comp = g.components[ci];
    if (comp.kind == StratumClass::Irr3a) {
      std::array<std::int64_t, 3> e{}, f{};
      for (std::size_t i = 0; i < 3; ++i) {
        e[i] = comp.a_eigenvalues[i].exp();
        f[i] = comp.b_eigenvalues[i].exp();
      }
      std::array<std::size_t, 6> vertex{};
      for (std::size_t s = 0; s < 6; ++s) {
        const auto& sg = kPermutations[s];
        const auto [a, b] = detail::tr_key({t_exp(e[0], f[sg[0]]), t_exp(e[1], f[sg[1]]), t_exp(e[2], f[sg[2]])}, N);
        vertex[s] = g.point_at(a, b);
        g.component_points.push_back({ci, vertex[s], static_cast<int>(s)});
      }
      for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
          const auto p = static_cast<std::size_t>((i + 1) % 3), q = static_cast<std::size_t>((i + 2) % 3);
          const auto r = static_cast<std::size_t>((j + 1) % 3), s = static_cast<std::size_t>((j + 2) % 3);
          std::array<std::size_t, 2> ends{};
          std::size_t found = 0;
          for (std::size_t v = 0; v < 6; ++v)
            if (kPermutations[v][static_cast<std::size_t>(i)] == j) ends[found++] = vertex[v];
          // Eigenvalue ratios of the 2-dimensional summand, in units of 1/n and 1/m.
          add_segment(ci, partial_of((e[p] - e[q]) / 3, (f[r] - f[s]) / 3), i, j, ends[0], ends[1]);
        }
      }
    } else if (detail::is_irr3b(comp.kind)) {
      const bool on_a = comp.kind == StratumClass::Irr3bA;
      const std::int64_t q = on_a ? n : m;
      const std::int64_t lam = comp.repeated->exp();
      const std::int64_t lam2 = checked::mod(-2 * lam, 3 * q);
      const auto& other = on_a ? comp.b_eigenvalues : comp.a_eigenvalues;
      std::array<std::int64_t, 3> nu{};
      for (std::size_t i = 0; i < 3; ++i) nu[i] = other[i].exp();
      const auto texp = [&](std::int64_t rep_side, std::int64_t other_side) {
        return on_a ? t_exp(rep_side, other_side) : t_exp(other_side, rep_side);
      };
      // Vertex j: lambda^-2 paired with nu_j, lambda with the other two.
      std::array<std::size_t, 3> vertex{};
      for (std::size_t j = 0; j < 3; ++j) {
        const auto [a, b] =
            detail::tr_key({texp(lam2, nu[j]), texp(lam, nu[(j + 1) % 3]), texp(lam, nu[(j + 2) % 3])}, N);
        vertex[j] = g.point_at(a, b);
        g.component_points.push_back({ci, vertex[j], static_cast<int>(j)});
      }
      // Edge j keeps the summand (lambda, nu_j) and joins the other two vertices.
      for (std::size_t j = 0; j < 3; ++j) {
        const std::size_t p = (j + 1) % 3, r = (j + 2) % 3;
        const std::int64_t drep = (lam2 - lam) / 3;
        const std::int64_t doth = (nu[r] - nu[p]) / 3;
        const std::size_t partial = on_a ? partial_of(drep, doth) : partial_of(doth, drep);
        add_segment(ci, partial, 0, static_cast<int>(j), vertex[p], vertex[r]);
      }
    }
  }
  return g;
}

// ---------------------------------------------------------------------------
// Invariant checks.

struct InvariantCheck {
  std::string name;
  bool pass = true;
  std::int64_t checked = 0;
  std::string counterexample;  // first failure
};

struct IncidenceReport {
  std::vector<InvariantCheck> checks;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.pass; });
  }
  const InvariantCheck* find(std::string_view name) const {
    for (const auto& c : checks)
      if (c.name == name) return &c;
    return nullptr;
  }
};

namespace detail {

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { c_.name = std::move(name); }

  template <class Why>
  void expect(bool ok, Why&& why) {
    ++c_.checked;
    if (!ok && c_.pass) {
      c_.pass = false;
      c_.counterexample = why();
    }
  }
  InvariantCheck done() { return std::move(c_); }

 private:
  InvariantCheck c_;
};

inline std::string point_str(const IncidenceGraph& g, std::size_t p) {
  const auto& pt = g.points[p];
  return "(" + std::to_string(pt.a) + "," + std::to_string(pt.b) + ")/" + std::to_string(g.knot.mn());
}

// Connected, 3-regular, bipartite, 9 edges on 6 vertices.
inline bool is_k33(std::span<const std::pair<int, int>> edges) {
  if (edges.size() != 9) return false;
  std::array<int, 6> deg{};
  std::array<int, 6> side{-1, -1, -1, -1, -1, -1};
  for (auto [u, v] : edges) {
    if (u == v || u < 0 || v < 0 || u >= 6 || v >= 6) return false;
    ++deg[u];
    ++deg[v];
  }
  for (int d : deg)
    if (d != 3) return false;
  side[0] = 0;
  for (int pass = 0; pass < 6; ++pass)
    for (auto [u, v] : edges) {
      if (side[u] >= 0 && side[v] < 0) side[v] = 1 - side[u];
      if (side[v] >= 0 && side[u] < 0) side[u] = 1 - side[v];
    }
  for (auto [u, v] : edges)
    if (side[u] < 0 || side[v] < 0 || side[u] == side[v]) return false;
  return true;
}

// The segments with j != 0 close up into one 6-cycle; those with j = 0 are a
// perfect matching.
inline bool cycle_plus_matching(std::span<const std::pair<int, int>> edges, std::span<const Segment> segs) {
  std::array<std::array<int, 2>, 6> adj{};
  std::array<int, 6> deg{}, matched{};
  for (std::size_t e = 0; e < edges.size(); ++e) {
    auto [u, v] = edges[e];
    if (segs[e].j == 0) {
      ++matched[u];
      ++matched[v];
    } else {
      if (deg[u] == 2 || deg[v] == 2) return false;
      adj[u][deg[u]++] = v;
      adj[v][deg[v]++] = u;
    }
  }
  for (int v = 0; v < 6; ++v)
    if (matched[v] != 1 || deg[v] != 2) return false;
  int prev = -1, cur = 0, len = 0;
  do {
    const int next = adj[cur][0] != prev ? adj[cur][0] : adj[cur][1];
    prev = cur;
    cur = next;
    ++len;
  } while (cur != 0 && len <= 6);
  return len == 6;
}

template <class Edge>
std::vector<std::size_t> offsets_by_component(const std::vector<Edge>& edges, std::size_t n_comp) {
  std::vector<std::size_t> off(n_comp + 1, 0);
  for (const auto& e : edges) ++off[e.component + 1];
  std::partial_sum(off.begin(), off.end(), off.begin());
  return off;
}

}  // namespace detail

/// Evaluates every multiplicity claim on the graph and records the first
/// counterexample of each.
inline IncidenceReport check_invariants(const IncidenceGraph& g) {
  using detail::CheckBuilder;
  const auto& knot = g.knot;
  const std::size_t nc = g.components.size();
  const auto pt_off = detail::offsets_by_component(g.component_points, nc);
  const auto seg_off = detail::offsets_by_component(g.segments, nc);

  CheckBuilder a_points("irr3a_tr_points"), a_segments("irr3a_segments"), a_graph("irr3a_segment_graph");
  CheckBuilder b_points("irr3b_tr_points"), b_circles("irr3b_circle_attachments");
  std::vector<std::size_t> pts;
  std::vector<std::pair<int, int>> edges;
  for (std::size_t ci = 0; ci < nc; ++ci) {
    const auto& comp = g.components[ci];
    if (comp.kind != StratumClass::Irr3a && !detail::is_irr3b(comp.kind)) continue;
    pts.clear();
    for (std::size_t e = pt_off[ci]; e < pt_off[ci + 1]; ++e) pts.push_back(g.component_points[e].point);
    const std::vector<std::size_t> by_label = pts;
    std::sort(pts.begin(), pts.end());
    const bool distinct = std::adjacent_find(pts.begin(), pts.end()) == pts.end();
    const std::span<const Segment> segs(g.segments.data() + seg_off[ci], seg_off[ci + 1] - seg_off[ci]);
    std::int64_t attached = 0;
    for (const auto& s : segs) attached += s.attached();

    if (comp.kind == StratumClass::Irr3a) {
      bool classes_ok = true;
      for (auto p : pts) classes_ok &= g.points[p].cls == PointClass::Irr3aPoint;
      a_points.expect(pts.size() == 6 && distinct && classes_ok,
                      [&] { return comp.label() + ": " + std::to_string(pts.size()) + " distinct Irr3a TR points expected 6"; });
      a_segments.expect(segs.size() == 9 && attached == 9,
                        [&] { return comp.label() + ": " + std::to_string(attached) + " attached segments"; });
      edges.clear();
      for (const auto& s : segs) {
        const auto v0 = std::find(by_label.begin(), by_label.end(), s.endpoints[0]) - by_label.begin();
        const auto v1 = std::find(by_label.begin(), by_label.end(), s.endpoints[1]) - by_label.begin();
        edges.emplace_back(static_cast<int>(v0), static_cast<int>(v1));
      }
      a_graph.expect(distinct && detail::is_k33(edges) && detail::cycle_plus_matching(edges, segs),
                     [&] { return comp.label() + ": segments do not form a 6-cycle plus a matching"; });
    } else {
      bool classes_ok = true;
      for (auto p : pts) {
        const auto& pt = g.points[p];
        classes_ok &= pt.cls == PointClass::Irr3bPoint &&
                      irr3b_repeats_on_a(pt.a, pt.b, knot) == (comp.kind == StratumClass::Irr3bA);
      }
      b_points.expect(pts.size() == 3 && distinct && classes_ok,
                      [&] { return comp.label() + ": " + std::to_string(pts.size()) + " TR points"; });
      b_circles.expect(segs.size() == 3 && attached == 3,
                       [&] { return comp.label() + ": " + std::to_string(attached) + " circle attachments"; });
    }
  }

  // Point-centric cross-check: each 3a / 3b point is a vertex of exactly one
  // component.
  CheckBuilder owners("tr_point_owners");
  {
    std::vector<std::int64_t> owner_count(g.points.size(), 0);
    for (const auto& e : g.component_points) ++owner_count[e.point];
    for (std::size_t p = 0; p < g.points.size(); ++p) {
      if (g.points[p].cls == PointClass::ReduciblePoint) continue;
      owners.expect(owner_count[p] == 1, [&] {
        return detail::point_str(g, p) + " is a vertex of " + std::to_string(owner_count[p]) + " components";
      });
    }
  }

  // Circles through a point are counted with multiplicity: a circle is
  // immersed in T and may cross itself at a rational point.
  CheckBuilder on3a("irr3a_points_on_3_circles"), on3b("irr3b_points_on_3_circles");
  {
    std::vector<std::int64_t> passes(g.points.size(), 0);
    for (const auto& e : g.circle_points) passes[e.point] += e.multiplicity;
    for (std::size_t p = 0; p < g.points.size(); ++p) {
      const auto cls = g.points[p].cls;
      if (cls == PointClass::ReduciblePoint) continue;
      auto& chk = cls == PointClass::Irr3aPoint ? on3a : on3b;
      chk.expect(passes[p] == 3, [&] {
        return std::string(to_string(cls)) + " point " + detail::point_str(g, p) + " lies on " +
               std::to_string(passes[p]) + " circle branches (" + std::to_string(g.circles_through(p).size()) +
               " distinct circles)";
      });
    }
  }

  // The sampled circle walk against the eigenvalue-ratio description.
  CheckBuilder ratios("circle_points_vs_ratios");
  {
    std::vector<std::size_t> walk, ratio;
    for (std::size_t p = 0; p < g.points.size(); ++p) {
      walk.clear();
      ratio.clear();
      for (std::size_t e = g.point_circle_offsets[p]; e < g.point_circle_offsets[p + 1]; ++e) walk.push_back(g.point_circle_list[e]);
      g.for_each_circle_by_ratio(g.points[p].a, g.points[p].b, [&](std::size_t c) { ratio.push_back(c); });
      std::sort(walk.begin(), walk.end());
      std::sort(ratio.begin(), ratio.end());
      ratio.erase(std::unique(ratio.begin(), ratio.end()), ratio.end());
      ratios.expect(walk == ratio, [&] { return "circles through " + detail::point_str(g, p) + " disagree"; });
    }
  }

  CheckBuilder bcircles("partial_boundary_circles");
  {
    std::vector<std::int64_t> per(nc, 0);
    for (const auto& pc : g.partial_circles) ++per[pc.first];
    for (std::size_t ci = 0; ci < nc; ++ci) {
      const auto kind = g.components[ci].kind;
      if (!detail::is_partial(kind)) continue;
      const std::int64_t want = kind == StratumClass::PartialCylinder ? 2 : 1;
      bcircles.expect(per[ci] == want,
                      [&] { return g.components[ci].label() + ": " + std::to_string(per[ci]) + " boundary circles"; });
    }
  }

  CheckBuilder census("tr_point_census");
  {
    std::int64_t n3a = 0, n3b = 0;
    for (const auto& p : g.points) {
      n3a += p.cls == PointClass::Irr3aPoint;
      n3b += p.cls == PointClass::Irr3bPoint;
    }
    census.expect(n3a == count_tr_intersections(knot, PointClass::Irr3aPoint),
                  [&] { return "Irr3a points " + std::to_string(n3a); });
    census.expect(n3b == count_tr_intersections(knot, PointClass::Irr3bPoint),
                  [&] { return "Irr3b points " + std::to_string(n3b); });
  }

  IncidenceReport rep;
  for (auto* b : {&a_points, &a_segments, &a_graph, &b_points, &b_circles, &owners, &on3a, &on3b, &ratios, &bcircles, &census})
    rep.checks.push_back(b->done());
  return rep;
}

/// chi_c summed over the graph's component nodes by topology tag.
inline std::int64_t euler_from_graph(const IncidenceGraph& g) {
  std::int64_t chi = 0;
  for (const auto& c : g.components) {
    switch (c.topology) {
      case Topology::Triangle2D: chi += 1; break;
      case Topology::OpenCylinder:
      case Topology::OpenMobius: break;
      case Topology::OrthantBlock3a: chi += 5; break;
      case Topology::OpenTriangle3b: chi += 1; break;
    }
  }
  return chi;
}

// ---------------------------------------------------------------------------
// Export.

inline nlohmann::ordered_json to_json(const IncidenceReport& rep) {
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& c : rep.checks) {
    nlohmann::ordered_json j;
    j["name"] = c.name;
    j["pass"] = c.pass;
    j["checked"] = c.checked;
    if (!c.pass) j["counterexample"] = c.counterexample;
    out.push_back(std::move(j));
  }
  return out;
}

inline nlohmann::ordered_json to_json(const IncidenceGraph& g) {
  using nlohmann::ordered_json;
  const auto id = [](char tag, std::size_t i) { return std::string(1, tag) + std::to_string(i); };
  ordered_json nodes = ordered_json::array();
  for (std::size_t i = 0; i < g.components.size(); ++i) {
    const auto& c = g.components[i];
    nodes.push_back({{"id", id('c', i)},
                     {"kind", "component"},
                     {"class", to_string(c.kind)},
                     {"topology", to_string(c.topology)},
                     {"label", c.label()}});
  }
  for (std::size_t i = 0; i < g.points.size(); ++i) {
    const auto& p = g.points[i];
    nodes.push_back({{"id", id('p', i)},
                     {"kind", "tr_point"},
                     {"class", to_string(p.cls)},
                     {"u_times_mn", {p.a, p.b, g.knot.mn() - p.a - p.b}}});
  }
  for (std::size_t i = 0; i < g.circles.size(); ++i)
    nodes.push_back(
        {{"id", id('z', i)}, {"kind", "circle"}, {"k", g.circles[i].k}, {"owner", id('c', g.circles[i].owner)}});

  ordered_json edges = ordered_json::array();
  for (const auto& e : g.component_points)
    edges.push_back(
        {{"type", "component_point"}, {"from", id('c', e.component)}, {"to", id('p', e.point)}, {"label", g.edge_label(e)}});
  for (const auto& s : g.segments) {
    ordered_json circles = ordered_json::array();
    for (std::size_t e = 0; e < 2; ++e)
      circles.push_back(s.circle[e] < 0 ? ordered_json(nullptr) : ordered_json(id('z', static_cast<std::size_t>(s.circle[e]))));
    edges.push_back({{"type", "segment"},
                     {"from", id('c', s.component)},
                     {"to", id('c', s.partial)},
                     {"label", "p" + std::to_string(s.i) + "=e" + std::to_string(s.j)},
                     {"endpoints", {id('p', s.endpoints[0]), id('p', s.endpoints[1])}},
                     {"circles", std::move(circles)}});
  }
  for (const auto& [c, z] : g.partial_circles)
    edges.push_back({{"type", "partial_circle"}, {"from", id('c', c)}, {"to", id('z', z)}});
  for (const auto& e : g.circle_points)
    edges.push_back({{"type", "circle_point"},
                     {"from", id('z', e.circle)},
                     {"to", id('p', e.point)},
                     {"multiplicity", e.multiplicity}});

  ordered_json out;
  out["nodes"] = std::move(nodes);
  out["edges"] = std::move(edges);
  return out;
}

/// Graphviz rendering; TR points appear only when they are vertices of an
/// irreducible component.
inline std::string to_dot(const IncidenceGraph& g) {
  std::ostringstream os;
  os << "graph incidence {\n  node [shape=box];\n";
  for (std::size_t i = 0; i < g.components.size(); ++i)
    os << "  c" << i << " [label=\"" << g.components[i].label() << "\"];\n";
  for (std::size_t i = 0; i < g.circles.size(); ++i)
    os << "  z" << i << " [shape=ellipse,label=\"circle k=" << g.circles[i].k << "\"];\n";
  std::vector<bool> used(g.points.size(), false);
  for (const auto& e : g.component_points) used[e.point] = true;
  for (std::size_t i = 0; i < g.points.size(); ++i)
    if (used[i]) os << "  p" << i << " [shape=point,xlabel=\"" << detail::point_str(g, i) << "\"];\n";
  for (const auto& e : g.component_points) os << "  c" << e.component << " -- p" << e.point << ";\n";
  for (const auto& s : g.segments)
    os << "  c" << s.component << " -- c" << s.partial << " [style=dashed,label=\"p" << s.i << "=e" << s.j << "\"];\n";
  for (const auto& [c, z] : g.partial_circles) os << "  c" << c << " -- z" << z << " [style=bold];\n";
  os << "}\n";
  return os.str();
}

}  // namespace knotchar
