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

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "knotchar/error.hpp"
#include "knotchar/incidence.hpp"
#include "knotchar/invariants.hpp"
#include "knotchar/simplex.hpp"
#include "knotchar/strata.hpp"

namespace knotchar::cli {

using nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitFailure = 3;
inline constexpr int kMaxVerify = 100;

struct Report {
  std::string command;
  std::optional<TorusKnot> knot;
  ordered_json payload;

  ordered_json to_json() const {
    ordered_json j;
    j["command"] = command;
    j["knot"] = knot ? ordered_json{{"n", knot->n}, {"m", knot->m}} : ordered_json(nullptr);
    j["payload"] = payload;
    j["version"] = kVersion;
    return j;
  }
};

/// A command's report plus whether every embedded check agreed.
struct Outcome {
  Report report;
  bool ok = true;
};

inline std::int64_t max_mn_from_env() {
  const char* v = std::getenv("KNOTCHAR_MAX_MN");
  if (v == nullptr || *v == '\0') return kDefaultMaxMn;
  char* end = nullptr;
  const long long x = std::strtoll(v, &end, 10);
  if (*end != '\0' || x < 1) throw Error(Errc::InvalidArgument, std::string("bad KNOTCHAR_MAX_MN: ") + v);
  return x;
}

// ---------------------------------------------------------------------------
// Commands.

inline Outcome cmd_strata(const TorusKnot& k, std::int64_t max_mn) {
  check_sweep(k, max_mn);
  Outcome out{{"strata", k, {}}};
  ordered_json counts, enumerated, agree, labels;
  for (auto c : kAllClasses) {
    const auto name = std::string(to_string(c));
    const auto comps = enumerate_components(k, c);
    const std::int64_t formula = count_components(k, c);
    const auto listed = static_cast<std::int64_t>(comps.size());
    counts[name] = formula;
    enumerated[name] = listed;
    agree[name] = formula == listed && listed == count_by_enumeration(k, c);
    out.ok &= agree[name].get<bool>();
    ordered_json l = ordered_json::array();
    for (const auto& comp : comps) l.push_back(comp.label());
    labels[name] = std::move(l);
  }
  ordered_json grouped;
  grouped["TR"] = counts["TR"];
  grouped["Partial"] = counts["PartialCylinder"].get<std::int64_t>() + counts["PartialMobius"].get<std::int64_t>();
  grouped["Irr3a"] = counts["Irr3a"];
  grouped["Irr3b"] = counts["Irr3bA"].get<std::int64_t>() + counts["Irr3bB"].get<std::int64_t>();

  ordered_json tr;
  const auto census = brute_tr_census(k, max_mn);
  tr["Irr3a"] = {{"formula", count_tr_intersections(k, PointClass::Irr3aPoint)}, {"brute", census.irr3a}};
  tr["Irr3b"] = {{"formula", count_tr_intersections(k, PointClass::Irr3bPoint)}, {"brute", census.irr3b}};
  out.ok &= census.irr3a == count_tr_intersections(k, PointClass::Irr3aPoint) &&
            census.irr3b == count_tr_intersections(k, PointClass::Irr3bPoint);

  auto& p = out.report.payload;
  p["counts"] = std::move(counts);
  p["grouped"] = std::move(grouped);
  p["enumerated"] = std::move(enumerated);
  p["agree"] = std::move(agree);
  p["tr_points"] = std::move(tr);
  p["components"] = std::move(labels);
  p["ok"] = out.ok;
  return out;
}

inline Outcome cmd_euler(const TorusKnot& k) {
  Outcome out{{"euler", k, {}}};
  const auto rep = chi_strata(k);
  const auto formula = chi_formula(k);
  out.ok = rep.total == formula;
  auto& p = out.report.payload;
  p = to_json(rep);
  p["formula"] = formula;
  p["agree"] = out.ok;
  return out;
}

inline Outcome cmd_homology(std::int64_t m) {
  Outcome out{{"homology", TorusKnot{2, m}, {}}};
  const auto h = homology_n2(m);
  const HomologyProfile expected{{1, 0, triangle_count(m)}, {{}, {}, {}}};
  const std::int64_t chi = h.betti[0] - h.betti[1] + h.betti[2];
  out.ok = h == expected && chi == chi_formula(TorusKnot::make(2, m));
  auto& p = out.report.payload;
  p = to_json(h);
  p["meridians"] = meridian_count(m);
  p["triangles"] = triangle_count(m);
  p["f2_rank"] = f2_rank(build_f_matrix(m));
  p["euler"] = chi;
  p["agree"] = out.ok;
  return out;
}

inline Outcome cmd_incidence(const TorusKnot& k, std::int64_t max_mn, const std::string& dot_path, bool full) {
  const auto g = build_incidence(k, max_mn);
  const auto rep = check_invariants(g);
  Outcome out{{"incidence", k, {}}};
  auto& p = out.report.payload;
  std::map<std::string, std::int64_t> by_class;
  for (const auto& c : g.components) ++by_class[std::string(to_string(c.kind))];
  ordered_json comps;
  for (auto c : kAllClasses) comps[std::string(to_string(c))] = by_class[std::string(to_string(c))];
  p["components"] = std::move(comps);
  p["tr_points"] = g.points.size();
  p["circles"] = g.circles.size();
  p["edges"] = {{"component_point", g.component_points.size()},
                {"segment", g.segments.size()},
                {"partial_circle", g.partial_circles.size()},
                {"circle_point", g.circle_points.size()}};
  p["checks"] = to_json(rep);
  const auto chi_graph = euler_from_graph(g);
  const auto chi = chi_formula(k);
  p["euler_from_graph"] = chi_graph;
  p["chi_formula"] = chi;
  out.ok = rep.all_pass() && chi_graph == chi;
  p["ok"] = out.ok;
  if (full) p["graph"] = to_json(g);
  if (!dot_path.empty()) {
    std::ofstream f(dot_path, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write " + dot_path);
    f << to_dot(g);
  }
  return out;
}

// ---------------------------------------------------------------------------
// SVG of a circle in the TR triangle.

namespace detail {

inline constexpr double kSide = 1000.0;
inline constexpr double kMargin = 40.0;

// u1 at the left corner, u2 at the right, u3 at the top.
inline std::pair<double, double> to_xy(double u1, double u2, double u3) {
  const double h = kSide * std::sqrt(3.0) / 2.0;
  const double x = kMargin + u2 * kSide + u3 * kSide / 2.0;
  const double y = kMargin + h - u3 * h;
  (void)u1;
  return {x, y};
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

inline std::pair<double, double> xy(const SimplexPoint& p) {
  return to_xy(p.u[0].to_double(), p.u[1].to_double(), p.u[2].to_double());
}

inline const char* point_colour(PointClass c) {
  switch (c) {
    case PointClass::Irr3aPoint: return "#d62728";
    case PointClass::Irr3bPoint: return "#1f77b4";
    case PointClass::ReduciblePoint: return "#7f7f7f";
  }
  return "#000000";
}

}  // namespace detail

inline std::string render_circle_svg(const TorusKnot& knot, const CirclePath& path) {
  using detail::fmt;
  const double h = detail::kSide * std::sqrt(3.0) / 2.0;
  const double w = detail::kSide + 2 * detail::kMargin;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(w) << "\" height=\"" << fmt(h + 2 * detail::kMargin)
     << "\" viewBox=\"0 0 " << fmt(w) << " " << fmt(h + 2 * detail::kMargin) << "\">\n";
  os << "<title>circle k=" << path.k << " for (" << knot.n << "," << knot.m << ")</title>\n";
  const auto [ax, ay] = detail::to_xy(1, 0, 0);
  const auto [bx, by] = detail::to_xy(0, 1, 0);
  const auto [cx, cy] = detail::to_xy(0, 0, 1);
  os << "<polygon points=\"" << fmt(ax) << "," << fmt(ay) << " " << fmt(bx) << "," << fmt(by) << " " << fmt(cx) << ","
     << fmt(cy) << "\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  os << "<polyline fill=\"none\" stroke=\"#2ca02c\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < path.vertices.size(); ++i) {
    const auto [x, y] = detail::xy(path.vertices[i]);
    os << (i ? " " : "") << fmt(x) << "," << fmt(y);
  }
  os << "\"/>\n";
  os << "<g id=\"points\">\n";
  for (std::size_t i = 0; i + 1 < path.vertices.size(); ++i) {
    const auto& v = path.vertices[i];
    const std::int64_t N = knot.mn();
    const std::int64_t a = (v.u[0] * N).num(), b = (v.u[1] * N).num();
    const auto [x, y] = detail::xy(v);
    os << "<circle class=\"" << to_string(classify_pair(a, b, knot)) << "\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
       << "\" r=\"4\" fill=\"" << detail::point_colour(classify_pair(a, b, knot)) << "\"/>\n";
  }
  os << "</g>\n<g id=\"boundary-hits\">\n";
  for (const auto& p : path.boundary_hits) {
    const auto [x, y] = detail::xy(p);
    os << "<circle class=\"boundary-hit\" cx=\"" << fmt(x) << "\" cy=\"" << fmt(y)
       << "\" r=\"8\" fill=\"none\" stroke=\"#000000\" stroke-width=\"2\"/>\n";
  }
  os << "</g>\n</svg>\n";
  return os.str();
}

inline ordered_json census_json(const CircleCensus& c) {
  return {{"Irr3a", c.irr3a}, {"Irr3b", c.irr3b}, {"Reducible", c.reducible}, {"boundary", c.boundary}};
}

inline Outcome cmd_circle(const TorusKnot& k, std::int64_t kk, std::int64_t max_mn, const std::string& svg_path) {
  check_sweep(k, max_mn);
  const auto path = circle_path(k, kk);
  const auto census = circle_point_census(k, kk);
  Outcome out{{"circle", k, {}}};
  auto& p = out.report.payload;
  const std::int64_t N = k.mn();
  p["k"] = path.k;
  p["canonical_k"] = knotchar::detail::fold(path.k, N);
  p["owner"] = {{"eps", knotchar::detail::fold(path.k, k.n)}, {"veps", knotchar::detail::fold(path.k, k.m)}};
  p["rational_points"] = census.total();
  p["census"] = census_json(census);
  out.ok = census.total() == 3 * N && census.boundary == 6 && path.boundary_hits.size() == 6;
  if (k.n % 2 == 1 && k.m % 2 == 1) {
    const auto want = circle_census_formula(k);
    p["formula"] = {{"Irr3a", want.irr3a}, {"Irr3b", want.irr3b}};
    p["agree"] = census.irr3a == want.irr3a && census.irr3b == want.irr3b;
    out.ok &= p["agree"].get<bool>();
  }
  ordered_json hits = ordered_json::array();
  for (const auto& h : path.boundary_hits) {
    ordered_json u = ordered_json::array();
    for (const auto& x : h.u) u.push_back(x.str());
    hits.push_back(std::move(u));
  }
  p["boundary_hits"] = std::move(hits);
  p["segments"] = path.segments.size();
  p["ok"] = out.ok;
  if (!svg_path.empty()) {
    std::ofstream f(svg_path, std::ios::binary);
    if (!f) throw Error(Errc::InvalidArgument, "cannot write " + svg_path);
    f << render_circle_svg(k, path);
  }
  return out;
}

// ---------------------------------------------------------------------------
// verify: every formula against its oracle over a range of knots.

namespace detail {

class Tally {
 public:
  void record(const std::string& name, bool ok, const std::function<ordered_json()>& example) {
    auto it = index_.find(name);
    if (it == index_.end()) {
      it = index_.emplace(name, entries_.size()).first;
      entries_.push_back({name, 0, 0, nullptr});
    }
    auto& e = entries_[it->second];
    ++e.checked;
    if (!ok) {
      if (e.failed == 0) e.first = example();
      ++e.failed;
    }
  }

  bool all_pass() const {
    return std::all_of(entries_.begin(), entries_.end(), [](const auto& e) { return e.failed == 0; });
  }

  ordered_json to_json() const {
    ordered_json out = ordered_json::array();
    for (const auto& e : entries_) {
      ordered_json j{{"name", e.name}, {"pass", e.failed == 0}, {"checked", e.checked}, {"failed", e.failed}};
      if (e.failed) j["counterexample"] = e.first;
      out.push_back(std::move(j));
    }
    return out;
  }

 private:
  struct Entry {
    std::string name;
    std::int64_t checked;
    std::int64_t failed;
    ordered_json first;
  };
  std::vector<Entry> entries_;
  std::map<std::string, std::size_t> index_;
};

inline ordered_json knot_json(const TorusKnot& k) { return {{"n", k.n}, {"m", k.m}}; }

}  // namespace detail

inline Outcome cmd_verify(int max, std::int64_t max_mn) {
  if (max < 0 || max > kMaxVerify)
    throw Error(Errc::InvalidArgument, "--max must be in [0, " + std::to_string(kMaxVerify) + "]");
  detail::Tally t;
  std::int64_t pairs = 0, skipped = 0;
  for (std::int64_t n = 2; n <= max; ++n) {
    for (std::int64_t m = n + 1; m <= max; ++m) {
      if (std::gcd(n, m) != 1) continue;
      const auto k = TorusKnot::make(n, m);
      ++pairs;
      const auto kj = [&] { return detail::knot_json(k); };

      const auto chi = chi_formula(k);
      const auto strata = chi_strata(k);
      t.record("chi_strata_vs_formula", strata.total == chi, [&] {
        auto j = kj();
        j["strata"] = strata.total;
        j["formula"] = chi;
        return j;
      });
      for (auto c : kAllClasses) {
        const auto f = count_components(k, c), e = count_by_enumeration(k, c);
        t.record("count_vs_enumeration", f == e, [&] {
          auto j = kj();
          j["class"] = to_string(c);
          j["formula"] = f;
          j["enumerated"] = e;
          return j;
        });
      }
      if (k.mn() > max_mn) {
        ++skipped;
        continue;
      }
      const auto census = brute_tr_census(k, max_mn);
      const auto f3a = count_tr_intersections(k, PointClass::Irr3aPoint);
      const auto f3b = count_tr_intersections(k, PointClass::Irr3bPoint);
      t.record("tr_census", census.irr3a == f3a && census.irr3b == f3b, [&] {
        auto j = kj();
        j["brute"] = {census.irr3a, census.irr3b};
        j["formula"] = {f3a, f3b};
        return j;
      });
      for (std::int64_t kk = 1; kk < k.mn(); ++kk) {
        if (kk % n == 0 || kk % m == 0) continue;
        const auto c = circle_point_census(k, kk);
        t.record("circle_census_totals", c.total() == 3 * k.mn() && c.boundary == 6, [&] {
          auto j = kj();
          j["k"] = kk;
          j["census"] = census_json(c);
          return j;
        });
        if (n % 2 == 1 && m % 2 == 1) {
          const auto want = circle_census_formula(k);
          t.record("circle_census_formula", c.irr3a == want.irr3a && c.irr3b == want.irr3b, [&] {
            auto j = kj();
            j["k"] = kk;
            j["census"] = census_json(c);
            return j;
          });
        }
      }
      const auto g = build_incidence(k, max_mn);
      for (const auto& chk : check_invariants(g).checks)
        t.record("incidence." + chk.name, chk.pass, [&] {
          auto j = kj();
          j["detail"] = chk.counterexample;
          return j;
        });
      t.record("euler_from_graph", euler_from_graph(g) == chi, [&] {
        auto j = kj();
        j["graph"] = euler_from_graph(g);
        j["formula"] = chi;
        return j;
      });
    }
  }
  std::int64_t homology_runs = 0;
  for (std::int64_t m = 3; m <= max; m += 2) {
    ++homology_runs;
    const auto h = homology_n2(m);
    const HomologyProfile want{{1, 0, triangle_count(m)}, {{}, {}, {}}};
    t.record("homology_n2", h == want, [&] {
      ordered_json j{{"m", m}};
      j["got"] = to_json(h);
      return j;
    });
    t.record("homology_euler", 1 + triangle_count(m) == chi_formula(TorusKnot::make(2, m)),
             [&] { return ordered_json{{"m", m}}; });
  }

  Outcome out{{"verify", std::nullopt, {}}};
  auto& p = out.report.payload;
  p["max"] = max;
  p["max_mn"] = max_mn;
  p["pairs"] = pairs;
  p["pairs_over_max_mn"] = skipped;
  p["homology_m"] = homology_runs;
  p["checks"] = t.to_json();
  out.ok = t.all_pass();
  p["all_pass"] = out.ok;
  return out;
}

// ---------------------------------------------------------------------------
// Output.

namespace detail {

inline void flatten(const ordered_json& j, const std::string& prefix, std::ostream& os) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [key, v] : j.items()) flatten(v, prefix.empty() ? key : prefix + "." + key, os);
  } else if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "[" + std::to_string(i) + "]", os);
  } else {
    os << prefix << "  " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
  }
}

inline ordered_json error_json(const std::string& code, const std::string& message) {
  return {{"error", {{"code", code}, {"message", message}}}};
}

}  // namespace detail

/// Entry point; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Character varieties of torus knot groups: strata, incidence, Euler characteristic, homology"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  bool json = false, pretty = false;
  app.add_flag("--json", json, "JSON output (default)");
  app.add_flag("--pretty", pretty, "flattened key/value output");

  std::int64_t n = 0, m = 0, k = 0;
  int max = 12;
  std::string svg, dot;
  bool full = false;

  auto* strata = app.add_subcommand("strata", "component counts and labels");
  strata->add_option("n", n)->required();
  strata->add_option("m", m)->required();
  auto* euler = app.add_subcommand("euler", "compactly supported Euler characteristic");
  euler->add_option("n", n)->required();
  euler->add_option("m", m)->required();
  auto* homology = app.add_subcommand("homology", "homology of Y_3 for the (2,m) torus knot");
  homology->add_option("m", m)->required();
  auto* incidence = app.add_subcommand("incidence", "closure-incidence graph and its multiplicity checks");
  incidence->add_option("n", n)->required();
  incidence->add_option("m", m)->required();
  incidence->add_option("--dot", dot, "write the graph as DOT");
  incidence->add_flag("--full", full, "include all nodes and edges");
  auto* circle = app.add_subcommand("circle", "one circle in the TR triangle");
  circle->add_option("n", n)->required();
  circle->add_option("m", m)->required();
  circle->add_option("k", k)->required();
  circle->add_option("--svg", svg, "write an SVG drawing");
  auto* verify = app.add_subcommand("verify", "formula-versus-oracle checks over all knots with n, m <= max");
  verify->add_option("--max", max, "largest n, m")->default_val(12);
  for (auto* sub : {strata, euler, homology, incidence, circle, verify}) {
    sub->add_flag("--json", json, "JSON output (default)");
    sub->add_flag("--pretty", pretty, "flattened key/value output");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << detail::error_json("Usage", e.what()).dump() << "\n";
    return kExitUsage;
  }

  try {
    const std::int64_t max_mn = max_mn_from_env();
    Outcome o;
    if (*strata) o = cmd_strata(TorusKnot::make(n, m), max_mn);
    else if (*euler) o = cmd_euler(TorusKnot::make(n, m));
    else if (*homology) o = cmd_homology(m);
    else if (*incidence) o = cmd_incidence(TorusKnot::make(n, m), max_mn, dot, full);
    else if (*circle) o = cmd_circle(TorusKnot::make(n, m), k, max_mn, svg);
    else o = cmd_verify(max, max_mn);

    const auto j = o.report.to_json();
    if (pretty) detail::flatten(j, "", out);
    else out << j.dump(2) << "\n";
    return o.ok ? kExitOk : kExitFailure;
  } catch (const Error& e) {
    err << detail::error_json(std::string(to_string(e.code())), e.what()).dump() << "\n";
    const bool usage = e.code() == Errc::InvalidKnot || e.code() == Errc::InputTooLarge ||
                       (e.code() == Errc::InvalidArgument && *verify);
    return usage ? kExitUsage : kExitFailure;
  } catch (const std::exception& e) {
    err << detail::error_json("Internal", e.what()).dump() << "\n";
    return kExitFailure;
  }
}

}  // namespace knotchar::cli
