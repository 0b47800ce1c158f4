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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is nonzero
// when any line fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "knotchar/incidence.hpp"
#include "knotchar/invariants.hpp"
#include "knotchar/simplex.hpp"
#include "oracles.hpp"

using knotchar::PointClass;
using knotchar::Rational;
using knotchar::Root;
using knotchar::StratumClass;
using knotchar::TorusKnot;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " " << id << ": " << detail << std::endl;
  if (!ok) ++failures;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

std::string secs(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2fs", s);
  return buf;
}

template <class F>
void for_coprime(std::int64_t lo, std::int64_t hi, F&& f) {
  for (std::int64_t n = lo; n <= hi; ++n)
    for (std::int64_t m = n + 1; m <= hi; ++m)
      if (std::gcd(n, m) == 1) f(TorusKnot::make(n, m));
}

std::string knot_str(const TorusKnot& k) { return "(" + std::to_string(k.n) + "," + std::to_string(k.m) + ")"; }

void criterion1() {
  Timer t;
  std::int64_t pairs = 0;
  std::string bad;
  for_coprime(2, 60, [&](const TorusKnot& k) {
    ++pairs;
    if (bad.empty() && knotchar::chi_strata(k).total != knotchar::chi_formula(k)) bad = knot_str(k);
  });
  const bool spots = knotchar::chi_strata(TorusKnot::make(2, 3)).total == 2 &&
                     knotchar::chi_strata(TorusKnot::make(2, 5)).total == 7 &&
                     knotchar::chi_strata(TorusKnot::make(3, 5)).total == 27;
  const double s = t.seconds();
  report("1 chi strata sum = closed form, 2<=n<m<=60", bad.empty() && spots && s < 10.0,
         std::to_string(pairs) + " pairs, spot values " + (spots ? "2/7/27 ok" : "wrong") +
             (bad.empty() ? "" : ", first mismatch " + bad) + ", " + secs(s) + " (limit 10s)");
}

void criterion2and3() {
  Timer t;
  std::string bad;
  std::int64_t runs = 0;
  for (std::int64_t m = 3; m <= 199; m += 2) {
    ++runs;
    const auto n1 = static_cast<std::size_t>(knotchar::meridian_count(m));
    const bool onto = knotchar::f2_rank(knotchar::build_f_matrix(m)) == n1;
    const auto h = knotchar::homology_n2(m);
    const knotchar::HomologyProfile want{{1, 0, (m - 1) * (m - 2) / 2}, {{}, {}, {}}};
    if (bad.empty() && (!onto || !(h == want))) bad = "m=" + std::to_string(m);
  }
  const double s = t.seconds();
  report("2 H_*(Y3) for n=2 is (1,0,(m-1)(m-2)/2) torsion-free, f onto over F2, odd 3<=m<=199",
         bad.empty() && s < 30.0,
         std::to_string(runs) + " values of m" + (bad.empty() ? "" : ", first mismatch " + bad) + ", " + secs(s) +
             " (limit 30s)");

  std::string bad3;
  for (std::int64_t m = 3; m <= 199; m += 2)
    if (bad3.empty() && 1 + (m - 1) * (m - 2) / 2 != knotchar::chi_formula(TorusKnot::make(2, m)))
      bad3 = "m=" + std::to_string(m);
  report("3 1+(m-1)(m-2)/2 = chi(2,m), odd m<=199", bad3.empty(), bad3.empty() ? "all equal" : "first mismatch " + bad3);
}

void criterion4() {
  Timer t;
  std::int64_t pairs = 0;
  std::string bad;
  for (std::int64_t n = 2; n * (n + 1) <= 900; ++n)
    for (std::int64_t m = n + 1; n * m <= 900; ++m) {
      if (std::gcd(n, m) != 1) continue;
      ++pairs;
      const auto k = TorusKnot::make(n, m);
      const auto c = knotchar::brute_tr_census(k, 900);
      const std::int64_t want3a = (n - 1) * (n - 2) * (m - 1) * (m - 2) / 2;
      const std::int64_t want3b = 3 * (n - 1) * (m - 1) * (n + m - 4) / 2;
      if (bad.empty() && (c.irr3a != want3a || c.irr3b != want3b)) bad = knot_str(k);
    }
  const double s = t.seconds();
  report("4 brute TR census = closed forms, mn<=900", bad.empty() && s < 20.0,
         std::to_string(pairs) + " pairs" + (bad.empty() ? "" : ", first mismatch " + bad) + ", " + secs(s) +
             " (limit 20s)");
}

void criterion5() {
  std::int64_t circles = 0;
  std::string bad;
  for (auto [n, m] : {std::pair<std::int64_t, std::int64_t>{3, 5}, {3, 7}, {5, 7}}) {
    const auto k = TorusKnot::make(n, m);
    const std::int64_t N = n * m;
    for (std::int64_t kk = 1; kk < N; ++kk) {
      if (kk % n == 0 || kk % m == 0) continue;
      ++circles;
      const auto c = knotchar::circle_point_census(k, kk);
      const bool ok = c.irr3a == 3 * N - 6 * m - 6 * n + 12 && c.irr3b == 6 * m + 6 * n - 24 && c.total() == 3 * N;
      if (bad.empty() && !ok) bad = knot_str(k) + " k=" + std::to_string(kk);
    }
  }
  report("5 per-circle census for (3,5),(3,7),(5,7)", bad.empty(),
         std::to_string(circles) + " circles" + (bad.empty() ? "" : ", first mismatch " + bad));
}

void criterion6() {
  std::int64_t checked = 0;
  std::string bad;
  for (std::int64_t n = 2; n <= 30; ++n)
    for (std::int64_t m = 2; m <= 30; ++m) {
      if (n == m || std::gcd(n, m) != 1) continue;
      const auto k = TorusKnot::make(n, m);
      for (auto c : knotchar::kAllClasses) {
        ++checked;
        const auto e = static_cast<std::int64_t>(knotchar::enumerate_components(k, c).size());
        if (bad.empty() && e != knotchar::count_components(k, c))
          bad = knot_str(k) + " " + std::string(to_string(c));
      }
    }
  report("6 |enumerate_components| = count_components, n,m<=30 both orders", bad.empty(),
         std::to_string(checked) + " (pair, class) checks" + (bad.empty() ? "" : ", first mismatch " + bad));
}

void criterion7() {
  Timer t;
  struct Line {
    std::string id;
    std::vector<std::string> checks;
    std::int64_t checked = 0;
    std::string first;
  };
  std::vector<Line> lines = {
      {"7a Irr3a nodes: 6 TR points, 9 attached partial segments", {"irr3a_tr_points", "irr3a_segments", "irr3a_segment_graph"}, 0, {}},
      {"7b Irr3b nodes: 3 TR points, 3 circle attachments", {"irr3b_tr_points", "irr3b_circle_attachments"}, 0, {}},
      {"7c every 3a rational point lies on exactly 3 circles", {"irr3a_points_on_3_circles"}, 0, {}},
      {"7d every 3b rational point lies on exactly 3 circles", {"irr3b_points_on_3_circles"}, 0, {}},
      {"7e graph consistency (owners, ratio circles, partial boundaries, census)",
       {"tr_point_owners", "circle_points_vs_ratios", "partial_boundary_circles", "tr_point_census"}, 0, {}},
  };
  std::int64_t pairs = 0;
  for (std::int64_t n = 2; n * (n + 1) <= 900; ++n)
    for (std::int64_t m = n + 1; n * m <= 900; ++m) {
      if (std::gcd(n, m) != 1) continue;
      ++pairs;
      const auto k = TorusKnot::make(n, m);
      const auto rep = knotchar::check_invariants(knotchar::build_incidence(k, 900));
      for (auto& l : lines)
        for (const auto& name : l.checks) {
          const auto* c = rep.find(name);
          if (c == nullptr) {
            if (l.first.empty()) l.first = "missing check " + name;
            continue;
          }
          l.checked += c->checked;
          if (!c->pass && l.first.empty()) l.first = knot_str(k) + " " + c->counterexample;
        }
    }
  const double s = t.seconds();
  for (const auto& l : lines)
    report(l.id, l.first.empty(),
           std::to_string(pairs) + " pairs, " + std::to_string(l.checked) + " assertions" +
               (l.first.empty() ? "" : ", first failure " + l.first) + ", " + secs(s) + " total");
}

std::vector<Root> random_multiset(std::mt19937_64& rng, int r) {
  std::uniform_int_distribution<std::int64_t> ord(1, 30);
  std::vector<Root> v;
  Root prod = Root::one();
  for (int i = 0; i + 1 < r; ++i) {
    const std::int64_t q = ord(rng);
    v.emplace_back(q, std::uniform_int_distribution<std::int64_t>(0, q - 1)(rng));
    prod = prod * v.back();
  }
  v.push_back(knotchar::inverse(prod));
  return v;
}

std::multiset<Rational> fractions(const std::vector<Root>& v) {
  std::multiset<Rational> s;
  for (const auto& r : v) s.insert(r.fraction());
  return s;
}

int inversions(const std::vector<int>& p) {
  int c = 0;
  for (std::size_t i = 0; i < p.size(); ++i)
    for (std::size_t j = i + 1; j < p.size(); ++j) c += p[i] > p[j];
  return c;
}

void criterion8() {
  std::mt19937_64 rng(20261016);
  std::int64_t valid = 0, invariant = 0, round = 0, unique = 0;
  const int trials = 10000;
  for (int i = 0; i < trials; ++i) {
    const int r = 2 + i % 5;
    auto roots = random_multiset(rng, r);
    const auto p = knotchar::to_simplex(roots);
    valid += knotchar::is_valid(p);
    auto shuffled = roots;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    invariant += knotchar::to_simplex(shuffled) == p;
    const auto lift = knotchar::lift_from_simplex(p);
    round += knotchar::is_valid(lift) && fractions(knotchar::roots_from_lift(lift)) == fractions(roots);
    const auto all = oracle::all_lifts(roots);
    unique += all.size() == 1 && all.front() == lift;
  }
  report("8a to_simplex on 10^4 random multisets: valid, permutation-invariant, round-trips",
         valid == trials && invariant == trials && round == trials && unique == trials,
         "valid " + std::to_string(valid) + ", invariant " + std::to_string(invariant) + ", round trip " +
             std::to_string(round) + ", lift matches exhaustive search " + std::to_string(unique) + " of " +
             std::to_string(trials));

  std::string bad;
  for (int r = 2; r <= 10; ++r) {
    const auto md = knotchar::monodromy(r);
    const bool even_perm = inversions(md.permutation) % 2 == 0;
    if (md.orientable != (r % 2 == 1) || md.orientable != even_perm) bad += " r=" + std::to_string(r);
  }
  report("8b monodromy(r) orientable iff r odd, r<=10", bad.empty(), bad.empty() ? "r = 2..10" : "wrong at" + bad);
}

void criterion9() {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> dim(1, 4), entry(-9, 9);
  std::int64_t agree = 0, chain = 0;
  const int trials = 1000;
  for (int i = 0; i < trials; ++i) {
    knotchar::IntMatrix a(static_cast<std::size_t>(dim(rng)), static_cast<std::size_t>(dim(rng)));
    for (std::size_t r = 0; r < a.rows(); ++r)
      for (std::size_t c = 0; c < a.cols(); ++c) a(r, c) = entry(rng);
    const auto d = knotchar::smith_normal_form(a);
    agree += d == oracle::invariant_factors_by_minors(a);
    bool ok = true;
    for (std::size_t j = 0; j < d.size(); ++j) ok &= d[j] > 0 && (j == 0 || d[j] % d[j - 1] == 0);
    chain += ok;
  }
  report("9 SNF of 10^3 random matrices vs minor gcds", agree == trials && chain == trials,
         "minor-gcd agreement " + std::to_string(agree) + ", divisibility chain " + std::to_string(chain) + " of " +
             std::to_string(trials));
}

}  // namespace

int main() {
  criterion1();
  criterion2and3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8();
  criterion9();
  std::cout << (failures == 0 ? "ALL PASS" : std::to_string(failures) + " FAILED") << std::endl;
  return failures == 0 ? 0 : 1;
}
