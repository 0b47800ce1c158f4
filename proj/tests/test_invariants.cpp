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

#include <random>

#include "catch_amalgamated.hpp"
#include "knotchar/invariants.hpp"
#include "oracles.hpp"

using knotchar::Errc;
using knotchar::Error;
using knotchar::F2Matrix;
using knotchar::IntMatrix;
using knotchar::smith_normal_form;
using knotchar::TorusKnot;

namespace {

auto has_code(Errc c) {
  return Catch::Matchers::Predicate<Error>([c](const Error& e) { return e.code() == c; });
}

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo, int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  IntMatrix a(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) a(i, j) = d(rng);
  return a;
}

bool divisibility_chain(const std::vector<std::int64_t>& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i)
    if (d[i] <= 0 || d[i + 1] % d[i] != 0) return false;
  return d.empty() || d.back() > 0;
}

// Plain Gaussian elimination over Z/2 on unpacked rows.
std::size_t rank_mod2(std::vector<std::vector<int>> a) {
  std::size_t rank = 0;
  const std::size_t cols = a.empty() ? 0 : a[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t p = rank;
    while (p < a.size() && a[p][c] == 0) ++p;
    if (p == a.size()) continue;
    std::swap(a[p], a[rank]);
    for (std::size_t r = 0; r < a.size(); ++r)
      if (r != rank && a[r][c])
        for (std::size_t k = 0; k < cols; ++k) a[r][k] ^= a[rank][k];
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("snf examples", "[snf]") {
  CHECK(smith_normal_form(IntMatrix{{2, 4}, {6, 10}}) == std::vector<std::int64_t>{2, 2});
  CHECK(smith_normal_form(IntMatrix{{2, 0}, {0, 6}}) == std::vector<std::int64_t>{2, 6});
  CHECK(smith_normal_form(IntMatrix{{0, 0}, {0, 0}}).empty());
  CHECK(smith_normal_form(IntMatrix{}).empty());
  CHECK(smith_normal_form(IntMatrix{{4, 6}}) == std::vector<std::int64_t>{2});
  CHECK(smith_normal_form(IntMatrix{{6, 0}, {0, 4}}) == std::vector<std::int64_t>{2, 12});
  CHECK(smith_normal_form(IntMatrix{{-3}}) == std::vector<std::int64_t>{3});
}

TEST_CASE("snf vs minors, random 4x4", "[snf]") {
  std::mt19937_64 rng(20261016);
  for (int it = 0; it < 1000; ++it) {
    const auto a = random_matrix(rng, 4, 4, -9, 9);
    const auto d = smith_normal_form(a);
    INFO("iteration " << it);
    CHECK(d == oracle::invariant_factors_by_minors(a));
    CHECK(divisibility_chain(d));
  }
}

TEST_CASE("snf vs minors, rectangular and sparse", "[snf]") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int it = 0; it < 300; ++it) {
    const std::size_t r = dim(rng), c = dim(rng);
    auto a = random_matrix(rng, r, c, -6, 6);
    // zero out most entries half the time to get rank-deficient cases
    if (it % 2)
      for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
          if ((i * 7 + j * 3 + static_cast<std::size_t>(it)) % 3) a(i, j) = 0;
    INFO(r << "x" << c << " iteration " << it);
    CHECK(smith_normal_form(a) == oracle::invariant_factors_by_minors(a));
    CHECK(smith_normal_form(a.transposed()) == smith_normal_form(a));
  }
}

TEST_CASE("snf of wide presentation", "[snf]") {
  // [F | 2I] style: many columns, few rows
  std::mt19937_64 rng(99);
  for (int it = 0; it < 50; ++it) {
    const auto a = random_matrix(rng, 3, 12, -2, 2);
    CHECK(smith_normal_form(a) == oracle::invariant_factors_by_minors(a));
  }
  IntMatrix pres(3, 6);
  for (std::size_t i = 0; i < 3; ++i) pres(i, 3 + i) = 2;
  CHECK(smith_normal_form(pres) == std::vector<std::int64_t>{2, 2, 2});
  pres(0, 0) = 1;
  CHECK(smith_normal_form(pres) == std::vector<std::int64_t>{1, 2, 2});
}

TEST_CASE("f2 rank", "[f2]") {
  CHECK(knotchar::f2_rank(F2Matrix::identity(70)) == 70);
  CHECK(knotchar::f2_rank(F2Matrix(3, 5)) == 0);
  F2Matrix a(2, 2);
  a.set(0, 0, true);
  a.set(0, 1, true);
  a.set(1, 0, true);
  a.set(1, 1, true);
  CHECK(knotchar::f2_rank(a) == 1);
  a.flip(1, 1);
  CHECK(knotchar::f2_rank(a) == 2);
  CHECK_FALSE(a.get(1, 1));

  std::mt19937_64 rng(3);
  std::bernoulli_distribution bit(0.3);
  for (int it = 0; it < 200; ++it) {
    const std::size_t r = 1 + it % 9, c = 1 + (it * 37) % 140;
    F2Matrix f(r, c);
    std::vector<std::vector<int>> plain(r, std::vector<int>(c, 0));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j)
        if (bit(rng)) {
          f.set(i, j, true);
          plain[i][j] = 1;
        }
    CHECK(knotchar::f2_rank(f) == rank_mod2(plain));
  }
}

TEST_CASE("meridian classes", "[homology]") {
  CHECK(knotchar::meridian_class(1, 5) == 1);
  CHECK(knotchar::meridian_class(4, 5) == 1);
  CHECK(knotchar::meridian_class(-2, 5) == 2);
  CHECK(knotchar::meridian_class(3, 7) == 3);
  CHECK_THROWS_MATCHES(knotchar::meridian_class(10, 5), Error, has_code(Errc::ZeroClass));
}

TEST_CASE("f matrix columns", "[homology]") {
  const auto f3 = knotchar::build_f_matrix(3);
  REQUIRE(f3.rows() == 1);
  REQUIRE(f3.cols() == 1);
  CHECK(f3.get(0, 0));

  // m = 5, columns {1,2},{1,3},{1,4},{2,3},{2,4},{3,4}
  const auto f5 = knotchar::build_f_matrix(5);
  REQUIRE(f5.rows() == 2);
  REQUIRE(f5.cols() == 6);
  CHECK_FALSE(f5.get(0, 0));  // {1,2}: l1 + l2 + l1
  CHECK(f5.get(1, 0));
  CHECK(f5.get(0, 1));  // {1,3}: l1 + l2 + l2
  CHECK_FALSE(f5.get(1, 1));
  CHECK(knotchar::f2_rank(f5) == 2);

  const auto lift = knotchar::build_f_lift(5);
  CHECK(lift(0, 0) == 2);
  CHECK(lift(1, 0) == 1);
  for (std::size_t c = 0; c < lift.cols(); ++c) CHECK(lift(0, c) + lift(1, c) == 3);

  CHECK_THROWS_MATCHES(knotchar::build_f_matrix(4), Error, has_code(Errc::EvenM));
  CHECK_THROWS_MATCHES(knotchar::build_f_matrix(1), Error, has_code(Errc::InvalidArgument));
}

TEST_CASE("homology for n = 2", "[homology]") {
  using HP = knotchar::HomologyProfile;
  CHECK(knotchar::homology_n2(3) == HP{{1, 0, 1}, {{}, {}, {}}});
  CHECK(knotchar::homology_n2(5) == HP{{1, 0, 6}, {{}, {}, {}}});
  CHECK(knotchar::homology_n2(7) == HP{{1, 0, 15}, {{}, {}, {}}});
  for (std::int64_t m = 9; m <= 61; m += 2) {
    const auto h = knotchar::homology_n2(m);
    CHECK(h.betti == std::vector<std::int64_t>{1, 0, (m - 1) * (m - 2) / 2});
    CHECK(h.torsion[1].empty());
    CHECK(1 - h.betti[1] + h.betti[2] == knotchar::chi_formula(TorusKnot::make(2, m)));
  }
  CHECK_THROWS_MATCHES(knotchar::homology_n2(8), Error, has_code(Errc::EvenM));
}

TEST_CASE("euler characteristic", "[euler]") {
  CHECK(knotchar::chi_formula(TorusKnot::make(2, 3)) == 2);
  CHECK(knotchar::chi_formula(TorusKnot::make(2, 5)) == 7);
  CHECK(knotchar::chi_formula(TorusKnot::make(3, 5)) == 27);
  CHECK(knotchar::chi_strata(TorusKnot::make(3, 5)).total == 27);
  const auto rep = knotchar::chi_strata(TorusKnot::make(3, 5));
  CHECK(rep.per_class.at(knotchar::StratumClass::TR) == 1);
  CHECK(rep.per_class.at(knotchar::StratumClass::PartialCylinder) == 0);
  CHECK(rep.per_class.at(knotchar::StratumClass::Irr3a) == 10);
  CHECK(rep.per_class.at(knotchar::StratumClass::Irr3bA) + rep.per_class.at(knotchar::StratumClass::Irr3bB) == 16);
  for (std::int64_t n = 2; n <= 12; ++n)
    for (std::int64_t m = n + 1; m <= 15; ++m) {
      if (std::gcd(n, m) != 1) continue;
      const auto k = TorusKnot::make(n, m);
      INFO("(" << n << "," << m << ")");
      CHECK(knotchar::chi_strata(k).total == knotchar::chi_formula(k));
      CHECK(knotchar::chi_formula(k) == knotchar::chi_formula(k.swapped()));
    }
  const auto j = knotchar::to_json(rep);
  CHECK(j["total"] == 27);
  CHECK(j["per_class"].size() == 6);
}
