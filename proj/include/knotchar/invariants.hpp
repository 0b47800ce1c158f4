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
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "knotchar/error.hpp"
#include "knotchar/rational.hpp"
#include "knotchar/strata.hpp"

namespace knotchar {

/// Dense integer matrix, row-major.
class IntMatrix {
 public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, 0) {}
  IntMatrix(std::initializer_list<std::initializer_list<std::int64_t>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw Error(Errc::InvalidArgument, "ragged matrix");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::int64_t& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  std::int64_t operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  IntMatrix transposed() const {
    IntMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
      for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::int64_t> data_;
};

/// Matrix over F_2 with bit-packed rows.
class F2Matrix {
 public:
  F2Matrix() = default;
  F2Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), words_((cols + 63) / 64), bits_(rows * words_, 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  bool get(std::size_t r, std::size_t c) const { return (bits_[r * words_ + c / 64] >> (c % 64)) & 1U; }
  void set(std::size_t r, std::size_t c, bool v) {
    auto& w = bits_[r * words_ + c / 64];
    const std::uint64_t mask = std::uint64_t{1} << (c % 64);
    w = v ? (w | mask) : (w & ~mask);
  }
  void flip(std::size_t r, std::size_t c) { bits_[r * words_ + c / 64] ^= std::uint64_t{1} << (c % 64); }

  std::size_t words() const { return words_; }
  std::uint64_t* row(std::size_t r) { return bits_.data() + r * words_; }
  const std::uint64_t* row(std::size_t r) const { return bits_.data() + r * words_; }

  static F2Matrix identity(std::size_t n) {
    F2Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  friend bool operator==(const F2Matrix&, const F2Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

/// Rank over F_2 by row elimination.
inline std::size_t f2_rank(F2Matrix a) {
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < a.rows(); ++c) {
    const std::size_t w = c / 64;
    const std::uint64_t bit = std::uint64_t{1} << (c % 64);
    std::size_t piv = rank;
    while (piv < a.rows() && !(a.row(piv)[w] & bit)) ++piv;
    if (piv == a.rows()) continue;
    if (piv != rank) std::swap_ranges(a.row(piv), a.row(piv) + a.words(), a.row(rank));
    for (std::size_t r = 0; r < a.rows(); ++r) {
      if (r == rank || !(a.row(r)[w] & bit)) continue;
      for (std::size_t k = w; k < a.words(); ++k) a.row(r)[k] ^= a.row(rank)[k];
    }
    ++rank;
  }
  return rank;
}

namespace detail {

// Integer basis of the lattice spanned by the columns of a (rows <= cols),
// returned as the columns of a rows x k matrix. Columns are inserted into an
// echelon basis with xgcd combinations; off-pivot entries are reduced
// modulo the pivots below them to keep entries small.
inline IntMatrix column_lattice_basis(const IntMatrix& a) {
  const std::size_t R = a.rows();
  std::vector<std::size_t> order(a.cols());
  std::iota(order.begin(), order.end(), 0);
  // Sparse columns first: they fix small pivots early.
  std::vector<std::size_t> weight(a.cols(), 0);
  for (std::size_t c = 0; c < a.cols(); ++c)
    for (std::size_t r = 0; r < R; ++r) weight[c] += a(r, c) != 0;
  std::stable_sort(order.begin(), order.end(), [&](auto x, auto y) { return weight[x] < weight[y]; });

  std::vector<std::vector<std::int64_t>> basis(R);  // basis[i] has leading index i
  std::size_t unit_pivots = 0;
  const auto reduce_tail = [&](std::vector<std::int64_t>& v, std::size_t from) {
    for (std::size_t k = from; k < R; ++k) {
      if (v[k] == 0 || basis[k].empty()) continue;
      const std::int64_t p = basis[k][k];
      const std::int64_t q = (v[k] - checked::mod(v[k], p)) / p;
      if (q == 0) continue;
      for (std::size_t t = k; t < R; ++t) v[t] = checked::sub(v[t], checked::mul(q, basis[k][t]));
    }
  };

  for (std::size_t c : order) {
    if (unit_pivots == R) break;
    std::vector<std::int64_t> v(R);
    for (std::size_t r = 0; r < R; ++r) v[r] = a(r, c);
    for (std::size_t i = 0; i < R; ++i) {
      if (v[i] == 0) continue;
      if (basis[i].empty()) {
        if (v[i] < 0)
          for (auto& x : v) x = checked::neg(x);
        reduce_tail(v, i + 1);
        basis[i] = std::move(v);
        unit_pivots += basis[i][i] == 1;
        break;
      }
      auto& b = basis[i];
      const Bezout bz = xgcd(b[i], v[i]);
      const std::int64_t bi = b[i] / bz.g, vi = v[i] / bz.g;
      const bool was_unit = b[i] == 1;
      for (std::size_t t = i; t < R; ++t) {
        const std::int64_t nb = checked::add(checked::mul(bz.x, b[t]), checked::mul(bz.y, v[t]));
        const std::int64_t nv = checked::sub(checked::mul(vi, b[t]), checked::mul(bi, v[t]));
        b[t] = nb;
        v[t] = nv;
      }
      reduce_tail(b, i + 1);
      reduce_tail(v, i + 1);
      unit_pivots += !was_unit && b[i] == 1;
    }
  }

  std::size_t k = 0;
  for (const auto& b : basis) k += !b.empty();
  IntMatrix out(R, k);
  std::size_t col = 0;
  for (const auto& b : basis) {
    if (b.empty()) continue;
    for (std::size_t r = 0; r < R; ++r) out(r, col) = b[r];
    ++col;
  }
  return out;
}

// Dense Smith reduction with smallest-absolute-value pivoting.
inline std::vector<std::int64_t> dense_snf(IntMatrix a) {
  const std::size_t R = a.rows(), C = a.cols();
  std::vector<std::int64_t> d;
  for (std::size_t t = 0; t < std::min(R, C); ++t) {
    for (;;) {
      // Smallest nonzero entry of the trailing block.
      std::size_t pr = R, pc = C;
      std::int64_t best = 0;
      for (std::size_t r = t; r < R; ++r)
        for (std::size_t c = t; c < C; ++c) {
          const std::int64_t v = checked::abs(a(r, c));
          if (v != 0 && (best == 0 || v < best)) {
            best = v;
            pr = r;
            pc = c;
          }
        }
      if (best == 0) return d;
      if (pr != t)
        for (std::size_t c = 0; c < C; ++c) std::swap(a(pr, c), a(t, c));
      if (pc != t)
        for (std::size_t r = 0; r < R; ++r) std::swap(a(r, pc), a(r, t));

      const std::int64_t p = a(t, t);
      bool clean = true;
      for (std::size_t r = t + 1; r < R; ++r) {
        const std::int64_t q = a(r, t) / p;
        if (q != 0)
          for (std::size_t c = t; c < C; ++c) a(r, c) = checked::sub(a(r, c), checked::mul(q, a(t, c)));
        clean &= a(r, t) == 0;
      }
      for (std::size_t c = t + 1; c < C; ++c) {
        const std::int64_t q = a(t, c) / p;
        if (q != 0)
          for (std::size_t r = t; r < R; ++r) a(r, c) = checked::sub(a(r, c), checked::mul(q, a(r, t)));
        clean &= a(t, c) == 0;
      }
      if (!clean) continue;

      // Pivot must divide the rest of the block; otherwise fold an offending row in.
      std::size_t bad = R;
      for (std::size_t r = t + 1; r < R && bad == R; ++r)
        for (std::size_t c = t + 1; c < C; ++c)
          if (a(r, c) % p != 0) {
            bad = r;
            break;
          }
      if (bad == R) break;
      for (std::size_t c = t; c < C; ++c) a(t, c) = checked::add(a(t, c), a(bad, c));
    }
    d.push_back(checked::abs(a(t, t)));
  }
  return d;
}

}  // namespace detail

/// Nonzero invariant factors d_1 | d_2 | ... of a.
inline std::vector<std::int64_t> smith_normal_form(const IntMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  const IntMatrix wide = a.rows() > a.cols() ? a.transposed() : a;
  if (wide.cols() > wide.rows()) return detail::dense_snf(detail::column_lattice_basis(wide));
  return detail::dense_snf(wide);
}

// ---------------------------------------------------------------------------
// Euler characteristic with compact support.

/// 1 + (n-1)(m-1)((n+m-4)/2 + 5(n-2)(m-2)/12), evaluated exactly.
inline std::int64_t chi_formula(const TorusKnot& k) {
  const std::int64_t n = k.n, m = k.m;
  const Rational inner = Rational(n + m - 4, 2) + Rational(5 * (n - 2) * (m - 2), 12);
  const Rational chi = Rational(1) + Rational((n - 1) * (m - 1)) * inner;
  if (!chi.is_integer())
    throw Error(Errc::NonIntegerResult, "chi formula gave " + chi.str() + " for (" + std::to_string(n) + "," +
                                            std::to_string(m) + ")");
  return chi.num();
}

inline std::int64_t chi_weight(StratumClass c) {
  switch (c) {
    case StratumClass::TR: return 1;
    case StratumClass::PartialCylinder:
    case StratumClass::PartialMobius: return 0;
    case StratumClass::Irr3a: return 5;
    case StratumClass::Irr3bA:
    case StratumClass::Irr3bB: return 1;
  }
  return 0;
}

struct EulerReport {
  std::map<StratumClass, std::int64_t> per_class;
  std::int64_t total = 0;
};

/// chi_c as a sum over strata, with component counts from enumeration.
inline EulerReport chi_strata(const TorusKnot& k) {
  EulerReport rep;
  for (auto c : kAllClasses) {
    const std::int64_t v = checked::mul(chi_weight(c), count_by_enumeration(k, c));
    rep.per_class[c] = v;
    rep.total = checked::add(rep.total, v);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Homology of Y_3 for n = 2.

/// Index of the meridian l_k of the collapsed Mobius band, l_k = l_-k.
inline std::int64_t meridian_class(std::int64_t k, std::int64_t m) {
  const std::int64_t r = checked::mod(k, m);
  if (r == 0) throw Error(Errc::ZeroClass, std::to_string(k) + " = 0 mod " + std::to_string(m));
  return std::min(r, m - r);
}

namespace detail {

inline void check_odd_m(std::int64_t m) {
  if (m % 2 == 0) throw Error(Errc::EvenM, "m must be odd (got " + std::to_string(m) + ")");
  if (m < 3) throw Error(Errc::InvalidArgument, "m must be >= 3 (got " + std::to_string(m) + ")");
}

// Visits the pairs 1 <= a < b <= m-1 in lexicographic order.
template <class F>
void for_each_f_column(std::int64_t m, F&& f) {
  std::size_t col = 0;
  for (std::int64_t a = 1; a < m; ++a)
    for (std::int64_t b = a + 1; b < m; ++b) f(col++, a, b);
}

}  // namespace detail

inline std::int64_t meridian_count(std::int64_t m) { return (m - 1) / 2; }
inline std::int64_t triangle_count(std::int64_t m) { return (m - 1) * (m - 2) / 2; }

/// Integer lift of f: column {a,b} counts hits of l_a, l_b, l_{a-b}.
inline IntMatrix build_f_lift(std::int64_t m) {
  detail::check_odd_m(m);
  IntMatrix f(static_cast<std::size_t>(meridian_count(m)), static_cast<std::size_t>(triangle_count(m)));
  detail::for_each_f_column(m, [&](std::size_t col, std::int64_t a, std::int64_t b) {
    for (const std::int64_t k : {a, b, a - b}) ++f(static_cast<std::size_t>(meridian_class(k, m) - 1), col);
  });
  return f;
}

/// f: triangles {a,b} -> meridians, l_a + l_b + l_{a-b} mod 2. Row i is l_{i+1}.
inline F2Matrix build_f_matrix(std::int64_t m) {
  detail::check_odd_m(m);
  F2Matrix f(static_cast<std::size_t>(meridian_count(m)), static_cast<std::size_t>(triangle_count(m)));
  detail::for_each_f_column(m, [&](std::size_t col, std::int64_t a, std::int64_t b) {
    for (const std::int64_t k : {a, b, a - b}) f.flip(static_cast<std::size_t>(meridian_class(k, m) - 1), col);
  });
  return f;
}

struct HomologyProfile {
  std::vector<std::int64_t> betti;
  std::vector<std::vector<std::int64_t>> torsion;
  friend bool operator==(const HomologyProfile&, const HomologyProfile&) = default;
};

/// H_*(Y_3) for the (2, m) torus knot from the Mayer-Vietoris data of f.
inline HomologyProfile homology_n2(std::int64_t m) {
  detail::check_odd_m(m);
  const auto n1 = static_cast<std::size_t>(meridian_count(m));
  const auto n2 = static_cast<std::size_t>(triangle_count(m));

  const std::size_t rank2 = f2_rank(build_f_matrix(m));
  if (rank2 < n1)
    throw Error(Errc::SurjectivityFailure, "f has F2-rank " + std::to_string(rank2) + " < " + std::to_string(n1) +
                                                " for m = " + std::to_string(m));

  // H_1 = coker(Z^N2 -> (Z/2)^N1), presented by [F | 2I].
  const IntMatrix lift = build_f_lift(m);
  IntMatrix pres(n1, n2 + n1);
  for (std::size_t r = 0; r < n1; ++r) {
    for (std::size_t c = 0; c < n2; ++c) pres(r, c) = lift(r, c);
    pres(r, n2 + r) = 2;
  }
  const auto factors = smith_normal_form(pres);
  std::vector<std::int64_t> tors1;
  for (auto d : factors)
    if (d > 1) tors1.push_back(d);
  const auto b1 = static_cast<std::int64_t>(n1 - factors.size());
  // ker f is the projection of ker [F | 2I], which it meets injectively.
  const auto b2 = static_cast<std::int64_t>(n2 + n1 - factors.size());

  // H_0: T, the Mobius bands glued along their boundary circles in T, and
  // the triangles glued along their edges to the bands.
  std::vector<std::size_t> parent(1 + n1 + n2);
  std::iota(parent.begin(), parent.end(), 0);
  const auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  const auto unite = [&](std::size_t x, std::size_t y) { parent[find(x)] = find(y); };
  for (std::size_t i = 0; i < n1; ++i) unite(0, 1 + i);
  detail::for_each_f_column(m, [&](std::size_t col, std::int64_t a, std::int64_t b) {
    for (const std::int64_t k : {a, b, a - b}) unite(1 + n1 + col, static_cast<std::size_t>(meridian_class(k, m)));
  });
  std::int64_t b0 = 0;
  for (std::size_t x = 0; x < parent.size(); ++x) b0 += find(x) == x;

  return {{b0, b1, b2}, {{}, tors1, {}}};
}

// ---------------------------------------------------------------------------
// JSON.

inline nlohmann::ordered_json to_json(const HomologyProfile& h) {
  nlohmann::ordered_json j;
  j["betti"] = h.betti;
  j["torsion"] = h.torsion;
  return j;
}

inline nlohmann::ordered_json to_json(const EulerReport& e) {
  nlohmann::ordered_json j;
  nlohmann::ordered_json per = nlohmann::ordered_json::object();
  for (auto c : kAllClasses) per[std::string(to_string(c))] = e.per_class.at(c);
  j["per_class"] = std::move(per);
  j["total"] = e.total;
  return j;
}

}  // namespace knotchar
