#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "hcalc/abelian_group.hpp"
#include "hcalc/int_matrix.hpp"

namespace hcalc {

// d = u * m * v with u, v unimodular and d diagonal, non-negative,
// each diagonal entry dividing the next.
struct SnfResult {
  IntMatrix d;
  IntMatrix u;
  IntMatrix v;
};

inline SnfResult smith_normal_form(const IntMatrix& m) {
  const std::size_t r = m.rows(), c = m.cols();
  IntMatrix d = m;
  IntMatrix u = IntMatrix::identity(r);
  IntMatrix v = IntMatrix::identity(c);

  // Smallest nonzero entry of the trailing submatrix, ties by position.
  auto find_pivot = [&](std::size_t t) -> std::optional<std::pair<std::size_t, std::size_t>> {
    std::optional<std::pair<std::size_t, std::size_t>> best;
    Int best_abs = 0;
    for (std::size_t i = t; i < r; ++i)
      for (std::size_t j = t; j < c; ++j) {
        if (d(i, j) == 0) continue;
        Int a = abs(d(i, j));
        if (!best || a < best_abs) {
          best = {i, j};
          best_abs = a;
        }
      }
    return best;
  };

  for (std::size_t t = 0; t < r && t < c; ++t) {
    auto pv = find_pivot(t);
    if (!pv) break;
    for (;;) {
      pv = find_pivot(t);
      if (pv->first != t) { d.swap_rows(t, pv->first); u.swap_rows(t, pv->first); }
      if (pv->second != t) { d.swap_cols(t, pv->second); v.swap_cols(t, pv->second); }

      // Knock down the rest of column t and row t; truncated quotients leave
      // remainders strictly smaller than the pivot, so this loop terminates.
      for (std::size_t i = t + 1; i < r; ++i) {
        if (d(i, t) == 0) continue;
        Int q = d(i, t) / d(t, t);
        if (q != 0) { d.add_row(i, t, -q); u.add_row(i, t, -q); }
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (d(t, j) == 0) continue;
        Int q = d(t, j) / d(t, t);
        if (q != 0) { d.add_col(j, t, -q); v.add_col(j, t, -q); }
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < r && clean; ++i) clean = d(i, t) == 0;
      for (std::size_t j = t + 1; j < c && clean; ++j) clean = d(t, j) == 0;
      if (!clean) continue;

      // Pivot must divide everything below and to the right.
      bool divides = true;
      for (std::size_t i = t + 1; i < r && divides; ++i)
        for (std::size_t j = t + 1; j < c && divides; ++j)
          if (d(i, j) % d(t, t) != 0) {
            d.add_row(t, i, 1);
            u.add_row(t, i, 1);
            divides = false;
          }
      if (divides) break;
    }
    if (d(t, t) < 0) {
      d.negate_row(t);
      u.negate_row(t);
    }
  }
  return {d, u, v};
}

inline std::vector<Int> smith_diagonal(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  std::vector<Int> out;
  std::size_t k = std::min(m.rows(), m.cols());
  for (std::size_t i = 0; i < k; ++i) out.push_back(s.d(i, i));
  return out;
}

inline std::size_t rank(const IntMatrix& m) {
  std::size_t n = 0;
  for (const auto& d : smith_diagonal(m))
    if (d != 0) ++n;
  return n;
}

// Z^rows / (column span of m).
inline AbelianGroup cokernel(const IntMatrix& m) {
  std::vector<Int> diag = smith_diagonal(m);
  std::size_t nonzero = 0;
  std::vector<Int> torsion;
  for (const auto& d : diag) {
    if (d == 0) continue;
    ++nonzero;
    if (d > 1) torsion.push_back(d);
  }
  return AbelianGroup(m.rows() - nonzero, std::move(torsion));
}

// Basis of { x : m x = 0 } as columns, read off from the v factor.
inline std::vector<std::vector<Int>> kernel_basis(const IntMatrix& m) {
  SnfResult s = smith_normal_form(m);
  std::vector<std::vector<Int>> basis;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    bool zero_col = j >= m.rows() || s.d(j, j) == 0;
    if (!zero_col) continue;
    std::vector<Int> col(m.cols());
    for (std::size_t i = 0; i < m.cols(); ++i) col[i] = s.v(i, j);
    basis.push_back(std::move(col));
  }
  return basis;
}

} // namespace hcalc
