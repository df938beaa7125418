#pragma once

#include <cstddef>
#include <vector>

#include "hcalc/int_matrix.hpp"

namespace hcalc {

// Signature of a symmetric integer matrix: number of positive minus number
// of negative eigenvalues, computed exactly by symmetric elimination over Q.
inline long signature(const IntMatrix& m) {
  if (!m.is_symmetric()) throw validation_error("signature needs a symmetric matrix");
  const std::size_t n = m.rows();
  std::vector<std::vector<Rat>> a(n, std::vector<Rat>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = Rat(m(i, j));

  long pos = 0, neg = 0;
  for (std::size_t k = 0; k < n; ++k) {
    if (a[k][k] == 0) {
      // Prefer a later nonzero diagonal entry.
      std::size_t l = k + 1;
      while (l < n && a[l][l] == 0) ++l;
      if (l < n) {
        std::swap(a[k], a[l]);
        for (auto& row : a) std::swap(row[k], row[l]);
      } else {
        // All remaining diagonal entries vanish.  Fold some nonzero
        // off-diagonal entry into position k; if there is none the
        // remaining block is zero and contributes nothing.
        std::size_t bi = n, bj = n;
        for (std::size_t i = k; i < n && bi == n; ++i)
          for (std::size_t j = i + 1; j < n; ++j)
            if (a[i][j] != 0) { bi = i; bj = j; break; }
        if (bi == n) break;
        if (bi != k) {
          std::swap(a[k], a[bi]);
          for (auto& row : a) std::swap(row[k], row[bi]);
        }
        // Now a[k][bj] != 0 and a[k][k] == a[bj][bj] == 0.
        for (std::size_t c = 0; c < n; ++c) a[k][c] += a[bj][c];
        for (std::size_t r = 0; r < n; ++r) a[r][k] += a[r][bj];
      }
    }
    if (a[k][k] > 0) ++pos;
    else ++neg;
    // Clear row and column k.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == 0) continue;
      Rat f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
    for (std::size_t j = k + 1; j < n; ++j) a[k][j] = 0;
  }
  return pos - neg;
}

} // namespace hcalc
