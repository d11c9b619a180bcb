#pragma once

#include "genus2/rational.hpp"

#include <optional>
#include <vector>

namespace genus2 {

/// Dense row-major matrix over exact rationals. Small sizes only; everything
/// here is O(n^3) Gaussian elimination.
using RatRow = std::vector<Rat>;
using RatMat = std::vector<RatRow>;

/// Reduces `m` in place to reduced row echelon form; returns the pivot
/// columns in order.
inline std::vector<int> rref(RatMat& m) {
  std::vector<int> pivots;
  if (m.empty()) return pivots;
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int r = 0;
  for (int c = 0; c < cols && r < rows; ++c) {
    int pr = -1;
    for (int i = r; i < rows; ++i)
      if (m[i][c] != 0) { pr = i; break; }
    if (pr < 0) continue;
    std::swap(m[r], m[pr]);
    Rat inv = m[r][c];
    for (int j = c; j < cols; ++j) m[r][j] /= inv;
    for (int i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rat f = m[i][c];
      for (int j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(pivots.size());
  return pivots;
}

inline int rank(RatMat m) { return static_cast<int>(rref(m).size()); }

/// Solution dimension of the homogeneous system m x = 0.
inline int nullity(const RatMat& m, int vars) { return vars - rank(m); }

/// Solves the square system a x = b; nullopt if a is singular.
inline std::optional<RatRow> solve_square(RatMat a, RatRow b) {
  const int n = static_cast<int>(a.size());
  for (int i = 0; i < n; ++i) a[i].push_back(b[i]);
  auto pivots = rref(a);
  if (static_cast<int>(pivots.size()) != n) return std::nullopt;
  for (int i = 0; i < n; ++i)
    if (pivots[i] != i) return std::nullopt;  // rank n but involving the rhs column
  RatRow x(n);
  for (int i = 0; i < n; ++i) x[i] = a[i][n];
  return x;
}

}  // namespace genus2
