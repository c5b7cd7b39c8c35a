#pragma once

#include <vector>

#include "oddsec/field.hpp"

namespace oddsec {

using Matrix = std::vector<std::vector<Elem>>;

/// Reduced row echelon form in place; returns the pivot columns.
inline std::vector<std::size_t> row_reduce(const Field& f, Matrix& a) {
  std::vector<std::size_t> pivots;
  if (a.empty()) return pivots;
  const std::size_t rows = a.size(), cols = a.front().size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].v == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Elem inv = f.inv(a[r][c]);
    for (auto& x : a[r]) x = f.mul(x, inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].v == 0) continue;
      const Elem k = a[i][c];
      for (std::size_t j = 0; j < cols; ++j) a[i][j] = f.sub(a[i][j], f.mul(k, a[r][j]));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of {v : a v = 0}.
inline std::vector<std::vector<Elem>> nullspace(const Field& f, Matrix a, std::size_t cols) {
  const auto pivots = row_reduce(f, a);
  std::vector<char> is_pivot(cols, 0);
  for (auto c : pivots) is_pivot[c] = 1;
  std::vector<std::vector<Elem>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Elem> v(cols, Field::zero());
    v[free] = Field::one();
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = f.neg(a[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

inline std::size_t rank(const Field& f, Matrix a) { return row_reduce(f, a).size(); }

}  // namespace oddsec
