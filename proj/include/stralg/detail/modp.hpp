#pragma once

// Dense linear algebra over F_p.

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

namespace stralg::modp {

inline constexpr std::uint32_t prime = 32003;

using Vec = std::vector<std::uint32_t>;

inline std::uint32_t add(std::uint32_t a, std::uint32_t b) { return (a + b) % prime; }
inline std::uint32_t sub(std::uint32_t a, std::uint32_t b) { return (a + prime - b) % prime; }
inline std::uint32_t mul(std::uint32_t a, std::uint32_t b) {
  return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % prime);
}

inline std::uint32_t inverse(std::uint32_t a) {
  std::uint32_t result = 1, base = a, e = prime - 2;
  while (e > 0) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
    e >>= 1;
  }
  return result;
}

/// Row-reduces in place to reduced echelon form; returns pivot columns.
inline std::vector<std::size_t> rref(std::vector<Vec>& rows, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows.size(); ++c) {
    std::size_t sel = r;
    while (sel < rows.size() && rows[sel][c] == 0) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[r], rows[sel]);
    const auto inv = inverse(rows[r][c]);
    for (auto& x : rows[r]) x = mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || rows[i][c] == 0) continue;
      const auto f = rows[i][c];
      for (std::size_t k = 0; k < cols; ++k) rows[i][k] = sub(rows[i][k], mul(f, rows[r][k]));
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

/// Rank of the span of the given vectors of length `dim`.
inline std::size_t rank(std::vector<Vec> vectors, std::size_t dim) {
  return rref(vectors, dim).size();
}

/// Basis of the span, in reduced echelon form.
inline std::vector<Vec> span_basis(std::vector<Vec> vectors, std::size_t dim) {
  rref(vectors, dim);
  return vectors;
}

/// Null space of the map whose images of the `cols` domain basis vectors are
/// the columns of `matrix` (rows x cols, row-major).
inline std::vector<Vec> null_space(const std::vector<Vec>& matrix, std::size_t cols) {
  auto rows = matrix;
  const auto pivots = rref(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<Vec> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    Vec v(cols, 0);
    v[free] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = sub(0, rows[i][free]);
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace stralg::modp
