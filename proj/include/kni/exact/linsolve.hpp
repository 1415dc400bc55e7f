#pragma once

#include <optional>
#include <utility>
#include <vector>

namespace kni::exact {

/// Solves A x = b over an exact field by Gaussian elimination with the
/// first nonzero pivot. Returns nullopt when A is singular.
/// T needs +, -, *, / and is_zero().
template <typename T>
std::optional<std::vector<T>> solve_linear(std::vector<std::vector<T>> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && a[piv][col].is_zero()) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(a[piv], a[col]);
    std::swap(b[piv], b[col]);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (a[r][col].is_zero()) continue;
      const T f = a[r][col] / a[col][col];
      for (std::size_t k = col; k < n; ++k) a[r][k] = a[r][k] - f * a[col][k];
      b[r] = b[r] - f * b[col];
    }
  }
  std::vector<T> x(n);
  for (std::size_t r = n; r-- > 0;) {
    T s = b[r];
    for (std::size_t k = r + 1; k < n; ++k) s = s - a[r][k] * x[k];
    x[r] = s / a[r][r];
  }
  return x;
}

}  // namespace kni::exact
