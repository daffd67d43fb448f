#pragma once

#include <cstdint>
#include <vector>

namespace mvcap {

/// Ryser inclusion-exclusion with Gray-code row-sum updates. Works for any ring-like T
/// (double, exact rationals). `a` is row-major n x n.
template <typename T>
T ryser_permanent(const std::vector<std::vector<T>>& a) {
  const std::size_t n = a.size();
  if (n == 0) return T(1);
  std::vector<T> row_sums(n, T(0));
  T total(0);
  std::uint64_t gray = 0;
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t k = 1; k < count; ++k) {
    const std::uint64_t next = k ^ (k >> 1);
    const std::uint64_t flipped = next ^ gray;
    std::size_t col = 0;
    while (!(flipped >> col & 1)) ++col;
    const bool added = (next >> col) & 1;
    for (std::size_t i = 0; i < n; ++i) {
      if (added)
        row_sums[i] += a[i][col];
      else
        row_sums[i] -= a[i][col];
    }
    gray = next;
    T prod(1);
    for (std::size_t i = 0; i < n; ++i) prod *= row_sums[i];
    // Sign (-1)^(n - |S|).
    const int size = __builtin_popcountll(gray);
    if ((n - static_cast<std::size_t>(size)) % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return total;
}

}  // namespace mvcap
