#pragma once

#include <bit>
#include <cstdint>
#include <unordered_map>
#include <vector>

#include "diffhom/errors.hpp"
#include "diffhom/poly.hpp"

namespace diffhom {

using PolyMatrix = std::vector<std::vector<Poly>>;

namespace detail {

// Minor on rows [n - popcount(cols), n) and the columns in `cols`, expanded
// along its first row. Memoized on the column subset.
inline const Poly& laplace_minor(const PolyMatrix& m, std::uint32_t cols,
                                 std::unordered_map<std::uint32_t, Poly>& memo) {
  auto it = memo.find(cols);
  if (it != memo.end()) return it->second;
  const int n = static_cast<int>(m.size());
  const int row = n - std::popcount(cols);
  Poly det;
  int position = 0;
  for (int c = 0; c < n; ++c) {
    if (!(cols & (1u << c))) continue;
    const Poly& entry = m[row][c];
    if (!entry.is_zero()) {
      const Poly& minor = laplace_minor(m, cols & ~(1u << c), memo);
      if (!minor.is_zero()) {
        Poly t = entry * minor;
        if (position % 2 == 0)
          det += t;
        else
          det -= t;
      }
    }
    ++position;
  }
  return memo.emplace(cols, std::move(det)).first->second;
}

}  // namespace detail

// Exact determinant by Laplace expansion with column-subset memoization.
// The 0x0 determinant is 1.
inline Poly determinant(const PolyMatrix& m) {
  const std::size_t n = m.size();
  for (const auto& row : m)
    if (row.size() != n) throw NonSquare();
  if (n > 20) throw ResourceLimit("determinant size " + std::to_string(n) + " exceeds 20");
  std::unordered_map<std::uint32_t, Poly> memo;
  memo.emplace(0u, Poly::constant(1));
  const std::uint32_t all = n == 0 ? 0u : ((1u << n) - 1u);
  return detail::laplace_minor(m, all, memo);
}

}  // namespace diffhom
