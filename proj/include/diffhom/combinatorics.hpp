#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "diffhom/rational.hpp"

namespace diffhom {

// Size-k subsets of {first, ..., first+n-1} in lexicographic order.
inline std::vector<std::vector<int>> subsets_of_size(int n, int k, int first = 1) {
  std::vector<std::vector<int>> out;
  if (k < 0 || k > n) return out;
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    std::vector<int> s(idx.size());
    for (std::size_t i = 0; i < idx.size(); ++i) s[i] = idx[i] + first;
    out.push_back(std::move(s));
    int i = k - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - k + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < k; ++j)
      idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

// Weak compositions of `total` into `parts` non-negative parts, lexicographic.
inline std::vector<std::vector<int>> compositions(int total, int parts) {
  std::vector<std::vector<int>> out;
  if (parts <= 0) {
    if (total == 0) out.emplace_back();
    return out;
  }
  std::vector<int> c(static_cast<std::size_t>(parts), 0);
  auto rec = [&](auto&& self, int pos, int left) -> void {
    if (pos == parts - 1) {
      c[static_cast<std::size_t>(pos)] = left;
      out.push_back(c);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      c[static_cast<std::size_t>(pos)] = v;
      self(self, pos + 1, left - v);
    }
  };
  rec(rec, 0, total);
  return out;
}

// Non-decreasing index sequences of length k over {0..n-1} (multisets).
inline std::vector<std::vector<int>> multisets(int n, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < n; ++i) {
      cur.push_back(i);
      self(self, i);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

// All tuples in {0..bound-1}^len in lexicographic order.
inline std::vector<std::vector<int>> box_tuples(int bound, int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> t(static_cast<std::size_t>(len), 0);
  if (bound <= 0 && len > 0) return out;
  while (true) {
    out.push_back(t);
    int i = len - 1;
    while (i >= 0 && t[static_cast<std::size_t>(i)] == bound - 1) {
      t[static_cast<std::size_t>(i)] = 0;
      --i;
    }
    if (i < 0) break;
    ++t[static_cast<std::size_t>(i)];
  }
  return out;
}

inline Integer multinomial(int n, const std::vector<int>& parts) {
  int s = 0;
  for (int p : parts) {
    if (p < 0) return 0;
    s += p;
  }
  if (s != n) return 0;
  Integer r = factorial(static_cast<unsigned long>(n));
  for (int p : parts) r /= factorial(static_cast<unsigned long>(p));
  return r;
}

// Sign of the permutation sorting `perm` (any sequence of distinct values).
inline int permutation_sign(std::vector<int> perm) {
  int sign = 1;
  for (std::size_t i = 0; i < perm.size(); ++i)
    for (std::size_t j = i + 1; j < perm.size(); ++j)
      if (perm[i] > perm[j]) sign = -sign;
  return sign;
}

}  // namespace diffhom
