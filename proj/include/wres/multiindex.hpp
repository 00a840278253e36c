#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <vector>

#include "wres/rational.hpp"

namespace wres {

// Multi-index of partial derivatives: fixed-length list of non-negative
// entries, length = ambient dimension.
using MultiIndex = std::vector<int>;

inline int mi_order(const MultiIndex& a) {
  return std::accumulate(a.begin(), a.end(), 0);
}

inline Integer mi_factorial(const MultiIndex& a) {
  Integer r = 1;
  for (int e : a) r *= factorial(e);
  return r;
}

inline MultiIndex mi_add(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

inline MultiIndex mi_zero(int dim) { return MultiIndex(dim, 0); }

inline MultiIndex mi_unit(int dim, int i) {
  MultiIndex r(dim, 0);
  r[i] = 1;
  return r;
}

// All multi-indices of the given order, in lexicographic order.
inline std::vector<MultiIndex> mi_of_order(int dim, int order) {
  std::vector<MultiIndex> out;
  MultiIndex cur(dim, 0);
  std::function<void(int, int)> rec = [&](int pos, int left) {
    if (pos == dim - 1) {
      cur[pos] = left;
      out.push_back(cur);
      return;
    }
    for (int e = 0; e <= left; ++e) {
      cur[pos] = e;
      rec(pos + 1, left - e);
    }
  };
  if (dim == 0) {
    if (order == 0) out.push_back({});
    return out;
  }
  rec(0, order);
  return out;
}

// Every way of splitting a derivative budget across a tuple of
// multi-indices with per-slot minimum orders.  Tuples are produced
// exactly once, lexicographically on the concatenated multi-indices.
inline void for_each_split(int total, int dim, const std::vector<int>& min_orders,
                           const std::function<void(const std::vector<MultiIndex>&)>& fn) {
  int slots = static_cast<int>(min_orders.size());
  std::vector<MultiIndex> tuple(slots);
  std::function<void(int, int)> rec = [&](int slot, int left) {
    if (slot == slots - 1) {
      if (left < min_orders[slot]) return;
      for (const auto& m : mi_of_order(dim, left)) {
        tuple[slot] = m;
        fn(tuple);
      }
      return;
    }
    int reserve = 0;
    for (int s = slot + 1; s < slots; ++s) reserve += min_orders[s];
    for (int o = min_orders[slot]; o <= left - reserve; ++o) {
      for (const auto& m : mi_of_order(dim, o)) {
        tuple[slot] = m;
        rec(slot + 1, left - o);
      }
    }
  };
  if (slots == 0) return;
  rec(0, total);
}

inline std::vector<std::vector<MultiIndex>> enumerate_splits(
    int total, int dim, const std::vector<int>& min_orders) {
  std::vector<std::vector<MultiIndex>> out;
  for_each_split(total, dim, min_orders,
                 [&](const std::vector<MultiIndex>& t) { out.push_back(t); });
  return out;
}

}  // namespace wres
