#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <vector>

namespace qharr {

/// Set of small indices as a bitmask (bit i = index i).
using Subset = std::uint32_t;

inline std::vector<std::size_t> elements(Subset s) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; s != 0; ++i, s >>= 1)
    if (s & 1u) out.push_back(i);
  return out;
}

inline Subset subset_of(std::initializer_list<std::size_t> idx) {
  Subset s = 0;
  for (auto i : idx) s |= Subset{1} << i;
  return s;
}

inline std::size_t cardinality(Subset s) { return static_cast<std::size_t>(std::popcount(s)); }

/// Sign of the shuffle taking the concatenation (S, T) to S ∪ T in increasing
/// order: (-1)^#{(s, t) in S x T : s > t}. Only meaningful for disjoint sets.
inline int shuffle_sign(Subset s, Subset t) {
  int inversions = 0;
  for (auto e : elements(t)) {
    Subset const above = e + 1 >= 32 ? 0 : ~((Subset{1} << (e + 1)) - 1);
    inversions += std::popcount(s & above);
  }
  return inversions % 2 == 0 ? 1 : -1;
}

}  // namespace qharr
