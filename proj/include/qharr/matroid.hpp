#pragma once

// The matroid of a quaternionic arrangement and everything derived from it:
// circuits, flats, the intersection lattice with its Möbius function, and
// no-broken-circuit sets.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <shared_mutex>
#include <unordered_map>
#include <vector>

#include "qharr/arrangement.hpp"
#include "qharr/bits.hpp"
#include "qharr/hlinalg.hpp"
#include "qharr/poincare.hpp"

namespace qharr {

inline constexpr std::size_t kMaxGroundSize = 30;

/// Lexicographic order of the sorted element lists.
inline bool lex_less(Subset a, Subset b) {
  auto const ea = elements(a);
  auto const eb = elements(b);
  return std::lexicographical_compare(ea.begin(), ea.end(), eb.begin(), eb.end());
}

/// Rank oracle of an arrangement: rank(S) = codim of the intersection of the
/// hyperplanes in S = rank of the right span of their rows. Ranks are memoized
/// in a get-or-compute cache that is safe to share between threads.
class Matroid {
 public:
  explicit Matroid(Arrangement arr) : arr_(std::move(arr)) {
    if (arr_.size() > kMaxGroundSize)
      throw SizeGuardExceeded("matroid ground set limited to " +
                              std::to_string(kMaxGroundSize) + " hyperplanes");
  }

  Matroid(Matroid const&) = delete;
  Matroid& operator=(Matroid const&) = delete;

  Arrangement const& arrangement() const { return arr_; }
  std::size_t ground_size() const { return arr_.size(); }
  Subset ground_set() const {
    return ground_size() == 0 ? 0 : static_cast<Subset>((std::uint64_t{1} << ground_size()) - 1);
  }

  std::size_t rank(Subset s) const {
    if ((s & ~ground_set()) != 0) throw IndexOutOfRange("subset outside the ground set");
    {
      std::shared_lock lock(mutex_);
      if (auto it = cache_.find(s); it != cache_.end()) return it->second;
    }
    std::vector<CoefficientRow> rows;
    for (auto i : elements(s)) rows.push_back(arr_[i].coeffs());
    std::size_t const r = rank_right_span(HMatrix::from_rows(rows, arr_.ambient_dim()));
    std::unique_lock lock(mutex_);
    cache_.emplace(s, r);
    return r;
  }

  std::size_t rank() const { return rank(ground_set()); }

  bool independent(Subset s) const { return rank(s) == cardinality(s); }

  /// {e : rank(S + e) = rank(S)}
  Subset closure(Subset s) const {
    std::size_t const r = rank(s);
    Subset out = s;
    for (std::size_t e = 0; e < ground_size(); ++e) {
      Subset const bit = Subset{1} << e;
      if (!(s & bit) && rank(s | bit) == r) out |= bit;
    }
    return out;
  }

  /// Visits every independent set exactly once, each grown from its prefix by
  /// adding a larger element. visit(I) returning false prunes that branch.
  template <class Visit>
  void for_each_independent(Visit&& visit) const {
    grow(0, 0, visit);
  }

 private:
  template <class Visit>
  void grow(Subset current, std::size_t start, Visit& visit) const {
    if (!visit(current)) return;
    for (std::size_t e = start; e < ground_size(); ++e) {
      Subset const next = current | (Subset{1} << e);
      if (independent(next)) grow(next, e + 1, visit);
    }
  }

  Arrangement arr_;
  mutable std::shared_mutex mutex_;
  mutable std::unordered_map<Subset, std::size_t> cache_;
};

inline std::size_t rank(Arrangement const& arr, Subset s) { return Matroid(arr).rank(s); }

inline void sort_lex(std::vector<Subset>& v) { std::sort(v.begin(), v.end(), lex_less); }

/// Minimal dependent sets in lexicographic order. Each circuit C is found as
/// I + max(C) where I = C - max(C) is independent, so only independent sets
/// are ever expanded.
inline std::vector<Subset> circuits(Matroid const& m) {
  std::vector<Subset> out;
  m.for_each_independent([&](Subset indep) {
    std::size_t const start = indep == 0 ? 0 : static_cast<std::size_t>(std::bit_width(indep));
    for (std::size_t e = start; e < m.ground_size(); ++e) {
      Subset const cand = indep | (Subset{1} << e);
      if (m.independent(cand)) continue;
      bool minimal = true;
      for (auto x : elements(indep)) {
        if (!m.independent(cand & ~(Subset{1} << x))) {
          minimal = false;
          break;
        }
      }
      if (minimal) out.push_back(cand);
    }
    return true;
  });
  sort_lex(out);
  return out;
}

inline std::vector<Subset> circuits(Arrangement const& arr) { return circuits(Matroid(arr)); }

struct Flat {
  Subset elements = 0;
  std::size_t rank = 0;
  std::int64_t mobius = 0;          // mu(bottom, F)
  std::vector<std::size_t> covers;  // indices of the flats covering this one
};

/// Flats ordered by (rank, lexicographic elements); flats[0] is the bottom.
struct IntersectionLattice {
  std::vector<Flat> flats;

  std::size_t rank() const { return flats.empty() ? 0 : flats.back().rank; }

  std::vector<Flat const*> of_rank(std::size_t r) const {
    std::vector<Flat const*> out;
    for (auto const& f : flats)
      if (f.rank == r) out.push_back(&f);
    return out;
  }
};

/// Flats by rank-layered expansion: layer r+1 is the set of closures
/// cl(F + e) of the layer-r flats F, which are exactly the flats covering F.
inline IntersectionLattice lattice(Matroid const& m) {
  std::vector<std::vector<Subset>> layers{{m.closure(0)}};
  std::map<Subset, std::vector<Subset>> up;  // flat -> flats covering it
  while (true) {
    std::vector<Subset> next;
    for (Subset f : layers.back()) {
      for (std::size_t e = 0; e < m.ground_size(); ++e) {
        Subset const bit = Subset{1} << e;
        if (f & bit) continue;
        Subset const g = m.closure(f | bit);
        auto& cov = up[f];
        if (std::find(cov.begin(), cov.end(), g) == cov.end()) cov.push_back(g);
        if (std::find(next.begin(), next.end(), g) == next.end()) next.push_back(g);
      }
    }
    if (next.empty()) break;
    sort_lex(next);
    layers.push_back(std::move(next));
  }

  IntersectionLattice lat;
  std::map<Subset, std::size_t> index;
  for (std::size_t r = 0; r < layers.size(); ++r) {
    for (Subset f : layers[r]) {
      index[f] = lat.flats.size();
      lat.flats.push_back({f, r, 0, {}});
    }
  }
  for (auto& flat : lat.flats) {
    for (Subset g : up[flat.elements]) flat.covers.push_back(index.at(g));
    std::sort(flat.covers.begin(), flat.covers.end());
  }
  // mu(0,0) = 1, mu(0,F) = -sum_{G < F} mu(0,G); flats are ordered by rank so
  // every proper subflat precedes F.
  for (std::size_t i = 0; i < lat.flats.size(); ++i) {
    auto& f = lat.flats[i];
    if (i == 0) {
      f.mobius = 1;
      continue;
    }
    std::int64_t sum = 0;
    for (std::size_t j = 0; j < i; ++j) {
      auto const& g = lat.flats[j];
      if (g.rank < f.rank && (g.elements & ~f.elements) == 0) sum += g.mobius;
    }
    f.mobius = -sum;
  }
  return lat;
}

inline IntersectionLattice lattice(Arrangement const& arr) { return lattice(Matroid(arr)); }

/// Independent sets containing no broken circuit (circuit minus its least
/// element in arrangement order), grouped by cardinality, each group in
/// lexicographic order.
inline std::vector<std::vector<Subset>> nbc_sets(Matroid const& m) {
  std::vector<Subset> broken;
  for (Subset c : circuits(m)) broken.push_back(c & (c - 1));  // drop lowest bit
  std::vector<std::vector<Subset>> out;
  m.for_each_independent([&](Subset s) {
    for (Subset b : broken)
      if ((b & ~s) == 0) return false;  // supersets contain b too
    std::size_t const k = cardinality(s);
    if (out.size() <= k) out.resize(k + 1);
    out[k].push_back(s);
    return true;
  });
  for (auto& group : out) sort_lex(group);
  return out;
}

inline std::vector<std::vector<Subset>> nbc_sets(Arrangement const& arr) {
  return nbc_sets(Matroid(arr));
}

inline std::vector<std::int64_t> nbc_counts(Matroid const& m) {
  std::vector<std::int64_t> counts;
  for (auto const& g : nbc_sets(m)) counts.push_back(static_cast<std::int64_t>(g.size()));
  return counts;
}

/// sum over flats F of |mu(0,F)| t^(3 rank F)
inline PoincarePolynomial whitney_poincare(IntersectionLattice const& lat) {
  PoincarePolynomial p;
  for (auto const& f : lat.flats)
    p.add(static_cast<int>(3 * f.rank), f.mobius < 0 ? -f.mobius : f.mobius);
  return p;
}

inline PoincarePolynomial whitney_poincare(Arrangement const& arr) {
  return whitney_poincare(lattice(arr));
}

}  // namespace qharr
