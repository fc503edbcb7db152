#pragma once

// Betti numbers and Poincaré polynomials of arrangement complements, and the
// deletion-restriction check P_X = P_X' + t^3 P_X''.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "qharr/arrangement.hpp"
#include "qharr/matroid.hpp"
#include "qharr/os_algebra.hpp"
#include "qharr/poincare.hpp"

namespace qharr {

/// Poincaré polynomial of the complement from the nbc basis: sum_k #nbc_k t^3k.
inline PoincarePolynomial poincare(Arrangement const& arr) {
  return PoincarePolynomial::from_generator_counts(graded_dims_nbc(arr));
}

struct RecurrenceEntry {
  std::size_t index = 0;
  PoincarePolynomial total;        // P_X, nbc route
  PoincarePolynomial deleted;      // P_X', Whitney route
  PoincarePolynomial restricted;   // P_X'', Whitney route
  bool pass = false;

  PoincarePolynomial rhs() const { return deleted + restricted.shifted(3); }
};

struct RecurrenceReport {
  std::vector<RecurrenceEntry> entries;

  bool all_pass() const {
    for (auto const& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

/// Checks P_X(t) = P_X'(t) + t^3 P_X''(t) at every hyperplane. The parent is
/// computed from nbc sets and the children from the lattice Möbius function,
/// so the two sides share no counting code.
inline RecurrenceReport verify_recurrence(Arrangement const& arr) {
  RecurrenceReport report;
  PoincarePolynomial const total = poincare(arr);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    RecurrenceEntry e;
    e.index = i;
    e.total = total;
    e.deleted = whitney_poincare(deletion(arr, i));
    e.restricted = whitney_poincare(restriction(arr, i));
    e.pass = e.total == e.rhs();
    report.entries.push_back(std::move(e));
  }
  return report;
}

/// Ranks of H^i(X), i = 0..3n. Free abelian, so no torsion column.
struct BettiTable {
  std::vector<std::int64_t> betti;
  std::size_t ambient_dim = 0;

  std::int64_t total_rank() const {
    std::int64_t s = 0;
    for (auto b : betti) s += b;
    return s;
  }

  std::int64_t euler_characteristic() const {
    std::int64_t s = 0;
    for (std::size_t i = 0; i < betti.size(); ++i) s += (i % 2 == 0 ? 1 : -1) * betti[i];
    return s;
  }

  /// H^i = 0 unless 3 | i and 0 <= i <= 3n, and no rank is negative.
  bool respects_vanishing_window() const {
    for (std::size_t i = 0; i < betti.size(); ++i) {
      if (betti[i] < 0) return false;
      if (betti[i] != 0 && (i % 3 != 0 || i > 3 * ambient_dim)) return false;
    }
    return true;
  }
};

inline BettiTable betti_table(PoincarePolynomial const& p, std::size_t ambient_dim) {
  BettiTable t;
  t.ambient_dim = ambient_dim;
  std::size_t const top = std::max<std::size_t>(3 * ambient_dim,
                                                p.degree() < 0 ? 0 : static_cast<std::size_t>(p.degree()));
  t.betti.assign(top + 1, 0);
  for (auto const& [d, c] : p.coeffs()) t.betti[static_cast<std::size_t>(d)] = c;
  while (t.betti.size() > 1 && t.betti.back() == 0) t.betti.pop_back();
  return t;
}

inline BettiTable euler_and_ranks(Arrangement const& arr) {
  return betti_table(poincare(arr), arr.ambient_dim());
}

}  // namespace qharr
