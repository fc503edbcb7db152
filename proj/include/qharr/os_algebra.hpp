#pragma once

// Exterior algebra on degree-3 generators e_A, its boundary map, the
// Orlik-Solomon ideal and the graded dimensions of the quotient.
//
// Degrees are tracked as generator counts k throughout; the cohomological
// degree is always 3k.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qharr/matroid.hpp"
#include "qharr/rational.hpp"

namespace qharr {

/// Sparse element of the exterior algebra: monomial e_S (S strictly
/// increasing, as a bitmask) -> nonzero rational coefficient.
class ExteriorElement {
 public:
  using Terms = std::map<Subset, Rational>;

  ExteriorElement() = default;

  static ExteriorElement one() { return monomial(0); }
  static ExteriorElement generator(std::size_t i) { return monomial(Subset{1} << i); }
  static ExteriorElement monomial(Subset s, Rational c = 1) {
    ExteriorElement x;
    x.add(s, std::move(c));
    return x;
  }

  void add(Subset s, Rational const& c) {
    if (sgn(c) == 0) return;
    auto [it, inserted] = terms_.try_emplace(s, c);
    if (!inserted) {
      it->second += c;
      if (sgn(it->second) == 0) terms_.erase(it);
    }
  }

  Terms const& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Rational coefficient(Subset s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Rational(0) : it->second;
  }

  /// Generator count if homogeneous, -1 for zero or mixed elements.
  int degree() const {
    int d = -1;
    for (auto const& [s, c] : terms_) {
      int const k = static_cast<int>(cardinality(s));
      if (d != -1 && d != k) return -1;
      d = k;
    }
    return d;
  }

  friend ExteriorElement operator+(ExteriorElement a, ExteriorElement const& b) {
    for (auto const& [s, c] : b.terms_) a.add(s, c);
    return a;
  }
  friend ExteriorElement operator-(ExteriorElement a, ExteriorElement const& b) {
    for (auto const& [s, c] : b.terms_) a.add(s, -c);
    return a;
  }
  friend ExteriorElement operator*(Rational const& r, ExteriorElement const& a) {
    ExteriorElement out;
    for (auto const& [s, c] : a.terms_) out.add(s, r * c);
    return out;
  }
  friend bool operator==(ExteriorElement const&, ExteriorElement const&) = default;

 private:
  Terms terms_;
};

inline ExteriorElement wedge(ExteriorElement const& x, ExteriorElement const& y) {
  ExteriorElement out;
  for (auto const& [s, a] : x.terms()) {
    for (auto const& [t, b] : y.terms()) {
      if (s & t) continue;
      Rational c = a * b;
      if (shuffle_sign(s, t) < 0) c = -c;
      out.add(s | t, c);
    }
  }
  return out;
}

/// ∂ e_{s1...sk} = sum_l (-1)^(l-1) e_{S - s_l}; ∂ e_A = 1.
inline ExteriorElement boundary(ExteriorElement const& x) {
  ExteriorElement out;
  for (auto const& [s, c] : x.terms()) {
    int sign = 1;
    for (auto e : elements(s)) {
      out.add(s & ~(Subset{1} << e), sign > 0 ? c : Rational(-c));
      sign = -sign;
    }
  }
  return out;
}

/// Row-reduced span of sparse rational vectors indexed by monomials. Each
/// stored row is monic at its smallest monomial (the pivot) and rows have
/// distinct pivots.
class RowEchelon {
 public:
  /// Remainder of x after eliminating every pivot.
  ExteriorElement reduce(ExteriorElement x) const {
    Subset key = 0;
    bool first = true;
    while (true) {
      auto const& t = x.terms();
      auto it = first ? t.begin() : t.lower_bound(key);
      while (it != t.end() && !rows_.contains(it->first)) ++it;
      if (it == t.end()) return x;
      key = it->first;
      first = false;
      Rational const c = it->second;
      x = x - c * rows_.at(key);
    }
  }

  /// Adds x to the span; returns false if it was already in it.
  bool insert(ExteriorElement const& x) {
    ExteriorElement r = reduce(x);
    if (r.is_zero()) return false;
    auto const& [pivot, lead] = *r.terms().begin();
    Subset const p = pivot;
    Rational const inv = 1 / lead;
    rows_.emplace(p, inv * r);
    return true;
  }

  std::size_t rank() const { return rows_.size(); }
  std::map<Subset, ExteriorElement> const& rows() const { return rows_; }

 private:
  std::map<Subset, ExteriorElement> rows_;
};

inline std::int64_t binomial(std::size_t n, std::size_t k) {
  if (k > n) return 0;
  std::int64_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * static_cast<std::int64_t>(n - k + i) / static_cast<std::int64_t>(i);
  return r;
}

namespace detail {

inline void trim(std::vector<std::int64_t>& v) {
  while (v.size() > 1 && v.back() == 0) v.pop_back();
}

// Per-degree echelon forms of the ideal generated by `gens` (all two-sided
// multiples e_M g; left multiples suffice by graded commutativity).
inline std::vector<RowEchelon> ideal_pieces(std::size_t ground, std::vector<ExteriorElement> const& gens) {
  std::vector<RowEchelon> pieces(ground + 1);
  for (Subset m = 0; m < (Subset{1} << ground); ++m) {
    auto const mono = ExteriorElement::monomial(m);
    for (auto const& g : gens) {
      auto const prod = wedge(mono, g);
      if (prod.is_zero()) continue;
      pieces[static_cast<std::size_t>(prod.degree())].insert(prod);
    }
  }
  return pieces;
}

}  // namespace detail

/// Generators of the Orlik-Solomon ideal: one ∂(e_C) per circuit C.
struct OSIdealBasis {
  std::vector<Subset> circuits;
  std::vector<ExteriorElement> generators;
};

inline OSIdealBasis ideal_generators(Matroid const& m) {
  OSIdealBasis basis;
  basis.circuits = circuits(m);
  for (Subset c : basis.circuits) basis.generators.push_back(boundary(ExteriorElement::monomial(c)));
  return basis;
}

inline OSIdealBasis ideal_generators(Arrangement const& arr) { return ideal_generators(Matroid(arr)); }

inline constexpr std::size_t kBruteForceMaxGround = 20;

/// Graded dimensions of E/I with I spanned by ∂(e_D) for EVERY dependent
/// subset D, times all monomials. Independent of circuit enumeration; exponential
/// in the number of hyperplanes.
inline std::vector<std::int64_t> graded_dims_bruteforce(Arrangement const& arr) {
  std::size_t const n = arr.size();
  if (n > kBruteForceMaxGround)
    throw SizeGuardExceeded("brute-force Orlik-Solomon dimensions limited to 2^" +
                            std::to_string(kBruteForceMaxGround) + " subsets");
  Matroid const m(arr);
  std::vector<ExteriorElement> gens;
  for (Subset d = 1; d < (Subset{1} << n); ++d)
    if (!m.independent(d)) gens.push_back(boundary(ExteriorElement::monomial(d)));
  auto const pieces = detail::ideal_pieces(n, gens);
  std::vector<std::int64_t> dims(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    dims[k] = binomial(n, k) - static_cast<std::int64_t>(pieces[k].rank());
  detail::trim(dims);
  return dims;
}

inline std::vector<std::int64_t> graded_dims_nbc(Arrangement const& arr) {
  return nbc_counts(Matroid(arr));
}

/// O(A) = E(A)/I with the ideal generated by circuit boundaries.
struct OSAlgebra {
  std::vector<std::int64_t> graded_dims;              // by generator count k
  std::vector<std::vector<Subset>> nbc_basis;         // by k
  std::vector<RowEchelon> reduction_data;             // ideal piece by k
  OSIdealBasis ideal;

  /// Normal form of x modulo the ideal.
  ExteriorElement reduce(ExteriorElement const& x) const {
    ExteriorElement out;
    std::map<int, ExteriorElement> by_degree;
    for (auto const& [s, c] : x.terms()) by_degree[static_cast<int>(cardinality(s))].add(s, c);
    for (auto const& [k, part] : by_degree) {
      auto const r = reduction_data.at(static_cast<std::size_t>(k)).reduce(part);
      out = out + r;
    }
    return out;
  }
};

inline OSAlgebra os_algebra(Matroid const& m) {
  std::size_t const n = m.ground_size();
  if (n > kBruteForceMaxGround)
    throw SizeGuardExceeded("Orlik-Solomon quotient limited to " +
                            std::to_string(kBruteForceMaxGround) + " hyperplanes");
  OSAlgebra alg;
  alg.ideal = ideal_generators(m);
  alg.nbc_basis = nbc_sets(m);
  alg.reduction_data = detail::ideal_pieces(n, alg.ideal.generators);
  alg.graded_dims.resize(n + 1);
  for (std::size_t k = 0; k <= n; ++k)
    alg.graded_dims[k] = binomial(n, k) - static_cast<std::int64_t>(alg.reduction_data[k].rank());
  detail::trim(alg.graded_dims);
  return alg;
}

inline OSAlgebra os_algebra(Arrangement const& arr) { return os_algebra(Matroid(arr)); }

}  // namespace qharr
