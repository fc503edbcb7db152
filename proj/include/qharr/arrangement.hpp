#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qharr/errors.hpp"
#include "qharr/hlinalg.hpp"

namespace qharr {

/// A hyperplane ker a, stored as its canonical coefficient row: the row is
/// right-multiplied by the inverse of its first nonzero entry, so that entry
/// is 1. Two rows define the same hyperplane iff they differ by a nonzero
/// right scalar iff their canonical rows are equal.
class Hyperplane {
 public:
  explicit Hyperplane(CoefficientRow raw) : coeffs_(std::move(raw)) {
    std::size_t const r0 = first_nonzero(coeffs_);
    if (r0 == coeffs_.size()) throw ZeroRow();
    Quaternion const scale = coeffs_[r0].inverse();
    for (auto& c : coeffs_) c = c * scale;
  }

  CoefficientRow const& coeffs() const { return coeffs_; }
  std::size_t dim() const { return coeffs_.size(); }

  friend bool operator==(Hyperplane const&, Hyperplane const&) = default;

 private:
  CoefficientRow coeffs_;
};

inline Hyperplane canonicalize(CoefficientRow raw) { return Hyperplane(std::move(raw)); }

/// Central arrangement of distinct hyperplanes in H^n. Order matters: it is
/// the order used for broken circuits.
class Arrangement {
 public:
  explicit Arrangement(std::size_t ambient_dim = 0) : ambient_dim_(ambient_dim) {}

  Arrangement(std::size_t ambient_dim, std::vector<Hyperplane> hyperplanes)
      : ambient_dim_(ambient_dim) {
    for (auto& h : hyperplanes) add(std::move(h));
  }

  static Arrangement from_rows(std::size_t ambient_dim, std::vector<CoefficientRow> rows) {
    Arrangement a(ambient_dim);
    for (auto& r : rows) a.add(Hyperplane(std::move(r)));
    return a;
  }

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return hyperplanes_.size(); }
  bool empty() const { return hyperplanes_.empty(); }
  std::vector<Hyperplane> const& hyperplanes() const { return hyperplanes_; }
  Hyperplane const& operator[](std::size_t i) const { return hyperplanes_[i]; }

  std::optional<std::size_t> find(Hyperplane const& h) const {
    for (std::size_t i = 0; i < hyperplanes_.size(); ++i)
      if (hyperplanes_[i] == h) return i;
    return std::nullopt;
  }

  /// Appends h. Throws if h lives in the wrong dimension or is already present.
  void add(Hyperplane h) {
    if (h.dim() != ambient_dim_)
      throw Error("hyperplane row has length " + std::to_string(h.dim()) +
                  ", expected " + std::to_string(ambient_dim_));
    if (auto i = find(h))
      throw Error("duplicate hyperplane (same as index " + std::to_string(*i) + ")");
    hyperplanes_.push_back(std::move(h));
  }

  friend bool operator==(Arrangement const&, Arrangement const&) = default;

 private:
  std::size_t ambient_dim_;
  std::vector<Hyperplane> hyperplanes_;
};

inline void check_index(Arrangement const& arr, std::size_t index) {
  if (index >= arr.size())
    throw IndexOutOfRange("hyperplane index " + std::to_string(index) +
                          " out of range for an arrangement of " + std::to_string(arr.size()));
}

/// A' = A \ {A_index}, order of the rest preserved.
inline Arrangement deletion(Arrangement const& arr, std::size_t index) {
  check_index(arr, index);
  Arrangement out(arr.ambient_dim());
  for (std::size_t i = 0; i < arr.size(); ++i)
    if (i != index) out.add(arr[i]);
  return out;
}

/// A'' = { B ∩ A : B in A' } in coordinates of A = ker a given by
/// kernel_basis(a). Coinciding images are collapsed, first occurrence wins.
inline Arrangement restriction(Arrangement const& arr, std::size_t index) {
  check_index(arr, index);
  KernelBasis const k = kernel_basis(arr[index].coeffs());
  Arrangement out(arr.ambient_dim() - 1);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (i == index) continue;
    Hyperplane h(restrict_row(arr[i].coeffs(), k));
    if (!out.find(h)) out.add(std::move(h));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in arrangements.

inline Arrangement boolean_arrangement(std::size_t n) {
  Arrangement a(n);
  for (std::size_t r = 0; r < n; ++r) {
    CoefficientRow row(n);
    row[r] = 1;
    a.add(Hyperplane(std::move(row)));
  }
  return a;
}

/// v_r - v_s = 0 for r < s, lexicographic in (r, s).
inline Arrangement braid_arrangement(std::size_t n) {
  Arrangement a(n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t s = r + 1; s < n; ++s) {
      CoefficientRow row(n);
      row[r] = 1;
      row[s] = -1;
      a.add(Hyperplane(std::move(row)));
    }
  }
  return a;
}

/// {(1,i), (1,j), (1,k)} in H^2; its matroid is the uniform matroid U(2,3).
inline Arrangement u23_arrangement() {
  return Arrangement::from_rows(
      2, {{1, Quaternion::i()}, {1, Quaternion::j()}, {1, Quaternion::k()}});
}

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Quaternion with integer components drawn uniformly from [-bound, bound].
template <class Rng>
Quaternion random_quaternion(Rng& rng, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  return {d(rng), d(rng), d(rng), d(rng)};
}

namespace detail {
inline bool every_small_subset_independent(std::vector<CoefficientRow> const& rows,
                                           std::size_t n) {
  std::size_t const m = rows.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    auto const k = static_cast<std::size_t>(std::popcount(mask));
    if (k > n) continue;
    std::vector<CoefficientRow> sub;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) sub.push_back(rows[i]);
    if (rank_right_span(HMatrix::from_rows(sub, n)) != k) return false;
  }
  return true;
}
}  // namespace detail

/// m random hyperplanes in H^n such that every subset of at most n of them
/// meets in the expected codimension. Rows are resampled until that holds.
inline Arrangement generic_arrangement(std::size_t n, std::size_t m,
                                       std::uint64_t seed = kDefaultSeed) {
  if (m > 20) throw SizeGuardExceeded("generic arrangement limited to 20 hyperplanes");
  if (n == 0 && m > 0) throw Error("no hyperplanes exist in H^0");
  if (n == 1 && m > 1) throw Error("H^1 has a single hyperplane");
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<CoefficientRow> rows;
    for (std::size_t i = 0; i < m; ++i) {
      CoefficientRow row(n);
      for (auto& q : row) q = random_quaternion(rng, 3);
      rows.push_back(std::move(row));
    }
    if (detail::every_small_subset_independent(rows, n))
      return Arrangement::from_rows(n, std::move(rows));
  }
  throw InternalError("could not sample a generic arrangement");
}

/// Resolves a catalog name: boolean, braid, generic (m = n + 2 unless given,
/// m = n for n <= 1), u23 (n is ignored).
inline Arrangement catalog(std::string const& name, std::size_t n,
                           std::optional<std::size_t> m = std::nullopt,
                           std::uint64_t seed = kDefaultSeed) {
  if (name == "boolean") return boolean_arrangement(n);
  if (name == "braid") return braid_arrangement(n);
  if (name == "generic") return generic_arrangement(n, m.value_or(n <= 1 ? n : n + 2), seed);
  if (name == "u23") return u23_arrangement();
  throw UnknownCatalog(name);
}

}  // namespace qharr
