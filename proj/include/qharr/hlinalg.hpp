#pragma once

// Linear algebra over the quaternions.
//
// Conventions: V = H^n is a LEFT module (scalars act on the left), and an
// H-linear functional a: V -> H is a coefficient row acting by
// a(v) = sum_r v_r a_r. Functionals form a right module, (a q)(v) = a(v) q,
// so dependence between hyperplanes is right-linear dependence of rows.

#include <cstddef>
#include <vector>

#include "qharr/errors.hpp"
#include "qharr/quaternion.hpp"

namespace qharr {

using CoefficientRow = std::vector<Quaternion>;

class HMatrix {
 public:
  HMatrix() = default;
  HMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static HMatrix from_rows(std::vector<CoefficientRow> const& rows, std::size_t cols) {
    HMatrix m(rows.size(), cols);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (rows[r].size() != cols) throw Error("row length mismatch");
      for (std::size_t c = 0; c < cols; ++c) m(r, c) = rows[r][c];
    }
    return m;
  }

  static HMatrix identity(std::size_t n) {
    HMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Quaternion& operator()(std::size_t r, std::size_t c) { return entries_[r * cols_ + c]; }
  Quaternion const& operator()(std::size_t r, std::size_t c) const {
    return entries_[r * cols_ + c];
  }

  CoefficientRow row(std::size_t r) const {
    return {entries_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
            entries_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_)};
  }

  friend bool operator==(HMatrix const&, HMatrix const&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Quaternion> entries_;
};

/// Dimension of the right-H-span of the rows.
///
/// Gaussian elimination with the first nonzero entry (left-to-right,
/// top-to-bottom) as pivot. Clearing entry m_ik against pivot p in row s uses
/// r_i <- r_i - r_s (p^-1 m_ik), i.e. rows are only ever multiplied by
/// scalars on the right.
inline std::size_t rank_right_span(HMatrix m) {
  std::size_t rank = 0;
  std::vector<bool> used(m.rows(), false);
  for (std::size_t c = 0; c < m.cols() && rank < m.rows(); ++c) {
    std::size_t pivot_row = m.rows();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (!used[r] && !m(r, c).is_zero()) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == m.rows()) continue;
    used[pivot_row] = true;
    ++rank;
    Quaternion const pivot_inv = m(pivot_row, c).inverse();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (used[r] || m(r, c).is_zero()) continue;
      Quaternion const factor = pivot_inv * m(r, c);
      for (std::size_t cc = c; cc < m.cols(); ++cc) m(r, cc) -= m(pivot_row, cc) * factor;
    }
  }
  return rank;
}

/// Which one-sided span of the rows a rank refers to.
enum class Side { Left, Right };

namespace detail {

// Rank of an exact Gaussian-rational matrix by plain row reduction.
inline std::size_t complex_rank(std::vector<std::vector<GaussianRational>> a) {
  std::size_t const rows = a.size();
  std::size_t const cols = rows == 0 ? 0 : a.front().size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c].is_zero()) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    GaussianRational const inv = a[rank][c].inverse();
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (a[r][c].is_zero()) continue;
      GaussianRational const f = a[r][c] * inv;
      for (std::size_t cc = c; cc < cols; ++cc) a[r][cc] = a[r][cc] - f * a[rank][cc];
    }
    ++rank;
  }
  return rank;
}

}  // namespace detail

/// Rank oracle through the complex adjoint representation: half the complex
/// rank of the 2rows x 2cols block matrix.
///
/// The block rows of adjoint_embed(M) span the LEFT span of the rows of M.
/// For the right span we embed conj(M) entrywise instead: conjugation reverses
/// products, so sum_l r_l q_l = 0 iff sum_l conj(q_l) conj(r_l) = 0.
inline std::size_t rank_via_adjoint(HMatrix const& m, Side side = Side::Right) {
  std::vector<std::vector<GaussianRational>> block(
      2 * m.rows(), std::vector<GaussianRational>(2 * m.cols()));
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Quaternion const entry = side == Side::Right ? m(r, c).conj() : m(r, c);
      ComplexAdjoint const a = adjoint_embed(entry);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) block[2 * r + i][2 * c + j] = a.m[i][j];
    }
  }
  std::size_t const complex = detail::complex_rank(std::move(block));
  if (complex % 2 != 0) throw InternalError("odd complex rank of an adjoint block matrix");
  return complex / 2;
}

/// Left-independent basis of ker a, written in coordinates of H^n.
struct KernelBasis {
  std::vector<CoefficientRow> basis;  // n-1 vectors of length n
  std::size_t pivot_index = 0;        // first index r0 with a_r0 != 0
  CoefficientRow functional;          // the row a the basis was built from
};

inline std::size_t first_nonzero(CoefficientRow const& a) {
  for (std::size_t r = 0; r < a.size(); ++r)
    if (!a[r].is_zero()) return r;
  return a.size();
}

/// Basis vectors e_r - (a_r a_r0^-1) e_r0 for r != r0.
inline KernelBasis kernel_basis(CoefficientRow const& a) {
  std::size_t const n = a.size();
  std::size_t const r0 = first_nonzero(a);
  if (r0 == n) throw ZeroRow();
  Quaternion const pivot_inv = a[r0].inverse();
  KernelBasis k;
  k.pivot_index = r0;
  k.functional = a;
  for (std::size_t r = 0; r < n; ++r) {
    if (r == r0) continue;
    CoefficientRow v(n);
    v[r] = 1;
    v[r0] = -(a[r] * pivot_inv);
    k.basis.push_back(std::move(v));
  }
  return k;
}

/// a(v) = sum_r v_r a_r.
inline Quaternion apply(CoefficientRow const& a, CoefficientRow const& v) {
  if (a.size() != v.size()) throw Error("dimension mismatch");
  Quaternion s;
  for (std::size_t r = 0; r < a.size(); ++r) s += v[r] * a[r];
  return s;
}

/// Coordinates of the functional b restricted to ker a, in the kernel basis:
/// c_s = b(basis_s) = b_s - (a_s a_r0^-1) b_r0.
inline CoefficientRow restrict_row(CoefficientRow const& b, KernelBasis const& k) {
  if (b.size() != k.functional.size()) throw Error("dimension mismatch");
  CoefficientRow c;
  c.reserve(k.basis.size());
  bool nonzero = false;
  for (auto const& v : k.basis) {
    c.push_back(qharr::apply(b, v));
    nonzero = nonzero || !c.back().is_zero();
  }
  if (!nonzero) throw ParallelHyperplane();
  return c;
}

}  // namespace qharr
