#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qharr/hlinalg.hpp"

namespace qharr {
namespace {

Quaternion const I = Quaternion::i();
Quaternion const J = Quaternion::j();
Quaternion const K = Quaternion::k();

HMatrix rows(std::vector<CoefficientRow> r, std::size_t cols) { return HMatrix::from_rows(r, cols); }

CoefficientRow right_scale(CoefficientRow r, Quaternion const& q) {
  for (auto& x : r) x = x * q;
  return r;
}

CoefficientRow left_scale(Quaternion const& q, CoefficientRow r) {
  for (auto& x : r) x = q * x;
  return r;
}

CoefficientRow add(CoefficientRow a, CoefficientRow const& b) {
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
  return a;
}

// Random matrix whose rows are right combinations of `target` random rows,
// so its right rank is at most target.
HMatrix low_rank_matrix(std::mt19937_64& rng, std::size_t m, std::size_t n, std::size_t target) {
  std::vector<CoefficientRow> gens;
  for (std::size_t g = 0; g < target; ++g) {
    CoefficientRow r(n);
    for (auto& q : r) q = random_quaternion(rng, 2);
    gens.push_back(std::move(r));
  }
  std::vector<CoefficientRow> out;
  for (std::size_t i = 0; i < m; ++i) {
    CoefficientRow r(n);
    for (auto const& g : gens) r = add(r, right_scale(g, random_quaternion(rng, 2)));
    out.push_back(std::move(r));
  }
  return rows(out, n);
}

TEST(RightRank, Examples) {
  EXPECT_EQ(rank_right_span(HMatrix::identity(3)), 3u);
  EXPECT_EQ(rank_right_span(HMatrix(2, 3)), 0u);
  EXPECT_EQ(rank_right_span(rows({{1, I}, {J, K}}, 2)), 1u);   // (j,k) = (1,i) j
  EXPECT_EQ(rank_right_span(rows({{1, I}, {J, -K}}, 2)), 2u);  // j (1,i) but not (1,i) q
  EXPECT_EQ(rank_right_span(rows({{1, I}, {1, J}, {1, K}}, 2)), 2u);
}

TEST(RightRank, AdjointOracleDistinguishesSides) {
  HMatrix const m = rows({{1, I}, {J, K}}, 2);
  EXPECT_EQ(rank_via_adjoint(m, Side::Right), 1u);
  EXPECT_EQ(rank_via_adjoint(m, Side::Left), 2u);
}

TEST(RightRankProperties, MatchesAdjointOracle) {
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 500; ++trial) {
    std::size_t const m = size(rng), n = size(rng);
    HMatrix a;
    if (trial % 2 == 0) {
      a = low_rank_matrix(rng, m, n, std::uniform_int_distribution<std::size_t>(0, std::min(m, n))(rng));
    } else {
      a = HMatrix(m, n);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < n; ++c) a(r, c) = random_quaternion(rng, 1);
    }
    std::size_t const rank = rank_right_span(a);
    ASSERT_EQ(rank, rank_via_adjoint(a, Side::Right)) << "trial " << trial;
    ASSERT_LE(rank, std::min(m, n));
  }
}

TEST(RightRankProperties, InvariantUnderRowPermutationAndRightScaling) {
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 200; ++trial) {
    HMatrix const a = low_rank_matrix(rng, 4, 3, 2 + trial % 2);
    std::vector<CoefficientRow> r;
    for (std::size_t i = 0; i < a.rows(); ++i) r.push_back(a.row(i));
    std::size_t const base = rank_right_span(a);
    std::shuffle(r.begin(), r.end(), rng);
    ASSERT_EQ(rank_right_span(rows(r, 3)), base);
    for (auto& row : r) {
      Quaternion q;
      while (q.is_zero()) q = random_quaternion(rng, 2);
      row = right_scale(row, q);
    }
    ASSERT_EQ(rank_right_span(rows(r, 3)), base);
  }
}

TEST(RightRankProperties, LeftScalingCanChangeRank) {
  // Left scaling a row is not a right-module operation.
  HMatrix const before = rows({{1, I}, {1, I}}, 2);
  HMatrix const after = rows({{1, I}, left_scale(J, {1, I})}, 2);
  EXPECT_EQ(rank_right_span(before), 1u);
  EXPECT_EQ(rank_right_span(after), 2u);
}

TEST(Kernel, BasisSpansKernel) {
  CoefficientRow const a{I, 1, J};
  KernelBasis const k = kernel_basis(a);
  EXPECT_EQ(k.pivot_index, 0u);
  ASSERT_EQ(k.basis.size(), 2u);
  for (auto const& v : k.basis) EXPECT_TRUE(qharr::apply(a, v).is_zero());
  EXPECT_THROW(kernel_basis({0, 0}), ZeroRow);
}

TEST(KernelProperties, RandomRows) {
  std::mt19937_64 rng(303);
  std::uniform_int_distribution<std::size_t> size(1, 5);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const n = size(rng);
    CoefficientRow a(n);
    for (auto& q : a) q = random_quaternion(rng, 2);
    if (first_nonzero(a) == n) continue;
    KernelBasis const k = kernel_basis(a);
    ASSERT_EQ(k.basis.size(), n - 1);
    for (auto const& v : k.basis) ASSERT_TRUE(qharr::apply(a, v).is_zero());
    // kernel vectors form a left module, so they must be left-independent
    if (n > 1) {
      ASSERT_EQ(rank_via_adjoint(HMatrix::from_rows(k.basis, n), Side::Left), n - 1);
    }
  }
}

TEST(Restrict, ExampleAndParallel) {
  CoefficientRow const a{1, I};
  KernelBasis const k = kernel_basis(a);
  // ker a = {(-v i, v)}; (1,j) evaluates to -v i + v j
  CoefficientRow const c = restrict_row({1, J}, k);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0], J - I);
  EXPECT_THROW(restrict_row({J, K}, k), ParallelHyperplane);
}

TEST(RestrictProperties, ZeroExactlyForRightMultiples) {
  std::mt19937_64 rng(404);
  for (int trial = 0; trial < 300; ++trial) {
    std::size_t const n = 2 + trial % 3;
    CoefficientRow a(n), b(n);
    for (auto& q : a) q = random_quaternion(rng, 2);
    if (first_nonzero(a) == n) continue;
    KernelBasis const k = kernel_basis(a);
    bool const parallel = trial % 3 == 0;
    if (parallel) {
      Quaternion q;
      while (q.is_zero()) q = random_quaternion(rng, 2);
      b = right_scale(a, q);
    } else {
      for (auto& q : b) q = random_quaternion(rng, 2);
    }
    bool const dependent = rank_via_adjoint(rows({a, b}, n)) < 2;
    if (dependent) {
      ASSERT_THROW(restrict_row(b, k), ParallelHyperplane);
    } else {
      ASSERT_NO_THROW(restrict_row(b, k));
    }
  }
}

}  // namespace
}  // namespace qharr
