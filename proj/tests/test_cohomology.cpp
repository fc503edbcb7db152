#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "oracles.hpp"
#include "qharr/cohomology.hpp"

namespace qharr {
namespace {

TEST(Poincare, Formatting) {
  EXPECT_EQ(to_string(PoincarePolynomial::from_generator_counts({1, 3, 2})), "1 + 3t^3 + 2t^6");
  EXPECT_EQ(to_string(PoincarePolynomial::from_generator_counts({1, 1})), "1 + t^3");
  EXPECT_EQ(to_string(PoincarePolynomial::one()), "1");
  EXPECT_EQ(PoincarePolynomial::from_generator_counts({1, 2, 1}).evaluate(-1), 0);
}

TEST(Cohomology, BooleanTwo) {
  Arrangement const b = boolean_arrangement(2);
  EXPECT_EQ(poincare(b), PoincarePolynomial::from_generator_counts({1, 2, 1}));
  BettiTable const t = euler_and_ranks(b);
  EXPECT_EQ(t.betti, (std::vector<std::int64_t>{1, 0, 0, 2, 0, 0, 1}));
  EXPECT_EQ(t.total_rank(), 4);
  EXPECT_EQ(t.euler_characteristic(), 0);
  EXPECT_TRUE(t.respects_vanishing_window());
}

TEST(Cohomology, U23) {
  Arrangement const u = u23_arrangement();
  EXPECT_EQ(to_string(poincare(u)), "1 + 3t^3 + 2t^6");
  BettiTable const t = euler_and_ranks(u);
  EXPECT_EQ(t.betti, (std::vector<std::int64_t>{1, 0, 0, 3, 0, 0, 2}));
  EXPECT_EQ(t.euler_characteristic(), 0);
}

TEST(Cohomology, EmptyArrangement) {
  BettiTable const t = euler_and_ranks(Arrangement(3));
  EXPECT_EQ(t.betti, std::vector<std::int64_t>{1});
  EXPECT_EQ(t.euler_characteristic(), 1);
}

TEST(Cohomology, VanishingWindowDetectsBadDegrees) {
  PoincarePolynomial p = PoincarePolynomial::one();
  p.add(4, 1);
  EXPECT_FALSE(betti_table(p, 2).respects_vanishing_window());
  PoincarePolynomial q = PoincarePolynomial::one();
  q.add(9, 1);
  EXPECT_FALSE(betti_table(q, 2).respects_vanishing_window());
}

TEST(Recurrence, U23EveryIndex) {
  RecurrenceReport const r = verify_recurrence(u23_arrangement());
  ASSERT_EQ(r.entries.size(), 3u);
  for (auto const& e : r.entries) {
    EXPECT_TRUE(e.pass);
    EXPECT_EQ(e.deleted, PoincarePolynomial::from_generator_counts({1, 2, 1}));
    EXPECT_EQ(e.restricted, PoincarePolynomial::from_generator_counts({1, 1}));
  }
  EXPECT_TRUE(r.all_pass());
}

TEST(Recurrence, BooleanFactorizes) {
  // P(boolean(n)) = (1 + t^3)^n
  PoincarePolynomial f = PoincarePolynomial::one();
  for (std::size_t n = 1; n <= 5; ++n) {
    f = f * PoincarePolynomial::from_generator_counts({1, 1});
    EXPECT_EQ(poincare(boolean_arrangement(n)), f);
    EXPECT_TRUE(verify_recurrence(boolean_arrangement(n)).all_pass());
  }
}

TEST(Recurrence, BraidFactorizes) {
  // P(braid(n)) = prod_{k<n} (1 + k t^3)
  PoincarePolynomial f = PoincarePolynomial::one();
  for (std::size_t n = 2; n <= 5; ++n) {
    f = f * PoincarePolynomial::from_generator_counts({1, static_cast<std::int64_t>(n - 1)});
    EXPECT_EQ(poincare(braid_arrangement(n)), f);
  }
}

TEST(Recurrence, GenericHasBinomialCoefficients) {
  // every k <= n of the m hyperplanes are independent
  Arrangement const g = catalog("generic", 3, 6);
  EXPECT_EQ(poincare(g), PoincarePolynomial::from_generator_counts({1, 6, 15, 10}));
}

TEST(RecurrenceProperties, CorpusAndRandom) {
  for (auto const& [name, a] : oracle::corpus()) {
    auto const r = verify_recurrence(a);
    ASSERT_TRUE(r.all_pass()) << name;
    ASSERT_EQ(r.entries.size(), a.size()) << name;
    ASSERT_TRUE(euler_and_ranks(a).respects_vanishing_window()) << name;
  }
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 100; ++trial) {
    Arrangement const a = oracle::random_arrangement(rng, 3, 7);
    ASSERT_TRUE(verify_recurrence(a).all_pass()) << "random " << trial;
    BettiTable const t = euler_and_ranks(a);
    ASSERT_TRUE(t.respects_vanishing_window()) << "random " << trial;
    ASSERT_EQ(t.betti[0], 1);
    ASSERT_EQ(t.betti.size() > 3 ? t.betti[3] : 0, static_cast<std::int64_t>(a.size()));
    // non-empty central arrangements have Euler characteristic 0
    if (!a.empty()) {
      ASSERT_EQ(t.euler_characteristic(), 0) << "random " << trial;
    }
  }
}

TEST(RecurrenceProperties, InvariantUnderReorderAndRescale) {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 40; ++trial) {
    Arrangement const a = oracle::random_arrangement(rng, 3, 6);
    std::vector<CoefficientRow> rows;
    for (auto const& h : a.hyperplanes()) {
      Quaternion q;
      while (q.is_zero()) q = random_quaternion(rng, 2);
      CoefficientRow row = h.coeffs();
      for (auto& x : row) x = x * q;
      rows.push_back(std::move(row));
    }
    std::shuffle(rows.begin(), rows.end(), rng);
    Arrangement const b = Arrangement::from_rows(a.ambient_dim(), rows);
    ASSERT_EQ(poincare(b), poincare(a));
    ASSERT_EQ(whitney_poincare(b), poincare(a));
    ASSERT_TRUE(verify_recurrence(b).all_pass());
  }
}

}  // namespace
}  // namespace qharr
