#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qharr/derham.hpp"

namespace qharr::derham {
namespace {

using std::numbers::pi;

constexpr double kTwoPiSquaredTwice = 4 * pi * pi;

TEST(Omega, ComplexComponents) {
  Form const at_z = eval_omega_complex({1, 0}, {0, 0}, 2);
  EXPECT_EQ(at_z[subset_of({0, 1, 3})], Complex(1, 0));
  EXPECT_EQ(at_z[subset_of({0, 1, 2})], Complex(0, 0));

  Form const at_w = eval_omega_complex({0, 0}, {0, 2}, 2);  // w = 2i, rho = 4
  EXPECT_EQ(at_w[subset_of({0, 1, 2})], Complex(0, 2.0 / 16));
  EXPECT_THROW(eval_omega_complex({0, 0}, {0, 0}, 2), Error);
}

TEST(Omega, BasisChangesAreInverse) {
  std::mt19937_64 rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Point const p = random_point(rng, 4, 0.5, 2.0);
    Form const c = eval_omega_complex({p[0], p[1]}, {p[2], p[3]}, 2);
    Form const back = to_complex_basis(to_real_basis(c));
    EXPECT_LT((back - c).max_abs(), 1e-14);
    EXPECT_LT(off_bidegree(back, 2, 1), 1e-14);
  }
}

TEST(Omega, DensityOnUnitSphereIsTwo) {
  // omega restricted to S^3 is 2 vol, so its integral is 2 * 2 pi^2.
  std::mt19937_64 rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    Point const q = random_point(rng, 4, 1.0, 1.0);
    std::array<double, 4> const p{q[0], q[1], q[2], q[3]};
    auto const f = detail::tangent_frame(p);
    Complex const v = detail::oriented_value(p, f[0], f[1], f[2]);
    EXPECT_NEAR(v.real(), 2.0, 1e-12);
    EXPECT_NEAR(v.imag(), 0.0, 1e-12);
  }
}

TEST(Omega, DegreeZeroUnderRealScaling) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    Point const p = random_point(rng, 4, 0.5, 2.0);
    for (double lambda : {0.25, 3.0}) {
      Point s(p);
      for (auto& x : s) x *= lambda;
      Form const lhs = std::pow(lambda, 3.0) * eval_omega(s, 2);
      EXPECT_LT((lhs - eval_omega(p, 2)).max_abs(), 1e-12);
    }
  }
}

TEST(NumericD, ConstantAndLinearFields) {
  Point const p{0.3, -0.2, 0.7, 1.1};
  FormField const constant = [](std::span<double const>) {
    return Form::one_form({1, 2, 3, 4});
  };
  EXPECT_LT(numeric_d(constant, p, kStep).max_abs(), 1e-12);

  // d(x0 dx1) = dx0 ^ dx1
  FormField const linear = [](std::span<double const> q) {
    return Form::one_form({0, q[0], 0, 0});
  };
  Form const d = numeric_d(linear, p, kStep);
  EXPECT_NEAR(d[subset_of({0, 1})].real(), 1.0, 1e-9);
  EXPECT_NEAR(d.max_abs(), 1.0, 1e-9);
}

TEST(NumericD, LinearThreeForm) {
  // d(x0 dx1 ^ dx2 ^ dx3) = dx0 ^ dx1 ^ dx2 ^ dx3
  FormField const field = [](std::span<double const> q) {
    Form f(4, 3);
    f.add(subset_of({1, 2, 3}), q[0]);
    return f;
  };
  Point const p{0.9, 0.1, -0.4, 0.6};
  Form const d = numeric_d(field, p, kStep);
  EXPECT_NEAR(d[subset_of({0, 1, 2, 3})].real(), 1.0, 1e-8);
  EXPECT_NEAR(d.max_abs(), 1.0, 1e-8);
}

TEST(NumericD, ExactDerivativeOfOmega) {
  // d omega = (2 - e) rho^-e dz dw dconj(z) dconj(w); exponent 1 at |p| = 1
  // gives 1 in the complex basis, exponent 3 gives -1.
  Point const p{1, 0, 0, 0};
  FormField const field = [](std::span<double const> q) { return eval_omega(q, 1); };
  Form const d = to_complex_basis(numeric_d(field, p, kStep));
  EXPECT_NEAR(std::abs(d[subset_of({0, 1, 2, 3})]), 1.0, 1e-8);
  FormField const cubic = [](std::span<double const> q) { return eval_omega(q, 3); };
  Form const d3 = to_complex_basis(numeric_d(cubic, p, kStep));
  EXPECT_NEAR(std::abs(d[subset_of({0, 1, 2, 3})] + d3[subset_of({0, 1, 2, 3})]), 0.0, 1e-8);
}

TEST(Exponent, ClosedOnlyForTwo) {
  ExponentReport const r = determine_exponent();
  EXPECT_EQ(r.exponent, 2);
  EXPECT_LE(r.residuals[1], kClosedTolerance);
  EXPECT_GT(r.residuals[0], 1.0);
  EXPECT_GT(r.residuals[2], 1.0);
  EXPECT_GE(r.margin, kExponentMargin);
}

TEST(Exponent, DeterministicPerSeed) {
  ExponentReport const a = determine_exponent(17, Numerator::Standard, 20);
  ExponentReport const b = determine_exponent(17, Numerator::Standard, 20);
  EXPECT_EQ(a.residuals, b.residuals);
}

TEST(Exponent, DroppedConjugateIsNeverClosed) {
  EXPECT_THROW(determine_exponent(kDefaultSeed, Numerator::DroppedConjugate, 30), AmbiguousExponent);
}

TEST(Sphere, BothSchemesMatchAnalyticValue) {
  for (auto scheme : {QuadratureScheme::ProductGrid, QuadratureScheme::QuasiRandom}) {
    SphereIntegral const s = sphere_integral({100000, kDefaultSeed, scheme});
    EXPECT_NEAR(s.value.real(), kTwoPiSquaredTwice, 1e-6);
    EXPECT_NEAR(s.value.imag(), 0.0, 1e-9);
    EXPECT_LE(std::abs(s.value - kTwoPiSquaredTwice), std::max(s.error, 1e-9));
    EXPECT_LE(s.error / std::abs(s.value), 1e-6);
  }
}

TEST(Sphere, OrientationFlipNegatesExactly) {
  QuadratureSpec const spec{20000, 5, QuadratureScheme::QuasiRandom};
  SphereIntegral const out = sphere_integral(spec, Orientation::Outward);
  SphereIntegral const in = sphere_integral(spec, Orientation::Inward);
  EXPECT_EQ(in.value, -out.value);
  EXPECT_EQ(in.error, out.error);
}

TEST(Sphere, NormalizationInvertsIntegral) {
  Normalization const grid = sphere_normalization({100000, kDefaultSeed, QuadratureScheme::ProductGrid});
  Normalization const qmc = sphere_normalization({100000, kDefaultSeed, QuadratureScheme::QuasiRandom});
  EXPECT_NEAR(grid.constant * grid.integral.value.real(), 1.0, 1e-12);
  EXPECT_NEAR(grid.constant * qmc.integral.value.real(), 1.0, 1e-6);
  EXPECT_NEAR(grid.constant, 1 / kTwoPiSquaredTwice, 1e-9);
}

TEST(Sphere, TooFewSamplesDoNotConverge) {
  // a 2-node rule in eta is far from its 3-node refinement
  EXPECT_THROW(sphere_integral({8, kDefaultSeed, QuadratureScheme::ProductGrid}), NonConvergence);
}

TEST(Sphere, ConstantDensityMakesEverySampleExact) {
  SphereIntegral const s = sphere_integral({16, kDefaultSeed, QuadratureScheme::QuasiRandom});
  EXPECT_NEAR(s.value.real(), kTwoPiSquaredTwice, 1e-9);
}

TEST(Pullback, FunctionalMatchesQuaternionProduct) {
  Functional const f({Quaternion::i(), 1});
  // v = (j, k): j i + k = -k + k = 0
  Point const v{0, 0, 1, 0, 0, 0, 0, 1};
  QuatD const y = f.apply(v);
  for (double c : y) EXPECT_EQ(c, 0.0);
}

TEST(Pullback, FirstCoordinateIsOmegaItself) {
  Arrangement const a = Arrangement::from_rows(2, {{1, 0}});
  PullbackReport const r = pullback_check(a, 0);
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.max_closedness, kClosedTolerance);

  Functional const f(a[0].coeffs());
  Point const v{0.3, 0.8, -0.5, 0.2, 0.7, 0.1, 0.4, -0.6};
  Form const pulled = f.pullback_real(v);
  Form const direct = eval_omega(std::span<double const>(v.data(), 4), 2);
  for (auto const& [s, c] : direct.terms()) EXPECT_LT(std::abs(pulled[s] - c), 1e-14);
  EXPECT_LT(std::abs(pulled.max_abs() - direct.max_abs()), 1e-14);
}

TEST(Pullback, BooleanTwoSingles) {
  Arrangement const b = boolean_arrangement(2);
  for (std::size_t i = 0; i < b.size(); ++i) {
    PullbackReport const r = pullback_check(b, i);
    EXPECT_TRUE(r.pass()) << "index " << i << " closed " << r.max_closedness;
    EXPECT_LE(r.max_closedness, kClosedTolerance);
    EXPECT_LE(r.max_off_bidegree, kStructuralTolerance);
    EXPECT_LE(r.max_route_mismatch, kStructuralTolerance);
    EXPECT_LE(r.max_scale_deviation, kScaleTolerance);
    EXPECT_FALSE(r.structurally_zero);
  }
}

TEST(Pullback, BooleanTwoWedgeIsClosed) {
  PullbackReport const r = wedge_check(boolean_arrangement(2), {0, 1});
  EXPECT_TRUE(r.pass());
  EXPECT_LE(r.max_closedness, kClosedTolerance);
  EXPECT_GT(r.max_real_norm, 1e-3);
}

TEST(Pullback, U23SinglesAndPairs) {
  Arrangement const u = u23_arrangement();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_TRUE(pullback_check(u, i).pass()) << i;
  EXPECT_TRUE(wedge_check(u, {0, 1}, kDefaultSeed, 30).pass());
  EXPECT_TRUE(wedge_check(u, {1, 2}, kDefaultSeed, 30).pass());
}

TEST(Pullback, TripleWedgeVanishesInH2) {
  // bidegree (6, 3) does not exist on C^4
  PullbackReport const r = wedge_check(u23_arrangement(), {0, 1, 2}, kDefaultSeed, 30);
  EXPECT_TRUE(r.structurally_zero);
  EXPECT_LE(r.max_real_norm, kStructuralTolerance);
  EXPECT_TRUE(r.pass());
}

TEST(Pullback, Guards) {
  EXPECT_THROW(pullback_check(u23_arrangement(), 3), IndexOutOfRange);
  EXPECT_THROW(pullback_check(boolean_arrangement(4), 0), SizeGuardExceeded);
}

}  // namespace
}  // namespace qharr::derham
