#pragma once

// Floating-point checks on the explicit 3-form
//
//   omega(z, w) = dz ^ dw ^ (conj(z) dconj(w) - conj(w) dconj(z)) / (|z|^2 + |w|^2)^e
//
// on C^2 \ 0 = H^x, and on its pullbacks a^*(omega) along the quaternion-linear
// functionals of an arrangement.
//
// Coordinates. A point of C^m is stored as 2m reals (Re zeta_0, Im zeta_0,
// Re zeta_1, ...). A quaternion q = (w + x i) + (y + z i) j is the point
// (alpha, beta) = (w + x i, y + z i) of C^2, i.e. its real coordinates are
// (w, x, y, z) in that order. H^n is C^2n with zeta_2r = alpha_r,
// zeta_2r+1 = beta_r.
//
// Forms carry complex coefficients over one of two bases of 1-forms:
//   real basis     dx_0 .. dx_{2m-1}
//   complex basis  dzeta_0 .. dzeta_{m-1}, dconj(zeta)_0 .. dconj(zeta)_{m-1}

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qharr/arrangement.hpp"
#include "qharr/bits.hpp"
#include "qharr/errors.hpp"

namespace qharr::derham {

using Complex = std::complex<double>;
using Point = std::vector<double>;

/// Homogeneous differential form with constant (pointwise) complex
/// coefficients: sorted index set -> coefficient.
class Form {
 public:
  Form() = default;
  Form(std::size_t dim, std::size_t degree) : dim_(dim), degree_(degree) {
    if (dim > 30) throw Error("form dimension too large");
  }

  static Form one_form(std::vector<Complex> const& coeffs) {
    Form f(coeffs.size(), 1);
    for (std::size_t i = 0; i < coeffs.size(); ++i) f.add(Subset{1} << i, coeffs[i]);
    return f;
  }

  static Form scalar(std::size_t dim, Complex c) {
    Form f(dim, 0);
    f.add(0, c);
    return f;
  }

  std::size_t dim() const { return dim_; }
  std::size_t degree() const { return degree_; }
  std::map<Subset, Complex> const& terms() const { return terms_; }

  void add(Subset s, Complex c) {
    if (cardinality(s) != degree_) throw Error("component of the wrong degree");
    if (c == Complex{}) return;
    terms_[s] += c;
  }

  Complex operator[](Subset s) const {
    auto it = terms_.find(s);
    return it == terms_.end() ? Complex{} : it->second;
  }

  /// Antisymmetric component access: value on (dx_i0, dx_i1, ...) in the
  /// given order, zero on repeated indices.
  Complex component(std::span<std::size_t const> idx) const {
    Subset s = 0;
    for (auto i : idx) {
      if (s & (Subset{1} << i)) return {};
      s |= Subset{1} << i;
    }
    int inversions = 0;
    for (std::size_t a = 0; a < idx.size(); ++a)
      for (std::size_t b = a + 1; b < idx.size(); ++b)
        if (idx[a] > idx[b]) ++inversions;
    Complex const v = (*this)[s];
    return inversions % 2 == 0 ? v : -v;
  }

  double max_abs() const {
    double m = 0;
    for (auto const& [s, c] : terms_) m = std::max(m, std::abs(c));
    return m;
  }

  friend Form operator+(Form a, Form const& b) {
    a.check_compatible(b);
    for (auto const& [s, c] : b.terms_) a.terms_[s] += c;
    return a;
  }
  friend Form operator-(Form a, Form const& b) {
    a.check_compatible(b);
    for (auto const& [s, c] : b.terms_) a.terms_[s] -= c;
    return a;
  }
  friend Form operator*(Complex k, Form a) {
    for (auto& [s, c] : a.terms_) c *= k;
    return a;
  }

  friend Form wedge(Form const& a, Form const& b) {
    if (a.dim_ != b.dim_) throw Error("wedge of forms on different spaces");
    Form out(a.dim_, a.degree_ + b.degree_);
    for (auto const& [s, x] : a.terms_)
      for (auto const& [t, y] : b.terms_)
        if (!(s & t)) out.terms_[s | t] += static_cast<double>(shuffle_sign(s, t)) * x * y;
    return out;
  }

  /// Pullback along the linear map whose transpose sends basis 1-form i to
  /// images[i] (all of one common target dimension).
  Form pullback(std::vector<Form> const& images) const {
    if (images.size() != dim_) throw Error("pullback needs one image per basis 1-form");
    std::size_t const target = images.empty() ? 0 : images.front().dim();
    Form out(target, degree_);
    for (auto const& [s, c] : terms_) {
      Form prod = scalar(target, c);
      for (auto i : elements(s)) prod = wedge(prod, images[i]);
      out = out + prod;
    }
    return out;
  }

  /// Value on vectors (one per degree) given in the form's basis coordinates:
  /// sum_S c_S det[v_a(s_b)].
  Complex evaluate(std::vector<std::vector<double>> const& vectors) const {
    if (vectors.size() != degree_) throw Error("evaluate needs one vector per degree");
    Complex total{};
    for (auto const& [s, c] : terms_) {
      auto const idx = elements(s);
      std::vector<double> minor(degree_ * degree_);
      for (std::size_t a = 0; a < degree_; ++a)
        for (std::size_t b = 0; b < degree_; ++b) minor[a * degree_ + b] = vectors[a][idx[b]];
      total += c * determinant(std::move(minor), degree_);
    }
    return total;
  }

  static double determinant(std::vector<double> m, std::size_t n) {
    double det = 1;
    for (std::size_t c = 0; c < n; ++c) {
      std::size_t p = c;
      for (std::size_t r = c + 1; r < n; ++r)
        if (std::abs(m[r * n + c]) > std::abs(m[p * n + c])) p = r;
      if (m[p * n + c] == 0) return 0;
      if (p != c) {
        for (std::size_t k = 0; k < n; ++k) std::swap(m[p * n + k], m[c * n + k]);
        det = -det;
      }
      det *= m[c * n + c];
      for (std::size_t r = c + 1; r < n; ++r) {
        double const f = m[r * n + c] / m[c * n + c];
        for (std::size_t k = c; k < n; ++k) m[r * n + k] -= f * m[c * n + k];
      }
    }
    return det;
  }

 private:
  void check_compatible(Form const& b) const {
    if (dim_ != b.dim_ || degree_ != b.degree_) throw Error("incompatible forms");
  }

  std::size_t dim_ = 0;
  std::size_t degree_ = 0;
  std::map<Subset, Complex> terms_;
};

// ---------------------------------------------------------------------------
// Basis changes on C^m.

/// Complex-basis form -> real-basis form: dzeta = dx + i dy, dconj(zeta) = dx - i dy.
inline Form to_real_basis(Form const& f) {
  std::size_t const m = f.dim() / 2;
  std::vector<Form> images;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Complex> v(2 * m);
    v[2 * c] = 1;
    v[2 * c + 1] = {0, 1};
    images.push_back(Form::one_form(v));
  }
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Complex> v(2 * m);
    v[2 * c] = 1;
    v[2 * c + 1] = {0, -1};
    images.push_back(Form::one_form(v));
  }
  return f.pullback(images);
}

/// Real-basis form -> complex-basis form: dx = (dzeta + dconj(zeta)) / 2,
/// dy = (dzeta - dconj(zeta)) / 2i.
inline Form to_complex_basis(Form const& f) {
  std::size_t const m = f.dim() / 2;
  std::vector<Form> images;
  for (std::size_t c = 0; c < m; ++c) {
    std::vector<Complex> dx(2 * m), dy(2 * m);
    dx[c] = 0.5;
    dx[m + c] = 0.5;
    dy[c] = {0, -0.5};
    dy[m + c] = {0, 0.5};
    images.push_back(Form::one_form(dx));
    images.push_back(Form::one_form(dy));
  }
  return f.pullback(images);
}

/// (holomorphic, antiholomorphic) degree of a complex-basis monomial on C^m.
inline std::pair<std::size_t, std::size_t> bidegree(Subset s, std::size_t m) {
  Subset const holo = static_cast<Subset>((std::uint64_t{1} << m) - 1);
  return {cardinality(s & holo), cardinality(s >> m)};
}

/// Largest coefficient of a complex-basis form outside bidegree (p, q).
inline double off_bidegree(Form const& complex_form, std::size_t p, std::size_t q) {
  std::size_t const m = complex_form.dim() / 2;
  double worst = 0;
  for (auto const& [s, c] : complex_form.terms())
    if (bidegree(s, m) != std::pair{p, q}) worst = std::max(worst, std::abs(c));
  return worst;
}

// ---------------------------------------------------------------------------
// The form itself.

enum class Numerator {
  Standard,          // conj(z) dconj(w) - conj(w) dconj(z)
  DroppedConjugate,  // z dconj(w) - w dconj(z); negative control, never closed
};

/// omega at (z, w) in the complex basis (dz, dw, dconj z, dconj w).
inline Form eval_omega_complex(std::complex<double> z, std::complex<double> w, int exponent,
                               Numerator numerator = Numerator::Standard) {
  double const rho = std::norm(z) + std::norm(w);
  if (rho == 0) throw Error("omega is undefined at the origin");
  if (exponent < 1 || exponent > 3) throw Error("denominator exponent must be 1, 2 or 3");
  double const scale = 1.0 / std::pow(rho, exponent);
  bool const conj = numerator == Numerator::Standard;
  Complex const zc = conj ? std::conj(z) : z;
  Complex const wc = conj ? std::conj(w) : w;
  Form f(4, 3);
  f.add(subset_of({0, 1, 3}), zc * scale);   // dz ^ dw ^ dconj(w)
  f.add(subset_of({0, 1, 2}), -wc * scale);  // dz ^ dw ^ dconj(z)
  return f;
}

/// omega at p = (Re z, Im z, Re w, Im w) in the real basis of R^4.
inline Form eval_omega(std::span<double const> p, int exponent,
                       Numerator numerator = Numerator::Standard) {
  if (p.size() != 4) throw Error("omega lives on C^2 = R^4");
  return to_real_basis(eval_omega_complex({p[0], p[1]}, {p[2], p[3]}, exponent, numerator));
}

using FormField = std::function<Form(std::span<double const>)>;

/// Central-difference exterior derivative: dF = sum_j dx_j ^ dF/dx_j, each
/// partial taken with the fourth-order central stencil
/// (-F(p+2h) + 8F(p+h) - 8F(p-h) + F(p-2h)) / 12h.
inline Form numeric_d(FormField const& field, std::span<double const> p, double h) {
  if (!(h > 0)) throw Error("finite-difference step must be positive");
  std::size_t const n = p.size();
  Form out;
  bool first = true;
  Point q(p.begin(), p.end());
  for (std::size_t j = 0; j < n; ++j) {
    auto at = [&](double offset) {
      q[j] = p[j] + offset;
      Form f = field(q);
      q[j] = p[j];
      return f;
    };
    Form const partial = (1.0 / (12 * h)) * (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h));
    std::vector<Complex> e(n);
    e[j] = 1;
    Form const term = wedge(Form::one_form(e), partial);
    out = first ? term : out + term;
    first = false;
  }
  return out;
}

/// Uniform direction times a radius uniform in [r_min, r_max].
template <class Rng>
Point random_point(Rng& rng, std::size_t dim, double r_min, double r_max) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> radius(r_min, r_max);
  Point p(dim);
  double norm = 0;
  while (norm < 1e-6) {
    norm = 0;
    for (auto& x : p) {
      x = gauss(rng);
      norm += x * x;
    }
    norm = std::sqrt(norm);
  }
  double const r = radius(rng);
  for (auto& x : p) x *= r / norm;
  return p;
}

inline constexpr std::uint64_t kDefaultSeed = qharr::kDefaultSeed;
inline constexpr double kStep = 1e-4;
inline constexpr double kClosedTolerance = 1e-8;
inline constexpr double kExponentMargin = 1e4;

struct ExponentReport {
  int exponent = 0;
  std::array<double, 3> residuals{};  // max ||d omega|| for exponents 1, 2, 3
  double margin = 0;                  // runner-up residual / winner residual
  std::size_t points = 0;
  std::uint64_t seed = 0;
};

/// Picks the denominator exponent in {1, 2, 3} for which omega is closed,
/// measured as the max over random points (|p| in [0.5, 2]) of the largest
/// component of the numeric exterior derivative. Throws AmbiguousExponent
/// unless the winner beats both others by kExponentMargin.
inline ExponentReport determine_exponent(std::uint64_t seed = kDefaultSeed,
                                         Numerator numerator = Numerator::Standard,
                                         std::size_t points = 100, double h = kStep) {
  std::mt19937_64 rng(seed);
  std::vector<Point> samples;
  for (std::size_t i = 0; i < points; ++i) samples.push_back(random_point(rng, 4, 0.5, 2.0));
  ExponentReport report;
  report.points = points;
  report.seed = seed;
  for (int e = 1; e <= 3; ++e) {
    FormField const field = [e, numerator](std::span<double const> p) {
      return eval_omega(p, e, numerator);
    };
    double worst = 0;
    for (auto const& p : samples) worst = std::max(worst, numeric_d(field, p, h).max_abs());
    report.residuals[static_cast<std::size_t>(e - 1)] = worst;
  }
  auto sorted = report.residuals;
  std::sort(sorted.begin(), sorted.end());
  auto const best = std::min_element(report.residuals.begin(), report.residuals.end());
  report.exponent = static_cast<int>(best - report.residuals.begin()) + 1;
  report.margin = sorted[0] == 0 ? INFINITY : sorted[1] / sorted[0];
  if (report.margin < kExponentMargin)
    throw AmbiguousExponent("best residual " + std::to_string(sorted[0]) + ", runner-up " +
                            std::to_string(sorted[1]));
  return report;
}

// ---------------------------------------------------------------------------
// Integration over the unit S^3 in C^2.

enum class QuadratureScheme {
  ProductGrid,  // Hopf angles: Gauss-Legendre in eta, periodic trapezoid in xi1, xi2
  QuasiRandom,  // randomly shifted Halton points, uniform on S^3, intrinsic frame
};

enum class Orientation { Outward, Inward };

struct QuadratureSpec {
  std::size_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  QuadratureScheme scheme = QuadratureScheme::ProductGrid;
};

struct SphereIntegral {
  Complex value;       // estimate at spec.samples
  double error = 0;    // quadrature-error estimate for value
  Complex refined;     // estimate at 2 * spec.samples
  std::size_t samples = 0;
};

namespace detail {

// Gauss-Legendre nodes and weights on [-1, 1] by Newton iteration on P_n.
inline std::pair<std::vector<double>, std::vector<double>> gauss_legendre(std::size_t n) {
  std::vector<double> x(n), w(n);
  for (std::size_t i = 0; i < n; ++i) {
    double z = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double dp = 0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1, p1 = z;
      for (std::size_t k = 2; k <= n; ++k) {
        double const p2 = ((2.0 * static_cast<double>(k) - 1) * z * p1 -
                           (static_cast<double>(k) - 1) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = p2;
      }
      if (n == 1) p0 = 1;
      dp = static_cast<double>(n) * (z * p1 - p0) / (z * z - 1);
      double const dz = p1 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    x[i] = z;
    w[i] = 2 / ((1 - z * z) * dp * dp);
  }
  return {x, w};
}

inline double radical_inverse(std::uint64_t i, std::uint64_t base) {
  double result = 0, f = 1.0 / static_cast<double>(base);
  while (i > 0) {
    result += f * static_cast<double>(i % base);
    i /= base;
    f /= static_cast<double>(base);
  }
  return result;
}

// Point on S^3 from Hopf angles, as real coordinates.
inline std::array<double, 4> hopf(double eta, double xi1, double xi2) {
  return {std::cos(eta) * std::cos(xi1), std::cos(eta) * std::sin(xi1),
          std::sin(eta) * std::cos(xi2), std::sin(eta) * std::sin(xi2)};
}

inline double det4(std::array<std::array<double, 4>, 4> const& rows) {
  std::vector<double> m;
  for (auto const& r : rows) m.insert(m.end(), r.begin(), r.end());
  return Form::determinant(std::move(m), 4);
}

// omega_p(t1, t2, t3), with the frame's sign corrected so that
// (p, t1, t2, t3) is positively oriented (outward normal first).
inline Complex oriented_value(std::array<double, 4> const& p, std::array<double, 4> const& t1,
                              std::array<double, 4> const& t2, std::array<double, 4> const& t3) {
  Form const w = eval_omega(p, 2);
  auto vec = [](std::array<double, 4> const& a) { return std::vector<double>(a.begin(), a.end()); };
  Complex const v = w.evaluate({vec(t1), vec(t2), vec(t3)});
  return det4({p, t1, t2, t3}) < 0 ? -v : v;
}

inline Complex product_grid(std::size_t samples) {
  auto const n = std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(samples)))));
  auto const [nodes, weights] = gauss_legendre(n);
  double const half = std::numbers::pi / 4;  // eta in [0, pi/2]
  double const dxi = 2 * std::numbers::pi / static_cast<double>(n);
  Complex total{};
  for (std::size_t a = 0; a < n; ++a) {
    double const eta = half * (nodes[a] + 1);
    Complex row{};
    for (std::size_t b = 0; b < n; ++b) {
      double const xi1 = dxi * static_cast<double>(b);
      for (std::size_t c = 0; c < n; ++c) {
        double const xi2 = dxi * static_cast<double>(c);
        auto const p = hopf(eta, xi1, xi2);
        std::array<double, 4> const d_eta{-std::sin(eta) * std::cos(xi1), -std::sin(eta) * std::sin(xi1),
                                          std::cos(eta) * std::cos(xi2), std::cos(eta) * std::sin(xi2)};
        std::array<double, 4> const d_xi1{-std::cos(eta) * std::sin(xi1), std::cos(eta) * std::cos(xi1), 0, 0};
        std::array<double, 4> const d_xi2{0, 0, -std::sin(eta) * std::sin(xi2), std::sin(eta) * std::cos(xi2)};
        row += oriented_value(p, d_eta, d_xi1, d_xi2);
      }
    }
    total += half * weights[a] * dxi * dxi * row;
  }
  return total;
}

// Orthonormal tangent frame at p in S^3 by Gram-Schmidt on the coordinate axes.
inline std::array<std::array<double, 4>, 3> tangent_frame(std::array<double, 4> const& p) {
  std::vector<std::array<double, 4>> basis{p};
  for (std::size_t axis = 0; axis < 4 && basis.size() < 4; ++axis) {
    std::array<double, 4> v{};
    v[axis] = 1;
    for (auto const& b : basis) {
      double dot = 0;
      for (int i = 0; i < 4; ++i) dot += v[i] * b[i];
      for (int i = 0; i < 4; ++i) v[i] -= dot * b[i];
    }
    double norm = 0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 0.3) continue;
    for (double& x : v) x /= norm;
    basis.push_back(v);
  }
  return {basis[1], basis[2], basis[3]};
}

inline constexpr std::size_t kShifts = 16;

// Mean over kShifts randomly shifted Halton sets; returns (estimate, standard error).
inline std::pair<Complex, double> quasi_random(std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0, 1);
  std::size_t const per_shift = std::max<std::size_t>(1, samples / kShifts);
  double const volume = 2 * std::numbers::pi * std::numbers::pi;
  std::vector<Complex> estimates;
  for (std::size_t s = 0; s < kShifts; ++s) {
    std::array<double, 3> const shift{unit(rng), unit(rng), unit(rng)};
    Complex sum{};
    for (std::size_t i = 1; i <= per_shift; ++i) {
      double u[3] = {radical_inverse(i, 2), radical_inverse(i, 3), radical_inverse(i, 5)};
      for (int d = 0; d < 3; ++d) u[d] = std::fmod(u[d] + shift[static_cast<std::size_t>(d)], 1.0);
      // sin^2(eta) uniform makes the Hopf chart area-uniform on S^3.
      double const eta = std::asin(std::sqrt(u[0]));
      auto const p = hopf(eta, 2 * std::numbers::pi * u[1], 2 * std::numbers::pi * u[2]);
      auto const frame = tangent_frame(p);
      sum += oriented_value(p, frame[0], frame[1], frame[2]);
    }
    estimates.push_back(volume * sum / static_cast<double>(per_shift));
  }
  Complex mean{};
  for (auto const& e : estimates) mean += e;
  mean /= static_cast<double>(kShifts);
  double var = 0;
  for (auto const& e : estimates) var += std::norm(e - mean);
  var /= static_cast<double>(kShifts - 1);
  return {mean, std::sqrt(var / static_cast<double>(kShifts))};
}

// Relative floor for error estimates: roundoff of summing `samples` terms.
inline double roundoff_floor(Complex value, std::size_t samples) {
  return 1e-15 * std::sqrt(static_cast<double>(samples)) * std::max(1.0, std::abs(value));
}

}  // namespace detail

inline constexpr double kConvergenceTolerance = 1e-4;

/// Integral of omega over the unit S^3. The sample count is doubled once; a
/// relative shift above kConvergenceTolerance throws NonConvergence.
///
/// Error estimates: ProductGrid uses |I(2N) - I(N)|; QuasiRandom uses three
/// standard errors over the random shifts plus the doubling shift. Both are
/// floored at an accumulated-roundoff bound.
inline SphereIntegral sphere_integral(QuadratureSpec const& spec,
                                      Orientation orientation = Orientation::Outward) {
  if (spec.samples == 0) throw Error("quadrature needs at least one sample");
  SphereIntegral out;
  out.samples = spec.samples;
  double stat_error = 0;
  if (spec.scheme == QuadratureScheme::ProductGrid) {
    out.value = detail::product_grid(spec.samples);
    out.refined = detail::product_grid(2 * spec.samples);
  } else {
    auto const [v, se] = detail::quasi_random(spec.samples, spec.seed);
    auto const [r, se2] = detail::quasi_random(2 * spec.samples, spec.seed);
    out.value = v;
    out.refined = r;
    stat_error = 3 * se;
  }
  double const shift = std::abs(out.refined - out.value);
  if (shift > kConvergenceTolerance * std::abs(out.refined))
    throw NonConvergence("doubling the sample count moved the S^3 integral by " +
                         std::to_string(shift));
  out.error = std::max(stat_error + shift, detail::roundoff_floor(out.value, 2 * spec.samples));
  if (orientation == Orientation::Inward) {
    out.value = -out.value;
    out.refined = -out.refined;
  }
  return out;
}

struct Normalization {
  double constant = 0;   // C with C * integral = 1
  SphereIntegral integral;
  double relative_error() const { return integral.error / std::abs(integral.value); }
};

/// C such that C times the outward S^3 integral of omega equals 1.
inline Normalization sphere_normalization(QuadratureSpec const& spec) {
  Normalization n;
  n.integral = sphere_integral(spec);
  if (std::abs(n.integral.value) < 1e-3)
    throw Error("S^3 integral of omega vanishes; omega would be exact");
  n.constant = 1.0 / n.integral.value.real();
  return n;
}

// ---------------------------------------------------------------------------
// Pullbacks along hyperplane functionals.

/// Quaternion in double precision, (w, x, y, z).
using QuatD = std::array<double, 4>;

inline QuatD to_double(Quaternion const& q) {
  return {q.w().get_d(), q.x().get_d(), q.y().get_d(), q.z().get_d()};
}

inline QuatD qmul(QuatD const& p, QuatD const& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3],
          p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1],
          p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

/// The functional a(v) = sum_r v_r a_r as a real-linear map R^4n -> R^4.
class Functional {
 public:
  explicit Functional(CoefficientRow const& row) {
    for (auto const& q : row) coeffs_.push_back(to_double(q));
  }

  std::size_t ambient_dim() const { return coeffs_.size(); }

  QuatD apply(std::span<double const> v) const {
    QuatD out{};
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
      QuatD const vr{v[4 * r], v[4 * r + 1], v[4 * r + 2], v[4 * r + 3]};
      QuatD const t = qmul(vr, coeffs_[r]);
      for (int i = 0; i < 4; ++i) out[i] += t[i];
    }
    return out;
  }

  double norm() const {
    double s = 0;
    for (auto const& q : coeffs_)
      for (double x : q) s += x * x;
    return std::sqrt(s);
  }

  /// Images of dx_t (t = w, x, y, z of the target) as real-basis 1-forms on R^4n.
  std::vector<Form> real_images() const {
    std::size_t const dim = 4 * coeffs_.size();
    std::vector<std::vector<Complex>> rows(4, std::vector<Complex>(dim));
    for (std::size_t s = 0; s < dim; ++s) {
      Point e(dim);
      e[s] = 1;
      QuatD const col = apply(e);
      for (int t = 0; t < 4; ++t) rows[static_cast<std::size_t>(t)][s] = col[static_cast<std::size_t>(t)];
    }
    std::vector<Form> images;
    for (auto const& r : rows) images.push_back(Form::one_form(r));
    return images;
  }

  /// Images of (dz, dw, dconj z, dconj w) as complex-basis 1-forms on C^2n.
  /// With a_r = gamma_r + delta_r j and v_r = alpha_r + beta_r j:
  ///   z = sum alpha_r gamma_r - beta_r conj(delta_r)
  ///   w = sum alpha_r delta_r + beta_r conj(gamma_r)
  /// so dz and dw only involve holomorphic differentials.
  std::vector<Form> complex_images() const {
    std::size_t const m = 2 * coeffs_.size();
    std::vector<Complex> dz(2 * m), dw(2 * m), dzb(2 * m), dwb(2 * m);
    for (std::size_t r = 0; r < coeffs_.size(); ++r) {
      Complex const gamma{coeffs_[r][0], coeffs_[r][1]};
      Complex const delta{coeffs_[r][2], coeffs_[r][3]};
      dz[2 * r] = gamma;
      dz[2 * r + 1] = -std::conj(delta);
      dw[2 * r] = delta;
      dw[2 * r + 1] = std::conj(gamma);
      dzb[m + 2 * r] = std::conj(gamma);
      dzb[m + 2 * r + 1] = -delta;
      dwb[m + 2 * r] = std::conj(delta);
      dwb[m + 2 * r + 1] = gamma;
    }
    return {Form::one_form(dz), Form::one_form(dw), Form::one_form(dzb), Form::one_form(dwb)};
  }

  /// a^*(omega) at v in the real basis of R^4n.
  Form pullback_real(std::span<double const> v, int exponent = 2) const {
    QuatD const x = apply(v);
    return eval_omega(x, exponent).pullback(real_images());
  }

  /// a^*(omega) at v in the complex basis of C^2n, built from holomorphic and
  /// antiholomorphic images only.
  Form pullback_complex(std::span<double const> v, int exponent = 2) const {
    QuatD const x = apply(v);
    return eval_omega_complex({x[0], x[1]}, {x[2], x[3]}, exponent).pullback(complex_images());
  }

 private:
  std::vector<QuatD> coeffs_;
};

/// Rejection-samples points with |p| in [0.5, 2] whose image under every
/// functional has norm at least `clearance` * |a| * |p|.
template <class Rng>
std::vector<Point> sample_complement(Arrangement const& arr, std::size_t count, Rng& rng,
                                     double clearance = 0.4) {
  std::vector<Functional> fs;
  for (auto const& h : arr.hyperplanes()) fs.emplace_back(h.coeffs());
  std::vector<Point> out;
  std::size_t tries = 0;
  while (out.size() < count) {
    ++tries;
    if (tries > 200 && static_cast<double>(out.size()) < 0.01 * static_cast<double>(tries))
      throw SamplingFailure("rejection rate above 99%");
    Point p = random_point(rng, 4 * arr.ambient_dim(), 0.5, 2.0);
    double pn = 0;
    for (double x : p) pn += x * x;
    pn = std::sqrt(pn);
    bool ok = true;
    for (auto const& f : fs) {
      QuatD const y = f.apply(p);
      double yn = std::sqrt(y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3]);
      if (yn < clearance * f.norm() * pn) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(std::move(p));
  }
  return out;
}

inline constexpr double kStructuralTolerance = 1e-12;
inline constexpr double kScaleTolerance = 1e-10;

struct PullbackReport {
  std::vector<std::size_t> indices;    // hyperplanes whose pullbacks are wedged
  std::size_t points = 0;
  std::uint64_t seed = 0;
  double max_closedness = 0;           // max ||d(form)||
  double max_off_bidegree = 0;         // relative, real route converted to complex basis
  double max_route_mismatch = 0;       // relative, real route vs holomorphic route
  double max_scale_deviation = 0;      // relative, m_lambda^* form - form
  bool structurally_zero = false;      // bidegree (2r, r) exceeds (2n, 2n)
  double max_real_norm = 0;            // largest component seen, real route

  bool closed() const { return max_closedness <= kClosedTolerance; }
  bool bidegree_ok() const { return max_off_bidegree <= kStructuralTolerance; }
  bool routes_agree() const { return max_route_mismatch <= kStructuralTolerance; }
  bool scale_invariant() const { return max_scale_deviation <= kScaleTolerance; }
  bool pass() const {
    bool const vanish_ok = !structurally_zero || max_real_norm <= kStructuralTolerance;
    return closed() && bidegree_ok() && routes_agree() && scale_invariant() && vanish_ok;
  }
};

/// Checks psi(e_{A_i1} ... e_{A_ir}) = a_i1^*(omega) ^ ... ^ a_ir^*(omega) at
/// sample points of the complement: numeric closedness, bidegree (2r, r),
/// agreement of the real and holomorphic pullback routes, invariance under
/// real rescaling, and exact vanishing when 2r exceeds the complex dimension.
inline PullbackReport wedge_check(Arrangement const& arr, std::vector<std::size_t> const& indices,
                                  std::uint64_t seed = kDefaultSeed, std::size_t points = 100,
                                  double h = kStep) {
  if (indices.empty()) throw Error("wedge_check needs at least one hyperplane");
  for (auto i : indices) check_index(arr, i);
  if (arr.ambient_dim() > 3) throw SizeGuardExceeded("pullback checks limited to H^3");
  std::vector<Functional> fs;
  for (auto i : indices) fs.emplace_back(arr[i].coeffs());

  auto real_field = [&fs](std::span<double const> v) {
    Form f = fs.front().pullback_real(v);
    for (std::size_t k = 1; k < fs.size(); ++k) f = wedge(f, fs[k].pullback_real(v));
    return f;
  };
  auto complex_field = [&fs](std::span<double const> v) {
    Form f = fs.front().pullback_complex(v);
    for (std::size_t k = 1; k < fs.size(); ++k) f = wedge(f, fs[k].pullback_complex(v));
    return f;
  };

  std::mt19937_64 rng(seed);
  auto const samples = sample_complement(arr, points, rng);
  std::size_t const r = indices.size();
  std::size_t const m = 2 * arr.ambient_dim();

  PullbackReport rep;
  rep.indices = indices;
  rep.points = points;
  rep.seed = seed;
  rep.structurally_zero = 2 * r > m;
  for (auto const& v : samples) {
    Form const real = real_field(v);
    Form const holo = complex_field(v);
    Form const converted = to_complex_basis(real);
    double const scale = std::max(1.0, holo.max_abs());
    rep.max_real_norm = std::max(rep.max_real_norm, real.max_abs());
    rep.max_off_bidegree = std::max(rep.max_off_bidegree, off_bidegree(converted, 2 * r, r) / scale);
    rep.max_route_mismatch = std::max(rep.max_route_mismatch, (converted - holo).max_abs() / scale);
    if (!rep.structurally_zero)
      rep.max_closedness = std::max(rep.max_closedness, numeric_d(real_field, v, h).max_abs());
    for (double lambda : {0.5, 2.0}) {
      Point scaled(v);
      for (auto& x : scaled) x *= lambda;
      // m_lambda^* multiplies a degree-3r form by lambda^(3r).
      Form const pulled = std::pow(lambda, 3.0 * static_cast<double>(r)) * real_field(scaled);
      rep.max_scale_deviation =
          std::max(rep.max_scale_deviation, (pulled - real).max_abs() / std::max(1.0, real.max_abs()));
    }
  }
  return rep;
}

/// Single-hyperplane pullback check.
inline PullbackReport pullback_check(Arrangement const& arr, std::size_t index,
                                     std::uint64_t seed = kDefaultSeed, std::size_t points = 100) {
  return wedge_check(arr, {index}, seed, points);
}

}  // namespace qharr::derham
