#pragma once

#include <array>
#include <ostream>
#include <string>

#include "qharr/rational.hpp"

namespace qharr {

/// Exact rational quaternion w + x i + y j + z k.
class Quaternion {
 public:
  Quaternion() = default;
  Quaternion(Rational w) : w_(std::move(w)) {}  // NOLINT: implicit scalar embedding
  Quaternion(long w) : w_(w) {}                  // NOLINT
  Quaternion(Rational w, Rational x, Rational y, Rational z)
      : w_(std::move(w)), x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}

  static Quaternion i() { return {0, 1, 0, 0}; }
  static Quaternion j() { return {0, 0, 1, 0}; }
  static Quaternion k() { return {0, 0, 0, 1}; }

  Rational const& w() const { return w_; }
  Rational const& x() const { return x_; }
  Rational const& y() const { return y_; }
  Rational const& z() const { return z_; }

  bool is_zero() const { return sgn(w_) == 0 && sgn(x_) == 0 && sgn(y_) == 0 && sgn(z_) == 0; }

  Quaternion conj() const { return {w_, -x_, -y_, -z_}; }
  Rational norm_sq() const { return w_ * w_ + x_ * x_ + y_ * y_ + z_ * z_; }

  /// conj(q) / norm_sq(q). Throws DivisionByZero on 0.
  Quaternion inverse() const {
    Rational const n = norm_sq();
    if (sgn(n) == 0) throw DivisionByZero();
    return {w_ / n, -x_ / n, -y_ / n, -z_ / n};
  }

  friend Quaternion operator+(Quaternion const& p, Quaternion const& q) {
    return {p.w_ + q.w_, p.x_ + q.x_, p.y_ + q.y_, p.z_ + q.z_};
  }
  friend Quaternion operator-(Quaternion const& p, Quaternion const& q) {
    return {p.w_ - q.w_, p.x_ - q.x_, p.y_ - q.y_, p.z_ - q.z_};
  }
  friend Quaternion operator-(Quaternion const& q) { return {-q.w_, -q.x_, -q.y_, -q.z_}; }

  // Hamilton product.
  friend Quaternion operator*(Quaternion const& p, Quaternion const& q) {
    return {p.w_ * q.w_ - p.x_ * q.x_ - p.y_ * q.y_ - p.z_ * q.z_,
            p.w_ * q.x_ + p.x_ * q.w_ + p.y_ * q.z_ - p.z_ * q.y_,
            p.w_ * q.y_ - p.x_ * q.z_ + p.y_ * q.w_ + p.z_ * q.x_,
            p.w_ * q.z_ + p.x_ * q.y_ - p.y_ * q.x_ + p.z_ * q.w_};
  }
  friend Quaternion operator*(Quaternion const& q, Rational const& s) {
    return {q.w_ * s, q.x_ * s, q.y_ * s, q.z_ * s};
  }
  friend Quaternion operator/(Quaternion const& q, Rational const& s) {
    if (sgn(s) == 0) throw DivisionByZero();
    return {q.w_ / s, q.x_ / s, q.y_ / s, q.z_ / s};
  }

  Quaternion& operator+=(Quaternion const& q) { return *this = *this + q; }
  Quaternion& operator-=(Quaternion const& q) { return *this = *this - q; }

  friend bool operator==(Quaternion const& p, Quaternion const& q) {
    return p.w_ == q.w_ && p.x_ == q.x_ && p.y_ == q.y_ && p.z_ == q.z_;
  }

  std::array<std::string, 4> to_strings() const {
    return {qharr::to_string(w_), qharr::to_string(x_), qharr::to_string(y_),
            qharr::to_string(z_)};
  }

 private:
  Rational w_{0}, x_{0}, y_{0}, z_{0};
};

inline Quaternion q_mul(Quaternion const& p, Quaternion const& q) { return p * q; }
inline Quaternion q_inv(Quaternion const& q) { return q.inverse(); }

/// Human-readable form, e.g. "1 - i + 1/2k". Used by test diagnostics and
/// text reports.
inline std::string to_string(Quaternion const& q) {
  std::string out;
  auto term = [&](Rational const& c, char const* unit) {
    if (sgn(c) == 0) return;
    Rational const mag = abs(c);
    if (out.empty()) {
      if (sgn(c) < 0) out += "-";
    } else {
      out += sgn(c) < 0 ? " - " : " + ";
    }
    if (*unit == '\0' || mag != 1) out += qharr::to_string(mag);
    out += unit;
  };
  term(q.w(), "");
  term(q.x(), "i");
  term(q.y(), "j");
  term(q.z(), "k");
  return out.empty() ? "0" : out;
}

inline std::ostream& operator<<(std::ostream& os, Quaternion const& q) {
  return os << to_string(q);
}

/// Exact Gaussian rational re + im i.
struct GaussianRational {
  Rational re{0}, im{0};

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  GaussianRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }
  GaussianRational inverse() const {
    Rational const n = norm_sq();
    if (sgn(n) == 0) throw DivisionByZero();
    return {re / n, -im / n};
  }
  friend GaussianRational operator+(GaussianRational const& a, GaussianRational const& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend GaussianRational operator-(GaussianRational const& a, GaussianRational const& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend GaussianRational operator-(GaussianRational const& a) { return {-a.re, -a.im}; }
  friend GaussianRational operator*(GaussianRational const& a, GaussianRational const& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend bool operator==(GaussianRational const& a, GaussianRational const& b) {
    return a.re == b.re && a.im == b.im;
  }
};

/// 2x2 complex matrix image of a quaternion under q = a + b j  |->
/// [[a, b], [-conj(b), conj(a)]], with a = w + x i and b = y + z i.
struct ComplexAdjoint {
  std::array<std::array<GaussianRational, 2>, 2> m;

  friend ComplexAdjoint operator*(ComplexAdjoint const& p, ComplexAdjoint const& q) {
    ComplexAdjoint r;
    for (int row = 0; row < 2; ++row)
      for (int col = 0; col < 2; ++col)
        r.m[row][col] = p.m[row][0] * q.m[0][col] + p.m[row][1] * q.m[1][col];
    return r;
  }
  friend ComplexAdjoint operator+(ComplexAdjoint const& p, ComplexAdjoint const& q) {
    ComplexAdjoint r;
    for (int row = 0; row < 2; ++row)
      for (int col = 0; col < 2; ++col) r.m[row][col] = p.m[row][col] + q.m[row][col];
    return r;
  }
  friend bool operator==(ComplexAdjoint const& p, ComplexAdjoint const& q) { return p.m == q.m; }
};

inline ComplexAdjoint adjoint_embed(Quaternion const& q) {
  GaussianRational const a{q.w(), q.x()};
  GaussianRational const b{q.y(), q.z()};
  return {{{{a, b}, {-b.conj(), a.conj()}}}};
}

}  // namespace qharr
