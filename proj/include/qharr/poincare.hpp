#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <ostream>
#include <string>
#include <vector>

namespace qharr {

/// Integer polynomial in t stored by degree. Zero coefficients are never
/// stored, so equality is structural.
class PoincarePolynomial {
 public:
  PoincarePolynomial() = default;

  static PoincarePolynomial one() {
    PoincarePolynomial p;
    p.coeffs_[0] = 1;
    return p;
  }

  /// sum_k counts[k] t^(3k)
  static PoincarePolynomial from_generator_counts(std::vector<std::int64_t> const& counts) {
    PoincarePolynomial p;
    for (std::size_t k = 0; k < counts.size(); ++k) p.add(static_cast<int>(3 * k), counts[k]);
    return p;
  }

  void add(int degree, std::int64_t c) {
    if (c == 0) return;
    auto& slot = coeffs_[degree];
    slot += c;
    if (slot == 0) coeffs_.erase(degree);
  }

  std::int64_t operator[](int degree) const {
    auto it = coeffs_.find(degree);
    return it == coeffs_.end() ? 0 : it->second;
  }

  std::map<int, std::int64_t> const& coeffs() const { return coeffs_; }
  int degree() const { return coeffs_.empty() ? -1 : coeffs_.rbegin()->first; }

  /// Multiplies by t^shift.
  PoincarePolynomial shifted(int shift) const {
    PoincarePolynomial p;
    for (auto const& [d, c] : coeffs_) p.coeffs_[d + shift] = c;
    return p;
  }

  friend PoincarePolynomial operator+(PoincarePolynomial a, PoincarePolynomial const& b) {
    for (auto const& [d, c] : b.coeffs_) a.add(d, c);
    return a;
  }

  friend PoincarePolynomial operator*(PoincarePolynomial const& a, PoincarePolynomial const& b) {
    PoincarePolynomial p;
    for (auto const& [da, ca] : a.coeffs_)
      for (auto const& [db, cb] : b.coeffs_) p.add(da + db, ca * cb);
    return p;
  }

  std::int64_t evaluate(std::int64_t t) const {
    std::int64_t total = 0;
    for (auto const& [d, c] : coeffs_) {
      std::int64_t power = 1;
      for (int i = 0; i < d; ++i) power *= t;
      total += c * power;
    }
    return total;
  }

  friend bool operator==(PoincarePolynomial const&, PoincarePolynomial const&) = default;

 private:
  std::map<int, std::int64_t> coeffs_;
};

/// Lowest degree first: "1 + 3t^3 + 2t^6". Unit coefficients are omitted on
/// non-constant terms ("1 + t^3").
inline std::string to_string(PoincarePolynomial const& p) {
  if (p.coeffs().empty()) return "0";
  std::string out;
  for (auto const& [d, c] : p.coeffs()) {
    std::int64_t mag = c < 0 ? -c : c;
    if (out.empty()) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    if (d == 0 || mag != 1) out += std::to_string(mag);
    if (d == 1) out += "t";
    if (d > 1) out += "t^" + std::to_string(d);
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, PoincarePolynomial const& p) {
  return os << to_string(p);
}

}  // namespace qharr
