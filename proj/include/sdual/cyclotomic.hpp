#pragma once

// Exact arithmetic in the cyclotomic field Q(zeta_m): elements are rational
// polynomials of degree < phi(m) reduced modulo the m-th cyclotomic polynomial.

#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <vector>

#include "sdual/error.hpp"
#include "sdual/rational.hpp"

namespace sdual {

namespace detail {

// Integer coefficients, lowest degree first.
using IntPoly = std::vector<BigInt>;

inline IntPoly exact_divide(IntPoly num, const IntPoly& den) {
  // den is monic
  const std::size_t dn = den.size() - 1;
  IntPoly q(num.size() - dn, BigInt(0));
  for (std::size_t i = num.size(); i-- > dn;) {
    const BigInt c = num[i];
    if (c == 0) continue;
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  for (const auto& r : num)
    if (r != 0) throw VerificationError("cyclotomic polynomial division left a remainder");
  return q;
}

inline const IntPoly& cyclotomic_polynomial(int m) {
  static std::mutex mu;
  static std::map<int, IntPoly> cache;
  {
    std::lock_guard<std::mutex> lock(mu);
    if (auto it = cache.find(m); it != cache.end()) return it->second;
  }
  // x^m - 1 divided by Phi_d for every proper divisor d
  IntPoly p(static_cast<std::size_t>(m) + 1, BigInt(0));
  p[0] = -1;
  p[static_cast<std::size_t>(m)] = 1;
  for (int d = 1; d < m; ++d)
    if (m % d == 0) p = exact_divide(p, cyclotomic_polynomial(d));
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(m, std::move(p)).first->second;
}

}  // namespace detail

/// Euler's phi, the degree of Q(zeta_m).
inline int euler_phi(int m) { return static_cast<int>(detail::cyclotomic_polynomial(m).size()) - 1; }

/// Element of Q(zeta_m).
class Cyclotomic {
 public:
  Cyclotomic() = default;
  explicit Cyclotomic(int m, Rational value = 0) : m_(m), c_(degree(m), Rational(0)) {
    if (m < 1) throw DomainError("cyclotomic order must be positive");
    c_[0] = value;
  }

  /// zeta_m^k.
  static Cyclotomic zeta(int m, long long k) {
    Cyclotomic z(m);
    k %= m;
    if (k < 0) k += m;
    std::vector<Rational> raw(static_cast<std::size_t>(k) + 1, Rational(0));
    raw[static_cast<std::size_t>(k)] = 1;
    z.c_ = reduce(m, std::move(raw));
    return z;
  }

  /// exp(2 pi i phase) for a rational phase whose denominator divides m.
  static Cyclotomic root_of_unity(int m, const Rational& phase) {
    const Rational k = phase * m;
    if (!is_integer(k))
      throw DomainError("phase " + phase.str() + " is not an m-th root of unity for m = " + std::to_string(m));
    return zeta(m, static_cast<long long>(to_int64(k) % m));
  }

  int order() const { return m_; }
  const std::vector<Rational>& coefficients() const { return c_; }

  bool is_zero() const {
    for (const auto& v : c_)
      if (v != 0) return false;
    return true;
  }
  /// True when the element is a rational number; its value is then coefficients()[0].
  bool is_rational() const {
    for (std::size_t i = 1; i < c_.size(); ++i)
      if (c_[i] != 0) return false;
    return true;
  }

  Cyclotomic& operator+=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
  }
  Cyclotomic& operator-=(const Cyclotomic& o) {
    check(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
  }
  friend Cyclotomic operator+(Cyclotomic a, const Cyclotomic& b) { return a += b; }
  friend Cyclotomic operator-(Cyclotomic a, const Cyclotomic& b) { return a -= b; }
  friend Cyclotomic operator-(Cyclotomic a) {
    for (auto& v : a.c_) v = -v;
    return a;
  }
  friend Cyclotomic operator*(const Cyclotomic& a, const Cyclotomic& b) {
    a.check(b);
    if (a.is_zero() || b.is_zero()) return Cyclotomic(a.m_);
    std::vector<Rational> raw(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == 0) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (b.c_[j] != 0) raw[i + j] += a.c_[i] * b.c_[j];
    }
    Cyclotomic r(a.m_);
    r.c_ = reduce(a.m_, std::move(raw));
    return r;
  }
  friend Cyclotomic operator*(const Rational& s, Cyclotomic a) {
    for (auto& v : a.c_) v *= s;
    return a;
  }
  Cyclotomic& operator*=(const Cyclotomic& o) { return *this = *this * o; }

  /// Multiplicative inverse, by solving the linear system of multiplication by *this.
  Cyclotomic inverse() const {
    if (is_zero()) throw DomainError("division by zero in a cyclotomic field");
    const std::size_t d = c_.size();
    RationalMatrix mat(d, std::vector<Rational>(d, Rational(0)));
    for (std::size_t j = 0; j < d; ++j) {
      const Cyclotomic col = *this * zeta(m_, static_cast<long long>(j));
      for (std::size_t i = 0; i < d; ++i) mat[i][j] = col.c_[i];
    }
    const RationalMatrix inv = invert(mat);
    Cyclotomic r(m_);
    for (std::size_t i = 0; i < d; ++i) r.c_[i] = inv[i][0];
    return r;
  }
  friend Cyclotomic operator/(const Cyclotomic& a, const Cyclotomic& b) { return a * b.inverse(); }

  friend bool operator==(const Cyclotomic& a, const Cyclotomic& b) { return a.m_ == b.m_ && a.c_ == b.c_; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] == 0) continue;
      if (!s.empty()) s += " + ";
      s += "(" + c_[i].str() + ")";
      if (i > 0) s += "z^" + std::to_string(i);
    }
    return s.empty() ? "0" : s;
  }

 private:
  static std::size_t degree(int m) { return detail::cyclotomic_polynomial(m).size() - 1; }

  static std::vector<Rational> reduce(int m, std::vector<Rational> raw) {
    const auto& phi = detail::cyclotomic_polynomial(m);
    const std::size_t d = phi.size() - 1;
    for (std::size_t i = raw.size(); i-- > d;) {
      const Rational c = raw[i];
      if (c == 0) continue;
      for (std::size_t j = 0; j <= d; ++j)
        if (phi[j] != 0) raw[i - d + j] -= c * Rational(phi[j]);
    }
    raw.resize(d, Rational(0));
    return raw;
  }

  void check(const Cyclotomic& o) const {
    if (o.m_ != m_) throw DomainError("mixing cyclotomic fields of orders " + std::to_string(m_) + " and " + std::to_string(o.m_));
  }

  int m_ = 1;
  std::vector<Rational> c_{Rational(0)};
};

using CyclotomicMatrix = std::vector<std::vector<Cyclotomic>>;

/// Rank by fraction-free (Bareiss) elimination; each step divides exactly by
/// the previous pivot.
inline std::size_t rank(CyclotomicMatrix a) {
  if (a.empty()) return 0;
  const std::size_t rows = a.size(), cols = a[0].size();
  const int m = a[0].empty() ? 1 : a[0][0].order();
  Cyclotomic prev(m, 1);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Cyclotomic inv_prev = prev.inverse();
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a[i][j] = (a[r][c] * a[i][j] - a[i][c] * a[r][j]) * inv_prev;
      a[i][c] = Cyclotomic(m);
    }
    prev = a[r][c];
    ++r;
  }
  return r;
}

/// Dimension of the right null space {x : a x = 0}, by reduced row echelon form.
inline std::size_t nullity(CyclotomicMatrix a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    const Cyclotomic inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      const Cyclotomic f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        if (!a[r][j].is_zero()) a[i][j] -= f * a[r][j];
    }
    ++r;
  }
  return cols - r;
}

}  // namespace sdual
