#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace sdual {

// Expression templates are off so that auto and temporaries behave like plain values.
/// Exact rational with arbitrary-precision numerator and denominator.
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend, boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>, boost::multiprecision::et_off>;

using RationalMatrix = std::vector<std::vector<Rational>>;
using IntMatrix = std::vector<std::vector<int>>;

inline std::string to_string(const Rational& r) { return r.str(); }

inline Rational parse_rational(const std::string& s) {
  try {
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational number: '" + s + "'");
  }
}

inline bool is_integer(const Rational& r) {
  return boost::multiprecision::denominator(r) == 1;
}

inline std::int64_t to_int64(const Rational& r) {
  if (!is_integer(r)) throw std::domain_error("rational " + r.str() + " is not an integer");
  return boost::multiprecision::numerator(r).convert_to<std::int64_t>();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

/// Gauss-Jordan inverse of a square rational matrix.
inline RationalMatrix invert(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t j = 0; j < n; ++j) {
      m[col][j] /= p;
      inv[col][j] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t j = 0; j < n; ++j) {
        m[r][j] -= f * m[col][j];
        inv[r][j] -= f * inv[col][j];
      }
    }
  }
  return inv;
}

}  // namespace sdual
