#pragma once

// Generating-function and lattice routes to level-one characters, independent
// of the Freudenthal recursion in affine.hpp.

#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <vector>

#include "sdual/weight.hpp"

namespace sdual::check {

using Series = std::vector<std::int64_t>;

inline Series multiply(const Series& a, const Series& b, int n) {
  Series c(n + 1, 0);
  for (int i = 0; i <= n && i < static_cast<int>(a.size()); ++i)
    for (int j = 0; i + j <= n && j < static_cast<int>(b.size()); ++j) c[i + j] += a[i] * b[j];
  return c;
}

/// prod_{m>=1} (1 - q^m)^{-power}, truncated at q^n.
inline Series inverse_eta_power(int power, int n) {
  Series p(n + 1, 0);
  p[0] = 1;
  for (int m = 1; m <= n; ++m)
    for (int r = 0; r < power; ++r)
      for (int i = m; i <= n; ++i) p[i] += p[i - m];
  return p;
}

/// E8 lattice theta function 1 + 240 sum sigma_3(n) q^n.
inline Series e8_theta(int n) {
  Series t(n + 1, 0);
  t[0] = 1;
  for (int m = 1; m <= n; ++m) {
    std::int64_t s = 0;
    for (int d = 1; d <= m; ++d)
      if (m % d == 0) s += static_cast<std::int64_t>(d) * d * d;
    t[m] = 240 * s;
  }
  return t;
}

/// Graded dimensions of the basic E8 level-one module.
inline Series e8_basic_dims(int n) { return multiply(e8_theta(n), inverse_eta_power(8, n), n); }

/// Level-one A_n module with highest weight varpi_j (j = 0 for the basic one),
/// via the lattice construction: sum over gamma in varpi_j + Q of
/// q^{((gamma,gamma) - (varpi_j,varpi_j))/2} e^gamma, times prod (1-q^m)^{-n}.
/// Returns per grade the multiplicity of each Dynkin-label weight.
inline std::vector<std::map<Weight, std::int64_t>> a_level_one(int n, int j, int cutoff) {
  const int d = n + 1;
  // work with (n+1) * coordinates to stay integral
  std::vector<int> base(d, 0);
  for (int i = 0; i < j; ++i) base[i] = d;
  for (int i = 0; i < d; ++i) base[i] -= j;
  auto norm_scaled = [&](const std::vector<int>& v) {  // d^2 * Euclidean norm
    std::int64_t s = 0;
    for (int x : v) s += static_cast<std::int64_t>(x) * x;
    return s;
  };
  const std::int64_t base_norm = norm_scaled(base);
  std::vector<std::map<Weight, std::int64_t>> lattice(cutoff + 1);
  const int box = cutoff + 2;
  std::vector<int> x(d, 0);
  std::function<void(int, int)> rec = [&](int i, int sum) {
    if (i == d - 1) {
      x[i] = -sum;
      if (std::abs(x[i]) > box) return;
      std::vector<int> g(d);
      for (int k = 0; k < d; ++k) g[k] = base[k] + d * x[k];
      const std::int64_t diff = norm_scaled(g) - base_norm;  // d^2 * ((g,g) - (b,b))
      if (diff % (2LL * d * d) != 0) return;
      const std::int64_t grade = diff / (2LL * d * d);
      if (grade < 0 || grade > cutoff) return;
      Weight w(static_cast<std::size_t>(n));
      for (int k = 0; k < n; ++k) w[k] = (g[k] - g[k + 1]) / d;
      lattice[grade][w] += 1;
      return;
    }
    for (int v = -box; v <= box; ++v) {
      x[i] = v;
      rec(i + 1, sum + v);
    }
  };
  rec(0, 0);
  const Series osc = inverse_eta_power(n, cutoff);
  std::vector<std::map<Weight, std::int64_t>> out(cutoff + 1);
  for (int m = 0; m <= cutoff; ++m)
    for (int m1 = 0; m1 <= m; ++m1)
      for (const auto& [w, c] : lattice[m1]) out[m][w] += c * osc[m - m1];
  return out;
}

}  // namespace sdual::check
