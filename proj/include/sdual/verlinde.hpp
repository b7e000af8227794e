#pragma once

// Modular S-matrices of level-k integrable modules and Verlinde dimensions of
// conformal-block spaces.
//
// For a simple algebra, S_{lambda mu} = S_{0 mu} ch_lambda(exp(-2 pi i (mu + rho)/(k + h))),
// with S_{0 mu} proportional to prod_{alpha > 0} 2 sin(pi (alpha, mu + rho)/(k + h))
// and scaled so that sum_mu S_{0 mu}^2 = 1. Semisimple systems use the tensor
// product over components. Phases are reduced modulo 1 exactly before any
// floating-point evaluation.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <cmath>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "sdual/affine.hpp"
#include "sdual/rootsys.hpp"
#include "sdual/weyl.hpp"

namespace sdual {

template <class Real>
struct Cx {
  Real re{0};
  Real im{0};

  Cx() = default;
  Cx(Real r, Real i = Real(0)) : re(std::move(r)), im(std::move(i)) {}

  friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
  friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
  friend Cx operator*(const Cx& a, const Cx& b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend Cx operator*(const Real& s, const Cx& a) { return {s * a.re, s * a.im}; }
  friend Cx operator/(const Cx& a, const Cx& b) {
    const Real d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Cx& operator+=(const Cx& o) { return *this = *this + o; }
  Cx conj() const { return {re, -im}; }
  Real norm2() const { return re * re + im * im; }
};

/// Precision of floating evaluation: digits <= 15 means double, otherwise
/// a binary float with at least that many decimal digits (up to 100).
struct Precision {
  int digits = 15;
};

inline constexpr double kUnitarityTolerance = 1e-9;
inline constexpr double kRoundingTolerance = 1e-6;

/// Guard on the alcove size; S-matrix construction is quadratic in it.
struct VerlindeLimits {
  std::size_t max_alcove = 4000;
};

template <class Real>
struct SMatrixT {
  Levels level;
  std::vector<LevelWeight> alcove;
  std::vector<std::vector<Cx<Real>>> entries;

  std::size_t index_of(const Weight& w) const {
    for (std::size_t i = 0; i < alcove.size(); ++i)
      if (alcove[i].weight == w) return i;
    throw DomainError("weight " + w.str() + " is not in the level alcove");
  }
};

namespace detail {

template <class Real>
Real pi() {
  return boost::math::constants::pi<Real>();
}

template <class Real>
SMatrixT<Real> simple_s_matrix(const RootSystem& rs, int k) {
  using std::sin;
  using std::cos;
  using std::sqrt;
  SMatrixT<Real> s;
  s.level = Levels{k};
  s.alcove = alcove(rs, k);
  const std::size_t n = s.alcove.size();
  const std::int64_t kappa = k + rs.components()[0].dual_coxeter;
  const std::int64_t period = rs.form_scale() * kappa;  // phases live in Z / period
  const Real two_pi = 2 * pi<Real>();

  std::vector<Cx<Real>> unit(static_cast<std::size_t>(period));
  for (std::int64_t j = 0; j < period; ++j) {
    const Real t = two_pi * Real(j) / Real(period);
    unit[static_cast<std::size_t>(j)] = Cx<Real>(cos(t), -sin(t));
  }

  const Weight rho = rs.rho();
  std::vector<Real> s0(n);
  Real total = 0;
  for (std::size_t m = 0; m < n; ++m) {
    const Weight mr = s.alcove[m].weight + rho;
    Real prod = 1;
    for (const auto& a : rs.positive_roots()) {
      const std::int64_t p = rs.scaled_inner(a, mr);  // 0 < p < period for mu in the alcove
      prod *= 2 * sin(pi<Real>() * Real(p) / Real(period));
    }
    s0[m] = prod;
    total += prod * prod;
  }
  const Real scale = 1 / sqrt(total);
  for (auto& v : s0) v *= scale;

  s.entries.assign(n, std::vector<Cx<Real>>(n));
  for (std::size_t l = 0; l < n; ++l) {
    const WeightMultiset ch = finite_character(rs, s.alcove[l].weight);
    for (std::size_t m = 0; m < n; ++m) {
      const Weight mr = s.alcove[m].weight + rho;
      Cx<Real> acc;
      for (const auto& [nu, mult] : ch) {
        std::int64_t p = rs.scaled_inner(nu, mr) % period;
        if (p < 0) p += period;
        acc += Real(mult) * unit[static_cast<std::size_t>(p)];
      }
      s.entries[l][m] = s0[m] * acc;
    }
  }
  return s;
}

template <class Real>
SMatrixT<Real> kron(const SMatrixT<Real>& a, const SMatrixT<Real>& b) {
  SMatrixT<Real> s;
  s.level = a.level;
  s.level.insert(s.level.end(), b.level.begin(), b.level.end());
  for (const auto& x : a.alcove)
    for (const auto& y : b.alcove) s.alcove.push_back(LevelWeight{concat(x.weight, y.weight), s.level});
  const std::size_t na = a.alcove.size(), nb = b.alcove.size();
  s.entries.assign(na * nb, std::vector<Cx<Real>>(na * nb));
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < nb; ++j)
      for (std::size_t p = 0; p < na; ++p)
        for (std::size_t q = 0; q < nb; ++q) s.entries[i * nb + j][p * nb + q] = a.entries[i][p] * b.entries[j][q];
  return s;
}

template <class Real>
void check_s_matrix(const SMatrixT<Real>& s) {
  using std::abs;
  using std::sqrt;
  const std::size_t n = s.alcove.size();
  const Real tol(kUnitarityTolerance);
  for (std::size_t i = 0; i < n; ++i) {
    if (s.entries[0][i].re <= 0 || abs(s.entries[0][i].im) > tol)
      throw VerificationError("S-matrix vacuum row is not positive real");
    for (std::size_t j = 0; j < n; ++j) {
      if (sqrt((s.entries[i][j] - s.entries[j][i]).norm2()) > tol)
        throw VerificationError("S-matrix is not symmetric; try a higher precision");
      Cx<Real> dot;
      for (std::size_t m = 0; m < n; ++m) dot += s.entries[i][m] * s.entries[j][m].conj();
      if (i == j) dot = dot - Cx<Real>(Real(1));
      if (sqrt(dot.norm2()) > tol) throw VerificationError("S-matrix unitarity violated; try a higher precision");
    }
  }
}

}  // namespace detail

/// S-matrix of rs at levels k (one per component), verified unitary and symmetric.
template <class Real>
SMatrixT<Real> s_matrix_t(const RootSystem& rs, const Levels& k, const VerlindeLimits& limits = {}) {
  check_levels(rs, k);
  std::size_t size = 1;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    size *= alcove(rs.component_system(c), k[c]).size();
    if (size > limits.max_alcove)
      throw ResourceError("alcove of " + rs.type().str() + " exceeds the bound of " + std::to_string(limits.max_alcove));
  }
  SMatrixT<Real> s;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    auto part = detail::simple_s_matrix<Real>(rs.component_system(c), k[c]);
    s = c == 0 ? std::move(part) : detail::kron(s, part);
  }
  detail::check_s_matrix(s);
  return s;
}

using SMatrix = SMatrixT<double>;

inline SMatrix s_matrix(const RootSystem& rs, const Levels& k, const VerlindeLimits& limits = {}) {
  return s_matrix_t<double>(rs, k, limits);
}
inline SMatrix s_matrix(const RootSystem& rs, int k) { return s_matrix(rs, uniform_levels(rs, k)); }

struct FusionQuery {
  int genus = 0;
  std::vector<Weight> labels;
};

/// Pre-rounding Verlinde value and its rounded integer.
struct FusionValue {
  double raw = 0;
  std::int64_t dimension = 0;
};

namespace detail {

template <class Real>
FusionValue fusion_from(const SMatrixT<Real>& s, const FusionQuery& q) {
  using std::abs;
  using std::pow;
  using std::round;
  if (q.genus < 0) throw DomainError("genus must be non-negative");
  std::vector<std::size_t> idx;
  for (const auto& w : q.labels) idx.push_back(s.index_of(w));
  Cx<Real> sum;
  for (std::size_t m = 0; m < s.alcove.size(); ++m) {
    const Real s0 = s.entries[0][m].re;
    Cx<Real> term(pow(s0, 2 - 2 * q.genus));
    for (std::size_t i : idx) term = term * (s.entries[i][m] / Cx<Real>(s0));
    sum += term;
  }
  const Real r = round(sum.re);
  const Real dev = abs(sum.re - r);
  if (dev > Real(kRoundingTolerance) || abs(sum.im) > Real(kRoundingTolerance))
    throw VerificationError("Verlinde sum " + std::to_string(static_cast<double>(sum.re)) +
                            " is not within tolerance of an integer");
  if (r < 0) throw VerificationError("Verlinde sum is negative");
  return FusionValue{static_cast<double>(sum.re), static_cast<std::int64_t>(r)};
}

template <class Real>
const SMatrixT<Real>& cached_s_matrix(const RootSystem& rs, const Levels& k) {
  static std::mutex mu;
  static std::map<std::pair<std::string, Levels>, SMatrixT<Real>> cache;
  std::lock_guard<std::mutex> lock(mu);
  const auto key = std::make_pair(rs.type().str(), k);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, s_matrix_t<Real>(rs, k)).first;
  return it->second;
}

using Float50 = boost::multiprecision::cpp_bin_float_50;
using Float100 = boost::multiprecision::cpp_bin_float_100;

}  // namespace detail

inline void check_precision(const Precision& p) {
  if (p.digits < 15 || p.digits > 100) throw DomainError("precision must be between 15 and 100 digits");
}

inline FusionValue fusion_value(const RootSystem& rs, const Levels& k, const FusionQuery& q, const Precision& p = {}) {
  check_precision(p);
  for (const auto& w : q.labels) require_alcove(rs, LevelWeight{w, k});
  if (p.digits <= 15) return detail::fusion_from(detail::cached_s_matrix<double>(rs, k), q);
  if (p.digits <= 50) return detail::fusion_from(detail::cached_s_matrix<detail::Float50>(rs, k), q);
  return detail::fusion_from(detail::cached_s_matrix<detail::Float100>(rs, k), q);
}

/// Dimension of the space of conformal blocks at genus q.genus with the given labels.
inline std::int64_t fusion_dim(const RootSystem& rs, const Levels& k, const FusionQuery& q, const Precision& p = {}) {
  return fusion_value(rs, k, q, p).dimension;
}
inline std::int64_t fusion_dim(const RootSystem& rs, int k, const FusionQuery& q, const Precision& p = {}) {
  return fusion_dim(rs, uniform_levels(rs, k), q, p);
}

struct FactorizationReport {
  std::int64_t lhs = 0;
  std::int64_t rhs = 0;
  std::vector<std::pair<Weight, std::int64_t>> terms;  ///< per lambda in the alcove
  bool holds() const { return lhs == rhs; }
};

/// dim(g; labels) against the sum over lambda of dim(g - 1; labels, lambda, lambda^dagger).
inline FactorizationReport factorization_check(const RootSystem& rs, const Levels& k, int genus,
                                               const std::vector<Weight>& labels, const Precision& p = {}) {
  if (genus < 1) throw DomainError("factorization needs genus at least 1");
  FactorizationReport rep;
  rep.lhs = fusion_dim(rs, k, FusionQuery{genus, labels}, p);
  for (const auto& lw : alcove(rs, k)) {
    FusionQuery q{genus - 1, labels};
    q.labels.push_back(lw.weight);
    q.labels.push_back(dagger(rs, lw.weight));
    const std::int64_t d = fusion_dim(rs, k, q, p);
    rep.terms.emplace_back(lw.weight, d);
    rep.rhs += d;
  }
  if (!rep.holds())
    throw VerificationError("factorization fails for " + rs.type().str() + ": " + std::to_string(rep.lhs) +
                            " != " + std::to_string(rep.rhs));
  return rep;
}

struct StrangeDualityReport {
  std::string a, b;
  int genus = 0;
  std::int64_t dim_a = 0, dim_b = 0;
  double raw_a = 0, raw_b = 0;
  std::optional<double> closed_form;  ///< G2/F4 only
  bool equal() const { return dim_a == dim_b; }
  bool closed_form_ok() const {
    return !closed_form || (std::abs(*closed_form - raw_a) < kRoundingTolerance &&
                            std::abs(*closed_form - raw_b) < kRoundingTolerance);
  }
};

/// The level-one pairs whose product sits conformally in e8.
inline const std::vector<std::pair<std::string, std::string>>& strange_duality_pairs() {
  static const std::vector<std::pair<std::string, std::string>> pairs{
      {"A4", "A4"}, {"A2", "E6"}, {"A1", "E7"}, {"D4", "D4"}, {"G2", "F4"}};
  return pairs;
}

/// ((5 + sqrt 5)/2)^(g-1) + ((5 - sqrt 5)/2)^(g-1)
inline double g2_f4_closed_form(int genus) {
  const double r5 = std::sqrt(5.0);
  return std::pow((5 + r5) / 2, genus - 1) + std::pow((5 - r5) / 2, genus - 1);
}

inline StrangeDualityReport strange_duality_dims(const std::string& a, const std::string& b, int genus,
                                                 const Precision& p = {}) {
  bool known = false;
  for (const auto& [x, y] : strange_duality_pairs()) known |= (LieType::parse(a).str() == x && LieType::parse(b).str() == y);
  if (!known) throw DomainError("not a level-one strange duality pair: " + a + ":" + b);
  if (genus < 0) throw DomainError("genus must be non-negative");
  StrangeDualityReport r;
  r.a = LieType::parse(a).str();
  r.b = LieType::parse(b).str();
  r.genus = genus;
  const RootSystem ra = build(r.a), rb = build(r.b);
  const auto va = fusion_value(ra, Levels{1}, FusionQuery{genus, {}}, p);
  const auto vb = fusion_value(rb, Levels{1}, FusionQuery{genus, {}}, p);
  r.dim_a = va.dimension;
  r.dim_b = vb.dimension;
  r.raw_a = va.raw;
  r.raw_b = vb.raw;
  if (r.a == "G2") r.closed_form = g2_f4_closed_form(genus);
  return r;
}

}  // namespace sdual
