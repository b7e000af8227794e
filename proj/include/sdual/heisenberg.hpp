#pragma once

// Finite Heisenberg groups over K = A^g x A^g and their Schroedinger
// representation on functions A^g -> C.  The second factor stands for the
// characters of A^g, identified with A^g through a symmetric pairing beta on A
// (the standard one, beta(x, y) = sum x_i y_i / n_i, unless a form is given).
//
//   U(a, b) f(x) = chi_b(x) f(x + a),   chi_b(x) = exp(2 pi i sum_k beta(b_k, x_k))
//   U(v) U(w) = exp(2 pi i c(v, w)) U(v + w),   c(v, w) = beta(b_w, a_v)
//
// All phases are exact rationals modulo 1.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "sdual/cyclotomic.hpp"
#include "sdual/error.hpp"
#include "sdual/rational.hpp"

namespace sdual {

/// Fractional part in [0, 1).
inline Rational frac(const Rational& q) {
  const BigInt n = numerator(q), d = denominator(q);
  BigInt r = n % d;
  if (r < 0) r += d;
  return Rational(r, d);
}

struct FiniteAbelian {
  std::vector<int> orders;
  // symmetric pairing, entries mod 1; empty means the standard pairing
  RationalMatrix form;

  std::size_t rank() const { return orders.size(); }
  std::size_t size() const {
    std::size_t s = 1;
    for (int n : orders) s *= static_cast<std::size_t>(n);
    return s;
  }
  int exponent() const {
    int e = 1;
    for (int n : orders) e = std::lcm(e, n);
    return e;
  }
  Rational beta(std::size_t i, std::size_t j) const {
    if (form.empty()) return i == j ? Rational(1, orders[i]) : Rational(0);
    return form[i][j];
  }
  /// beta(x, y) modulo 1.
  Rational pair(const int* x, const int* y) const {
    Rational s = 0;
    for (std::size_t i = 0; i < rank(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t j = 0; j < rank(); ++j)
        if (y[j] != 0) s += beta(i, j) * (x[i] * y[j]);
    }
    return frac(s);
  }
  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "xZ/" : "Z/") + std::to_string(orders[i]);
    return s.empty() ? "1" : s;
  }
};

namespace detail {

inline std::vector<int> unrank(std::size_t idx, const std::vector<int>& orders) {
  std::vector<int> x(orders.size());
  for (std::size_t i = 0; i < orders.size(); ++i) {
    x[i] = static_cast<int>(idx % static_cast<std::size_t>(orders[i]));
    idx /= static_cast<std::size_t>(orders[i]);
  }
  return x;
}

inline std::size_t rank_of(const std::vector<int>& x, const std::vector<int>& orders) {
  std::size_t idx = 0;
  for (std::size_t i = orders.size(); i-- > 0;) {
    int v = x[i] % orders[i];
    if (v < 0) v += orders[i];
    idx = idx * static_cast<std::size_t>(orders[i]) + static_cast<std::size_t>(v);
  }
  return idx;
}

}  // namespace detail

/// Checks orders, symmetry, well-definedness and non-degeneracy of the pairing.
inline void validate(const FiniteAbelian& a) {
  if (a.orders.empty()) throw DomainError("finite abelian group needs at least one cyclic factor");
  for (int n : a.orders)
    if (n < 1) throw DomainError("cyclic orders must be positive");
  if (a.form.empty()) return;
  const std::size_t r = a.rank();
  if (a.form.size() != r) throw DomainError("pairing matrix has the wrong size");
  for (const auto& row : a.form)
    if (row.size() != r) throw DomainError("pairing matrix has the wrong size");
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (frac(a.form[i][j] - a.form[j][i]) != 0) throw DomainError("pairing matrix is not symmetric");
      if (!is_integer(a.form[i][j] * a.orders[i]) || !is_integer(a.form[i][j] * a.orders[j]))
        throw DomainError("pairing entry " + a.form[i][j].str() + " is not defined on " + a.str());
    }
  // b -> beta(b, .) must be injective
  std::vector<int> e(r, 0);
  for (std::size_t idx = 1; idx < a.size(); ++idx) {
    const auto b = detail::unrank(idx, a.orders);
    bool trivial = true;
    for (std::size_t j = 0; j < r && trivial; ++j) {
      std::fill(e.begin(), e.end(), 0);
      e[j] = 1;
      trivial = a.pair(b.data(), e.data()) == 0;
    }
    if (trivial) throw DomainError("pairing on " + a.str() + " is degenerate");
  }
}

/// R e_j = exp(2 pi i phase_j) e_{perm_j}.
struct Monomial {
  std::vector<std::size_t> perm;
  std::vector<Rational> phase;
};

inline constexpr std::size_t kDefaultGroupLimit = 10000;

class HeisenbergModel {
 public:
  using Element = std::vector<int>;  // (a_1..a_g, b_1..b_g), each block of length rank(A)

  HeisenbergModel(FiniteAbelian a, int genus, std::size_t limit = kDefaultGroupLimit) : a_(std::move(a)), g_(genus) {
    validate(a_);
    if (genus < 1) throw DomainError("genus must be at least 1 for a Heisenberg model");
    dim_ = 1;
    for (int i = 0; i < g_; ++i) dim_ *= a_.size();
    if (dim_ > limit / dim_ || dim_ * dim_ > limit)
      throw ResourceError("|A|^(2g) = " + std::to_string(a_.size()) + "^" + std::to_string(2 * g_) +
                          " exceeds the size guard " + std::to_string(limit));
    for (int blk = 0; blk < 2 * g_; ++blk)
      for (int n : a_.orders) korders_.push_back(n);
    vorders_.assign(korders_.begin(), korders_.begin() + static_cast<std::ptrdiff_t>(korders_.size() / 2));
    int e = 1;
    for (std::size_t i = 0; i < a_.rank(); ++i)
      for (std::size_t j = 0; j < a_.rank(); ++j)
        e = std::lcm(e, static_cast<int>(denominator(a_.beta(i, j))));
    field_ = e * a_.exponent();
    const std::size_t r = a_.rank();
    beta_units_.assign(r * r, 0);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) beta_units_[i * r + j] = to_int64(frac(a_.beta(i, j)) * field_);
  }

  const FiniteAbelian& base() const { return a_; }
  int genus() const { return g_; }
  /// |A|^g, the dimension of the representation.
  std::size_t dim() const { return dim_; }
  std::size_t group_order() const { return dim_ * dim_; }
  std::size_t coords() const { return korders_.size(); }
  const std::vector<int>& orders() const { return korders_; }
  /// Every phase that occurs, including lift phases, lives in Q(zeta_field).
  int field_order() const { return field_; }

  Element element(std::size_t idx) const { return detail::unrank(idx, korders_); }
  std::size_t index(const Element& v) const {
    if (v.size() != korders_.size())
      throw DomainError("element has " + std::to_string(v.size()) + " coordinates, expected " + std::to_string(korders_.size()));
    return detail::rank_of(v, korders_);
  }
  Element add(const Element& v, const Element& w) const {
    Element s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) s[i] = (v[i] + w[i]) % korders_[i];
    return s;
  }
  Element scale(long long k, const Element& v) const {
    Element s(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
      long long x = (k % korders_[i]) * v[i] % korders_[i];
      s[i] = static_cast<int>(x < 0 ? x + korders_[i] : x);
    }
    return s;
  }
  Element zero() const { return Element(korders_.size(), 0); }
  Element unit(std::size_t coord) const {
    Element e = zero();
    e[coord] = 1;
    return e;
  }

  /// chi_b(x) as a phase; b and x point at g consecutive blocks.
  Rational chi(const int* b, const int* x) const { return Rational(chi_units(b, x), field_); }
  Rational cocycle(const Element& v, const Element& w) const { return Rational(cocycle_units(v, w), field_); }
  /// Phase of the commutator U(v) U(w) U(v)^-1 U(w)^-1.
  Rational commutator(const Element& v, const Element& w) const { return Rational(commutator_units(v, w), field_); }

  // The same phases as integers modulo field_order().
  std::int64_t chi_units(const int* b, const int* x) const {
    const std::size_t r = a_.rank(), n = r * static_cast<std::size_t>(g_);
    std::int64_t s = 0;
    for (std::size_t p = 0; p < n; ++p) {
      if (b[p] == 0) continue;
      const std::size_t i = p % r, base = p - i;
      for (std::size_t j = 0; j < r; ++j) s += beta_units_[i * r + j] * b[p] * x[base + j];
    }
    return s % field_;
  }
  std::int64_t cocycle_units(const Element& v, const Element& w) const { return chi_units(bpart(w), apart(v)); }
  std::int64_t commutator_units(const Element& v, const Element& w) const {
    return ((cocycle_units(v, w) - cocycle_units(w, v)) % field_ + field_) % field_;
  }
  /// Exact conversion of a phase to units; throws DomainError when it is not a multiple of 1/field_order().
  std::int64_t units_of(const Rational& phase) const {
    const Rational k = frac(phase) * field_;
    if (!is_integer(k)) throw DomainError("phase " + phase.str() + " is not a multiple of 1/" + std::to_string(field_));
    return to_int64(k);
  }

  /// Action of U(v) on the delta basis of functions on A^g.
  Monomial action(const Element& v) const {
    Monomial m;
    m.perm.resize(dim_);
    m.phase.resize(dim_);
    const std::size_t half = korders_.size() / 2;
    std::vector<int> a(v.begin(), v.begin() + static_cast<std::ptrdiff_t>(half));
    for (std::size_t y = 0; y < dim_; ++y) {
      // U e_y = chi_b(y - a) e_{y - a}
      auto x = detail::unrank(y, vorders_);
      for (std::size_t i = 0; i < half; ++i) x[i] = ((x[i] - a[i]) % vorders_[i] + vorders_[i]) % vorders_[i];
      m.perm[y] = detail::rank_of(x, vorders_);
      m.phase[y] = chi(bpart(v), x.data());
    }
    return m;
  }

  /// ((t, v) f)(x) = exp(2 pi i t) chi_b(x) f(x + a), evaluated directly on a function table.
  std::vector<Cyclotomic> act(const Rational& t, const Element& v, const std::vector<Cyclotomic>& f) const {
    if (f.size() != dim_) throw DomainError("function table has the wrong size");
    const std::size_t half = korders_.size() / 2;
    std::vector<Cyclotomic> out(dim_);
    for (std::size_t y = 0; y < dim_; ++y) {
      auto x = detail::unrank(y, vorders_);
      auto xa = x;
      for (std::size_t i = 0; i < half; ++i) xa[i] = (x[i] + v[i]) % vorders_[i];
      out[y] = Cyclotomic::root_of_unity(field_, frac(t + chi(bpart(v), x.data()))) * f[detail::rank_of(xa, vorders_)];
    }
    return out;
  }

 private:
  const int* apart(const Element& v) const { return v.data(); }
  const int* bpart(const Element& v) const { return v.data() + korders_.size() / 2; }

  FiniteAbelian a_;
  int g_;
  std::size_t dim_ = 1;
  int field_ = 1;
  std::vector<int> korders_, vorders_;
  std::vector<std::int64_t> beta_units_;
};

/// Subgroup of K generated by a list of elements.
struct Subgroup {
  std::vector<std::size_t> elements;  // indices into K, 0 first
  std::vector<char> member;
  std::size_t size() const { return elements.size(); }
  bool contains(std::size_t idx) const { return member[idx] != 0; }
};

inline Subgroup span(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens) {
  Subgroup h;
  h.member.assign(m.group_order(), 0);
  const std::size_t z = m.index(m.zero());
  h.member[z] = 1;
  h.elements.push_back(z);
  for (std::size_t i = 0; i < h.elements.size(); ++i) {
    const auto v = m.element(h.elements[i]);
    for (const auto& s : gens) {
      const std::size_t w = m.index(m.add(v, s));
      if (!h.member[w]) {
        h.member[w] = 1;
        h.elements.push_back(w);
      }
    }
  }
  return h;
}

inline bool is_isotropic(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (m.commutator_units(gens[i], gens[j]) != 0) return false;
  return true;
}

/// Phase of the lifted element exp(2 pi i t(v)) U(v) for every v in the span.
/// The lift must satisfy t(v + w) = t(v) + t(w) + c(v, w).
struct LiftTable {
  Subgroup subgroup;
  std::vector<std::int64_t> units;  // phases in units of 1/field_order(), indexed like K
  std::vector<Rational> phase;      // the same as rationals; meaningful on members only
};

inline LiftTable extend_lift(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens,
                             const std::vector<Rational>& phases) {
  if (phases.size() != gens.size())
    throw DomainError("lift needs one phase per generator, got " + std::to_string(phases.size()) + " for " +
                      std::to_string(gens.size()));
  if (!is_isotropic(m, gens)) throw DomainError("subgroup is not isotropic");
  const std::int64_t n = m.field_order();
  std::vector<std::int64_t> gen_units;
  for (const auto& p : phases) gen_units.push_back(m.units_of(p));
  LiftTable t;
  t.subgroup = span(m, gens);
  t.units.assign(m.group_order(), 0);
  std::vector<char> set(m.group_order(), 0);
  set[t.subgroup.elements[0]] = 1;
  for (std::size_t i = 0; i < t.subgroup.size(); ++i) {
    const std::size_t hv = t.subgroup.elements[i];
    const auto v = m.element(hv);
    for (std::size_t k = 0; k < gens.size(); ++k) {
      const std::size_t w = m.index(m.add(v, gens[k]));
      const std::int64_t value = (t.units[hv] + gen_units[k] + m.cocycle_units(v, gens[k])) % n;
      if (!set[w]) {
        set[w] = 1;
        t.units[w] = value;
      } else if (t.units[w] != value) {
        throw DomainError("lift phases do not define a homomorphism");
      }
    }
  }
  // full check on all pairs
  for (std::size_t x : t.subgroup.elements) {
    const auto v = m.element(x);
    for (std::size_t y : t.subgroup.elements) {
      const auto w = m.element(y);
      if (t.units[m.index(m.add(v, w))] != (t.units[x] + t.units[y] + m.cocycle_units(v, w)) % n)
        throw DomainError("lift phases do not define a homomorphism");
    }
  }
  t.phase.assign(m.group_order(), Rational(0));
  for (std::size_t x : t.subgroup.elements) t.phase[x] = Rational(t.units[x], n);
  return t;
}

namespace detail {

// Order of v modulo the subgroup h.
inline long long relative_order(const HeisenbergModel& m, const Subgroup& h, const HeisenbergModel::Element& v) {
  long long d = 1;
  auto w = v;
  while (!h.contains(m.index(w))) {
    w = m.add(w, v);
    ++d;
  }
  return d;
}

// Solves for the admissible phases of the next generator given a lift on the
// span of the previous ones: d t(v) = t(d v) - sum_{j<d} c(j v, v).
inline std::vector<Rational> next_phases(const HeisenbergModel& m, const LiftTable& t, const HeisenbergModel::Element& v) {
  const long long d = relative_order(m, t.subgroup, v);
  Rational known = t.phase[m.index(m.scale(d, v))];
  auto jv = v;
  for (long long j = 1; j < d; ++j) {
    known -= m.cocycle(jv, v);
    jv = m.add(jv, v);
  }
  std::vector<Rational> out;
  for (long long r = 0; r < d; ++r) out.push_back(frac((known + r) / d));
  return out;
}

inline void enumerate_from(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens,
                           std::vector<Rational>& chosen, std::vector<std::vector<Rational>>& out) {
  const std::size_t k = chosen.size();
  if (k == gens.size()) {
    out.push_back(chosen);
    return;
  }
  const std::vector<HeisenbergModel::Element> prefix(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(k));
  const LiftTable t = extend_lift(m, prefix, chosen);
  for (const auto& p : next_phases(m, t, gens[k])) {
    chosen.push_back(p);
    enumerate_from(m, gens, chosen, out);
    chosen.pop_back();
  }
}

}  // namespace detail

/// Every lift of the isotropic subgroup generated by gens, as generator phases.
/// Two lifts differ by a character of the subgroup, so there are |L| of them.
inline std::vector<std::vector<Rational>> enumerate_lifts(const HeisenbergModel& m,
                                                          const std::vector<HeisenbergModel::Element>& gens) {
  if (!is_isotropic(m, gens)) throw DomainError("subgroup is not isotropic");
  std::vector<std::vector<Rational>> out;
  std::vector<Rational> chosen;
  detail::enumerate_from(m, gens, chosen, out);
  return out;
}

/// One lift chosen uniformly among all of them.
template <class Rng>
std::vector<Rational> random_lift(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens, Rng& rng) {
  if (!is_isotropic(m, gens)) throw DomainError("subgroup is not isotropic");
  std::vector<Rational> chosen;
  for (std::size_t k = 0; k < gens.size(); ++k) {
    const std::vector<HeisenbergModel::Element> prefix(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(k));
    const auto options = detail::next_phases(m, extend_lift(m, prefix, chosen), gens[k]);
    std::uniform_int_distribution<std::size_t> pick(0, options.size() - 1);
    chosen.push_back(options[pick(rng)]);
  }
  return chosen;
}

/// Grows a random isotropic subgroup one element of its orthogonal at a time
/// until it has order |A|^g.
template <class Rng>
std::vector<HeisenbergModel::Element> random_maximal_isotropic(const HeisenbergModel& m, Rng& rng) {
  std::vector<HeisenbergModel::Element> gens;
  Subgroup l = span(m, gens);
  while (l.size() < m.dim()) {
    std::vector<std::size_t> candidates;
    for (std::size_t i = 0; i < m.group_order(); ++i) {
      if (l.contains(i)) continue;
      const auto w = m.element(i);
      bool ok = true;
      for (const auto& s : gens)
        if (ok && m.commutator_units(s, w) != 0) ok = false;
      if (ok) candidates.push_back(i);
    }
    if (candidates.empty()) throw VerificationError("isotropic subgroup of order " + std::to_string(l.size()) + " cannot be enlarged");
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    gens.push_back(m.element(candidates[pick(rng)]));
    l = span(m, gens);
  }
  return gens;
}

namespace detail {

// Group ring Z[C_n] element stored sparsely as (exponent, count).
using RingTerms = std::vector<std::pair<int, std::int64_t>>;

// Coefficients modulo the n-th cyclotomic polynomial; zero vector iff the element vanishes in Q(zeta_n).
inline std::vector<std::int64_t> reduce_ring(std::vector<std::int64_t> dense, int n) {
  const auto& phi = cyclotomic_polynomial(n);
  const std::size_t d = phi.size() - 1;
  for (std::size_t i = dense.size(); i-- > d;) {
    const std::int64_t c = dense[i];
    if (c == 0) continue;
    for (std::size_t j = 0; j <= d; ++j)
      if (phi[j] != 0) dense[i - d + j] -= c * static_cast<std::int64_t>(phi[j]);
  }
  dense.resize(d);
  return dense;
}

inline int exponent_of(const Rational& phase, int n) {
  const Rational k = frac(phase) * n;
  if (!is_integer(k)) throw VerificationError("phase " + phase.str() + " is not an n-th root of unity, n = " + std::to_string(n));
  return static_cast<int>(to_int64(k));
}

}  // namespace detail

struct InvariantReport {
  std::size_t dimension = 0;
  std::size_t subgroup_order = 0;
  Rational trace;     // trace of the averaging projector
  bool idempotent = false;
  int field_order = 1;
};

/// Dimension of the subspace fixed by the lifted subgroup, computed as the
/// trace of P = (1/|L|) sum_v exp(2 pi i t(v)) U(v).  P^2 = P is verified
/// exactly in Q(zeta_n).
inline InvariantReport invariant_report(const HeisenbergModel& m, const std::vector<HeisenbergModel::Element>& gens,
                                        const std::vector<Rational>& phases, bool require_maximal = true) {
  const LiftTable lift = extend_lift(m, gens, phases);
  const std::size_t order = lift.subgroup.size();
  if (require_maximal && order != m.dim())
    throw DomainError("isotropic subgroup has order " + std::to_string(order) + ", maximal ones have order " +
                      std::to_string(m.dim()));
  const int n = m.field_order();
  const std::size_t dim = m.dim();

  // T = |L| P as a matrix over Z[C_n]
  std::vector<detail::RingTerms> t(dim * dim);
  for (std::size_t idx : lift.subgroup.elements) {
    const auto mono = m.action(m.element(idx));
    for (std::size_t y = 0; y < dim; ++y) {
      const int e = detail::exponent_of(lift.phase[idx] + mono.phase[y], n);
      auto& cell = t[mono.perm[y] * dim + y];
      auto it = std::find_if(cell.begin(), cell.end(), [&](const auto& p) { return p.first == e; });
      if (it == cell.end()) cell.emplace_back(e, 1);
      else ++it->second;
    }
  }

  InvariantReport rep;
  rep.subgroup_order = order;
  rep.field_order = n;

  std::vector<std::int64_t> tr(static_cast<std::size_t>(n), 0);
  for (std::size_t y = 0; y < dim; ++y)
    for (const auto& [e, c] : t[y * dim + y]) tr[static_cast<std::size_t>(e)] += c;
  const auto red = detail::reduce_ring(tr, n);
  for (std::size_t i = 1; i < red.size(); ++i)
    if (red[i] != 0) throw VerificationError("projector trace is not rational");
  rep.trace = Rational(red[0], static_cast<std::int64_t>(order));
  if (!is_integer(rep.trace) || rep.trace < 0)
    throw VerificationError("projector trace " + rep.trace.str() + " is not a non-negative integer");
  rep.dimension = static_cast<std::size_t>(to_int64(rep.trace));

  // T^2 = |L| T
  std::vector<std::vector<std::size_t>> nz_row(dim);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k)
      if (!t[i * dim + k].empty()) nz_row[i].push_back(k);
  rep.idempotent = true;
  std::vector<std::int64_t> acc(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < dim && rep.idempotent; ++i)
    for (std::size_t j = 0; j < dim && rep.idempotent; ++j) {
      std::fill(acc.begin(), acc.end(), 0);
      for (std::size_t k : nz_row[i])
        for (const auto& [e1, c1] : t[i * dim + k])
          for (const auto& [e2, c2] : t[k * dim + j]) acc[static_cast<std::size_t>((e1 + e2) % n)] += c1 * c2;
      for (const auto& [e, c] : t[i * dim + j]) acc[static_cast<std::size_t>(e)] -= static_cast<std::int64_t>(order) * c;
      for (auto v : detail::reduce_ring(acc, n))
        if (v != 0) {
          rep.idempotent = false;
          break;
        }
    }
  if (!rep.idempotent) throw VerificationError("averaging operator is not idempotent");
  return rep;
}

inline std::size_t invariant_dim(const FiniteAbelian& a, int genus, const std::vector<HeisenbergModel::Element>& gens,
                                 const std::vector<Rational>& phases) {
  return invariant_report(HeisenbergModel(a, genus), gens, phases).dimension;
}

// ---------------------------------------------------------------------------
// Intertwiners and the duality map

/// Dense matrix of a monomial operator over Q(zeta_n).
inline CyclotomicMatrix to_matrix(const Monomial& r, int n) {
  const std::size_t d = r.perm.size();
  CyclotomicMatrix out(d, std::vector<Cyclotomic>(d, Cyclotomic(n)));
  for (std::size_t j = 0; j < d; ++j) out[r.perm[j]][j] = Cyclotomic::root_of_unity(n, r.phase[j]);
  return out;
}

/// Contragredient R^{-T}: same permutation, conjugate phases.
inline Monomial contragredient(Monomial r) {
  for (auto& p : r.phase) p = frac(-p);
  return r;
}

namespace detail {

// (R M)[perm j][*] = zeta^phase_j M[j][*]
inline CyclotomicMatrix left_apply(const Monomial& r, const CyclotomicMatrix& m, int n) {
  CyclotomicMatrix out(m.size(), std::vector<Cyclotomic>(m.empty() ? 0 : m[0].size(), Cyclotomic(n)));
  for (std::size_t j = 0; j < m.size(); ++j) {
    const Cyclotomic z = Cyclotomic::root_of_unity(n, r.phase[j]);
    for (std::size_t c = 0; c < m[j].size(); ++c)
      if (!m[j][c].is_zero()) out[r.perm[j]][c] = z * m[j][c];
  }
  return out;
}

// (M R)[*][j] = M[*][perm j] zeta^phase_j
inline CyclotomicMatrix right_apply(const CyclotomicMatrix& m, const Monomial& r, int n) {
  CyclotomicMatrix out(m.size(), std::vector<Cyclotomic>(r.perm.size(), Cyclotomic(n)));
  for (std::size_t j = 0; j < r.perm.size(); ++j) {
    const Cyclotomic z = Cyclotomic::root_of_unity(n, r.phase[j]);
    for (std::size_t i = 0; i < m.size(); ++i)
      if (!m[i][r.perm[j]].is_zero()) out[i][j] = m[i][r.perm[j]] * z;
  }
  return out;
}

}  // namespace detail

/// True iff map * from[s] == to[s] * map for every generator s.
inline bool equivariance_check(const CyclotomicMatrix& map, const std::vector<Monomial>& from, const std::vector<Monomial>& to,
                               int n) {
  if (from.size() != to.size()) return false;
  for (std::size_t s = 0; s < from.size(); ++s) {
    if (map.size() != to[s].perm.size()) return false;
    for (const auto& row : map)
      if (row.size() != from[s].perm.size()) return false;
    if (detail::right_apply(map, from[s], n) != detail::left_apply(to[s], map, n)) return false;
  }
  return true;
}

/// Basis of {T : T X(s) = Y(s) T for all s}, by propagating matrix units
/// along T[piY i][piX j] = zeta^(py_i - px_j) T[i][j].  Orbits that come back
/// with a different phase are forced to vanish.
inline std::vector<CyclotomicMatrix> intertwiners(const std::vector<Monomial>& x, const std::vector<Monomial>& y, int n) {
  if (x.empty() || x.size() != y.size()) throw DomainError("intertwiner needs matching generator lists");
  const std::size_t cols = x[0].perm.size(), rows = y[0].perm.size();
  std::vector<int> expo(rows * cols, -1);
  std::vector<CyclotomicMatrix> basis;
  std::vector<std::size_t> orbit;
  for (std::size_t seed = 0; seed < rows * cols; ++seed) {
    if (expo[seed] >= 0) continue;
    orbit.assign(1, seed);
    expo[seed] = 0;
    bool live = true;
    for (std::size_t q = 0; q < orbit.size(); ++q) {
      const std::size_t i = orbit[q] / cols, j = orbit[q] % cols;
      for (std::size_t s = 0; s < x.size(); ++s) {
        const std::size_t cell = y[s].perm[i] * cols + x[s].perm[j];
        const int e = ((expo[orbit[q]] + detail::exponent_of(y[s].phase[i] - x[s].phase[j], n)) % n + n) % n;
        if (expo[cell] < 0) {
          expo[cell] = e;
          orbit.push_back(cell);
        } else if (expo[cell] != e) {
          live = false;
        }
      }
    }
    if (!live) continue;
    CyclotomicMatrix t(rows, std::vector<Cyclotomic>(cols, Cyclotomic(n)));
    for (std::size_t c : orbit) t[c / cols][c % cols] = Cyclotomic::zeta(n, expo[c]);
    basis.push_back(std::move(t));
  }
  return basis;
}

/// Isomorphism iota: A -> B, column-free: images[i] = iota(e_i) in coordinates of B.
struct GroupMap {
  std::vector<std::vector<int>> images;
};

/// Lifted anti-diagonal data: phi(a, b) = (iota a, b~) with beta_B(b~, iota x) = -beta_A(b, x),
/// so that the cocycle of B pulled back along phi is the inverse of the one of A.
class DualityModel {
 public:
  DualityModel(FiniteAbelian a, FiniteAbelian b, GroupMap iota, int genus, std::size_t limit = kDefaultGroupLimit)
      : ka_(std::move(a), genus, limit), kb_(std::move(b), genus, limit), iota_(std::move(iota)) {
    const auto& A = ka_.base();
    const auto& B = kb_.base();
    if (A.size() != B.size()) throw DomainError("A and B have different orders");
    if (iota_.images.size() != A.rank()) throw DomainError("iota needs one image per cyclic factor of A");
    for (std::size_t i = 0; i < A.rank(); ++i) {
      if (iota_.images[i].size() != B.rank()) throw DomainError("iota image has the wrong number of coordinates");
      for (std::size_t j = 0; j < B.rank(); ++j)
        if ((static_cast<long long>(iota_.images[i][j]) * A.orders[i]) % B.orders[j] != 0)
          throw DomainError("iota is not a homomorphism");
    }
    iota_table_.resize(A.size());
    std::vector<char> hit(B.size(), 0);
    for (std::size_t x = 0; x < A.size(); ++x) {
      iota_table_[x] = detail::rank_of(map_a(detail::unrank(x, A.orders)), B.orders);
      if (hit[iota_table_[x]]++) throw DomainError("iota is not injective");
    }
    // b -> b~ by search over B
    dual_table_.resize(A.size());
    for (std::size_t b = 0; b < A.size(); ++b) {
      const auto bv = detail::unrank(b, A.orders);
      bool found = false;
      for (std::size_t c = 0; c < B.size() && !found; ++c) {
        const auto cv = detail::unrank(c, B.orders);
        bool ok = true;
        for (std::size_t i = 0; i < A.rank() && ok; ++i) {
          std::vector<int> e(A.rank(), 0);
          e[i] = 1;
          const auto ie = map_a(e);
          ok = frac(B.pair(cv.data(), ie.data()) + A.pair(bv.data(), e.data())) == 0;
        }
        if (ok) {
          dual_table_[b] = c;
          found = true;
        }
      }
      if (!found) throw DomainError("no character of B matches the inverted pairing");
    }
    field_ = std::lcm(ka_.field_order(), kb_.field_order());
  }

  const HeisenbergModel& a() const { return ka_; }
  const HeisenbergModel& b() const { return kb_; }
  int field_order() const { return field_; }

  HeisenbergModel::Element phi(const HeisenbergModel::Element& v) const {
    const auto& A = ka_.base();
    const auto& B = kb_.base();
    const std::size_t ra = A.rank(), rb = B.rank();
    const int g = ka_.genus();
    HeisenbergModel::Element w(static_cast<std::size_t>(2 * g) * rb);
    for (int k = 0; k < g; ++k) {
      std::vector<int> a(v.begin() + static_cast<std::ptrdiff_t>(k * ra), v.begin() + static_cast<std::ptrdiff_t>((k + 1) * ra));
      std::vector<int> b(v.begin() + static_cast<std::ptrdiff_t>((g + k) * ra),
                         v.begin() + static_cast<std::ptrdiff_t>((g + k + 1) * ra));
      const auto ia = detail::unrank(iota_table_[detail::rank_of(a, A.orders)], B.orders);
      const auto tb = detail::unrank(dual_table_[detail::rank_of(b, A.orders)], B.orders);
      std::copy(ia.begin(), ia.end(), w.begin() + static_cast<std::ptrdiff_t>(k * rb));
      std::copy(tb.begin(), tb.end(), w.begin() + static_cast<std::ptrdiff_t>((g + k) * rb));
    }
    return w;
  }

  /// Generators s of K_A acting on V_A^* (contragredient) and on V_B through phi.
  std::vector<Monomial> dual_a_action() const {
    std::vector<Monomial> out;
    for (std::size_t c = 0; c < ka_.coords(); ++c) out.push_back(contragredient(ka_.action(ka_.unit(c))));
    return out;
  }
  std::vector<Monomial> b_action() const {
    std::vector<Monomial> out;
    for (std::size_t c = 0; c < ka_.coords(); ++c) out.push_back(kb_.action(phi(ka_.unit(c))));
    return out;
  }

 private:
  std::vector<int> map_a(const std::vector<int>& x) const {
    const auto& B = kb_.base();
    std::vector<int> y(B.rank(), 0);
    for (std::size_t i = 0; i < x.size(); ++i)
      for (std::size_t j = 0; j < B.rank(); ++j)
        y[j] = static_cast<int>((y[j] + static_cast<long long>(x[i]) * iota_.images[i][j]) % B.orders[j]);
    return y;
  }

  HeisenbergModel ka_, kb_;
  GroupMap iota_;
  std::vector<std::size_t> iota_table_, dual_table_;
  int field_ = 1;
};

struct SchurRankReport {
  std::size_t dim_a = 0, dim_b = 0;
  std::size_t invariant_tensors = 0;  // dimension of the space of invariant sigma
  std::size_t rank = 0;
  std::size_t expected_rank = 0;
  bool equivariant = false;
  bool schur_scalar = false;  // N * sigma is scalar for the reverse intertwiner N
  bool schur_nonzero = false;
  int field_order = 1;
  bool ok() const { return equivariant && schur_scalar && rank == expected_rank && (rank == 0) == !schur_nonzero; }
};

/// Rank of the map V_A^* -> V_B induced by an invariant tensor sigma in V_A (x) V_B
/// (sigma[i][j] is the coefficient of e_i (x) e_j).  Without sigma the unique
/// invariant tensor is constructed.
inline SchurRankReport strange_duality_map(const DualityModel& d, const std::optional<CyclotomicMatrix>& sigma = std::nullopt) {
  const int n = d.field_order();
  const auto x = d.dual_a_action();
  const auto y = d.b_action();
  SchurRankReport rep;
  rep.dim_a = d.a().dim();
  rep.dim_b = d.b().dim();
  rep.field_order = n;

  const auto forward = intertwiners(x, y, n);
  rep.invariant_tensors = forward.size();
  CyclotomicMatrix map;
  if (sigma) {
    if (sigma->size() != rep.dim_a) throw DomainError("sigma has the wrong number of rows");
    map.assign(rep.dim_b, std::vector<Cyclotomic>(rep.dim_a, Cyclotomic(n)));
    for (std::size_t i = 0; i < rep.dim_a; ++i) {
      if ((*sigma)[i].size() != rep.dim_b) throw DomainError("sigma has the wrong number of columns");
      for (std::size_t j = 0; j < rep.dim_b; ++j) map[j][i] = (*sigma)[i][j];
    }
    if (!equivariance_check(map, x, y, n)) throw DomainError("sigma is not invariant under the anti-diagonal action");
  } else {
    if (forward.size() != 1)
      throw VerificationError("expected a unique invariant tensor, found " + std::to_string(forward.size()));
    map = forward[0];
  }
  rep.equivariant = equivariance_check(map, x, y, n);
  rep.rank = rank(map);

  bool nonzero = false;
  for (const auto& row : map)
    for (const auto& v : row) nonzero = nonzero || !v.is_zero();
  rep.expected_rank = nonzero ? rep.dim_a : 0;

  // reverse direction, computed on its own
  const auto backward = intertwiners(y, x, n);
  if (backward.size() != 1)
    throw VerificationError("expected a unique reverse intertwiner, found " + std::to_string(backward.size()));
  const auto& nb = backward[0];
  CyclotomicMatrix prod(rep.dim_a, std::vector<Cyclotomic>(rep.dim_a, Cyclotomic(n)));
  for (std::size_t i = 0; i < rep.dim_a; ++i)
    for (std::size_t k = 0; k < rep.dim_b; ++k) {
      if (nb[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < rep.dim_a; ++j)
        if (!map[k][j].is_zero()) prod[i][j] += nb[i][k] * map[k][j];
    }
  rep.schur_scalar = true;
  for (std::size_t i = 0; i < rep.dim_a; ++i)
    for (std::size_t j = 0; j < rep.dim_a; ++j)
      if (i == j ? !(prod[i][j] == prod[0][0]) : !prod[i][j].is_zero()) rep.schur_scalar = false;
  rep.schur_nonzero = !prod[0][0].is_zero();
  return rep;
}

}  // namespace sdual
