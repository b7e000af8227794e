#pragma once

// Simple and semisimple root systems in Bourbaki numbering, with the invariant
// form normalized so that long roots (in particular the highest root) have
// squared length 2.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <deque>
#include <numeric>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "sdual/error.hpp"
#include "sdual/rational.hpp"
#include "sdual/weight.hpp"

namespace sdual {

struct SimpleType {
  char series = 'A';
  int rank = 1;

  std::string str() const { return std::string(1, series) + std::to_string(rank); }
  friend bool operator==(const SimpleType&, const SimpleType&) = default;
};

inline void validate(const SimpleType& t) {
  const auto bad = [&](const char* why) {
    throw DomainError("invalid simple type " + t.str() + ": " + why);
  };
  if (t.rank < 1) bad("rank must be positive");
  switch (t.series) {
    case 'A': break;
    case 'B': if (t.rank < 2) bad("B needs rank >= 2"); break;
    case 'C': if (t.rank < 2) bad("C needs rank >= 2"); break;
    case 'D': if (t.rank < 3) bad("D needs rank >= 3"); break;
    case 'E': if (t.rank < 6 || t.rank > 8) bad("E exists only in ranks 6, 7, 8"); break;
    case 'F': if (t.rank != 4) bad("F exists only in rank 4"); break;
    case 'G': if (t.rank != 2) bad("G exists only in rank 2"); break;
    default: bad("unknown series");
  }
}

/// A list of simple components; "A4+A4", "E8", "A2+E6".
struct LieType {
  std::vector<SimpleType> components;

  int rank() const {
    int r = 0;
    for (const auto& c : components) r += c.rank;
    return r;
  }
  bool is_simple() const { return components.size() == 1; }

  std::string str() const {
    std::string s;
    for (std::size_t i = 0; i < components.size(); ++i) s += (i ? "+" : "") + components[i].str();
    return s;
  }

  static LieType parse(const std::string& text) {
    LieType t;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t next = text.find('+', pos);
      if (next == std::string::npos) next = text.size();
      std::string part = text.substr(pos, next - pos);
      part.erase(std::remove_if(part.begin(), part.end(), [](unsigned char c) { return std::isspace(c); }),
                 part.end());
      if (part.size() < 2 || !std::isalpha(static_cast<unsigned char>(part[0])))
        throw DomainError("cannot parse Lie type '" + text + "'");
      SimpleType st;
      st.series = static_cast<char>(std::toupper(static_cast<unsigned char>(part[0])));
      try {
        std::size_t used = 0;
        st.rank = std::stoi(part.substr(1), &used);
        if (used != part.size() - 1) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        throw DomainError("cannot parse Lie type '" + text + "'");
      }
      validate(st);
      t.components.push_back(st);
      pos = next + 1;
    }
    if (t.components.empty()) throw DomainError("empty Lie type");
    return t;
  }

  friend bool operator==(const LieType&, const LieType&) = default;
};

namespace detail {

// Gram matrix of simple roots before normalization; entries are exact.
inline RationalMatrix raw_simple_gram(const SimpleType& t) {
  const int n = t.rank;
  RationalMatrix b(n, std::vector<Rational>(n, Rational(0)));
  auto link = [&](int i, int j, Rational v) { b[i][j] = b[j][i] = v; };
  switch (t.series) {
    case 'A':
      for (int i = 0; i < n; ++i) b[i][i] = 2;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'B':
      for (int i = 0; i < n; ++i) b[i][i] = 2;
      b[n - 1][n - 1] = 1;
      for (int i = 0; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'C':
      for (int i = 0; i < n; ++i) b[i][i] = 2;
      b[n - 1][n - 1] = 4;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 2, n - 1, -2);
      break;
    case 'D':
      for (int i = 0; i < n; ++i) b[i][i] = 2;
      for (int i = 0; i + 2 < n; ++i) link(i, i + 1, -1);
      link(n - 3, n - 1, -1);
      break;
    case 'E':
      for (int i = 0; i < n; ++i) b[i][i] = 2;
      link(0, 2, -1);
      link(1, 3, -1);
      for (int i = 2; i + 1 < n; ++i) link(i, i + 1, -1);
      break;
    case 'F':
      b[0][0] = b[1][1] = 2;
      b[2][2] = b[3][3] = 1;
      link(0, 1, -1);
      link(1, 2, -1);
      link(2, 3, Rational(-1, 2));
      break;
    case 'G':
      b[0][0] = 2;
      b[1][1] = 6;
      link(0, 1, -3);
      break;
  }
  // long roots get squared length 2
  Rational longest = 0;
  for (int i = 0; i < n; ++i) longest = std::max(longest, b[i][i]);
  const Rational scale = Rational(2) / longest;
  for (auto& row : b)
    for (auto& v : row) v *= scale;
  return b;
}

}  // namespace detail

/// Per-component scalar data of a root system.
struct Component {
  SimpleType type;
  int offset = 0;  ///< index of the component's first node in concatenated labels
  int dimension = 0;
  int dual_coxeter = 0;
  int coxeter = 0;
  std::vector<int> marks;    ///< highest root in simple-root coordinates
  std::vector<int> comarks;  ///< highest coroot in simple-coroot coordinates
  Weight theta;              ///< highest root, concatenated labels

  friend bool operator==(const Component&, const Component&) = default;
};

class RootSystem;
RootSystem build(const LieType& type);

/// Cartan data, normalized invariant form, positive roots, rho, theta and
/// dual Coxeter numbers. Immutable once built.
class RootSystem {
 public:
  RootSystem() = default;

  const LieType& type() const { return type_; }
  int rank() const { return static_cast<int>(cartan_.size()); }
  bool is_simple() const { return components_.size() == 1; }

  /// cartan()[i][j] = <alpha_i^vee, alpha_j>; column j holds the labels of alpha_j.
  const IntMatrix& cartan() const { return cartan_; }
  /// (alpha_i, alpha_j) for simple roots.
  const RationalMatrix& root_gram() const { return root_gram_; }
  /// (varpi_i, varpi_j) for fundamental weights.
  const RationalMatrix& form() const { return form_; }

  const std::vector<Weight>& positive_roots() const { return positive_roots_; }
  /// Positive roots in simple-root coordinates, parallel to positive_roots().
  const std::vector<std::vector<int>>& positive_root_coords() const { return positive_root_coords_; }
  const std::vector<Component>& components() const { return components_; }

  int dimension() const {
    return rank() + 2 * static_cast<int>(positive_roots_.size());
  }
  Weight rho() const { return Weight(std::vector<int>(rank(), 1)); }
  Weight zero() const { return Weight(static_cast<std::size_t>(rank())); }
  const Weight& theta(std::size_t component = 0) const { return components_.at(component).theta; }

  /// Fundamental weight varpi_node, node counted from 1 across all components.
  Weight fundamental(int node) const {
    check_node(node);
    Weight w = zero();
    w[node - 1] = 1;
    return w;
  }
  /// Labels of the simple root alpha_node.
  Weight simple_root(int node) const {
    check_node(node);
    Weight w = zero();
    for (int i = 0; i < rank(); ++i) w[i] = cartan_[i][node - 1];
    return w;
  }

  /// Index of the component owning the 0-based label index.
  std::size_t component_of(int index) const {
    for (std::size_t c = 0; c < components_.size(); ++c) {
      const auto& comp = components_[c];
      if (index >= comp.offset && index < comp.offset + comp.type.rank) return c;
    }
    throw DomainError("label index out of range");
  }

  /// Labels belonging to one component.
  Weight slice(const Weight& w, std::size_t component) const {
    check_weight(w);
    const auto& comp = components_.at(component);
    return Weight(std::vector<int>(w.labels.begin() + comp.offset,
                                   w.labels.begin() + comp.offset + comp.type.rank));
  }

  /// The simple root system of one component.
  RootSystem component_system(std::size_t component) const {
    return build(LieType{{components_.at(component).type}});
  }

  /// Common denominator D of the weight form; scaled_form() = D * form().
  std::int64_t form_scale() const { return form_scale_; }
  const std::vector<std::vector<std::int64_t>>& scaled_form() const { return scaled_form_; }

  /// D * (a, b) as an exact integer.
  std::int64_t scaled_inner(const Weight& a, const Weight& b) const {
    const int n = rank();
    std::int64_t s = 0;
    for (int i = 0; i < n; ++i) {
      if (a.labels[i] == 0) continue;
      std::int64_t row = 0;
      const auto& f = scaled_form_[i];
      for (int j = 0; j < n; ++j) row += f[j] * b.labels[j];
      s += row * a.labels[i];
    }
    return s;
  }

  void check_weight(const Weight& w) const {
    if (static_cast<int>(w.size()) != rank())
      throw DomainError("weight " + w.str() + " has " + std::to_string(w.size()) +
                        " labels, root system " + type_.str() + " has rank " + std::to_string(rank()));
  }
  void check_node(int node) const {
    if (node < 1 || node > rank())
      throw DomainError("node index " + std::to_string(node) + " out of range 1.." + std::to_string(rank()));
  }

  friend bool operator==(const RootSystem&, const RootSystem&) = default;

 private:
  friend RootSystem build(const LieType& type);
  friend RootSystem assemble(LieType type, IntMatrix cartan, RationalMatrix root_gram,
                             std::vector<std::vector<int>> positive_root_coords,
                             std::vector<Component> components);

  LieType type_;
  IntMatrix cartan_;
  RationalMatrix root_gram_;
  RationalMatrix form_;
  std::vector<Weight> positive_roots_;
  std::vector<std::vector<int>> positive_root_coords_;
  std::vector<Component> components_;
  std::int64_t form_scale_ = 1;
  std::vector<std::vector<std::int64_t>> scaled_form_;
};

/// Exact value of the invariant form on two weights.
inline Rational inner(const RootSystem& rs, const Weight& a, const Weight& b) {
  rs.check_weight(a);
  rs.check_weight(b);
  Rational s = 0;
  const auto& f = rs.form();
  for (int i = 0; i < rs.rank(); ++i)
    for (int j = 0; j < rs.rank(); ++j)
      if (a[i] != 0 && b[j] != 0) s += f[i][j] * a[i] * b[j];
  return s;
}

/// Dual Coxeter numbers, one per component, as (rho, theta) + 1.
inline std::vector<int> dual_coxeter(const RootSystem& rs) {
  std::vector<int> out;
  for (const auto& c : rs.components()) out.push_back(c.dual_coxeter);
  return out;
}

/// Closed-form Weyl group order of a simple type (as an unbounded integer).
inline BigInt weyl_group_order(const SimpleType& t) {
  BigInt fact = 1;
  for (int i = 2; i <= t.rank; ++i) fact *= i;
  switch (t.series) {
    case 'A': return fact * (t.rank + 1);
    case 'B':
    case 'C': return (BigInt(1) << t.rank) * fact;
    case 'D': return (BigInt(1) << (t.rank - 1)) * fact;
    case 'E': return t.rank == 6 ? BigInt(51840) : t.rank == 7 ? BigInt(2903040) : BigInt(696729600);
    case 'F': return 1152;
    case 'G': return 12;
  }
  throw DomainError("unknown series");
}

inline BigInt weyl_group_order(const RootSystem& rs) {
  BigInt o = 1;
  for (const auto& c : rs.components()) o *= weyl_group_order(c.type);
  return o;
}

namespace detail {

// Roots of one simple component by closure under simple reflections, in
// simple-root coordinates. Returns the positive ones sorted by height then
// lexicographically.
inline std::vector<std::vector<int>> positive_roots_by_closure(const IntMatrix& a) {
  const int n = static_cast<int>(a.size());
  std::set<std::vector<int>> seen;
  std::deque<std::vector<int>> queue;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    seen.insert(e);
    queue.push_back(e);
  }
  while (!queue.empty()) {
    auto beta = queue.front();
    queue.pop_front();
    for (int i = 0; i < n; ++i) {
      int pairing = 0;  // <beta, alpha_i^vee>
      for (int k = 0; k < n; ++k) pairing += a[i][k] * beta[k];
      if (pairing == 0) continue;
      auto r = beta;
      r[i] -= pairing;
      if (seen.insert(r).second) queue.push_back(r);
    }
  }
  std::vector<std::vector<int>> pos;
  for (const auto& r : seen)
    if (std::all_of(r.begin(), r.end(), [](int v) { return v >= 0; })) pos.push_back(r);
  std::sort(pos.begin(), pos.end(), [](const auto& x, const auto& y) {
    const int hx = std::accumulate(x.begin(), x.end(), 0), hy = std::accumulate(y.begin(), y.end(), 0);
    return hx != hy ? hx < hy : x < y;
  });
  if (seen.size() != 2 * pos.size()) throw VerificationError("root closure is not symmetric");
  return pos;
}

}  // namespace detail

/// Fill in the derived data (form, labels of roots, scaled form) from the
/// primary data. Shared by build() and the JSON cache loader.
inline RootSystem assemble(LieType type, IntMatrix cartan, RationalMatrix root_gram,
                           std::vector<std::vector<int>> positive_root_coords,
                           std::vector<Component> components) {
  RootSystem rs;
  rs.type_ = std::move(type);
  rs.cartan_ = std::move(cartan);
  rs.root_gram_ = std::move(root_gram);
  rs.positive_root_coords_ = std::move(positive_root_coords);
  rs.components_ = std::move(components);
  const int n = static_cast<int>(rs.cartan_.size());

  // F = D B^{-1} D with D = diag((alpha_i, alpha_i) / 2)
  RationalMatrix binv = invert(rs.root_gram_);
  rs.form_.assign(n, std::vector<Rational>(n, Rational(0)));
  BigInt den = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      rs.form_[i][j] = rs.root_gram_[i][i] / 2 * binv[i][j] * rs.root_gram_[j][j] / 2;
      den = lcm_big(den, boost::multiprecision::denominator(rs.form_[i][j]));
    }
  rs.form_scale_ = den.convert_to<std::int64_t>();
  rs.scaled_form_.assign(n, std::vector<std::int64_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rs.scaled_form_[i][j] = to_int64(rs.form_[i][j] * den);

  rs.positive_roots_.clear();
  for (const auto& c : rs.positive_root_coords_) {
    Weight w(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) w[i] += rs.cartan_[i][k] * c[k];
    rs.positive_roots_.push_back(std::move(w));
  }
  return rs;
}

/// Build the root system of a (semi)simple type.
inline RootSystem build(const LieType& type) {
  if (type.components.empty()) throw DomainError("empty Lie type");
  for (const auto& c : type.components) validate(c);
  const int n = type.rank();
  IntMatrix cartan(n, std::vector<int>(n, 0));
  RationalMatrix gram(n, std::vector<Rational>(n, Rational(0)));
  std::vector<std::vector<int>> pos_coords;
  std::vector<Component> comps;

  int offset = 0;
  for (const auto& st : type.components) {
    const int r = st.rank;
    const RationalMatrix b = detail::raw_simple_gram(st);
    IntMatrix a(r, std::vector<int>(r, 0));
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) {
        a[i][j] = static_cast<int>(to_int64(2 * b[i][j] / b[i][i]));
        cartan[offset + i][offset + j] = a[i][j];
        gram[offset + i][offset + j] = b[i][j];
      }
    const auto pos = detail::positive_roots_by_closure(a);
    for (const auto& c : pos) {
      std::vector<int> full(n, 0);
      std::copy(c.begin(), c.end(), full.begin() + offset);
      pos_coords.push_back(std::move(full));
    }
    Component comp;
    comp.type = st;
    comp.offset = offset;
    comp.dimension = r + 2 * static_cast<int>(pos.size());
    comp.coxeter = 2 * static_cast<int>(pos.size()) / r;
    comp.marks = pos.back();  // highest root has maximal height and is unique
    comp.comarks.resize(r);
    for (int i = 0; i < r; ++i)
      comp.comarks[i] = static_cast<int>(to_int64(comp.marks[i] * b[i][i] / 2));
    comp.theta = Weight(static_cast<std::size_t>(n));
    for (int i = 0; i < r; ++i)
      for (int k = 0; k < r; ++k) comp.theta[offset + i] += a[i][k] * comp.marks[k];
    comps.push_back(std::move(comp));
    offset += r;
  }

  RootSystem rs = assemble(type, std::move(cartan), std::move(gram), std::move(pos_coords), std::move(comps));

  // dual Coxeter number as (rho, theta) + 1, cross-checked against the comark sum
  for (auto& comp : rs.components_) {
    Weight rho_c = rs.zero();
    for (int i = 0; i < comp.type.rank; ++i) rho_c[comp.offset + i] = 1;
    const Rational tt = inner(rs, comp.theta, comp.theta);
    if (tt != 2) throw VerificationError("highest root of " + comp.type.str() + " does not have length 2");
    comp.dual_coxeter = static_cast<int>(to_int64(inner(rs, rho_c, comp.theta))) + 1;
    const int via_comarks = 1 + std::accumulate(comp.comarks.begin(), comp.comarks.end(), 0);
    if (via_comarks != comp.dual_coxeter)
      throw VerificationError("dual Coxeter number mismatch for " + comp.type.str());
  }
  return rs;
}

inline RootSystem build(const std::string& type) { return build(LieType::parse(type)); }

}  // namespace sdual
