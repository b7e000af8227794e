#pragma once

// Embeddings p -> g of semisimple algebras into a simple one, given by the
// map on Dynkin labels, with Dynkin indices, conformality and the branching of
// finite and level-one affine modules.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sdual/affine.hpp"
#include "sdual/rootsys.hpp"
#include "sdual/weyl.hpp"

namespace sdual {

struct Embedding {
  RootSystem ambient;
  RootSystem sub;
  /// sub.rank() x ambient.rank(); row j holds the coefficients of the sub simple
  /// coroot j in the ambient simple coroots, so sub labels = restriction * labels.
  IntMatrix restriction;
  /// Dynkin index per sub component.
  Levels index;
  std::string name;
};

/// Sub labels of an ambient weight.
inline Weight restrict(const Embedding& e, const Weight& w) {
  e.ambient.check_weight(w);
  Weight r = e.sub.zero();
  for (int j = 0; j < e.sub.rank(); ++j) {
    int s = 0;
    const auto& row = e.restriction[j];
    for (int i = 0; i < e.ambient.rank(); ++i) s += row[i] * w[i];
    r[j] = s;
  }
  return r;
}

namespace detail {

// (alpha_i^vee, alpha_k^vee) in the normalized form.
inline RationalMatrix coroot_gram(const RootSystem& rs) {
  const auto& b = rs.root_gram();
  const int n = rs.rank();
  RationalMatrix g(n, std::vector<Rational>(n, Rational(0)));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) g[i][k] = 4 * b[i][k] / (b[i][i] * b[k][k]);
  return g;
}

// Find an ordering p with cartan[p[i]][p[j]] == target[i][j]; nodes tried in
// ascending order so the first match is deterministic.
inline std::optional<std::vector<int>> match_cartan(const IntMatrix& cartan, const IntMatrix& target) {
  const int r = static_cast<int>(target.size());
  if (static_cast<int>(cartan.size()) != r) return std::nullopt;
  std::vector<int> p(r, -1);
  std::vector<bool> used(r, false);
  auto rec = [&](auto&& self, int i) -> bool {
    if (i == r) return true;
    for (int cand = 0; cand < r; ++cand) {
      if (used[cand]) continue;
      if (cartan[cand][cand] != target[i][i]) continue;
      bool ok = true;
      for (int j = 0; j < i && ok; ++j)
        ok = cartan[cand][p[j]] == target[i][j] && cartan[p[j]][cand] == target[j][i];
      if (!ok) continue;
      used[cand] = true;
      p[i] = cand;
      if (self(self, i + 1)) return true;
      used[cand] = false;
    }
    return false;
  };
  if (!rec(rec, 0)) return std::nullopt;
  return p;
}

inline std::vector<SimpleType> candidate_types(int rank) {
  std::vector<SimpleType> out{{'A', rank}};
  if (rank >= 2) out.push_back({'B', rank});
  if (rank >= 3) out.push_back({'C', rank});
  if (rank >= 4) out.push_back({'D', rank});
  if (rank >= 6 && rank <= 8) out.push_back({'E', rank});
  if (rank == 4) out.push_back({'F', 4});
  if (rank == 2) out.push_back({'G', 2});
  return out;
}

// Extended Dynkin data of a simple system: node 0 is -theta, nodes 1..r are simple.
struct ExtendedDiagram {
  std::vector<std::vector<int>> coords;  // simple-root coordinates of each node
  RationalMatrix gram;                   // (beta_a, beta_b)
  IntMatrix cartan;                      // <beta_a^vee, beta_b>
};

inline ExtendedDiagram extended_diagram(const RootSystem& rs) {
  if (!rs.is_simple()) throw DomainError("extended diagram needs a simple root system");
  const int r = rs.rank();
  ExtendedDiagram d;
  std::vector<int> neg_theta(r);
  for (int i = 0; i < r; ++i) neg_theta[i] = -rs.components()[0].marks[i];
  d.coords.push_back(neg_theta);
  for (int i = 0; i < r; ++i) {
    std::vector<int> e(r, 0);
    e[i] = 1;
    d.coords.push_back(e);
  }
  const auto& b = rs.root_gram();
  const int n = r + 1;
  d.gram.assign(n, std::vector<Rational>(n, Rational(0)));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < r; ++i)
        for (int k = 0; k < r; ++k)
          if (d.coords[a][i] != 0 && d.coords[c][k] != 0) d.gram[a][c] += b[i][k] * d.coords[a][i] * d.coords[c][k];
  d.cartan.assign(n, std::vector<int>(n, 0));
  for (int a = 0; a < n; ++a)
    for (int c = 0; c < n; ++c) d.cartan[a][c] = static_cast<int>(to_int64(2 * d.gram[a][c] / d.gram[a][a]));
  return d;
}

inline IntMatrix sub_cartan(const ExtendedDiagram& d, const std::vector<int>& nodes) {
  IntMatrix c(nodes.size(), std::vector<int>(nodes.size(), 0));
  for (std::size_t i = 0; i < nodes.size(); ++i)
    for (std::size_t j = 0; j < nodes.size(); ++j) c[i][j] = d.cartan[nodes[i]][nodes[j]];
  return c;
}

// Type of an already ordered node list, or nullopt when it is not in Bourbaki order.
inline std::optional<SimpleType> ordered_type(const ExtendedDiagram& d, const std::vector<int>& nodes) {
  const IntMatrix c = sub_cartan(d, nodes);
  for (const auto& t : candidate_types(static_cast<int>(nodes.size())))
    if (build(LieType{{t}}).cartan() == c) return t;
  return std::nullopt;
}

// Classify a connected node set; returns its type and nodes in Bourbaki order.
inline std::pair<SimpleType, std::vector<int>> classify(const ExtendedDiagram& d, std::vector<int> nodes) {
  std::sort(nodes.begin(), nodes.end());
  const IntMatrix c = sub_cartan(d, nodes);
  for (const auto& t : candidate_types(static_cast<int>(nodes.size()))) {
    if (auto p = match_cartan(c, build(LieType{{t}}).cartan())) {
      std::vector<int> ordered;
      for (int i : *p) ordered.push_back(nodes[i]);
      return {t, ordered};
    }
  }
  throw DomainError("node set does not form a Dynkin diagram of finite type");
}

}  // namespace detail

/// Dynkin index per sub component, from the ambient form evaluated on the
/// restricted coroots. Throws VerificationError on inconsistent data.
inline Levels dynkin_index(const RootSystem& ambient, const RootSystem& sub, const IntMatrix& restriction) {
  if (static_cast<int>(restriction.size()) != sub.rank())
    throw DomainError("restriction has " + std::to_string(restriction.size()) + " rows, sub rank is " +
                      std::to_string(sub.rank()));
  for (const auto& row : restriction)
    if (static_cast<int>(row.size()) != ambient.rank())
      throw DomainError("restriction row length does not match ambient rank");
  const RationalMatrix ga = detail::coroot_gram(ambient);
  const RationalMatrix gs = detail::coroot_gram(sub);
  const int rs = sub.rank(), ra = ambient.rank();
  RationalMatrix pulled(rs, std::vector<Rational>(rs, Rational(0)));
  for (int i = 0; i < rs; ++i)
    for (int j = 0; j < rs; ++j)
      for (int a = 0; a < ra; ++a)
        for (int b = 0; b < ra; ++b)
          if (restriction[i][a] != 0 && restriction[j][b] != 0)
            pulled[i][j] += ga[a][b] * restriction[i][a] * restriction[j][b];
  Levels index;
  for (std::size_t c = 0; c < sub.components().size(); ++c) {
    const auto& comp = sub.components()[c];
    const int first = comp.offset;
    const Rational d = pulled[first][first] / gs[first][first];
    if (!is_integer(d) || d <= 0)
      throw VerificationError("Dynkin index of component " + comp.type.str() + " is not a positive integer: " +
                              d.str());
    index.push_back(static_cast<int>(to_int64(d)));
  }
  for (int i = 0; i < rs; ++i)
    for (int j = 0; j < rs; ++j) {
      const std::size_t ci = sub.component_of(i), cj = sub.component_of(j);
      const Rational expect = ci == cj ? gs[i][j] * index[ci] : Rational(0);
      if (pulled[i][j] != expect)
        throw VerificationError("restricted coroots are not proportional to the sub form at (" + std::to_string(i + 1) +
                                "," + std::to_string(j + 1) + ")");
    }
  return index;
}

inline Levels dynkin_index(const Embedding& e) { return dynkin_index(e.ambient, e.sub, e.restriction); }

/// Assemble and validate an embedding; the declared index, when given, must match.
inline Embedding make_embedding(RootSystem ambient, RootSystem sub, IntMatrix restriction, std::string name,
                                std::optional<Levels> declared_index = std::nullopt) {
  if (!ambient.is_simple()) throw DomainError("ambient algebra must be simple");
  Embedding e{std::move(ambient), std::move(sub), std::move(restriction), {}, std::move(name)};
  e.index = dynkin_index(e);
  if (declared_index && *declared_index != e.index) {
    std::string got, want;
    for (int v : e.index) got += std::to_string(v) + " ";
    for (int v : *declared_index) want += std::to_string(v) + " ";
    throw VerificationError("declared Dynkin index [" + want + "] does not match computed [" + got + "]");
  }
  return e;
}

/// Maximal-rank subalgebra from deleting one node of the extended diagram,
/// with the sub components' node orders given explicitly (ambient node 0 is
/// the affine node). Each order must be a Bourbaki ordering of its component.
inline Embedding borel_de_siebenthal(const RootSystem& rs, int delete_node,
                                     const std::vector<std::vector<int>>& component_orders) {
  if (!rs.is_simple()) throw DomainError("Borel-de Siebenthal construction needs a simple root system");
  const int r = rs.rank();
  if (delete_node < 0 || delete_node > r)
    throw DomainError("extended node " + std::to_string(delete_node) + " out of range 0.." + std::to_string(r));
  const auto d = detail::extended_diagram(rs);

  std::vector<int> seen;
  for (const auto& comp : component_orders)
    for (int v : comp) seen.push_back(v);
  std::sort(seen.begin(), seen.end());
  std::vector<int> kept;
  for (int v = 0; v <= r; ++v)
    if (v != delete_node) kept.push_back(v);
  if (seen != kept) throw DomainError("component orders must partition the kept extended nodes");

  LieType sub_type;
  IntMatrix restriction;
  for (const auto& order : component_orders) {
    auto t = detail::ordered_type(d, order);
    if (!t) throw DomainError("node order is not a Bourbaki ordering of a finite-type diagram");
    sub_type.components.push_back(*t);
    for (int node : order) {
      const Rational norm = d.gram[node][node];
      std::vector<int> row(r);
      for (int i = 0; i < r; ++i) {
        const Rational coef = d.coords[node][i] * rs.root_gram()[i][i] / norm;
        if (!is_integer(coef)) throw VerificationError("kept root has a non-integral coroot");
        row[i] = static_cast<int>(to_int64(coef));
      }
      restriction.push_back(std::move(row));
    }
  }
  RootSystem sub = build(sub_type);
  // kept simple roots must be mutually orthogonal across components
  std::size_t off = 0;
  for (const auto& order : component_orders) {
    for (int a : order)
      for (std::size_t o = 0; o < component_orders.size(); ++o)
        for (int b : component_orders[o])
          if (&component_orders[o] != &order && d.cartan[a][b] != 0)
            throw DomainError("components in the node orders are not disconnected");
    off += order.size();
  }
  if (static_cast<int>(off) != r) throw DomainError("deletion does not leave a rank-" + std::to_string(r) + " subsystem");
  return make_embedding(rs, std::move(sub), std::move(restriction),
                        rs.type().str() + "-" + std::to_string(delete_node));
}

/// Maximal-rank subalgebra from deleting one node of the extended diagram; the
/// remaining components are classified automatically, ordered by type then by
/// their smallest node.
inline Embedding borel_de_siebenthal(const RootSystem& rs, int delete_node) {
  if (!rs.is_simple()) throw DomainError("Borel-de Siebenthal construction needs a simple root system");
  const int r = rs.rank();
  if (delete_node < 0 || delete_node > r)
    throw DomainError("extended node " + std::to_string(delete_node) + " out of range 0.." + std::to_string(r));
  const auto d = detail::extended_diagram(rs);
  std::vector<int> comp_of(r + 1, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 0; v <= r; ++v) {
    if (v == delete_node || comp_of[v] >= 0) continue;
    std::vector<int> stack{v}, members;
    comp_of[v] = static_cast<int>(comps.size());
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      members.push_back(u);
      for (int w = 0; w <= r; ++w)
        if (w != delete_node && comp_of[w] < 0 && d.cartan[u][w] != 0) {
          comp_of[w] = comp_of[v];
          stack.push_back(w);
        }
    }
    comps.push_back(members);
  }
  std::vector<std::pair<SimpleType, std::vector<int>>> classified;
  for (auto& c : comps) classified.push_back(detail::classify(d, c));
  std::sort(classified.begin(), classified.end(), [](const auto& x, const auto& y) {
    if (x.first.series != y.first.series) return x.first.series < y.first.series;
    if (x.first.rank != y.first.rank) return x.first.rank < y.first.rank;
    return *std::min_element(x.second.begin(), x.second.end()) < *std::min_element(y.second.begin(), y.second.end());
  });
  std::vector<std::vector<int>> orders;
  for (auto& c : classified) orders.push_back(c.second);
  return borel_de_siebenthal(rs, delete_node, orders);
}

/// Identity embedding g -> g.
inline Embedding identity_embedding(const RootSystem& rs) {
  IntMatrix id(rs.rank(), std::vector<int>(rs.rank(), 0));
  for (int i = 0; i < rs.rank(); ++i) id[i][i] = 1;
  return make_embedding(rs, rs, std::move(id), rs.type().str());
}

/// q -> p -> g from p -> g (outer, simple sub) and q -> p (inner).
inline Embedding compose(const Embedding& outer, const Embedding& inner) {
  if (!(outer.sub == inner.ambient)) throw DomainError("inner embedding's ambient is not the outer sub algebra");
  IntMatrix r(inner.sub.rank(), std::vector<int>(outer.ambient.rank(), 0));
  for (int j = 0; j < inner.sub.rank(); ++j)
    for (int k = 0; k < outer.sub.rank(); ++k)
      if (inner.restriction[j][k] != 0)
        for (int i = 0; i < outer.ambient.rank(); ++i) r[j][i] += inner.restriction[j][k] * outer.restriction[k][i];
  return make_embedding(outer.ambient, inner.sub, std::move(r), outer.name + "/" + inner.name);
}

struct ConformalCertificate {
  bool conformal = false;
  Rational sub_anomaly;      ///< c(p, k l)
  Rational ambient_anomaly;  ///< c(g, k)
};

inline ConformalCertificate is_conformal(const Embedding& e, int k) {
  if (k < 1) throw DomainError("level must be positive");
  Levels sub_levels;
  for (int l : e.index) sub_levels.push_back(k * l);
  ConformalCertificate c;
  c.sub_anomaly = conformal_anomaly(e.sub, sub_levels);
  c.ambient_anomaly = conformal_anomaly(e.ambient, Levels{k});
  c.conformal = c.sub_anomaly == c.ambient_anomaly;
  return c;
}

namespace detail {

inline std::int64_t rho_norm(const RootSystem& rs, const Weight& w) {
  const Weight wr = w + rs.rho();
  return rs.scaled_inner(wr, wr);
}

// Split a Weyl-invariant multiset, known through its dominant part, into
// irreducible characters. dominant_char(mu) must return the dominant part of V_mu.
template <class DominantChar>
std::map<Weight, std::int64_t> extract_highest_weights(const RootSystem& sub, std::map<Weight, std::int64_t> residue,
                                                       DominantChar&& dominant_char) {
  std::map<Weight, std::int64_t> found;
  for (;;) {
    const Weight* best = nullptr;
    std::int64_t best_norm = 0;
    for (const auto& [w, c] : residue) {
      if (c == 0) continue;
      if (c < 0)
        throw VerificationError("negative residual multiplicity " + std::to_string(c) + " at " + w.str());
      const std::int64_t n = rho_norm(sub, w);
      if (!best || n > best_norm || (n == best_norm && w > *best)) {
        best = &w;
        best_norm = n;
      }
    }
    if (!best) break;
    const Weight mu = *best;
    const std::int64_t c = residue[mu];
    found[mu] += c;
    for (const auto& [w, m] : dominant_char(mu)) residue[w] -= c * m;
  }
  return found;
}

}  // namespace detail

/// Decomposition of the finite module V_lambda restricted to the sub algebra.
inline std::map<Weight, std::int64_t> branch_finite(const Embedding& e, const Weight& lambda) {
  e.ambient.check_weight(lambda);
  if (!lambda.is_dominant()) throw DomainError("branching needs a dominant weight, got " + lambda.str());
  const WeightMultiset full = finite_character(e.ambient, lambda);
  std::map<Weight, std::int64_t> restricted;
  std::map<Weight, std::int64_t> dom;
  for (const auto& [w, c] : full) {
    Weight r = restrict(e, w);
    if (r.is_dominant()) dom[r] += c;
    restricted[r] += c;
  }
  std::map<Weight, std::map<Weight, std::int64_t>> cache;
  auto result = detail::extract_highest_weights(e.sub, dom, [&](const Weight& mu) -> const std::map<Weight, std::int64_t>& {
    auto it = cache.find(mu);
    if (it != cache.end()) return it->second;
    std::map<Weight, std::int64_t> d;
    for (const auto& [w, c] : finite_character(e.sub, mu))
      if (w.is_dominant()) d[w] = c;
    return cache.emplace(mu, std::move(d)).first->second;
  });
  // the full restricted multiset must be exactly the sum of the extracted characters
  for (const auto& [mu, c] : result)
    for (const auto& [w, m] : finite_character(e.sub, mu)) restricted[w] -= c * m;
  for (const auto& [w, c] : restricted)
    if (c != 0) throw VerificationError("restricted character is not Weyl invariant at " + w.str());
  return result;
}

struct BranchEntry {
  LevelWeight mu;
  int shift = 0;
  std::int64_t mult = 0;
  Rational anomaly;  ///< Delta_mu(p)

  friend bool operator==(const BranchEntry& a, const BranchEntry& b) {
    return a.mu == b.mu && a.shift == b.shift && a.mult == b.mult;
  }
};

struct BranchingResult {
  LevelWeight ambient_weight;
  std::vector<BranchEntry> entries;  ///< sorted by shift, then labels
  int verified_to_grade = 0;
};

namespace detail {

// Dominant part of a sub character by grade; products over components.
class SubCharacterCache {
 public:
  SubCharacterCache(const RootSystem& sub, int cutoff) : sub_(sub), cutoff_(cutoff) {
    for (std::size_t c = 0; c < sub.components().size(); ++c) simple_.push_back(sub.component_system(c));
  }

  const std::vector<std::map<Weight, std::int64_t>>& get(const LevelWeight& mu) {
    auto it = cache_.find(mu);
    if (it != cache_.end()) return it->second;
    std::vector<std::map<Weight, std::int64_t>> acc;
    for (std::size_t c = 0; c < simple_.size(); ++c) {
      const auto key = std::make_pair(c, LevelWeight{sub_.slice(mu.weight, c), Levels{mu.level[c]}});
      auto pit = parts_.find(key);
      if (pit == parts_.end()) {
        auto t = affine_dominant_multiplicities(simple_[c], key.second.weight, key.second.level[0], cutoff_);
        std::vector<std::map<Weight, std::int64_t>> g;
        for (auto& s : t) g.emplace_back(s.begin(), s.end());
        pit = parts_.emplace(key, std::move(g)).first;
      }
      const auto& part = pit->second;
      if (c == 0) {
        acc = part;
        continue;
      }
      std::vector<std::map<Weight, std::int64_t>> next(static_cast<std::size_t>(cutoff_) + 1);
      for (int m = 0; m <= cutoff_; ++m)
        for (int m1 = 0; m1 <= m; ++m1)
          for (const auto& [wa, ca] : acc[m1])
            for (const auto& [wb, cb] : part[m - m1]) next[m][concat(wa, wb)] += ca * cb;
      acc = std::move(next);
    }
    return cache_.emplace(mu, std::move(acc)).first->second;
  }

 private:
  const RootSystem& sub_;
  int cutoff_;
  std::vector<RootSystem> simple_;
  std::map<std::pair<std::size_t, LevelWeight>, std::vector<std::map<Weight, std::int64_t>>> parts_;
  std::map<LevelWeight, std::vector<std::map<Weight, std::int64_t>>> cache_;
};

}  // namespace detail

/// Decomposition of the level-k module H_lambda(g) into H_mu(p) modules up to
/// grade cutoff, by grade-wise extraction of highest weights. Every shift is
/// checked against Delta_mu(p) - Delta_lambda(g).
inline BranchingResult branch_affine(const Embedding& e, const LevelWeight& lw, int cutoff,
                                     const CharacterBudget& budget = {}) {
  require_alcove(e.ambient, lw);
  if (cutoff < 1) throw DomainError("branching cutoff must be at least 1");
  const int k = lw.level.at(0);
  if (!is_conformal(e, k).conformal)
    throw DomainError("embedding " + e.name + " is not conformal at level " + std::to_string(k));
  Levels sub_levels;
  for (int l : e.index) sub_levels.push_back(k * l);

  const GradedCharacter amb = graded_character(e.ambient, lw, cutoff, budget);
  const Rational amb_anomaly = trace_anomaly(e.ambient, lw);
  detail::SubCharacterCache subchar(e.sub, cutoff);

  BranchingResult res;
  res.ambient_weight = lw;
  for (int m = 0; m <= cutoff; ++m) {
    std::map<Weight, std::int64_t> residue;
    for (const auto& [w, c] : amb.grades[m]) {
      Weight r = restrict(e, w);
      if (r.is_dominant()) residue[r] += c;
    }
    for (const auto& entry : res.entries) {
      const int g = m - entry.shift;
      if (g < 0) continue;
      for (const auto& [w, c] : subchar.get(entry.mu)[g]) residue[w] -= entry.mult * c;
    }
    auto found = detail::extract_highest_weights(
        e.sub, std::move(residue), [&](const Weight& mu) -> const std::map<Weight, std::int64_t>& {
          LevelWeight mlw{mu, sub_levels};
          if (!in_alcove(e.sub, mlw))
            throw VerificationError("extracted highest weight " + mu.str() + " at grade " + std::to_string(m) +
                                    " is outside the sub alcove");
          return subchar.get(mlw)[0];
        });
    for (const auto& [mu, c] : found) {
      BranchEntry be;
      be.mu = LevelWeight{mu, sub_levels};
      be.shift = m;
      be.mult = c;
      be.anomaly = trace_anomaly(e.sub, be.mu);
      if (be.anomaly - amb_anomaly != m)
        throw VerificationError("shift " + std::to_string(m) + " of " + mu.str() + " does not equal the anomaly difference " +
                                (be.anomaly - amb_anomaly).str());
      res.entries.push_back(std::move(be));
    }
  }
  std::sort(res.entries.begin(), res.entries.end(), [](const BranchEntry& a, const BranchEntry& b) {
    return a.shift != b.shift ? a.shift < b.shift : a.mu.weight < b.mu.weight;
  });
  res.verified_to_grade = cutoff;
  return res;
}

/// B(lambda^dagger) equals the entrywise dagger of B(lambda), with equal
/// shifts and multiplicities.
inline bool duality_check(const Embedding& e, const LevelWeight& lw, int cutoff, const CharacterBudget& budget = {}) {
  const BranchingResult b = branch_affine(e, lw, cutoff, budget);
  const LevelWeight dual{dagger(e.ambient, lw.weight), lw.level};
  const BranchingResult bd = branch_affine(e, dual, cutoff, budget);
  std::vector<std::tuple<int, Weight, std::int64_t>> mapped, other;
  for (const auto& en : b.entries) mapped.emplace_back(en.shift, dagger(e.sub, en.mu.weight), en.mult);
  for (const auto& en : bd.entries) other.emplace_back(en.shift, en.mu.weight, en.mult);
  std::sort(mapped.begin(), mapped.end());
  std::sort(other.begin(), other.end());
  return mapped == other;
}

}  // namespace sdual
