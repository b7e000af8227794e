#pragma once

// Level-k alcoves, conformal and trace anomalies, and graded characters of
// integrable highest-weight modules of untwisted affine algebras.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "sdual/rootsys.hpp"
#include "sdual/weyl.hpp"

namespace sdual {

/// One level per simple component.
using Levels = std::vector<int>;

inline Levels uniform_levels(const RootSystem& rs, int k) { return Levels(rs.components().size(), k); }

/// A dominant weight together with the level of each component.
struct LevelWeight {
  Weight weight;
  Levels level;

  friend bool operator==(const LevelWeight&, const LevelWeight&) = default;
  friend auto operator<=>(const LevelWeight& a, const LevelWeight& b) {
    if (auto c = a.weight <=> b.weight; c != 0) return c;
    return a.level <=> b.level;
  }
};

/// mu + sum_i l_i Lambda_0^(i) - shift * delta.
struct AffineWeight {
  LevelWeight base;
  int shift = 0;

  friend bool operator==(const AffineWeight&, const AffineWeight&) = default;
};

inline void check_levels(const RootSystem& rs, const Levels& k) {
  if (k.size() != rs.components().size())
    throw DomainError("expected " + std::to_string(rs.components().size()) + " levels for " + rs.type().str() +
                      ", got " + std::to_string(k.size()));
  for (int v : k)
    if (v < 0) throw DomainError("negative level " + std::to_string(v));
}

/// (lambda, theta_c) for component c, i.e. the comark-weighted label sum.
inline int level_of(const RootSystem& rs, const Weight& lambda, std::size_t c) {
  const auto& comp = rs.components().at(c);
  int s = 0;
  for (int i = 0; i < comp.type.rank; ++i) s += comp.comarks[i] * lambda[comp.offset + i];
  return s;
}

inline bool in_alcove(const RootSystem& rs, const LevelWeight& lw) {
  rs.check_weight(lw.weight);
  check_levels(rs, lw.level);
  if (!lw.weight.is_dominant()) return false;
  for (std::size_t c = 0; c < rs.components().size(); ++c)
    if (level_of(rs, lw.weight, c) > lw.level[c]) return false;
  return true;
}

inline void require_alcove(const RootSystem& rs, const LevelWeight& lw) {
  if (!in_alcove(rs, lw))
    throw DomainError("weight " + lw.weight.str() + " is not in the level alcove of " + rs.type().str());
}

/// P_k: dominant weights with (lambda, theta) <= k per component, sorted by labels.
inline std::vector<LevelWeight> alcove(const RootSystem& rs, const Levels& k) {
  check_levels(rs, k);
  std::vector<std::vector<Weight>> per_comp;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    const auto& comp = rs.components()[c];
    const int r = comp.type.rank;
    std::vector<Weight> found;
    Weight cur(static_cast<std::size_t>(r));
    // depth-first over labels with a running comark budget
    auto rec = [&](auto&& self, int i, int budget) -> void {
      if (i == r) {
        found.push_back(cur);
        return;
      }
      for (int v = 0; v * comp.comarks[i] <= budget; ++v) {
        cur[i] = v;
        self(self, i + 1, budget - v * comp.comarks[i]);
      }
      cur[i] = 0;
    };
    rec(rec, 0, k[c]);
    per_comp.push_back(std::move(found));
  }
  std::vector<LevelWeight> out{LevelWeight{Weight{}, k}};
  for (const auto& comp_weights : per_comp) {
    std::vector<LevelWeight> next;
    for (const auto& partial : out)
      for (const auto& w : comp_weights) next.push_back(LevelWeight{concat(partial.weight, w), k});
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<LevelWeight> alcove(const RootSystem& rs, int k) { return alcove(rs, uniform_levels(rs, k)); }

/// c(g, k) = sum over components of k dim / (h^vee + k).
inline Rational conformal_anomaly(const RootSystem& rs, const Levels& k) {
  check_levels(rs, k);
  Rational c = 0;
  for (std::size_t i = 0; i < k.size(); ++i) {
    const auto& comp = rs.components()[i];
    c += Rational(k[i] * comp.dimension, comp.dual_coxeter + k[i]);
  }
  return c;
}

inline Rational conformal_anomaly(const RootSystem& rs, int k) { return conformal_anomaly(rs, uniform_levels(rs, k)); }

/// Delta_lambda = sum over components of (lambda, lambda + 2 rho) / (2 (h^vee + k)).
inline Rational trace_anomaly(const RootSystem& rs, const LevelWeight& lw) {
  require_alcove(rs, lw);
  Rational d = 0;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    const auto& comp = rs.components()[c];
    Weight lam = rs.zero();
    Weight two_rho = rs.zero();
    for (int i = 0; i < comp.type.rank; ++i) {
      lam[comp.offset + i] = lw.weight[comp.offset + i];
      two_rho[comp.offset + i] = 2;
    }
    d += inner(rs, lam, lam + two_rho) / (2 * (comp.dual_coxeter + lw.level[c]));
  }
  return d;
}

/// Trace anomaly of mu + l Lambda_0 - n delta, which is Delta_mu - n.
inline Rational trace_anomaly(const RootSystem& rs, const AffineWeight& aw) {
  if (aw.shift < 0) throw DomainError("affine weight shift must be non-negative");
  return trace_anomaly(rs, aw.base) - aw.shift;
}

/// Weyl dimension formula.
inline BigInt weyl_dimension(const RootSystem& rs, const Weight& lambda) {
  rs.check_weight(lambda);
  if (!lambda.is_dominant()) throw DomainError("dimension needs a dominant weight");
  const Weight rho = rs.rho();
  const Weight lr = lambda + rho;
  Rational d = 1;
  for (const auto& a : rs.positive_roots()) d *= Rational(rs.scaled_inner(lr, a), rs.scaled_inner(rho, a));
  return boost::multiprecision::numerator(d);
}

using WeightMultiset = std::map<Weight, std::int64_t>;

/// Weight multiplicities of H_lambda split by L_0-grade 0..cutoff.
struct GradedCharacter {
  int cutoff = 0;
  std::vector<WeightMultiset> grades;

  std::int64_t grade_dimension(int m) const {
    std::int64_t s = 0;
    for (const auto& [w, c] : grades.at(m)) s += c;
    return s;
  }
  std::int64_t entries() const {
    std::int64_t s = 0;
    for (const auto& g : grades) s += static_cast<std::int64_t>(g.size());
    return s;
  }
  friend bool operator==(const GradedCharacter&, const GradedCharacter&) = default;
};

/// Limits the number of (grade, weight) entries a character table may hold.
/// The default admits the basic E8 module through grade 6.
struct CharacterBudget {
  std::int64_t max_entries = 300000;
};

namespace detail {

using DominantGrades = std::vector<std::unordered_map<Weight, std::int64_t, WeightHash>>;

inline std::int64_t lookup(const DominantGrades& t, int grade, const Weight& w) {
  if (grade < 0) return 0;
  const auto& g = t[static_cast<std::size_t>(grade)];
  auto it = g.find(w);
  return it == g.end() ? 0 : it->second;
}

// Dominant weights below top (top minus non-negative root combinations).
inline std::vector<Weight> dominant_weights_below(const RootSystem& rs, const Weight& top) {
  std::unordered_set<Weight, WeightHash> seen{top};
  std::vector<Weight> stack{top};
  std::vector<Weight> out{top};
  while (!stack.empty()) {
    Weight cur = std::move(stack.back());
    stack.pop_back();
    for (const auto& a : rs.positive_roots()) {
      Weight nxt = cur - a;
      if (!nxt.is_dominant()) continue;
      if (seen.insert(nxt).second) {
        out.push_back(nxt);
        stack.push_back(std::move(nxt));
      }
    }
  }
  return out;
}

// Affine Freudenthal recursion on dominant weights of a simple system.
// Weight mu = nu + k Lambda_0 - m delta; positive affine roots are beta (beta > 0),
// beta + n delta (n >= 1, beta any root) and n delta with multiplicity rank.
inline DominantGrades affine_dominant_multiplicities(const RootSystem& rs, const Weight& lambda, int k, int cutoff) {
  const std::int64_t scale = rs.form_scale();
  const int hv = rs.components()[0].dual_coxeter;
  const Weight rho = rs.rho();
  const Weight& theta = rs.theta(0);
  const auto& pos = rs.positive_roots();
  std::vector<Weight> roots = pos;
  for (const auto& a : pos) roots.push_back(-a);
  std::vector<std::int64_t> root_norm;
  for (const auto& a : roots) root_norm.push_back(rs.scaled_inner(a, a));

  const std::int64_t top_norm = rs.scaled_inner(lambda + rho, lambda + rho);
  DominantGrades table(static_cast<std::size_t>(cutoff) + 1);

  for (int m = 0; m <= cutoff; ++m) {
    const std::int64_t bound = top_norm + 2 * static_cast<std::int64_t>(k + hv) * m * scale;
    Weight top = lambda;
    for (int t = 0; t < m; ++t) top += theta;
    std::vector<std::pair<std::int64_t, Weight>> cand;
    for (auto& nu : dominant_weights_below(rs, top)) {
      const std::int64_t nr = rs.scaled_inner(nu + rho, nu + rho);
      if (m == 0 && nu == lambda) {
        cand.emplace_back(nr, nu);
        continue;
      }
      if (nr < bound) cand.emplace_back(nr, nu);
    }
    std::sort(cand.begin(), cand.end(), [](const auto& x, const auto& y) {
      return x.first != y.first ? x.first > y.first : x.second < y.second;
    });
    auto& slice = table[static_cast<std::size_t>(m)];
    for (const auto& [nr, nu] : cand) {
      if (m == 0 && nu == lambda) {
        slice.emplace(nu, 1);
        continue;
      }
      const std::int64_t lhs = bound - nr;
      const std::int64_t nu_norm = rs.scaled_inner(nu, nu);
      std::int64_t rhs = 0;
      // real roots: j runs while nu + j beta can still be a weight
      for (std::size_t r = 0; r < roots.size(); ++r) {
        const Weight& beta = roots[r];
        const std::int64_t nb = rs.scaled_inner(nu, beta);
        const std::int64_t bb = root_norm[r];
        const bool positive = r < pos.size();
        for (int n = positive ? 0 : 1; n <= m; ++n) {
          Weight w = nu;
          for (int j = 1;; ++j) {
            const int grade = m - j * n;
            if (grade < 0) break;
            w += beta;
            const std::int64_t wn = nu_norm + 2 * j * nb + static_cast<std::int64_t>(j) * j * bb;
            // (w, w) <= bound is necessary for a weight; past the vertex it only grows
            if (wn > bound) {
              if (nb + j * bb >= 0) break;
              continue;
            }
            const std::int64_t mult = lookup(table, grade, dominant(rs, w));
            if (mult != 0) rhs += (nb + j * bb + static_cast<std::int64_t>(k) * n * scale) * mult;
          }
        }
      }
      // imaginary roots n delta
      for (int n = 1; n <= m; ++n)
        for (int j = 1; j * n <= m; ++j) {
          const std::int64_t mult = lookup(table, m - j * n, nu);
          rhs += static_cast<std::int64_t>(rs.rank()) * k * n * scale * mult;
        }
      if (rhs == 0) continue;
      if (lhs <= 0 || (2 * rhs) % lhs != 0)
        throw VerificationError("Freudenthal recursion produced a non-integral multiplicity at " + nu.str());
      slice.emplace(nu, 2 * rhs / lhs);
    }
  }
  return table;
}

inline GradedCharacter expand_orbits(const RootSystem& rs, const DominantGrades& table, int cutoff,
                                     const CharacterBudget& budget) {
  GradedCharacter ch;
  ch.cutoff = cutoff;
  ch.grades.resize(static_cast<std::size_t>(cutoff) + 1);
  std::int64_t used = 0;
  for (int m = 0; m <= cutoff; ++m) {
    std::vector<std::pair<Weight, std::int64_t>> dom(table[m].begin(), table[m].end());
    std::sort(dom.begin(), dom.end());
    for (const auto& [d, c] : dom) {
      const auto orb = orbit(rs, d, budget.max_entries - used + 1);
      used += orb.size;
      if (used > budget.max_entries)
        throw ResourceError("character table exceeds budget of " + std::to_string(budget.max_entries) +
                            " entries at grade " + std::to_string(m));
      for (const auto& w : *orb.elements) ch.grades[m].emplace(w, c);
    }
  }
  return ch;
}

inline GradedCharacter product(const GradedCharacter& a, const GradedCharacter& b, const CharacterBudget& budget) {
  GradedCharacter out;
  out.cutoff = std::min(a.cutoff, b.cutoff);
  out.grades.resize(static_cast<std::size_t>(out.cutoff) + 1);
  std::int64_t used = 0;
  for (int m = 0; m <= out.cutoff; ++m) {
    for (int m1 = 0; m1 <= m; ++m1)
      for (const auto& [wa, ca] : a.grades[m1])
        for (const auto& [wb, cb] : b.grades[m - m1]) out.grades[m][concat(wa, wb)] += ca * cb;
    used += static_cast<std::int64_t>(out.grades[m].size());
    if (used > budget.max_entries)
      throw ResourceError("character table exceeds budget of " + std::to_string(budget.max_entries) + " entries");
  }
  return out;
}

}  // namespace detail

/// Graded character of H_lambda truncated at grade cutoff. Grade m is the
/// L_0-eigenspace Delta_lambda + m; grade 0 is the finite module V_lambda.
inline GradedCharacter graded_character(const RootSystem& rs, const LevelWeight& lw, int cutoff,
                                        const CharacterBudget& budget = {}) {
  require_alcove(rs, lw);
  if (cutoff < 0) throw DomainError("cutoff must be non-negative");
  GradedCharacter acc;
  for (std::size_t c = 0; c < rs.components().size(); ++c) {
    const RootSystem simple = rs.component_system(c);
    const Weight lam = rs.slice(lw.weight, c);
    auto table = detail::affine_dominant_multiplicities(simple, lam, lw.level[c], cutoff);
    GradedCharacter part = detail::expand_orbits(simple, table, cutoff, budget);
    acc = c == 0 ? std::move(part) : detail::product(acc, part, budget);
  }
  return acc;
}

/// Weight multiplicities of the finite irreducible module V_lambda.
inline WeightMultiset finite_character(const RootSystem& rs, const Weight& lambda, const CharacterBudget& budget = {}) {
  rs.check_weight(lambda);
  if (!lambda.is_dominant()) throw DomainError("highest weight must be dominant, got " + lambda.str());
  Levels k;
  for (std::size_t c = 0; c < rs.components().size(); ++c) k.push_back(level_of(rs, lambda, c));
  return graded_character(rs, LevelWeight{lambda, k}, 0, budget).grades[0];
}

/// Dominant-weight multiplicities only; cheaper than finite_character for large modules.
inline std::map<Weight, std::int64_t> dominant_character(const RootSystem& rs, const Weight& lambda) {
  if (!rs.is_simple()) throw DomainError("dominant_character expects a simple root system");
  rs.check_weight(lambda);
  if (!lambda.is_dominant()) throw DomainError("highest weight must be dominant, got " + lambda.str());
  auto t = detail::affine_dominant_multiplicities(rs, lambda, level_of(rs, lambda, 0), 0);
  return {t[0].begin(), t[0].end()};
}

}  // namespace sdual
